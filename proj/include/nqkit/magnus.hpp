#pragma once

// Magnus embedding of a free group into truncated power series in
// noncommuting variables, and the leading Lie element of a word in the
// Lyndon basis of the free Lie ring.

#include "nqkit/integer.hpp"
#include "nqkit/words.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace nqkit {

// A monomial X_{i1} X_{i2} ... X_{ik} stored as its index sequence.
using Monomial = std::vector<std::uint32_t>;

class TruncatedSeries {
public:
  explicit TruncatedSeries(unsigned degree_cap);

  static TruncatedSeries one(unsigned degree_cap);

  unsigned degree_cap() const noexcept { return cap_; }
  const std::map<Monomial, Integer> &terms() const noexcept { return terms_; }

  Integer coefficient(const Monomial &m) const;
  void add(const Monomial &m, const Integer &c);

  // Lowest degree with a nonzero coefficient, or -1 for the zero series.
  int lowest_degree() const;
  std::map<Monomial, Integer> homogeneous(unsigned degree) const;

  TruncatedSeries operator*(const TruncatedSeries &other) const;
  TruncatedSeries operator-(const TruncatedSeries &other) const;
  bool operator==(const TruncatedSeries &other) const = default;

  // this * (1 + X_g)^sign, truncated.
  void multiply_letter(std::uint32_t g, int sign);

private:
  unsigned cap_;
  std::map<Monomial, Integer> terms_;
};

// x -> 1 + X, x^-1 -> 1 - X + X^2 - ..., truncated at degree_cap.
TruncatedSeries embed(const Word &w, unsigned degree_cap);

struct WordWeight {
  enum class Kind { finite, exceeds_cap, identity };
  Kind kind = Kind::identity;
  unsigned value = 0; // meaningful for Kind::finite

  bool operator==(const WordWeight &) const = default;
  std::string to_string() const;
};

// Lower-central depth: w lies in gamma_n(F) exactly for n <= value.
WordWeight weight_of(const Word &w, unsigned cap);

// Lyndon words of length n over {0, ..., q-1} in lexicographic order.
std::vector<Monomial> lyndon_words(unsigned q, unsigned n);

bool is_lyndon(const Monomial &w);

// Standard bracketing of a Lyndon word, expanded into monomials.
std::map<Monomial, Integer> lyndon_bracket(const Monomial &lyndon);

struct LieElement {
  unsigned weight = 0;
  std::map<Monomial, Integer> coords; // Lyndon word -> coefficient

  bool operator==(const LieElement &) const = default;
};

// Image of w in gamma_n/gamma_{n+1} written in the Lyndon basis, where
// n = weight_of(w). Throws DomainError for the identity and BudgetExceeded
// when the weight exceeds `cap`.
LieElement leading_lie(const Word &w, unsigned cap);

struct LabuteReport {
  unsigned weight = 0;
  bool primitive = false;
  Integer gcd;
};

// Decides whether w is not a proper multiple in its lower-central factor.
LabuteReport labute_hypothesis(const Word &w, unsigned cap);

std::string monomial_to_string(const Monomial &m, const Alphabet &alphabet);

} // namespace nqkit
