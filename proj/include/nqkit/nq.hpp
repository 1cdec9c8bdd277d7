#pragma once

// Nilpotent quotients of finitely presented groups.
//
// A NilpotentPresentation is a consistent weighted polycyclic presentation
// of G / gamma_{c+1}(G) on generators a_0, ..., a_{n-1}:
//
//   a_i^{m_i}      = w_ii                 (only for finite relative order m_i)
//   a_j^{a_i}      = a_j w_ij             (j > i)
//   a_j^{a_i^-1}   = a_j w'_ij            (j > i)
//
// Right-hand sides are stored as collected normal forms. Weights are
// nondecreasing; a weight-k generator lies in gamma_k.

#include "nqkit/integer.hpp"
#include "nqkit/words.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nqkit {

// Sparse generator-exponent word a_{g1}^{e1} a_{g2}^{e2} ... with strictly
// increasing generators; doubles as a sparse exponent vector.
using GenExpWord = std::vector<std::pair<std::uint32_t, Integer>>;

// Dense exponent vector in normal-form order.
using ExponentVector = std::vector<Integer>;

class Presentation {
public:
  // Relators that reduce to the identity are dropped.
  Presentation(AlphabetPtr alphabet, std::vector<Word> relators);

  const AlphabetPtr &alphabet() const noexcept { return alphabet_; }
  const std::vector<Word> &relators() const noexcept { return relators_; }

private:
  AlphabetPtr alphabet_;
  std::vector<Word> relators_;
};

struct PcPresentation {
  std::vector<unsigned> weights;
  std::vector<Integer> relative_orders; // 0 means infinite
  std::vector<GenExpWord> powers;       // empty for infinite generators
  // conj[j][i] and conj_inv[j][i] for i < j.
  std::vector<std::vector<GenExpWord>> conj;
  std::vector<std::vector<GenExpWord>> conj_inv;
  // commute[j][i]: a_i and a_j commute (both conjugates are plain a_j).
  std::vector<std::vector<char>> commute;

  std::size_t size() const noexcept { return weights.size(); }
  bool finite(std::size_t g) const { return relative_orders[g] != 0; }

  // Appends a central generator of infinite order.
  void push_central(unsigned weight);
  void refresh_commute();
};

struct CollectBudget {
  std::uint64_t max_steps = 2'000'000'000ULL;
  std::size_t max_bits = 4096;
};

// Collection from the left: multiplies a normal form, one generator power
// at a time, on the right.
class Collector {
public:
  explicit Collector(const PcPresentation &pc, CollectBudget budget = {})
      : pc_(&pc), budget_(budget) {}

  void multiply_gen(ExponentVector &v, std::size_t g, const Integer &e);
  void multiply_word(ExponentVector &v, const GenExpWord &w);
  void multiply_inverse_word(ExponentVector &v, const GenExpWord &w);
  void multiply_power(ExponentVector &v, const GenExpWord &w, const Integer &e);

  ExponentVector identity() const { return ExponentVector(pc_->size()); }
  ExponentVector product(const ExponentVector &a, const ExponentVector &b);
  ExponentVector inverse(const ExponentVector &a);
  ExponentVector power(const ExponentVector &a, Integer k);
  ExponentVector conjugate(const ExponentVector &x, const ExponentVector &by);

  std::uint64_t steps() const noexcept { return steps_; }

private:
  void multiply_letter(ExponentVector &v, std::size_t g, int sign);
  void add_exponent(ExponentVector &v, std::size_t g, const Integer &e);
  GenExpWord take_suffix(ExponentVector &v, std::size_t g);
  bool suffix_commutes(const ExponentVector &v, std::size_t g) const;
  ExponentVector conjugate_by_power(const ExponentVector &x, std::size_t g, Integer e);
  void tick();

  const PcPresentation *pc_;
  CollectBudget budget_;
  std::uint64_t steps_ = 0;
};

GenExpWord to_gen_exp(const ExponentVector &v);
ExponentVector to_dense(const GenExpWord &w, std::size_t size);

// How a pc generator was introduced.
struct Definition {
  enum class Kind { source, power, commutator };
  Kind kind = Kind::source;
  std::size_t source = 0; // source generator (Kind::source)
  std::size_t j = 0;      // commutator: tail of a_j^{a_i}; power: a_j^{m_j}
  std::size_t i = 0;

  bool operator==(const Definition &) const = default;
};

struct NqOptions {
  unsigned max_class = 64;
  std::size_t max_generators = 5000;
  std::size_t max_bits = 4096;
  std::uint64_t max_collection_steps = 2'000'000'000ULL;
  // Re-run the consistency test and relator check after every class.
  bool verify_each_class = true;
  // Make that test exhaustive over all triples instead of the weight-bounded
  // ones (which already suffice for weighted presentations). Cubic in size.
  bool exhaustive_check = false;
};

// One pc generator in a (letter, sign) sequence handed to collect().
struct PcLetter {
  std::size_t gen = 0;
  int sign = 1;
};

class NilpotentPresentation {
public:
  // The class-0 quotient: no pc generators.
  explicit NilpotentPresentation(AlphabetPtr source);

  const AlphabetPtr &source_alphabet() const noexcept { return source_; }
  const PcPresentation &pc() const noexcept { return pc_; }
  unsigned nilpotency_class() const noexcept { return class_; }
  std::size_t size() const noexcept { return pc_.size(); }
  const std::vector<GenExpWord> &epimorphism() const noexcept { return epimorphism_; }
  const std::vector<Definition> &definitions() const noexcept { return definitions_; }
  const CollectBudget &budget() const noexcept { return budget_; }

  // Generators of weight exactly k: the half-open index range.
  std::pair<std::size_t, std::size_t> weight_range(unsigned k) const;

  ExponentVector image(const Word &w) const;
  ExponentVector collect(std::span<const PcLetter> letters) const;
  Collector collector() const { return Collector(pc_, budget_); }

  // Forgets generators of weight > c.
  NilpotentPresentation truncated(unsigned c) const;

  // Bracket label of a generator built from its definition chain, e.g.
  // "[[t,a],a]". A commutator-defined generator equals the labelled
  // commutator up to terms of the same or higher weight.
  std::string definition_text(std::size_t g) const;

private:
  friend NilpotentPresentation extend_class(const NilpotentPresentation &,
                                            const Presentation &, const NqOptions &);
  friend NilpotentPresentation nilpotent_quotient(const Presentation &, unsigned,
                                                  const NqOptions &);

  AlphabetPtr source_;
  PcPresentation pc_;
  std::vector<GenExpWord> epimorphism_;
  std::vector<Definition> definitions_;
  unsigned class_ = 0;
  CollectBudget budget_;
};

NilpotentPresentation nilpotent_quotient(const Presentation &pres, unsigned c,
                                         const NqOptions &options = {});

// One induction step: the class-(c+1) quotient from the class-c one.
NilpotentPresentation extend_class(const NilpotentPresentation &q, const Presentation &pres,
                                   const NqOptions &options = {});

inline ExponentVector image(const NilpotentPresentation &np, const Word &w) {
  return np.image(w);
}

inline ExponentVector collect(const NilpotentPresentation &np,
                              std::span<const PcLetter> letters) {
  return np.collect(letters);
}

// Runs every standard consistency test without weight restrictions and
// returns a description of each failure (empty when consistent).
std::vector<std::string> check_consistency(const PcPresentation &pc,
                                           CollectBudget budget = {});

bool is_zero(const ExponentVector &v);

} // namespace nqkit
