#pragma once

// Lower-central analysis on top of nilpotent quotients: factor structures,
// element orders, identity checks and torsion probes.

#include "nqkit/integer.hpp"
#include "nqkit/nq.hpp"
#include "nqkit/words.hpp"

#include <string>
#include <vector>

namespace nqkit {

struct AbelianFactorStructure {
  unsigned weight = 0;
  std::size_t free_rank = 0;
  std::vector<Integer> torsion; // invariant factors > 1, each dividing the next
  std::size_t generators = 0;   // pc generators of this weight

  bool operator==(const AbelianFactorStructure &) const = default;
  std::string to_string() const; // e.g. "Z^2 x Z/2"
};

// gamma_k / gamma_{k+1} of the group presented by np; 1 <= k <= class.
AbelianFactorStructure factor_structure(const NilpotentPresentation &np, unsigned k);

std::vector<AbelianFactorStructure> factor_structures(const NilpotentPresentation &np);

struct ElementOrder {
  bool finite = true;
  Integer value = 1; // meaningful when finite

  bool operator==(const ElementOrder &) const = default;
  std::string to_string() const;
};

// Exact order, read off the polycyclic series: if the leading exponent sits
// on a generator of infinite relative order the order is infinite; else
// raise to the relative order of that leading term and recurse.
ElementOrder element_order(const NilpotentPresentation &np, const ExponentVector &v);
ElementOrder element_order(const NilpotentPresentation &np, const Word &w);

bool verify_identity(const NilpotentPresentation &np, const Word &lhs, const Word &rhs);
bool verify_identity(const Presentation &pres, unsigned c, const Word &lhs, const Word &rhs,
                     const NqOptions &options = {});

struct ClassOrder {
  enum class Status { finite, infinite, budget_exceeded };
  unsigned nq_class = 0;
  Status status = Status::finite;
  Integer order;     // when finite
  std::string error; // when budget_exceeded
};

struct TorsionProbeReport {
  std::string word;
  std::vector<ClassOrder> orders;
  // Every sampled class gave a finite order that is a power of 2.
  bool power_of_two_everywhere = false;
  // Every sampled class gave a finite order.
  bool finite_everywhere = false;
};

// Element orders of w in G/gamma_{c+1}(G) for each requested class c. One
// quotient is computed at the largest class and truncated for the rest;
// budget failures are recorded per class.
TorsionProbeReport torsion_probe(const Presentation &pres, const Word &w,
                                 const std::vector<unsigned> &classes,
                                 const NqOptions &options = {});

bool is_power_of_two(const Integer &n);

// [A,B^-1,C]^B [B,C^-1,A]^C [C,A^-1,B]^A
Word hall_witt_word(const Word &a, const Word &b, const Word &c);

} // namespace nqkit
