#include "nqkit/lcs.hpp"

#include "nqkit/error.hpp"
#include "nqkit/intmat.hpp"

#include <algorithm>
#include <sstream>

namespace nqkit {

std::string AbelianFactorStructure::to_string() const {
  std::ostringstream out;
  bool first = true;
  if (free_rank > 0) {
    out << "Z";
    if (free_rank > 1)
      out << "^" << free_rank;
    first = false;
  }
  for (const auto &t : torsion) {
    if (!first)
      out << " x ";
    out << "Z/" << t.get_str();
    first = false;
  }
  if (first)
    out << "0";
  return out.str();
}

AbelianFactorStructure factor_structure(const NilpotentPresentation &np, unsigned k) {
  if (k < 1 || k > np.nilpotency_class())
    throw DomainError("weight " + std::to_string(k) + " outside 1.." +
                      std::to_string(np.nilpotency_class()));
  const auto [lo, hi] = np.weight_range(k);
  const std::size_t count = hi - lo;
  AbelianFactorStructure out;
  out.weight = k;
  out.generators = count;

  const PcPresentation &pc = np.pc();
  std::vector<std::size_t> finite;
  for (std::size_t g = lo; g < hi; ++g)
    if (pc.finite(g))
      finite.push_back(g);
  if (finite.empty()) {
    out.free_rank = count;
    return out;
  }
  // Relations m_g e_g - (power relation restricted to this weight).
  IntMatrix rel(finite.size(), count);
  for (std::size_t r = 0; r < finite.size(); ++r) {
    const std::size_t g = finite[r];
    rel(r, g - lo) += pc.relative_orders[g];
    for (const auto &[h, e] : pc.powers[g])
      if (h >= lo && h < hi)
        rel(r, h - lo) -= e;
  }
  const auto factors = smith_normal_form(rel).invariant_factors();
  out.free_rank = count - factors.size();
  for (const auto &d : factors)
    if (d > 1)
      out.torsion.push_back(d);
  return out;
}

std::vector<AbelianFactorStructure> factor_structures(const NilpotentPresentation &np) {
  std::vector<AbelianFactorStructure> out;
  for (unsigned k = 1; k <= np.nilpotency_class(); ++k)
    out.push_back(factor_structure(np, k));
  return out;
}

std::string ElementOrder::to_string() const { return finite ? value.get_str() : "infinite"; }

ElementOrder element_order(const NilpotentPresentation &np, const ExponentVector &v) {
  if (v.size() != np.size())
    throw DomainError("exponent vector has the wrong length");
  const PcPresentation &pc = np.pc();
  Collector col = np.collector();
  ExponentVector x = v;
  ElementOrder out;
  while (true) {
    auto lead = std::find_if(x.begin(), x.end(), [](const Integer &e) { return e != 0; });
    if (lead == x.end())
      return out;
    const auto g = static_cast<std::size_t>(lead - x.begin());
    if (!pc.finite(g))
      return {false, 0};
    // The image in <a_g,...>/<a_{g+1},...> has order m / gcd(e, m).
    const Integer &m = pc.relative_orders[g];
    Integer k = m / gcd(*lead, m);
    out.value *= k;
    if (bit_size(out.value) > np.budget().max_bits)
      throw BudgetExceeded("element order exceeds the bit budget");
    x = col.power(x, k);
  }
}

ElementOrder element_order(const NilpotentPresentation &np, const Word &w) {
  return element_order(np, np.image(w));
}

bool verify_identity(const NilpotentPresentation &np, const Word &lhs, const Word &rhs) {
  return np.image(lhs) == np.image(rhs);
}

bool verify_identity(const Presentation &pres, unsigned c, const Word &lhs, const Word &rhs,
                     const NqOptions &options) {
  return verify_identity(nilpotent_quotient(pres, c, options), lhs, rhs);
}

bool is_power_of_two(const Integer &n) {
  return n > 0 && mpz_popcount(n.get_mpz_t()) == 1;
}

TorsionProbeReport torsion_probe(const Presentation &pres, const Word &w,
                                 const std::vector<unsigned> &classes,
                                 const NqOptions &options) {
  if (classes.empty())
    throw DomainError("torsion probe needs at least one class");
  TorsionProbeReport report;
  report.word = w.to_string();

  const unsigned top = *std::max_element(classes.begin(), classes.end());
  if (*std::min_element(classes.begin(), classes.end()) < 1)
    throw DomainError("probe classes must be at least 1");
  // One quotient at the largest reachable class; smaller classes are
  // truncations of it.
  NilpotentPresentation np(pres.alphabet());
  std::string top_error;
  try {
    if (top > options.max_class)
      throw BudgetExceeded("class " + std::to_string(top) + " exceeds the configured maximum");
    while (np.nilpotency_class() < top)
      np = extend_class(np, pres, options);
  } catch (const BudgetExceeded &e) {
    top_error = e.what();
  }

  bool all_finite = true;
  bool all_two = true;
  for (unsigned c : classes) {
    ClassOrder entry;
    entry.nq_class = c;
    try {
      if (c > np.nilpotency_class())
        throw BudgetExceeded(top_error);
      ElementOrder o = element_order(np.truncated(c), w);
      if (o.finite) {
        entry.status = ClassOrder::Status::finite;
        entry.order = o.value;
        all_two = all_two && is_power_of_two(o.value);
      } else {
        entry.status = ClassOrder::Status::infinite;
        all_finite = all_two = false;
      }
    } catch (const BudgetExceeded &e) {
      entry.status = ClassOrder::Status::budget_exceeded;
      entry.error = e.what();
      all_finite = all_two = false;
    }
    report.orders.push_back(std::move(entry));
  }
  report.finite_everywhere = all_finite;
  report.power_of_two_everywhere = all_two;
  return report;
}

Word hall_witt_word(const Word &a, const Word &b, const Word &c) {
  const Word t1 = conjugate(commutator(commutator(a, b.inverse()), c), b);
  const Word t2 = conjugate(commutator(commutator(b, c.inverse()), a), c);
  const Word t3 = conjugate(commutator(commutator(c, a.inverse()), b), a);
  return t1 * t2 * t3;
}

} // namespace nqkit
