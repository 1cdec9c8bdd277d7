#include "nqkit/nq.hpp"

#include "nqkit/error.hpp"
#include "nqkit/intmat.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

namespace nqkit {

Presentation::Presentation(AlphabetPtr alphabet, std::vector<Word> relators)
    : alphabet_(std::move(alphabet)) {
  if (!alphabet_)
    throw DomainError("presentation needs an alphabet");
  for (auto &r : relators) {
    if (!same_alphabet(r.alphabet(), alphabet_))
      throw AlphabetMismatch();
    if (!r.is_identity())
      relators_.push_back(std::move(r));
  }
}

bool is_zero(const ExponentVector &v) {
  return std::all_of(v.begin(), v.end(), [](const Integer &x) { return x == 0; });
}

GenExpWord to_gen_exp(const ExponentVector &v) {
  GenExpWord w;
  for (std::size_t g = 0; g < v.size(); ++g)
    if (v[g] != 0)
      w.emplace_back(static_cast<std::uint32_t>(g), v[g]);
  return w;
}

ExponentVector to_dense(const GenExpWord &w, std::size_t size) {
  ExponentVector v(size);
  for (const auto &[g, e] : w) {
    if (g >= size)
      throw DomainError("generator index out of range");
    v[g] = e;
  }
  return v;
}

namespace {

GenExpWord unit(std::size_t g) { return {{static_cast<std::uint32_t>(g), Integer(1)}}; }

bool is_unit(const GenExpWord &w, std::size_t g) {
  return w.size() == 1 && w[0].first == g && w[0].second == 1;
}

// Exponents up to this size are expanded letter by letter; larger ones go
// through binary powering.
constexpr long kExpandLimit = 8;

unsigned long checked_count(const Integer &e) {
  Integer a = abs(e);
  if (!a.fits_ulong_p())
    throw BudgetExceeded("exponent too large to expand during collection");
  return a.get_ui();
}

} // namespace

void PcPresentation::push_central(unsigned weight) {
  const std::size_t g = size();
  weights.push_back(weight);
  relative_orders.emplace_back(0);
  powers.emplace_back();
  conj.emplace_back(g, unit(g));
  conj_inv.emplace_back(g, unit(g));
  commute.emplace_back(g, char{1});
}

void PcPresentation::refresh_commute() {
  for (std::size_t j = 0; j < size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      commute[j][i] = is_unit(conj[j][i], j) && is_unit(conj_inv[j][i], j);
}

// ---------------------------------------------------------------------------
// Collector

void Collector::tick() {
  if (++steps_ > budget_.max_steps)
    throw BudgetExceeded("collection exceeded " + std::to_string(budget_.max_steps) +
                         " steps");
}

GenExpWord Collector::take_suffix(ExponentVector &v, std::size_t g) {
  GenExpWord s;
  for (std::size_t j = g + 1; j < v.size(); ++j)
    if (v[j] != 0) {
      s.emplace_back(static_cast<std::uint32_t>(j), std::move(v[j]));
      v[j] = 0;
    }
  return s;
}

bool Collector::suffix_commutes(const ExponentVector &v, std::size_t g) const {
  for (std::size_t j = g + 1; j < v.size(); ++j)
    if (v[j] != 0 && !pc_->commute[j][g])
      return false;
  return true;
}

// Adds e to the exponent of a_g and folds the power relation. Everything to
// the right of a_g is assumed to commute with a_g.
void Collector::add_exponent(ExponentVector &v, std::size_t g, const Integer &e) {
  v[g] += e;
  if (budget_.max_bits && bit_size(v[g]) > budget_.max_bits)
    throw BudgetExceeded("exponent exceeds " + std::to_string(budget_.max_bits) + " bits");
  if (!pc_->finite(g))
    return;
  const Integer &m = pc_->relative_orders[g];
  if (v[g] >= 0 && v[g] < m)
    return;
  Integer q = floor_div(v[g], m);
  v[g] -= q * m;
  // a_g^{r + q m} S = a_g^r w^q S with w the power relation.
  GenExpWord suffix = take_suffix(v, g);
  multiply_power(v, pc_->powers[g], q);
  multiply_word(v, suffix);
}

void Collector::multiply_letter(ExponentVector &v, std::size_t g, int sign) {
  tick();
  if (suffix_commutes(v, g)) {
    add_exponent(v, g, Integer(sign));
    return;
  }
  // v a_g^s = prefix a_g^{v_g + s} prod_j (a_j^{a_g^s})^{v_j}
  GenExpWord suffix = take_suffix(v, g);
  add_exponent(v, g, Integer(sign));
  const auto &table = sign > 0 ? pc_->conj : pc_->conj_inv;
  for (const auto &[j, e] : suffix)
    multiply_power(v, table[j][g], e);
}

void Collector::multiply_gen(ExponentVector &v, std::size_t g, const Integer &e) {
  if (e == 0)
    return;
  if (suffix_commutes(v, g)) {
    tick();
    add_exponent(v, g, e);
    return;
  }
  const int sign = e > 0 ? 1 : -1;
  if (abs(e) <= kExpandLimit) {
    const unsigned long count = checked_count(e);
    for (unsigned long k = 0; k < count; ++k)
      multiply_letter(v, g, sign);
    return;
  }
  // v a_g^e = prefix a_g^{v_g + e} S^{a_g^e}
  GenExpWord suffix = take_suffix(v, g);
  tick();
  add_exponent(v, g, e);
  multiply_word(v, to_gen_exp(conjugate_by_power(to_dense(suffix, v.size()), g, e)));
}

// x^{a_g^e} for x in <a_{g+1}, ...>. Conjugation by a_g^{2^k} is tabulated
// on generators by repeated squaring of the automorphism.
ExponentVector Collector::conjugate_by_power(const ExponentVector &x, std::size_t g, Integer e) {
  const auto &conj = e > 0 ? pc_->conj : pc_->conj_inv;
  e = abs(e);
  const std::size_t n = pc_->size();
  std::vector<ExponentVector> table(n);
  for (std::size_t j = g + 1; j < n; ++j)
    table[j] = to_dense(conj[j][g], n);

  auto apply = [&](const std::vector<ExponentVector> &t, const ExponentVector &y) {
    ExponentVector r = identity();
    for (std::size_t j = g + 1; j < n; ++j)
      if (y[j] != 0)
        multiply_word(r, to_gen_exp(power(t[j], y[j])));
    return r;
  };

  ExponentVector out = x;
  while (true) {
    if (mpz_odd_p(e.get_mpz_t()))
      out = apply(table, out);
    e >>= 1;
    if (e == 0)
      return out;
    std::vector<ExponentVector> squared(n);
    for (std::size_t j = g + 1; j < n; ++j)
      squared[j] = apply(table, table[j]);
    table = std::move(squared);
  }
}

void Collector::multiply_word(ExponentVector &v, const GenExpWord &w) {
  for (const auto &[g, e] : w)
    multiply_gen(v, g, e);
}

void Collector::multiply_inverse_word(ExponentVector &v, const GenExpWord &w) {
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    multiply_gen(v, it->first, -it->second);
}

void Collector::multiply_power(ExponentVector &v, const GenExpWord &w, const Integer &e) {
  if (e == 0 || w.empty())
    return;
  if (w.size() == 1) {
    multiply_gen(v, w[0].first, w[0].second * e);
    return;
  }
  if (abs(e) > kExpandLimit) {
    ExponentVector base = identity();
    multiply_word(base, w);
    multiply_word(v, to_gen_exp(power(base, e)));
    return;
  }
  const unsigned long count = checked_count(e);
  for (unsigned long k = 0; k < count; ++k) {
    if (e > 0)
      multiply_word(v, w);
    else
      multiply_inverse_word(v, w);
  }
}

ExponentVector Collector::product(const ExponentVector &a, const ExponentVector &b) {
  ExponentVector v = a;
  multiply_word(v, to_gen_exp(b));
  return v;
}

ExponentVector Collector::inverse(const ExponentVector &a) {
  ExponentVector v = identity();
  multiply_inverse_word(v, to_gen_exp(a));
  return v;
}

ExponentVector Collector::power(const ExponentVector &a, Integer k) {
  ExponentVector base = k < 0 ? inverse(a) : a;
  k = abs(k);
  ExponentVector result = identity();
  while (k != 0) {
    if (mpz_odd_p(k.get_mpz_t()))
      result = product(result, base);
    k >>= 1;
    if (k != 0)
      base = product(base, base);
  }
  return result;
}

ExponentVector Collector::conjugate(const ExponentVector &x, const ExponentVector &by) {
  return product(product(inverse(by), x), by);
}

// ---------------------------------------------------------------------------
// Consistency tests

namespace {

struct CheckFilter {
  // Applied as: triple(i, j, k), pair(i, j) with i < j < k.
  std::function<bool(std::size_t, std::size_t, std::size_t)> triple;
  std::function<bool(std::size_t, std::size_t)> pair;
};

using CheckSink =
    std::function<void(const ExponentVector &, const ExponentVector &, const std::string &)>;

std::string describe(const char *what, std::size_t a, std::size_t b, std::size_t c = SIZE_MAX) {
  std::string s = std::string(what) + "(" + std::to_string(a) + "," + std::to_string(b);
  if (c != SIZE_MAX)
    s += "," + std::to_string(c);
  return s + ")";
}

void run_checks(const PcPresentation &pc, Collector &col, const CheckFilter &filter,
                const CheckSink &sink) {
  const std::size_t n = pc.size();
  auto signs = [&](std::size_t g) {
    return pc.finite(g) ? std::vector<int>{1} : std::vector<int>{1, -1};
  };
  auto gen = [&](std::size_t g, const Integer &e) {
    ExponentVector v = col.identity();
    col.multiply_gen(v, g, e);
    return v;
  };

  // (a_k a_j^s) a_i^t = a_k (a_j^s a_i^t) for k > j > i.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < j; ++i) {
        if (!filter.triple(i, j, k))
          continue;
        for (int sk : signs(k))
          for (int sj : signs(j))
            for (int si : signs(i)) {
              ExponentVector lhs = gen(k, Integer(sk));
              col.multiply_gen(lhs, j, Integer(sj));
              col.multiply_gen(lhs, i, Integer(si));
              ExponentVector ji = gen(j, Integer(sj));
              col.multiply_gen(ji, i, Integer(si));
              ExponentVector rhs = gen(k, Integer(sk));
              col.multiply_word(rhs, to_gen_exp(ji));
              sink(lhs, rhs, describe("assoc", k, j, i));
            }
      }

  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      if (!filter.pair(i, j))
        continue;
      if (pc.finite(j)) {
        // (a_j^m) a_i = a_j^{m-1} (a_j a_i)
        const Integer &m = pc.relative_orders[j];
        ExponentVector lhs = to_dense(pc.powers[j], n);
        col.multiply_gen(lhs, i, Integer(1));
        ExponentVector ji = gen(j, Integer(1));
        col.multiply_gen(ji, i, Integer(1));
        ExponentVector rhs = gen(j, m - 1);
        col.multiply_word(rhs, to_gen_exp(ji));
        sink(lhs, rhs, describe("power-left", j, i));
      }
      if (pc.finite(i)) {
        // a_j (a_i^m) = (a_j a_i) a_i^{m-1}
        const Integer &m = pc.relative_orders[i];
        ExponentVector lhs = gen(j, Integer(1));
        col.multiply_word(lhs, pc.powers[i]);
        ExponentVector rhs = gen(j, Integer(1));
        col.multiply_gen(rhs, i, Integer(1));
        col.multiply_gen(rhs, i, m - 1);
        sink(lhs, rhs, describe("power-right", j, i));
      }
      // a_j^s = (a_j^s a_i^t) a_i^-t
      for (int sj : signs(j))
        for (int si : {1, -1}) {
          ExponentVector lhs = gen(j, Integer(sj));
          ExponentVector rhs = gen(j, Integer(sj));
          col.multiply_gen(rhs, i, Integer(si));
          col.multiply_gen(rhs, i, Integer(-si));
          sink(lhs, rhs, describe("inverse", j, i));
        }
    }

  for (std::size_t i = 0; i < n; ++i) {
    if (!pc.finite(i))
      continue;
    // a_i (a_i^m) = (a_i^m) a_i
    ExponentVector lhs = gen(i, Integer(1));
    col.multiply_word(lhs, pc.powers[i]);
    ExponentVector rhs = to_dense(pc.powers[i], n);
    col.multiply_gen(rhs, i, Integer(1));
    sink(lhs, rhs, describe("power-self", i, i));
  }
}

} // namespace

std::vector<std::string> check_consistency(const PcPresentation &pc, CollectBudget budget) {
  Collector col(pc, budget);
  std::vector<std::string> failures;
  CheckFilter all{[](std::size_t, std::size_t, std::size_t) { return true; },
                  [](std::size_t, std::size_t) { return true; }};
  run_checks(pc, col, all,
             [&](const ExponentVector &lhs, const ExponentVector &rhs, const std::string &what) {
               if (lhs != rhs)
                 failures.push_back(what);
             });
  return failures;
}

namespace {

// For a weighted presentation of class c, the tests on triples of total
// weight <= c (pairs: <= c) imply all the others.
std::vector<std::string> weighted_consistency(const PcPresentation &pc, unsigned c,
                                              CollectBudget budget) {
  Collector col(pc, budget);
  std::vector<std::string> failures;
  const auto &w = pc.weights;
  CheckFilter weighted{
      [&](std::size_t i, std::size_t j, std::size_t k) { return w[i] + w[j] + w[k] <= c; },
      [&](std::size_t i, std::size_t j) { return w[i] + w[j] <= c; }};
  run_checks(pc, col, weighted,
             [&](const ExponentVector &lhs, const ExponentVector &rhs, const std::string &what) {
               if (lhs != rhs)
                 failures.push_back(what);
             });
  return failures;
}

} // namespace

// ---------------------------------------------------------------------------
// NilpotentPresentation

NilpotentPresentation::NilpotentPresentation(AlphabetPtr source) : source_(std::move(source)) {
  if (!source_)
    throw DomainError("nilpotent presentation needs a source alphabet");
  epimorphism_.resize(source_->size());
}

std::pair<std::size_t, std::size_t> NilpotentPresentation::weight_range(unsigned k) const {
  const auto &w = pc_.weights;
  auto lo = std::lower_bound(w.begin(), w.end(), k);
  auto hi = std::upper_bound(w.begin(), w.end(), k);
  return {static_cast<std::size_t>(lo - w.begin()), static_cast<std::size_t>(hi - w.begin())};
}

ExponentVector NilpotentPresentation::image(const Word &w) const {
  if (!same_alphabet(w.alphabet(), source_))
    throw AlphabetMismatch();
  Collector col = collector();
  ExponentVector v = col.identity();
  for (const Letter &l : w.letters()) {
    if (l.sign > 0)
      col.multiply_word(v, epimorphism_[l.gen]);
    else
      col.multiply_inverse_word(v, epimorphism_[l.gen]);
  }
  return v;
}

ExponentVector NilpotentPresentation::collect(std::span<const PcLetter> letters) const {
  Collector col = collector();
  ExponentVector v = col.identity();
  for (const PcLetter &l : letters) {
    if (l.gen >= size() || (l.sign != 1 && l.sign != -1))
      throw DomainError("pc letter out of range");
    col.multiply_gen(v, l.gen, Integer(l.sign));
  }
  return v;
}

NilpotentPresentation NilpotentPresentation::truncated(unsigned c) const {
  NilpotentPresentation out(source_);
  const std::size_t keep = weight_range(c + 1).first;
  auto cut = [keep](const GenExpWord &w) {
    GenExpWord r;
    for (const auto &[g, e] : w)
      if (g < keep)
        r.emplace_back(g, e);
    return r;
  };
  PcPresentation &pc = out.pc_;
  for (std::size_t g = 0; g < keep; ++g) {
    pc.weights.push_back(pc_.weights[g]);
    pc.relative_orders.push_back(pc_.relative_orders[g]);
    pc.powers.push_back(cut(pc_.powers[g]));
    pc.conj.emplace_back();
    pc.conj_inv.emplace_back();
    for (std::size_t i = 0; i < g; ++i) {
      pc.conj.back().push_back(cut(pc_.conj[g][i]));
      pc.conj_inv.back().push_back(cut(pc_.conj_inv[g][i]));
    }
    pc.commute.emplace_back(g, char{0});
  }
  pc.refresh_commute();
  for (std::size_t x = 0; x < epimorphism_.size(); ++x)
    out.epimorphism_[x] = cut(epimorphism_[x]);
  out.definitions_.assign(definitions_.begin(),
                          definitions_.begin() + static_cast<std::ptrdiff_t>(keep));
  out.class_ = std::min(c, class_);
  out.budget_ = budget_;
  return out;
}

std::string NilpotentPresentation::definition_text(std::size_t g) const {
  const Definition &d = definitions_.at(g);
  switch (d.kind) {
  case Definition::Kind::source:
    return source_->name(d.source);
  case Definition::Kind::power:
    return "(" + definition_text(d.j) + ")^" + pc_.relative_orders[d.j].get_str();
  case Definition::Kind::commutator:
    return "[" + definition_text(d.j) + "," + definition_text(d.i) + "]";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Induction step

namespace {

// Abelian normal form over the surviving tails: exponents of torsion tails
// are reduced into [0, d) by folding their power relations.
struct TailQuotient {
  std::vector<bool> survives;
  std::vector<Integer> order;          // 0 for free survivors
  std::vector<SparseRow> power_rhs;    // torsion survivors
  std::vector<SparseRow> expr;         // every tail in surviving tails

  void normalize(SparseRow &v) const {
    for (auto it = v.begin(); it != v.end();) {
      const std::size_t q = it->first;
      if (order[q] != 0 && (it->second < 0 || it->second >= order[q])) {
        Integer k = floor_div(it->second, order[q]);
        it->second -= k * order[q];
        for (const auto &[c, x] : power_rhs[q]) {
          auto [p, inserted] = v.try_emplace(c, k * x);
          if (!inserted) {
            p->second += k * x;
            if (p->second == 0)
              v.erase(p);
          }
        }
      }
      it = it->second == 0 ? v.erase(it) : std::next(it);
    }
  }
};

TailQuotient solve_tails(const HermiteAccumulator &hnf) {
  const std::size_t t = hnf.cols();
  TailQuotient tq;
  tq.survives.assign(t, true);
  tq.order.assign(t, Integer(0));
  tq.power_rhs.assign(t, {});
  tq.expr.assign(t, {});
  const auto &rows = hnf.rows();
  for (std::size_t col = t; col-- > 0;) {
    auto found = rows.find(col);
    if (found == rows.end()) {
      tq.expr[col] = {{col, Integer(1)}};
      continue;
    }
    const SparseRow &row = found->second;
    const Integer d = row.begin()->second;
    SparseRow combo;
    for (auto it = std::next(row.begin()); it != row.end(); ++it)
      for (const auto &[c, x] : tq.expr[it->first]) {
        auto [p, inserted] = combo.try_emplace(c, -it->second * x);
        if (!inserted) {
          p->second -= it->second * x;
          if (p->second == 0)
            combo.erase(p);
        }
      }
    tq.normalize(combo);
    if (d == 1) {
      tq.survives[col] = false;
      tq.expr[col] = std::move(combo);
    } else {
      tq.order[col] = d;
      tq.power_rhs[col] = std::move(combo);
      tq.expr[col] = {{col, Integer(1)}};
    }
  }
  return tq;
}

using DefKey = std::tuple<int, std::size_t, std::size_t>;

DefKey key_of(const Definition &d) {
  switch (d.kind) {
  case Definition::Kind::source:
    return {0, d.source, 0};
  case Definition::Kind::power:
    return {1, d.j, 0};
  case Definition::Kind::commutator:
    return {2, d.j, d.i};
  }
  return {3, 0, 0};
}

} // namespace

NilpotentPresentation extend_class(const NilpotentPresentation &q, const Presentation &pres,
                                   const NqOptions &options) {
  if (!same_alphabet(q.source_alphabet(), pres.alphabet()))
    throw AlphabetMismatch();
  const unsigned next = q.nilpotency_class() + 1;
  const std::size_t n = q.size();
  const PcPresentation &old = q.pc();
  const CollectBudget budget{options.max_collection_steps, options.max_bits};

  // Every relation that does not define a generator receives a fresh
  // central tail of weight `next`.
  std::set<DefKey> defining;
  for (const auto &d : q.definitions())
    defining.insert(key_of(d));
  std::vector<Definition> origins;
  for (std::size_t x = 0; x < pres.alphabet()->size(); ++x)
    if (!defining.count({0, x, 0}))
      origins.push_back({Definition::Kind::source, x, 0, 0});
  for (std::size_t i = 0; i < n; ++i)
    if (old.finite(i) && !defining.count({1, i, 0}))
      origins.push_back({Definition::Kind::power, 0, i, 0});
  // Tails on a_j^{a_i} with a_i of weight 1 go last so that, after Hermite
  // elimination, new generators are preferably defined by them.
  for (int light = 0; light < 2; ++light)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i) {
        if (old.weights[i] + old.weights[j] > next)
          continue;
        if ((old.weights[i] == 1) != (light == 1))
          continue;
        if (!defining.count({2, j, i}))
          origins.push_back({Definition::Kind::commutator, 0, j, i});
      }
  const std::size_t tails = origins.size();
  if (n + tails > options.max_generators * 8)
    throw BudgetExceeded("class " + std::to_string(next) + " needs " + std::to_string(tails) +
                         " tails");

  PcPresentation ext = old;
  std::vector<GenExpWord> epi = q.epimorphism();
  for (std::size_t t = 0; t < tails; ++t) {
    const std::size_t g = n + t;
    ext.push_central(next);
    const GenExpWord tail = unit(g);
    const Definition &o = origins[t];
    switch (o.kind) {
    case Definition::Kind::source:
      epi[o.source].push_back(tail.front());
      break;
    case Definition::Kind::power:
      ext.powers[o.j].push_back(tail.front());
      break;
    case Definition::Kind::commutator:
      ext.conj[o.j][o.i].push_back(tail.front());
      ext.commute[o.j][o.i] = 0;
      break;
    }
  }
  Collector col(ext, budget);

  // Conjugates by inverses follow from the positive ones: if
  // a_j^{a_i^-1} = u in the old quotient then in the extension it is u s
  // where u^{a_i} = a_j s^-1. Larger i first, so the collection below only
  // meets relations that are already updated.
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (old.weights[i] + old.weights[j] > next)
        continue;
      const GenExpWord &u = old.conj_inv[j][i];
      ExponentVector v = col.identity();
      for (const auto &[l, e] : u)
        col.multiply_power(v, ext.conj[l][i], e);
      for (std::size_t g = 0; g < n; ++g)
        if (v[g] != (g == j ? 1 : 0))
          throw InternalError("inverse conjugate does not invert in extension");
      GenExpWord updated = u;
      for (std::size_t g = n; g < n + tails; ++g)
        if (v[g] != 0)
          updated.emplace_back(static_cast<std::uint32_t>(g), -v[g]);
      ext.conj_inv[j][i] = std::move(updated);
      ext.commute[j][i] = is_unit(ext.conj[j][i], j) && is_unit(ext.conj_inv[j][i], j);
    }

  HermiteAccumulator hnf(tails, options.max_bits);
  auto relation = [&](const ExponentVector &lhs, const ExponentVector &rhs,
                      const std::string &what) {
    SparseRow row;
    for (std::size_t g = 0; g < n; ++g)
      if (lhs[g] != rhs[g])
        throw InternalError("class " + std::to_string(next - 1) +
                            " quotient inconsistent at " + what);
    for (std::size_t g = n; g < n + tails; ++g)
      if (lhs[g] != rhs[g])
        row.emplace(g - n, lhs[g] - rhs[g]);
    if (!row.empty())
      hnf.add(std::move(row));
  };

  const auto &w = ext.weights;
  CheckFilter weighted{
      [&](std::size_t i, std::size_t j, std::size_t k) {
        return k < n && w[i] + w[j] + w[k] <= next;
      },
      [&](std::size_t i, std::size_t j) { return j < n && w[i] + w[j] <= next; }};
  run_checks(ext, col, weighted, relation);

  const ExponentVector zero = col.identity();
  for (const Word &r : pres.relators()) {
    ExponentVector v = col.identity();
    for (const Letter &l : r.letters()) {
      if (l.sign > 0)
        col.multiply_word(v, epi[l.gen]);
      else
        col.multiply_inverse_word(v, epi[l.gen]);
    }
    relation(v, zero, "relator");
  }
  hnf.reduce();

  const TailQuotient tq = solve_tails(hnf);
  std::vector<std::size_t> new_index(tails, SIZE_MAX);
  std::size_t survivors = 0;
  for (std::size_t t = 0; t < tails; ++t)
    if (tq.survives[t])
      new_index[t] = n + survivors++;
  if (n + survivors > options.max_generators)
    throw BudgetExceeded("nilpotent quotient exceeds " + std::to_string(options.max_generators) +
                         " pc generators");

  auto convert = [&](const GenExpWord &rel) {
    GenExpWord out;
    SparseRow tail_part;
    for (const auto &[g, e] : rel) {
      if (g < n) {
        out.emplace_back(g, e);
        continue;
      }
      for (const auto &[c, x] : tq.expr[g - n]) {
        auto [p, inserted] = tail_part.try_emplace(c, e * x);
        if (!inserted) {
          p->second += e * x;
          if (p->second == 0)
            tail_part.erase(p);
        }
      }
    }
    tq.normalize(tail_part);
    for (const auto &[c, x] : tail_part)
      out.emplace_back(static_cast<std::uint32_t>(new_index[c]), x);
    return out;
  };

  NilpotentPresentation result(q.source_alphabet());
  PcPresentation &pc = result.pc_;
  for (std::size_t g = 0; g < n; ++g) {
    pc.weights.push_back(old.weights[g]);
    pc.relative_orders.push_back(old.relative_orders[g]);
    pc.powers.push_back(convert(ext.powers[g]));
    pc.conj.emplace_back();
    pc.conj_inv.emplace_back();
    for (std::size_t i = 0; i < g; ++i) {
      pc.conj.back().push_back(convert(ext.conj[g][i]));
      pc.conj_inv.back().push_back(convert(ext.conj_inv[g][i]));
    }
    pc.commute.emplace_back(g, char{0});
  }
  result.definitions_ = q.definitions();
  for (std::size_t t = 0; t < tails; ++t) {
    if (!tq.survives[t])
      continue;
    const std::size_t g = pc.size();
    pc.push_central(next);
    pc.relative_orders[g] = tq.order[t];
    result.definitions_.push_back(origins[t]);
  }
  for (std::size_t t = 0; t < tails; ++t) {
    if (!tq.survives[t] || tq.order[t] == 0)
      continue;
    GenExpWord rhs;
    for (const auto &[c, x] : tq.power_rhs[t])
      rhs.emplace_back(static_cast<std::uint32_t>(new_index[c]), x);
    pc.powers[new_index[t]] = std::move(rhs);
  }
  pc.refresh_commute();
  for (std::size_t x = 0; x < epi.size(); ++x)
    result.epimorphism_[x] = convert(epi[x]);
  result.class_ = next;
  result.budget_ = budget;

  if (options.verify_each_class) {
    auto failures = options.exhaustive_check ? check_consistency(pc, budget)
                                             : weighted_consistency(pc, next, budget);
    if (!failures.empty())
      throw InternalError("class " + std::to_string(next) +
                          " presentation failed consistency test " + failures.front());
    for (const Word &r : pres.relators())
      if (!is_zero(result.image(r)))
        throw InternalError("relator " + r.to_string() + " survives in class " +
                            std::to_string(next) + " quotient");
  }
  return result;
}

NilpotentPresentation nilpotent_quotient(const Presentation &pres, unsigned c,
                                         const NqOptions &options) {
  if (c < 1)
    throw DomainError("class must be at least 1");
  if (c > options.max_class)
    throw BudgetExceeded("class " + std::to_string(c) + " exceeds the configured maximum " +
                         std::to_string(options.max_class));
  NilpotentPresentation np(pres.alphabet());
  bool stable = false;
  for (unsigned k = 1; k <= c; ++k) {
    if (stable) {
      // gamma_k = gamma_{k+1} already; higher classes add nothing.
      np.class_ = k;
      continue;
    }
    const std::size_t before = np.size();
    np = extend_class(np, pres, options);
    stable = np.size() == before;
  }
  return np;
}

} // namespace nqkit
