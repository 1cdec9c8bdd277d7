#include "nqkit/magnus.hpp"

#include "nqkit/error.hpp"

#include <algorithm>

namespace nqkit {

TruncatedSeries::TruncatedSeries(unsigned degree_cap) : cap_(degree_cap) {
  if (degree_cap < 1)
    throw DomainError("degree cap must be at least 1");
}

TruncatedSeries TruncatedSeries::one(unsigned degree_cap) {
  TruncatedSeries s(degree_cap);
  s.terms_.emplace(Monomial{}, 1);
  return s;
}

Integer TruncatedSeries::coefficient(const Monomial &m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

void TruncatedSeries::add(const Monomial &m, const Integer &c) {
  if (m.size() > cap_ || c == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  }
}

int TruncatedSeries::lowest_degree() const {
  int best = -1;
  for (const auto &[m, c] : terms_) {
    int d = static_cast<int>(m.size());
    if (best < 0 || d < best)
      best = d;
  }
  return best;
}

std::map<Monomial, Integer> TruncatedSeries::homogeneous(unsigned degree) const {
  std::map<Monomial, Integer> out;
  for (const auto &[m, c] : terms_)
    if (m.size() == degree)
      out.emplace(m, c);
  return out;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries &other) const {
  const unsigned cap = std::min(cap_, other.cap_);
  TruncatedSeries out(cap);
  for (const auto &[m1, c1] : terms_) {
    if (m1.size() > cap)
      continue;
    for (const auto &[m2, c2] : other.terms_) {
      if (m1.size() + m2.size() > cap)
        continue;
      Monomial m = m1;
      m.insert(m.end(), m2.begin(), m2.end());
      out.add(m, c1 * c2);
    }
  }
  return out;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries &other) const {
  TruncatedSeries out(std::min(cap_, other.cap_));
  for (const auto &[m, c] : terms_)
    out.add(m, c);
  for (const auto &[m, c] : other.terms_)
    out.add(m, -c);
  return out;
}

void TruncatedSeries::multiply_letter(std::uint32_t g, int sign) {
  std::map<Monomial, Integer> next;
  auto accumulate = [&](Monomial m, const Integer &c) {
    auto [it, inserted] = next.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0)
        next.erase(it);
    }
  };
  for (const auto &[m, c] : terms_) {
    accumulate(m, c);
    Monomial grown = m;
    for (unsigned k = 1; m.size() + k <= cap_; ++k) {
      grown.push_back(g);
      // (1+X)^-1 = sum (-X)^k; (1+X) stops after k = 1.
      if (sign > 0) {
        accumulate(grown, c);
        break;
      }
      accumulate(grown, (k % 2 == 0) ? Integer(c) : Integer(-c));
    }
  }
  terms_ = std::move(next);
}

TruncatedSeries embed(const Word &w, unsigned degree_cap) {
  TruncatedSeries s = TruncatedSeries::one(degree_cap);
  for (const Letter &l : w.letters())
    s.multiply_letter(l.gen, l.sign);
  return s;
}

std::string WordWeight::to_string() const {
  switch (kind) {
  case Kind::finite:
    return std::to_string(value);
  case Kind::exceeds_cap:
    return "exceeds cap";
  case Kind::identity:
    return "identity";
  }
  return "?";
}

WordWeight weight_of(const Word &w, unsigned cap) {
  if (w.is_identity())
    return {WordWeight::Kind::identity, 0};
  TruncatedSeries s = embed(w, cap);
  s.add(Monomial{}, -1);
  int d = s.lowest_degree();
  if (d < 0)
    return {WordWeight::Kind::exceeds_cap, 0};
  return {WordWeight::Kind::finite, static_cast<unsigned>(d)};
}

bool is_lyndon(const Monomial &w) {
  if (w.empty())
    return false;
  for (std::size_t r = 1; r < w.size(); ++r) {
    // Compare w with its rotation by r.
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto a = w[i];
      auto b = w[(i + r) % w.size()];
      if (a < b)
        break;
      if (a > b || i + 1 == w.size())
        return false;
    }
  }
  return true;
}

std::vector<Monomial> lyndon_words(unsigned q, unsigned n) {
  if (q < 1 || n < 1)
    throw DomainError("lyndon_words needs q >= 1 and n >= 1");
  // Duval's generation: produces all Lyndon words of length <= n in
  // lexicographic order; keep those of length exactly n.
  std::vector<Monomial> out;
  Monomial w{0};
  while (!w.empty()) {
    if (w.size() == n)
      out.push_back(w);
    const std::size_t m = w.size();
    while (w.size() < n)
      w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == q - 1)
      w.pop_back();
    if (!w.empty())
      ++w.back();
  }
  return out;
}

namespace {

using Poly = std::map<Monomial, Integer>;

void poly_add(Poly &p, const Monomial &m, const Integer &c) {
  if (c == 0)
    return;
  auto [it, inserted] = p.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      p.erase(it);
  }
}

Poly poly_mul(const Poly &a, const Poly &b) {
  Poly out;
  for (const auto &[m1, c1] : a)
    for (const auto &[m2, c2] : b) {
      Monomial m = m1;
      m.insert(m.end(), m2.begin(), m2.end());
      poly_add(out, m, c1 * c2);
    }
  return out;
}

Poly lie_bracket(const Poly &a, const Poly &b) {
  Poly out = poly_mul(a, b);
  for (const auto &[m, c] : poly_mul(b, a))
    poly_add(out, m, -c);
  return out;
}

} // namespace

std::map<Monomial, Integer> lyndon_bracket(const Monomial &lyndon) {
  if (lyndon.size() == 1)
    return {{lyndon, Integer(1)}};
  // Standard factorization: the right factor is the longest proper suffix
  // that is itself Lyndon.
  for (std::size_t split = 1; split < lyndon.size(); ++split) {
    Monomial right(lyndon.begin() + static_cast<std::ptrdiff_t>(split), lyndon.end());
    if (is_lyndon(right)) {
      Monomial left(lyndon.begin(), lyndon.begin() + static_cast<std::ptrdiff_t>(split));
      return lie_bracket(lyndon_bracket(left), lyndon_bracket(right));
    }
  }
  throw InternalError("word has no standard factorization");
}

LieElement leading_lie(const Word &w, unsigned cap) {
  if (w.is_identity())
    throw DomainError("leading_lie of the identity");
  TruncatedSeries s = embed(w, cap);
  s.add(Monomial{}, -1);
  int degree = s.lowest_degree();
  if (degree < 0)
    throw BudgetExceeded("weight exceeds cap " + std::to_string(cap));

  LieElement out;
  out.weight = static_cast<unsigned>(degree);
  Poly remainder = s.homogeneous(out.weight);
  // Each Lyndon bracket equals its own word plus lexicographically larger
  // monomials, so the least monomial of the remainder fixes one coordinate.
  while (!remainder.empty()) {
    const auto [least, coeff] = *remainder.begin();
    if (!is_lyndon(least))
      throw InternalError("leading term is not a Lie element");
    Poly bracket = lyndon_bracket(least);
    auto lead = bracket.begin();
    if (lead->first != least || lead->second != 1)
      throw InternalError("Lyndon bracket is not unitriangular");
    out.coords.emplace(least, coeff);
    for (const auto &[m, c] : bracket)
      poly_add(remainder, m, -coeff * c);
  }
  return out;
}

LabuteReport labute_hypothesis(const Word &w, unsigned cap) {
  LieElement lie = leading_lie(w, cap);
  Integer g = 0;
  for (const auto &[m, c] : lie.coords)
    g = gcd(g, c);
  return {lie.weight, g == 1, g};
}

std::string monomial_to_string(const Monomial &m, const Alphabet &alphabet) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i)
      out += ' ';
    out += alphabet.name(m[i]);
  }
  return out;
}

} // namespace nqkit
