#include "nqkit/intmat.hpp"

#include "nqkit/error.hpp"

#include <utility>

namespace nqkit {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto &row : rows) {
    if (row.size() != cols_)
      throw DomainError("ragged matrix literal");
    for (long x : row)
      data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix &other) const {
  if (cols_ != other.rows_)
    throw DomainError("matrix shapes do not match");
  IntMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer &a = (*this)(i, k);
      if (a == 0)
        continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        out(i, j) += a * other(k, j);
    }
  return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b)
    return;
  for (std::size_t j = 0; j < cols_; ++j)
    std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b)
    return;
  for (std::size_t i = 0; i < rows_; ++i)
    std::swap((*this)(i, a), (*this)(i, b));
}

Integer determinant(const IntMatrix &m) {
  if (m.rows() != m.cols())
    throw DomainError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0)
    return 1;
  // Bareiss fraction-free elimination.
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0)
        ++swap;
      if (swap == n)
        return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::vector<Integer> SmithForm::invariant_factors() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < d.rows() && i < d.cols(); ++i)
    if (d(i, i) != 0)
      out.push_back(d(i, i));
  return out;
}

namespace {

// row_dst += factor * row_src on a and on the row transform u.
void add_row(IntMatrix &a, IntMatrix &u, std::size_t dst, std::size_t src,
             const Integer &factor) {
  for (std::size_t j = 0; j < a.cols(); ++j)
    a(dst, j) += factor * a(src, j);
  for (std::size_t j = 0; j < u.cols(); ++j)
    u(dst, j) += factor * u(src, j);
}

void add_col(IntMatrix &a, IntMatrix &v, std::size_t dst, std::size_t src,
             const Integer &factor) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    a(i, dst) += factor * a(i, src);
  for (std::size_t i = 0; i < v.rows(); ++i)
    v(i, dst) += factor * v(i, src);
}

} // namespace

SmithForm smith_normal_form(const IntMatrix &m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  for (std::size_t t = 0; t < rows && t < cols; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block goes to (t, t).
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a(i, j) != 0 && (bi == rows || abs(a(i, j)) < abs(a(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == rows)
        break;
      a.swap_rows(t, bi);
      u.swap_rows(t, bi);
      a.swap_cols(t, bj);
      v.swap_cols(t, bj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0)
          continue;
        Integer q = a(i, t) / a(t, t);
        add_row(a, u, i, t, -q);
        if (a(i, t) != 0)
          clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0)
          continue;
        Integer q = a(t, j) / a(t, t);
        add_col(a, v, j, t, -q);
        if (a(t, j) != 0)
          clean = false;
      }
      if (!clean)
        continue;

      // The pivot must divide the rest of the block.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            add_row(a, u, t, i, Integer(1));
            divides = false;
            break;
          }
      if (divides)
        break;
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j)
        a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < rows; ++j)
        u(t, j) = -u(t, j);
    }
  }
  return {std::move(a), std::move(u), std::move(v)};
}

void HermiteAccumulator::check_bits(const SparseRow &row) const {
  if (max_bits_ == 0)
    return;
  for (const auto &[c, x] : row)
    if (bit_size(x) > max_bits_)
      throw BudgetExceeded("relation matrix entry exceeds " + std::to_string(max_bits_) +
                           " bits");
}

namespace {

void axpy(SparseRow &dst, const Integer &factor, const SparseRow &src) {
  if (factor == 0)
    return;
  for (const auto &[c, x] : src) {
    auto [it, inserted] = dst.try_emplace(c, factor * x);
    if (!inserted) {
      it->second += factor * x;
      if (it->second == 0)
        dst.erase(it);
    }
  }
}

SparseRow scaled(const SparseRow &row, const Integer &factor) {
  SparseRow out;
  if (factor == 0)
    return out;
  for (const auto &[c, x] : row)
    out.emplace(c, factor * x);
  return out;
}

} // namespace

bool HermiteAccumulator::add(SparseRow row) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->first >= cols_)
      throw DomainError("relation column out of range");
    it = it->second == 0 ? row.erase(it) : std::next(it);
  }
  bool changed = false;
  while (!row.empty()) {
    check_bits(row);
    const std::size_t pivot = row.begin()->first;
    const Integer lead = row.begin()->second;
    auto found = rows_.find(pivot);
    if (found == rows_.end()) {
      if (lead < 0)
        row = scaled(row, Integer(-1));
      rows_.emplace(pivot, std::move(row));
      return true;
    }
    SparseRow &stored = found->second;
    const Integer b = stored.begin()->second;
    if (lead % b == 0) {
      axpy(row, -(lead / b), stored);
      continue;
    }
    // Replace the stored row by the gcd combination and keep reducing the
    // complementary row, whose leading entry vanishes.
    Integer g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), lead.get_mpz_t(), b.get_mpz_t());
    SparseRow combined = scaled(row, x);
    axpy(combined, y, stored);
    SparseRow rest = scaled(row, Integer(b / g));
    axpy(rest, -(lead / g), stored);
    if (combined.begin()->second < 0)
      combined = scaled(combined, Integer(-1));
    check_bits(combined);
    stored = std::move(combined);
    row = std::move(rest);
    changed = true;
  }
  return changed;
}

void HermiteAccumulator::reduce() {
  for (auto q = rows_.begin(); q != rows_.end(); ++q) {
    const Integer &piv = q->second.begin()->second;
    for (auto p = rows_.begin(); p != q; ++p) {
      auto entry = p->second.find(q->first);
      if (entry == p->second.end())
        continue;
      Integer f = floor_div(entry->second, piv);
      axpy(p->second, -f, q->second);
    }
  }
}

} // namespace nqkit
