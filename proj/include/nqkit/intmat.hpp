#pragma once

// Exact integer matrices: Hermite and Smith normal forms.

#include "nqkit/integer.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace nqkit {

class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix operator*(const IntMatrix &other) const;
  bool operator==(const IntMatrix &other) const = default;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

Integer determinant(const IntMatrix &m);

struct SmithForm {
  IntMatrix d; // diagonal, d_1 | d_2 | ..., nonnegative
  IntMatrix u; // unimodular, rows x rows
  IntMatrix v; // unimodular, cols x cols; u * m * v == d

  std::vector<Integer> invariant_factors() const; // nonzero diagonal entries
};

SmithForm smith_normal_form(const IntMatrix &m);

// Sparse row over column indices, no zero entries.
using SparseRow = std::map<std::size_t, Integer>;

// Row-style Hermite normal form built one relation at a time. Each stored
// row has a positive pivot at its leading column; entries to the right of
// a pivot in other rows are reduced modulo that pivot.
class HermiteAccumulator {
public:
  explicit HermiteAccumulator(std::size_t cols, std::size_t max_bits = 0)
      : cols_(cols), max_bits_(max_bits) {}

  // Adds a relation; returns false when it was already implied.
  bool add(SparseRow row);

  // Fully reduces entries above pivots.
  void reduce();

  std::size_t cols() const noexcept { return cols_; }
  const std::map<std::size_t, SparseRow> &rows() const noexcept { return rows_; }

private:
  void check_bits(const SparseRow &row) const;

  std::size_t cols_;
  std::size_t max_bits_;
  std::map<std::size_t, SparseRow> rows_; // pivot column -> row
};

} // namespace nqkit
