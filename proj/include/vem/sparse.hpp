#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vem {

enum class Execution { serial, parallel };

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Scatter buffer for sparse assembly. Duplicates are kept until
/// finalisation, where they are summed in insertion order.
class TripletBuffer {
public:
  TripletBuffer(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  void add(std::size_t row, std::size_t col, double value);
  void reserve(std::size_t n) { entries_.reserve(n); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const Triplet> entries() const noexcept { return entries_; }

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Triplet> entries_;
};

/// Compressed sparse row matrix with sorted, unique column indices per row.
class CsrMatrix {
public:
  CsrMatrix() = default;
  explicit CsrMatrix(const TripletBuffer& triplets);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  /// Stored value or 0.
  double at(std::size_t row, std::size_t col) const;

  std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const std::size_t> col_idx() const noexcept { return col_idx_; }
  std::span<const double> values() const noexcept { return values_; }

  /// y = A x. Rows are independent, so both paths give identical bits.
  void multiply(std::span<const double> x, std::span<double> y,
                Execution exec = Execution::serial) const;

  /// Restriction to the given rows and columns; `cols` must be ascending.
  CsrMatrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;

  std::vector<double> diagonal() const;

  /// max |A(i, j) - A(j, i)| over stored entries.
  double max_asymmetry() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

}  // namespace vem
