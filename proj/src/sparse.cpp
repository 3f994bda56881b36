#include "vem/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace vem {

void TripletBuffer::add(std::size_t row, std::size_t col, double value) {
  if (row >= rows_ || col >= cols_) {
    throw std::out_of_range("triplet (" + std::to_string(row) + ", " + std::to_string(col) +
                            ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  entries_.push_back({row, col, value});
}

CsrMatrix::CsrMatrix(const TripletBuffer& triplets)
    : rows_(triplets.rows()), cols_(triplets.cols()), row_ptr_(triplets.rows() + 1, 0) {
  const auto entries = triplets.entries();

  // Stable counting sort by row, then stable sort by column inside each
  // row: duplicates stay in insertion order and are summed in that order.
  std::vector<std::size_t> count(rows_ + 1, 0);
  for (const Triplet& t : entries) ++count[t.row + 1];
  std::partial_sum(count.begin(), count.end(), count.begin());
  std::vector<std::size_t> order(entries.size());
  {
    auto next = count;
    for (std::size_t k = 0; k < entries.size(); ++k) order[next[entries[k].row]++] = k;
  }

  col_idx_.reserve(entries.size());
  values_.reserve(entries.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    auto first = order.begin() + static_cast<std::ptrdiff_t>(count[r]);
    auto last = order.begin() + static_cast<std::ptrdiff_t>(count[r + 1]);
    std::stable_sort(first, last,
                     [&](std::size_t a, std::size_t b) { return entries[a].col < entries[b].col; });
    for (auto it = first; it != last; ++it) {
      const Triplet& t = entries[*it];
      if (col_idx_.size() > row_ptr_[r] && col_idx_.back() == t.col) {
        values_.back() += t.value;
      } else {
        col_idx_.push_back(t.col);
        values_.push_back(t.value);
      }
    }
    row_ptr_[r + 1] = col_idx_.size();
  }
}

double CsrMatrix::at(std::size_t row, std::size_t col) const {
  const auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_.at(row));
  const auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_.at(row + 1));
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y, Execution exec) const {
  if (x.size() != cols_ || y.size() != rows_) {
    throw std::invalid_argument("CsrMatrix::multiply: size mismatch");
  }
  const auto n = static_cast<std::ptrdiff_t>(rows_);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < n; ++r) {
      double sum = 0.0;
      for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) sum += values_[k] * x[col_idx_[k]];
      y[r] = sum;
    }
  } else {
    for (std::ptrdiff_t r = 0; r < n; ++r) {
      double sum = 0.0;
      for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) sum += values_[k] * x[col_idx_[k]];
      y[r] = sum;
    }
  }
}

CsrMatrix CsrMatrix::submatrix(std::span<const std::size_t> rows,
                               std::span<const std::size_t> cols) const {
  constexpr auto absent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> col_map(cols_, absent);
  for (std::size_t k = 0; k < cols.size(); ++k) col_map.at(cols[k]) = k;

  CsrMatrix out;
  out.rows_ = rows.size();
  out.cols_ = cols.size();
  out.row_ptr_.assign(rows.size() + 1, 0);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::size_t r = rows[k];
    for (std::size_t p = row_ptr_.at(r); p < row_ptr_[r + 1]; ++p) {
      const std::size_t c = col_map[col_idx_[p]];
      if (c == absent) continue;
      out.col_idx_.push_back(c);
      out.values_.push_back(values_[p]);
    }
    // Column order is preserved only if `cols` is ascending.
    if (!std::is_sorted(out.col_idx_.begin() + static_cast<std::ptrdiff_t>(out.row_ptr_[k]),
                        out.col_idx_.end())) {
      throw std::invalid_argument("CsrMatrix::submatrix: column list must be ascending");
    }
    out.row_ptr_[k + 1] = out.col_idx_.size();
  }
  return out;
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(std::min(rows_, cols_), 0.0);
  for (std::size_t r = 0; r < d.size(); ++r) d[r] = at(r, r);
  return d;
}

double CsrMatrix::max_asymmetry() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      worst = std::max(worst, std::abs(values_[p] - at(col_idx_[p], r)));
    }
  }
  return worst;
}

}  // namespace vem
