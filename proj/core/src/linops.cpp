#include "saddle/linops.hpp"

#include "saddle/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace saddle {

namespace {

void compress(int outer, std::vector<SparseMatrix::Triplet>& t, bool by_row,
              std::vector<int>& offsets, std::vector<int>& inner,
              std::vector<double>& values) {
  offsets.assign(outer + 1, 0);
  inner.clear();
  values.clear();
  inner.reserve(t.size());
  values.reserve(t.size());
  for (const auto& e : t) ++offsets[(by_row ? e.row : e.col) + 1];
  for (int i = 0; i < outer; ++i) offsets[i + 1] += offsets[i];
  for (const auto& e : t) {
    inner.push_back(by_row ? e.col : e.row);
    values.push_back(e.value);
  }
}

}  // namespace

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<Triplet> triplets) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("sparse matrix: negative shape");
  for (const auto& e : triplets) {
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols) {
      throw std::invalid_argument("sparse matrix: entry (" + std::to_string(e.row) + "," +
                                  std::to_string(e.col) + ") out of range");
    }
  }
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Triplet> merged;
  merged.reserve(triplets.size());
  for (const auto& e : triplets) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  std::erase_if(merged, [](const Triplet& e) { return e.value == 0.0; });

  SparseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  compress(rows, merged, true, m.row_offsets_, m.row_columns_, m.row_values_);
  std::stable_sort(merged.begin(), merged.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  compress(cols, merged, false, m.col_offsets_, m.col_rows_, m.col_values_);
  return m;
}

double SparseMatrix::coeff(int row, int col) const {
  const auto first = row_columns_.begin() + row_offsets_[row];
  const auto last = row_columns_.begin() + row_offsets_[row + 1];
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return 0.0;
  return row_values_[it - row_columns_.begin()];
}

double SparseMatrix::max_abs_entry() const {
  double m = 0.0;
  for (double v : row_values_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> SparseMatrix::to_dense() const {
  std::vector<double> d(static_cast<std::size_t>(rows_) * cols_, 0.0);
  for (int r = 0; r < rows_; ++r) {
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      d[static_cast<std::size_t>(r) * cols_ + row_columns_[k]] = row_values_[k];
    }
  }
  return d;
}

std::vector<double> apply(const SparseMatrix& a, std::span<const double> y,
                          GradientCounter& counter) {
  if (y.size() != static_cast<std::size_t>(a.cols())) {
    throw std::invalid_argument("apply: vector length " + std::to_string(y.size()) +
                                " != matrix columns " + std::to_string(a.cols()));
  }
  const int rows = a.rows();
  std::vector<double> out(rows, 0.0);
  const int* offsets = a.row_offsets().data();
  const int* columns = a.row_columns().data();
  const double* values = a.row_values().data();
#pragma omp parallel for schedule(static) if (rows >= min_parallel_size())
  for (int r = 0; r < rows; ++r) {
    double s = 0.0;
    for (int k = offsets[r]; k < offsets[r + 1]; ++k) s += values[k] * y[columns[k]];
    out[r] = s;
  }
  counter.increment();
  return out;
}

std::vector<double> apply_transpose(const SparseMatrix& a, std::span<const double> x,
                                    GradientCounter& counter) {
  if (x.size() != static_cast<std::size_t>(a.rows())) {
    throw std::invalid_argument("apply_transpose: vector length " + std::to_string(x.size()) +
                                " != matrix rows " + std::to_string(a.rows()));
  }
  const int cols = a.cols();
  std::vector<double> out(cols, 0.0);
  const int* offsets = a.col_offsets().data();
  const int* rows = a.col_rows().data();
  const double* values = a.col_values().data();
#pragma omp parallel for schedule(static) if (cols >= min_parallel_size())
  for (int c = 0; c < cols; ++c) {
    double s = 0.0;
    for (int k = offsets[c]; k < offsets[c + 1]; ++k) s += values[k] * x[rows[k]];
    out[c] = s;
  }
  counter.increment();
  return out;
}

}  // namespace saddle
