#pragma once

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

namespace saddle {

// Payoff matrix held in both compressed-row and compressed-column form so
// that A*y and A^T*x are each a single streaming pass.
class SparseMatrix {
 public:
  struct Triplet {
    int row;
    int col;
    double value;
  };

  SparseMatrix() = default;

  // Duplicate coordinates are summed; entries that sum to exactly zero are
  // dropped. Throws std::invalid_argument on out-of-range coordinates.
  static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> triplets);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nonzeros() const { return row_values_.size(); }

  std::span<const int> row_offsets() const { return row_offsets_; }
  std::span<const int> row_columns() const { return row_columns_; }
  std::span<const double> row_values() const { return row_values_; }
  std::span<const int> col_offsets() const { return col_offsets_; }
  std::span<const int> col_rows() const { return col_rows_; }
  std::span<const double> col_values() const { return col_values_; }

  double coeff(int row, int col) const;
  double max_abs_entry() const;
  // Row-major dense copy; intended for tests and small games.
  std::vector<double> to_dense() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> row_offsets_{0};
  std::vector<int> row_columns_;
  std::vector<double> row_values_;
  std::vector<int> col_offsets_{0};
  std::vector<int> col_rows_;
  std::vector<double> col_values_;
};

// Monotone count of products against A or A^T.
class GradientCounter {
 public:
  void increment() { count_.fetch_add(1, std::memory_order_relaxed); }
  std::int64_t count() const { return count_.load(std::memory_order_relaxed); }

 private:
  std::atomic<std::int64_t> count_{0};
};

// A * y. Rows are independent, so the result does not depend on the thread
// count. Throws std::invalid_argument on a dimension mismatch.
std::vector<double> apply(const SparseMatrix& a, std::span<const double> y,
                          GradientCounter& counter);
// A^T * x, streamed over the column view.
std::vector<double> apply_transpose(const SparseMatrix& a, std::span<const double> x,
                                    GradientCounter& counter);

}  // namespace saddle
