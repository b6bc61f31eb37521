#include "saddle/linops.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "saddle/parallel.hpp"
#include "saddle/treeplex.hpp"

namespace saddle {
namespace {

SparseMatrix random_matrix(int rows, int cols, double density, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::bernoulli_distribution keep(density);
  std::vector<SparseMatrix::Triplet> t;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (keep(rng)) t.push_back({r, c, u(rng)});
    }
  }
  return SparseMatrix::from_triplets(rows, cols, std::move(t));
}

TEST(SparseMatrix, TripletsSumAndDropZeros) {
  const SparseMatrix m = SparseMatrix::from_triplets(
      2, 2, {{0, 0, 1.0}, {0, 0, 2.0}, {1, 1, 1.0}, {1, 1, -1.0}, {0, 1, -4.0}});
  EXPECT_EQ(m.nonzeros(), 2u);
  EXPECT_DOUBLE_EQ(m.coeff(0, 0), 3.0);
  EXPECT_DOUBLE_EQ(m.coeff(1, 1), 0.0);
  EXPECT_DOUBLE_EQ(m.max_abs_entry(), 4.0);
  EXPECT_THROW(SparseMatrix::from_triplets(2, 2, {{2, 0, 1.0}}), std::invalid_argument);
}

TEST(Apply, MatchingPenniesAtUniform) {
  const SparseMatrix a = SparseMatrix::from_triplets(
      2, 2, {{0, 0, 1.0}, {0, 1, -1.0}, {1, 0, -1.0}, {1, 1, 1.0}});
  GradientCounter c;
  const std::vector<double> y{0.5, 0.5};
  const auto ay = apply(a, y, c);
  EXPECT_DOUBLE_EQ(ay[0], 0.0);
  EXPECT_DOUBLE_EQ(ay[1], 0.0);
  EXPECT_EQ(c.count(), 1);
}

TEST(Apply, OneByOne) {
  const SparseMatrix a = SparseMatrix::from_triplets(1, 1, {{0, 0, 3.0}});
  GradientCounter c;
  const std::vector<double> one{1.0};
  EXPECT_DOUBLE_EQ(apply(a, one, c)[0], 3.0);
  EXPECT_DOUBLE_EQ(apply_transpose(a, one, c)[0], 3.0);
  EXPECT_EQ(c.count(), 2);
}

TEST(Apply, MatchesDenseReference) {
  std::mt19937_64 rng(7);
  const SparseMatrix a = random_matrix(5, 7, 0.5, rng);
  const std::vector<double> dense = a.to_dense();
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> y(7), x(5);
  for (double& v : y) v = u(rng);
  for (double& v : x) v = u(rng);
  GradientCounter c;
  const auto ay = apply(a, y, c);
  const auto atx = apply_transpose(a, x, c);
  for (int r = 0; r < 5; ++r) {
    double ref = 0.0;
    for (int k = 0; k < 7; ++k) ref += dense[r * 7 + k] * y[k];
    EXPECT_NEAR(ay[r], ref, 1e-14);
  }
  for (int k = 0; k < 7; ++k) {
    double ref = 0.0;
    for (int r = 0; r < 5; ++r) ref += dense[r * 7 + k] * x[r];
    EXPECT_NEAR(atx[k], ref, 1e-14);
  }
}

TEST(Apply, AdjointIdentity) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const SparseMatrix a = random_matrix(40, 30, 0.2, rng);
    std::vector<double> x(40), y(30);
    for (double& v : x) v = u(rng);
    for (double& v : y) v = u(rng);
    GradientCounter c;
    const double lhs = dot(x, apply(a, y, c));
    const double rhs = dot(apply_transpose(a, x, c), y);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(Apply, DimensionMismatchThrows) {
  const SparseMatrix a = SparseMatrix::from_triplets(2, 3, {{0, 0, 1.0}});
  GradientCounter c;
  const std::vector<double> wrong{1.0, 2.0};
  EXPECT_THROW(apply(a, wrong, c), std::invalid_argument);
  EXPECT_THROW(apply_transpose(a, std::vector<double>{1.0}, c), std::invalid_argument);
  EXPECT_EQ(c.count(), 0);
}

TEST(Apply, ThreadCountDoesNotChangeResults) {
  std::mt19937_64 rng(13);
  const SparseMatrix a = random_matrix(3000, 2000, 0.01, rng);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> x(3000), y(2000);
  for (double& v : x) v = u(rng);
  for (double& v : y) v = u(rng);
  const int saved_threads = thread_count();
  const int saved_min = min_parallel_size();
  set_min_parallel_size(1);
  GradientCounter c;
  set_thread_count(1);
  const auto serial_ay = apply(a, y, c);
  const auto serial_atx = apply_transpose(a, x, c);
  set_thread_count(4);
  EXPECT_EQ(apply(a, y, c), serial_ay);
  EXPECT_EQ(apply_transpose(a, x, c), serial_atx);
  set_thread_count(saved_threads);
  set_min_parallel_size(saved_min);
}

}  // namespace
}  // namespace saddle
