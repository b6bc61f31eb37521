#pragma once

// Independent reference computations for tests. Nothing here shares code
// paths with the library beyond the basic data types.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "saddle/dgf.hpp"
#include "saddle/game.hpp"
#include "saddle/treeplex.hpp"

namespace saddle::oracle {

// Nine-simplex treeplex with two levels of branching below the roots:
// Delta1 (2) and Delta2 (3) at the root, Delta3..Delta7 hanging off their
// five sequences, Delta8 and Delta9 under the first sequences of Delta3 and
// Delta4.
Treeplex nine_simplex_treeplex();

// Every pure strategy (vertex) of a treeplex; exponential, small inputs only.
std::vector<SequenceVector> enumerate_vertices(const Treeplex& t);

// Expected payoff to player 1 by walking the game tree with behavioral
// strategies (indexed like the sequence vectors of `instance`).
double tree_walk_value(const ExtensiveFormGame& game, const GameInstance& instance,
                       const BehavioralVector& bx, const BehavioralVector& by);

// Behavioral strategy with every entry drawn from [lo, 1) and normalized per
// simplex; lo > 0 gives interior points.
BehavioralVector random_behavioral(const Treeplex& t, std::mt19937_64& rng, double lo = 0.0);
SequenceVector random_sequence(const Treeplex& t, std::mt19937_64& rng, double lo = 0.0);
std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng, double lo, double hi);

// Objective <q, g> + mu * d(q) evaluated recursively in behavioral form:
// V_j = sum_i b_i (g_i + sum_{k below i} V_k) + mu beta_j (sum_i b_i log b_i + log n_j).
double smoothed_objective(const Treeplex& t, const std::vector<double>& beta,
                          std::span<const double> g, double mu, const BehavioralVector& b);

struct IterativeSbr {
  SequenceVector sequence;
  BehavioralVector behavioral;
  double value = 0.0;
  int iterations = 0;
  double spread = 0.0;  // largest per-simplex stationarity spread at exit
};

// Minimizes <q, g> + mu * d(q) by damped simultaneous exponentiated-gradient
// updates on every simplex (Jacobi sweeps), until the stationarity spread of
// g_i + sum_k V_k + mu beta_j (1 + log b_i) on every simplex is below `tol`.
IterativeSbr iterative_sbr(const Treeplex& t, const std::vector<double>& beta,
                           std::span<const double> g, double mu, double tol = 1e-11,
                           int max_iterations = 200000);

// Largest per-simplex spread of c_i + mu beta_j log b_i, with c the input
// gradient plus the children's optimal values (as reported by the solver).
double stationarity_spread(const Treeplex& t, const std::vector<double>& beta,
                           std::span<const double> folded, double mu, const BehavioralVector& b);

// Minimizes a one-dimensional convex function on [lo, hi] by ternary search.
template <class F>
double ternary_minimize(F f, double lo, double hi, int rounds = 400) {
  for (int i = 0; i < rounds; ++i) {
    const double a = lo + (hi - lo) / 3.0;
    const double b = hi - (hi - lo) / 3.0;
    if (f(a) < f(b)) {
      hi = b;
    } else {
      lo = a;
    }
  }
  return 0.5 * (lo + hi);
}

// Plain alternating regret matching on a dense matrix game min_x max_y x^T A y
// (row-major A). Returns the uniform averages after `iterations` rounds.
struct MatrixRmResult {
  std::vector<double> x_average;
  std::vector<double> y_average;
};
MatrixRmResult matrix_regret_matching(const std::vector<double>& a, int rows, int cols,
                                      int iterations, bool plus, bool linear);

}  // namespace saddle::oracle
