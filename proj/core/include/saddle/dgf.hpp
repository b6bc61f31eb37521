#pragma once

#include <span>
#include <vector>

#include "saddle/treeplex.hpp"

namespace saddle {

// Dilated entropy over a treeplex:
//
//   d(q) = sum_j beta_j * q_{p_j} * d_j(q^j / q_{p_j}),
//   d_j(b) = sum_i b_i log b_i + log n_j,
//   beta_j = 2 + 2 * sum of beta_k over every simplex k directly below j.
//
// d vanishes at the uniform behavioral strategy and is strongly convex with
// modulus 1/M w.r.t. the l1 norm, M = max l1 norm over the treeplex.
struct DgfWeights {
  std::vector<double> beta;  // per simplex
  double max_l1_norm = 0.0;  // M
  double modulus = 0.0;      // 1/M
  double omega = 0.0;        // max of d over the treeplex (its minimum is 0)
  SequenceVector center;     // minimizer of d: uniform at every simplex
};

DgfWeights compute_weights(const Treeplex& t);

// Behavioral entries are clamped to this before taking logs of solver
// outputs; softmax underflow can otherwise leave exact zeros.
inline constexpr double kInteriorFloor = 1e-300;

// 0 log 0 = 0; simplexes under a zero-weight parent contribute nothing.
double dgf_value(const DgfWeights& w, const Treeplex& t, const SequenceVector& q);

// grad_{ji} d(q) = beta_j (log(q_i / q_{p_j}) + 1) + sum_{k in D_j^i} beta_k (log n_k - 1).
// Throws std::domain_error unless every entry of q is strictly positive.
std::vector<double> dgf_gradient(const DgfWeights& w, const Treeplex& t, const SequenceVector& q);
// Same gradient computed from per-simplex distributions, with entries
// floored at kInteriorFloor.
std::vector<double> dgf_gradient_behavioral(const DgfWeights& w, const Treeplex& t,
                                            const BehavioralVector& b);

struct SmoothedResponse {
  SequenceVector sequence;
  BehavioralVector behavioral;
  double value = 0.0;  // <q, g> + mu * d(q) at the minimizer
  // The input gradient with every child simplex value folded into its parent
  // sequence entry. At the optimum g_i + mu beta_j (1 + log b_i) is constant
  // on each simplex when evaluated with these entries.
  std::vector<double> folded_gradient;
};

// argmin over q in the treeplex of <q, g> + mu * d(q), exactly.
//
// Simplexes are solved bottom-up: simplex j gets b_i proportional to
// exp(-g_i / (mu beta_j)) (max-shifted) and passes the value
// g_{i*} + mu beta_j log b_{i*} + mu beta_j log n_j to its parent entry, with
// i* the most probable action (lowest index on ties). Root subtrees are
// independent and run in parallel.
SmoothedResponse smoothed_best_response(const DgfWeights& w, const Treeplex& t,
                                        std::span<const double> g, double mu);

// argmax over q of <g, q> - mu * d(q), the gradient of the conjugate of mu*d.
SequenceVector conjugate_gradient(const DgfWeights& w, const Treeplex& t,
                                  std::span<const double> g, double mu);

// argmin over q of <q, g> + mu * D(q || q_prev) with D the Bregman divergence
// of d, solved as a smoothed best response to g - mu * grad d(q_prev).
// Throws std::domain_error unless q_prev is interior.
SequenceVector prox_mapping(const DgfWeights& w, const Treeplex& t, std::span<const double> g,
                            const SequenceVector& q_prev, double mu);
SmoothedResponse prox_mapping_behavioral(const DgfWeights& w, const Treeplex& t,
                                         std::span<const double> g,
                                         const BehavioralVector& prev, double mu);

// -d(q) + <grad d(q), q>, which collapses to -sum over root simplexes of
// beta_j (log n_j - 1) and so does not depend on q. Throws
// std::domain_error unless q is interior.
double prox_shift_value(const DgfWeights& w, const Treeplex& t, const SequenceVector& q);

}  // namespace saddle
