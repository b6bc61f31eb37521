#include "saddle/dgf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "saddle/parallel.hpp"

namespace saddle {

namespace {

void require_interior(const Treeplex& t, const SequenceVector& q, const char* what) {
  if (q.size() != static_cast<std::size_t>(t.dimension())) {
    throw std::invalid_argument(std::string(what) + ": vector length does not match treeplex");
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!(q[i] > 0.0)) {
      throw std::domain_error(std::string(what) + ": interior point required (entry " +
                              std::to_string(i) + " is not strictly positive)");
    }
  }
}

bool run_parallel(const Treeplex& t) {
  return t.roots().size() > 1 && t.dimension() >= min_parallel_size();
}

// Per-sequence constant sum_{k in D_j^i} beta_k (log n_k - 1) of the gradient.
double child_term(const DgfWeights& w, const Treeplex& t, int sequence) {
  double s = 0.0;
  for (int k : t.children_of_sequence(sequence)) {
    s += w.beta[k] * (std::log(static_cast<double>(t.simplex(k).dimension)) - 1.0);
  }
  return s;
}

}  // namespace

DgfWeights compute_weights(const Treeplex& t) {
  DgfWeights w;
  const int count = t.simplex_count();
  w.beta.assign(count, 0.0);
  std::vector<double> omega(count, 0.0);
  for (int j : t.bottom_up_order()) {
    const Simplex& s = t.simplex(j);
    double children = 0.0;
    for (int i = s.begin(); i < s.end(); ++i) {
      for (int k : t.children_of_sequence(i)) children += w.beta[k];
    }
    w.beta[j] = 2.0 + 2.0 * children;
  }
  for (int j : t.bottom_up_order()) {
    const Simplex& s = t.simplex(j);
    double best = 0.0;
    for (int i = s.begin(); i < s.end(); ++i) {
      double below = 0.0;
      for (int k : t.children_of_sequence(i)) below += omega[k];
      best = std::max(best, below);
    }
    omega[j] = w.beta[j] * std::log(static_cast<double>(s.dimension)) + best;
  }
  for (int r : t.roots()) w.omega += omega[r];
  w.max_l1_norm = t.max_l1_norm();
  w.modulus = 1.0 / w.max_l1_norm;
  w.center = uniform_sequence(t);
  return w;
}

double dgf_value(const DgfWeights& w, const Treeplex& t, const SequenceVector& q) {
  double total = 0.0;
  for (int j = 0; j < t.simplex_count(); ++j) {
    const Simplex& s = t.simplex(j);
    const double parent = parent_value(t, q.values, j);
    if (!(parent > 0.0)) continue;
    double term = parent * std::log(static_cast<double>(s.dimension));
    for (int i = s.begin(); i < s.end(); ++i) {
      if (q[i] > 0.0) term += q[i] * std::log(q[i] / parent);
    }
    total += w.beta[j] * term;
  }
  return total;
}

std::vector<double> dgf_gradient(const DgfWeights& w, const Treeplex& t, const SequenceVector& q) {
  require_interior(t, q, "dgf_gradient");
  std::vector<double> grad(q.size());
  for (int j = 0; j < t.simplex_count(); ++j) {
    const Simplex& s = t.simplex(j);
    const double parent = parent_value(t, q.values, j);
    for (int i = s.begin(); i < s.end(); ++i) {
      grad[i] = w.beta[j] * (std::log(q[i] / parent) + 1.0) + child_term(w, t, i);
    }
  }
  return grad;
}

std::vector<double> dgf_gradient_behavioral(const DgfWeights& w, const Treeplex& t,
                                            const BehavioralVector& b) {
  std::vector<double> grad(b.size());
  for (int j = 0; j < t.simplex_count(); ++j) {
    const Simplex& s = t.simplex(j);
    for (int i = s.begin(); i < s.end(); ++i) {
      grad[i] = w.beta[j] * (std::log(std::max(b[i], kInteriorFloor)) + 1.0) + child_term(w, t, i);
    }
  }
  return grad;
}

SmoothedResponse smoothed_best_response(const DgfWeights& w, const Treeplex& t,
                                        std::span<const double> g, double mu) {
  if (g.size() != static_cast<std::size_t>(t.dimension())) {
    throw std::invalid_argument("smoothed_best_response: gradient length does not match treeplex");
  }
  if (!(mu > 0.0)) throw std::invalid_argument("smoothed_best_response: mu must be positive");

  SmoothedResponse out;
  out.folded_gradient.assign(g.begin(), g.end());
  out.behavioral.values.assign(g.size(), 0.0);
  out.sequence.values.assign(g.size(), 0.0);
  std::vector<double>& folded = out.folded_gradient;
  std::vector<double>& behavioral = out.behavioral.values;
  std::vector<double>& sequence = out.sequence.values;

  const auto& subtrees = t.root_subtrees();
  const int root_count = static_cast<int>(subtrees.size());
  std::vector<double> root_values(root_count, 0.0);

#pragma omp parallel for schedule(dynamic) if (run_parallel(t))
  for (int r = 0; r < root_count; ++r) {
    const std::vector<int>& order = subtrees[r];
    for (int j : order) {
      const Simplex& s = t.simplex(j);
      const double scale = mu * w.beta[j];
      int best = s.begin();
      for (int i = s.begin() + 1; i < s.end(); ++i) {
        if (folded[i] < folded[best]) best = i;  // largest exponent -g_i / scale
      }
      const double shift = folded[best];
      double sum = 0.0;
      for (int i = s.begin(); i < s.end(); ++i) {
        const double e = std::exp(-(folded[i] - shift) / scale);
        behavioral[i] = e;
        sum += e;
      }
      for (int i = s.begin(); i < s.end(); ++i) behavioral[i] /= sum;
      // b_best = 1 / sum exactly in real arithmetic
      const double value = folded[best] - scale * std::log(sum) +
                           scale * std::log(static_cast<double>(s.dimension));
      if (s.parent == kRootSequence) {
        root_values[r] = value;
      } else {
        folded[s.parent] += value;
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const Simplex& s = t.simplex(*it);
      const double parent = s.parent == kRootSequence ? 1.0 : sequence[s.parent];
      for (int i = s.begin(); i < s.end(); ++i) sequence[i] = parent * behavioral[i];
    }
  }

  for (double v : root_values) out.value += v;
  return out;
}

SequenceVector conjugate_gradient(const DgfWeights& w, const Treeplex& t,
                                  std::span<const double> g, double mu) {
  std::vector<double> negated(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) negated[i] = -g[i];
  return smoothed_best_response(w, t, negated, mu).sequence;
}

SmoothedResponse prox_mapping_behavioral(const DgfWeights& w, const Treeplex& t,
                                         std::span<const double> g,
                                         const BehavioralVector& prev, double mu) {
  if (g.size() != prev.size()) throw std::invalid_argument("prox_mapping: size mismatch");
  std::vector<double> shifted = dgf_gradient_behavioral(w, t, prev);
  for (std::size_t i = 0; i < g.size(); ++i) shifted[i] = g[i] - mu * shifted[i];
  return smoothed_best_response(w, t, shifted, mu);
}

SequenceVector prox_mapping(const DgfWeights& w, const Treeplex& t, std::span<const double> g,
                            const SequenceVector& q_prev, double mu) {
  require_interior(t, q_prev, "prox_mapping");
  if (g.size() != q_prev.size()) throw std::invalid_argument("prox_mapping: size mismatch");
  std::vector<double> shifted = dgf_gradient(w, t, q_prev);
  for (std::size_t i = 0; i < g.size(); ++i) shifted[i] = g[i] - mu * shifted[i];
  return smoothed_best_response(w, t, shifted, mu).sequence;
}

double prox_shift_value(const DgfWeights& w, const Treeplex& t, const SequenceVector& q) {
  require_interior(t, q, "prox_shift_value");
  double value = 0.0;
  for (int r : t.roots()) {
    value -= w.beta[r] * (std::log(static_cast<double>(t.simplex(r).dimension)) - 1.0);
  }
  return value;
}

}  // namespace saddle
