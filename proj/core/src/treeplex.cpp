#include "saddle/treeplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace saddle {

Treeplex Treeplex::build(std::span<const SimplexSpec> specs) {
  if (specs.empty()) {
    throw std::invalid_argument("treeplex: empty simplex description list");
  }
  Treeplex t;
  const int count = static_cast<int>(specs.size());
  t.simplexes_.resize(count);

  int offset = 0;
  for (int j = 0; j < count; ++j) {
    if (specs[j].dimension < 1) {
      throw std::invalid_argument("treeplex: simplex " + std::to_string(j) +
                                  " has dimension < 1");
    }
    t.simplexes_[j].offset = offset;
    t.simplexes_[j].dimension = specs[j].dimension;
    t.simplexes_[j].parent = specs[j].parent_sequence;
    offset += specs[j].dimension;
  }
  t.dimension_ = offset;

  t.owner_.resize(offset);
  for (int j = 0; j < count; ++j) {
    const auto& s = t.simplexes_[j];
    std::fill(t.owner_.begin() + s.begin(), t.owner_.begin() + s.end(), j);
    if (s.parent != kRootSequence && (s.parent < 0 || s.parent >= offset)) {
      throw std::invalid_argument("treeplex: simplex " + std::to_string(j) +
                                  " has parent sequence " + std::to_string(s.parent) +
                                  " out of range");
    }
  }

  // Children of each sequence, CSR layout.
  t.child_begin_.assign(offset + 1, 0);
  for (const auto& s : t.simplexes_) {
    if (s.parent != kRootSequence) ++t.child_begin_[s.parent + 1];
  }
  std::partial_sum(t.child_begin_.begin(), t.child_begin_.end(), t.child_begin_.begin());
  t.child_list_.resize(t.child_begin_.back());
  {
    std::vector<int> cursor(t.child_begin_.begin(), t.child_begin_.end() - 1);
    for (int j = 0; j < count; ++j) {
      const int p = t.simplexes_[j].parent;
      if (p != kRootSequence) t.child_list_[cursor[p]++] = j;
    }
  }

  // Branching counts via parent chains; a chain revisiting an in-progress
  // simplex is a cycle.
  enum : char { kUnseen, kActive, kDone };
  std::vector<char> state(count, kUnseen);
  std::vector<int> chain;
  for (int start = 0; start < count; ++start) {
    int j = start;
    chain.clear();
    while (state[j] == kUnseen) {
      state[j] = kActive;
      chain.push_back(j);
      const int p = t.simplexes_[j].parent;
      if (p == kRootSequence) break;
      j = t.owner_[p];
    }
    if (state[j] == kActive && t.simplexes_[j].parent != kRootSequence) {
      throw std::invalid_argument("treeplex: cycle in parent graph through simplex " +
                                  std::to_string(j));
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      const int p = t.simplexes_[*it].parent;
      t.simplexes_[*it].branching =
          p == kRootSequence ? 0 : t.simplexes_[t.owner_[p]].branching + 1;
      state[*it] = kDone;
    }
  }

  t.bottom_up_.resize(count);
  std::iota(t.bottom_up_.begin(), t.bottom_up_.end(), 0);
  std::stable_sort(t.bottom_up_.begin(), t.bottom_up_.end(), [&](int a, int b) {
    return t.simplexes_[a].branching > t.simplexes_[b].branching;
  });
  t.top_down_.assign(t.bottom_up_.rbegin(), t.bottom_up_.rend());

  for (int j : t.bottom_up_) {
    auto& s = t.simplexes_[j];
    int depth = 0;
    for (int i = s.begin(); i < s.end(); ++i) {
      for (int k : t.children_of_sequence(i)) {
        depth = std::max(depth, t.simplexes_[k].depth + 1);
      }
    }
    s.depth = depth;
  }

  std::vector<int> root_slot(count, -1);
  for (int j = 0; j < count; ++j) {
    if (t.simplexes_[j].parent == kRootSequence) {
      root_slot[j] = static_cast<int>(t.roots_.size());
      t.roots_.push_back(j);
    }
  }
  // top-down pass propagates the root slot to every descendant
  for (int j : t.top_down_) {
    const int p = t.simplexes_[j].parent;
    if (p != kRootSequence) root_slot[j] = root_slot[t.owner_[p]];
  }
  t.root_subtrees_.resize(t.roots_.size());
  for (int j : t.bottom_up_) t.root_subtrees_[root_slot[j]].push_back(j);

  return t;
}

std::span<const int> Treeplex::children_of_sequence(int sequence) const {
  const int b = child_begin_[sequence];
  const int e = child_begin_[sequence + 1];
  return {child_list_.data() + b, static_cast<std::size_t>(e - b)};
}

int Treeplex::depth() const {
  int d = 0;
  for (int r : roots_) d = std::max(d, simplexes_[r].depth);
  return d + 1;
}

int Treeplex::max_simplex_dimension() const {
  int n = 0;
  for (const auto& s : simplexes_) n = std::max(n, s.dimension);
  return n;
}

double Treeplex::max_l1_norm() const {
  std::vector<double> f(simplexes_.size(), 0.0);
  for (int j : bottom_up_) {
    const auto& s = simplexes_[j];
    double best = 0.0;
    for (int i = s.begin(); i < s.end(); ++i) {
      double below = 0.0;
      for (int k : children_of_sequence(i)) below += f[k];
      best = std::max(best, below);
    }
    f[j] = 1.0 + best;
  }
  double m = 0.0;
  for (int r : roots_) m += f[r];
  return m;
}

std::vector<SimplexSpec> Treeplex::specs() const {
  std::vector<SimplexSpec> out;
  out.reserve(simplexes_.size());
  for (const auto& s : simplexes_) out.push_back({s.dimension, s.parent});
  return out;
}

namespace {

void check_size(const Treeplex& t, std::size_t n, const char* what) {
  if (n != static_cast<std::size_t>(t.dimension())) {
    throw std::invalid_argument(std::string(what) + ": vector length " + std::to_string(n) +
                                " does not match treeplex dimension " +
                                std::to_string(t.dimension()));
  }
}

}  // namespace

void validate_sequence(const Treeplex& t, const SequenceVector& q, double tolerance) {
  check_size(t, q.size(), "sequence vector");
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!(q[i] >= 0.0) || !std::isfinite(q[i])) {
      throw std::invalid_argument("sequence vector: entry " + std::to_string(i) +
                                  " is negative or not finite");
    }
  }
  for (int j = 0; j < t.simplex_count(); ++j) {
    const auto& s = t.simplex(j);
    double sum = 0.0;
    for (int i = s.begin(); i < s.end(); ++i) sum += q[i];
    const double parent = parent_value(t, q.values, j);
    if (std::abs(sum - parent) > tolerance) {
      throw std::invalid_argument("sequence vector: simplex " + std::to_string(j) +
                                  " sums to " + std::to_string(sum) +
                                  " but its parent sequence has value " +
                                  std::to_string(parent));
    }
  }
}

bool is_valid_sequence(const Treeplex& t, const SequenceVector& q, double tolerance) {
  try {
    validate_sequence(t, q, tolerance);
  } catch (const std::invalid_argument&) {
    return false;
  }
  return true;
}

void validate_behavioral(const Treeplex& t, const BehavioralVector& b, double tolerance) {
  check_size(t, b.size(), "behavioral vector");
  for (int j = 0; j < t.simplex_count(); ++j) {
    const auto& s = t.simplex(j);
    double sum = 0.0;
    for (int i = s.begin(); i < s.end(); ++i) {
      if (!(b[i] >= 0.0) || !std::isfinite(b[i])) {
        throw std::invalid_argument("behavioral vector: entry " + std::to_string(i) +
                                    " is negative or not finite");
      }
      sum += b[i];
    }
    if (std::abs(sum - 1.0) > tolerance) {
      throw std::invalid_argument("behavioral vector: simplex " + std::to_string(j) +
                                  " sums to " + std::to_string(sum));
    }
  }
}

BehavioralVector sequence_to_behavioral_unchecked(const Treeplex& t,
                                                  const SequenceVector& q) {
  BehavioralVector b{std::vector<double>(q.size())};
  for (int j = 0; j < t.simplex_count(); ++j) {
    const auto& s = t.simplex(j);
    const double parent = parent_value(t, q.values, j);
    if (parent > 0.0) {
      for (int i = s.begin(); i < s.end(); ++i) b[i] = q[i] / parent;
    } else {
      const double u = 1.0 / s.dimension;
      for (int i = s.begin(); i < s.end(); ++i) b[i] = u;
    }
  }
  return b;
}

BehavioralVector sequence_to_behavioral(const Treeplex& t, const SequenceVector& q) {
  validate_sequence(t, q);
  return sequence_to_behavioral_unchecked(t, q);
}

SequenceVector behavioral_to_sequence_unchecked(const Treeplex& t,
                                                const BehavioralVector& b) {
  SequenceVector q{std::vector<double>(b.size())};
  for (int j : t.top_down_order()) {
    const auto& s = t.simplex(j);
    const double parent = parent_value(t, q.values, j);
    for (int i = s.begin(); i < s.end(); ++i) q[i] = parent * b[i];
  }
  return q;
}

SequenceVector behavioral_to_sequence(const Treeplex& t, const BehavioralVector& b) {
  validate_behavioral(t, b);
  return behavioral_to_sequence_unchecked(t, b);
}

BehavioralVector uniform_behavioral(const Treeplex& t) {
  BehavioralVector b{std::vector<double>(t.dimension())};
  for (const auto& s : t.simplexes()) {
    const double u = 1.0 / s.dimension;
    for (int i = s.begin(); i < s.end(); ++i) b[i] = u;
  }
  return b;
}

SequenceVector uniform_sequence(const Treeplex& t) {
  return behavioral_to_sequence_unchecked(t, uniform_behavioral(t));
}

SequenceVector convex_combination(const SequenceVector& a, const SequenceVector& b,
                                  double tau) {
  SequenceVector out{std::vector<double>(a.size())};
  const double keep = 1.0 - tau;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = keep * a[i] + tau * b[i];
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace saddle
