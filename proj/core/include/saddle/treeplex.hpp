#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace saddle {

// Parent marker for simplexes that no branching operation precedes; such a
// simplex is scaled by an implicit parent value of 1.
inline constexpr int kRootSequence = -1;

struct SimplexSpec {
  int dimension = 0;
  int parent_sequence = kRootSequence;
};

struct Simplex {
  int offset = 0;     // first sequence index of the simplex
  int dimension = 0;  // n_j
  int parent = kRootSequence;
  // Number of simplexes reachable below this one through a chain of
  // branching operations (0 for a leaf simplex).
  int depth = 0;
  // Number of branching operations preceding this simplex (0 at a root).
  int branching = 0;

  int begin() const { return offset; }
  int end() const { return offset + dimension; }
};

// A point of the treeplex in sequence form: every simplex block sums to the
// value of its parent sequence (1 at the roots).
struct SequenceVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
  friend bool operator==(const SequenceVector&, const SequenceVector&) = default;
};

// Per-simplex probability distributions, laid out with the same indexing as a
// SequenceVector.
struct BehavioralVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
  friend bool operator==(const BehavioralVector&, const BehavioralVector&) = default;
};

inline constexpr double kSimplexSumTolerance = 1e-9;

// Immutable simplex-tree description of a sequence-form strategy polytope.
//
// Simplex j owns the contiguous sequence range [offset, offset + dimension).
// Simplex index ranges are assigned in description order. Parents may refer
// to any sequence as long as the parent graph is a forest.
class Treeplex {
 public:
  Treeplex() = default;

  // Throws std::invalid_argument on an empty description, non-positive
  // dimension, out-of-range parent, or a cycle in the parent graph.
  static Treeplex build(std::span<const SimplexSpec> simplexes);

  int simplex_count() const { return static_cast<int>(simplexes_.size()); }
  int dimension() const { return dimension_; }
  const Simplex& simplex(int j) const { return simplexes_[j]; }
  std::span<const Simplex> simplexes() const { return simplexes_; }

  // Simplexes whose parent is the given sequence (D_j^i).
  std::span<const int> children_of_sequence(int sequence) const;
  int simplex_of_sequence(int sequence) const { return owner_[sequence]; }

  std::span<const int> roots() const { return roots_; }
  // Every child simplex precedes its parent; sorted by decreasing branching
  // count (ties by simplex id).
  std::span<const int> bottom_up_order() const { return bottom_up_; }
  std::span<const int> top_down_order() const { return top_down_; }
  // For each root (in roots() order) the simplexes of its subtree in
  // bottom-up order. Subtrees touch disjoint sequence ranges, which is what
  // the per-root parallel loops rely on.
  const std::vector<std::vector<int>>& root_subtrees() const { return root_subtrees_; }

  // 1 + the largest simplex depth (the depth d_Q of the whole treeplex).
  int depth() const;
  int max_simplex_dimension() const;

  // Maximum of the l1 norm over the treeplex (M).
  double max_l1_norm() const;

  std::vector<SimplexSpec> specs() const;

 private:
  std::vector<Simplex> simplexes_;
  std::vector<int> owner_;
  std::vector<int> child_begin_;  // size dimension_ + 1, CSR over sequences
  std::vector<int> child_list_;
  std::vector<int> roots_;
  std::vector<int> bottom_up_;
  std::vector<int> top_down_;
  std::vector<std::vector<int>> root_subtrees_;
  int dimension_ = 0;
};

// Validation throws std::invalid_argument naming the offending simplex.
void validate_sequence(const Treeplex& t, const SequenceVector& q,
                       double tolerance = kSimplexSumTolerance);
void validate_behavioral(const Treeplex& t, const BehavioralVector& b,
                         double tolerance = kSimplexSumTolerance);
bool is_valid_sequence(const Treeplex& t, const SequenceVector& q,
                       double tolerance = kSimplexSumTolerance);

// Simplexes under a zero-weight parent receive the uniform distribution.
BehavioralVector sequence_to_behavioral(const Treeplex& t, const SequenceVector& q);
// Unchecked variant for hot loops whose input is feasible by construction.
BehavioralVector sequence_to_behavioral_unchecked(const Treeplex& t,
                                                  const SequenceVector& q);

SequenceVector behavioral_to_sequence(const Treeplex& t, const BehavioralVector& b);
SequenceVector behavioral_to_sequence_unchecked(const Treeplex& t,
                                                const BehavioralVector& b);

BehavioralVector uniform_behavioral(const Treeplex& t);
SequenceVector uniform_sequence(const Treeplex& t);

// Value of the parent sequence of simplex j (1 at the roots).
inline double parent_value(const Treeplex& t, std::span<const double> q, int j) {
  const int p = t.simplex(j).parent;
  return p == kRootSequence ? 1.0 : q[p];
}

// (1 - tau) * a + tau * b; the treeplex is convex so the result stays feasible.
SequenceVector convex_combination(const SequenceVector& a, const SequenceVector& b,
                                  double tau);

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace saddle
