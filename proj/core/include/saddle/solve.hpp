#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "saddle/game.hpp"
#include "saddle/linops.hpp"
#include "saddle/metrics.hpp"

namespace saddle {

struct SolveOptions {
  // Absolute target for eps_sad in payoff units; 0 disables the target.
  double epsilon = 0.0;
  std::int64_t max_iters = 10000;
  // Stop once the algorithm has used this many products with A or A^T.
  std::int64_t max_gradients = std::numeric_limits<std::int64_t>::max();
  // Evaluate eps_sad every this many iterations (the initial point and the
  // final iteration are always evaluated).
  int residual_every = 1;
  // Report measurement products in gradient_count as well.
  bool merge_ledgers = false;
  // Called for every record as soon as it is produced.
  std::function<void(const ConvergenceRecord&)> on_record;
};

enum class SolveStatus { kConverged, kBudgetExhausted };

struct SolveResult {
  SequenceVector x;
  SequenceVector y;
  std::vector<ConvergenceRecord> records;
  SolveStatus status = SolveStatus::kBudgetExhausted;
  std::int64_t iterations = 0;
  std::int64_t gradient_count = 0;     // algorithm products
  std::int64_t measurement_count = 0;  // residual products
};

// Extra per-iteration telemetry that only some solvers produce.
struct RecordExtras {
  std::optional<double> mu_x;
  std::optional<double> mu_y;
  std::optional<double> excessive_gap;
  // Weighted average of <x^t, A y^t>, used to split eps_sad into regrets.
  std::optional<double> average_value;
};

// Shared bookkeeping for solver loops: evaluation cadence, stopping rules,
// wall clock, and record emission.
class RunMonitor {
 public:
  RunMonitor(const GameInstance& game, const SolveOptions& options,
             const GradientCounter& algorithm);

  // Called after iteration `iter` (0 for the starting point). Returns true when
  // the loop must stop; status() then says why.
  bool observe(std::int64_t iter, const SequenceVector& x, const SequenceVector& y,
               const RecordExtras& extras = {});

  SolveStatus status() const { return status_; }
  std::vector<ConvergenceRecord>& records() { return records_; }
  std::int64_t measurement_count() const { return measurement_.count(); }
  // For solver-side diagnostics that should not count as algorithm cost.
  GradientCounter& measurement_counter() { return measurement_; }

  // Moves the records and counts into a result.
  SolveResult finish(SequenceVector x, SequenceVector y, std::int64_t iterations);

 private:
  const GameInstance& game_;
  const SolveOptions& options_;
  const GradientCounter& algorithm_;
  GradientCounter measurement_;
  std::chrono::steady_clock::time_point start_;
  std::chrono::steady_clock::duration excluded_{};
  SolveStatus status_ = SolveStatus::kBudgetExhausted;
  std::vector<ConvergenceRecord> records_;
};

std::string to_string(SolveStatus status);

}  // namespace saddle
