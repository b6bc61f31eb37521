#include "saddle/solve.hpp"

#include <stdexcept>

namespace saddle {

RunMonitor::RunMonitor(const GameInstance& game, const SolveOptions& options,
                       const GradientCounter& algorithm)
    : game_(game), options_(options), algorithm_(algorithm),
      start_(std::chrono::steady_clock::now()) {
  if (options.residual_every < 1) throw std::invalid_argument("residual_every must be at least 1");
  if (options.max_iters < 0) throw std::invalid_argument("max_iters must be non-negative");
  if (options.epsilon < 0) throw std::invalid_argument("epsilon must be non-negative");
}

bool RunMonitor::observe(std::int64_t iter, const SequenceVector& x, const SequenceVector& y,
                         const RecordExtras& extras) {
  const bool out_of_budget =
      iter >= options_.max_iters || algorithm_.count() >= options_.max_gradients;
  if (!out_of_budget && iter % options_.residual_every != 0) return false;

  const auto now = std::chrono::steady_clock::now();
  const double wall = std::chrono::duration<double>(now - start_ - excluded_).count();
  const Residual r = saddle_point_residual(game_, x, y, measurement_);
  excluded_ += std::chrono::steady_clock::now() - now;

  ConvergenceRecord rec;
  rec.iteration = iter;
  rec.gradient_count = algorithm_.count() + (options_.merge_ledgers ? measurement_.count() : 0);
  rec.wall_time = wall;
  rec.eps_sad = r.eps_sad;
  if (game_.big_blind) rec.eps_sad_mbb = to_mbb(game_, r.eps_sad);
  rec.max_y = r.max_y;
  rec.min_x = r.min_x;
  rec.mu_x = extras.mu_x;
  rec.mu_y = extras.mu_y;
  rec.excessive_gap = extras.excessive_gap;
  if (extras.average_value) {
    rec.regret_x = *extras.average_value - r.min_x;
    rec.regret_y = r.max_y - *extras.average_value;
  }
  records_.push_back(rec);
  if (options_.on_record) options_.on_record(rec);

  if (options_.epsilon > 0 && r.eps_sad <= options_.epsilon) {
    status_ = SolveStatus::kConverged;
    return true;
  }
  return out_of_budget;
}

SolveResult RunMonitor::finish(SequenceVector x, SequenceVector y, std::int64_t iterations) {
  SolveResult out;
  out.x = std::move(x);
  out.y = std::move(y);
  out.records = std::move(records_);
  out.status = status_;
  out.iterations = iterations;
  out.gradient_count = algorithm_.count();
  out.measurement_count = measurement_.count();
  return out;
}

std::string to_string(SolveStatus status) {
  return status == SolveStatus::kConverged ? "converged" : "budget exhausted";
}

}  // namespace saddle
