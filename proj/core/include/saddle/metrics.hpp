#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "saddle/game.hpp"
#include "saddle/linops.hpp"
#include "saddle/treeplex.hpp"

namespace saddle {

enum class Sense { kMax, kMin };

struct BestResponse {
  double value = 0.0;
  SequenceVector vertex;  // pure strategy attaining value
};

// Optimizes <g, q> over the treeplex by a bottom-up pass: each simplex picks
// its best action after folding in the values of the simplexes below it.
// Ties go to the lowest action index.
BestResponse best_response_value(const Treeplex& t, std::span<const double> g, Sense sense);

struct Residual {
  double eps_sad = 0.0;
  double max_y = 0.0;  // max over y of <x, A y>
  double min_x = 0.0;  // min over x of <x, A y>
};

// max_y <x, A y> - min_x <x, A y>. The two products are charged to
// `counter`, which callers keep apart from the algorithm's own count.
Residual saddle_point_residual(const GameInstance& game, const SequenceVector& x,
                               const SequenceVector& y, GradientCounter& counter);

// Milli-big-blinds. Throws std::invalid_argument when the game has no big blind.
double to_mbb(const GameInstance& game, double eps);

struct ConvergenceRecord {
  std::int64_t iteration = 0;
  std::int64_t gradient_count = 0;  // algorithm products, plus measurement if merged
  double wall_time = 0.0;           // seconds, excluding residual evaluation
  double eps_sad = 0.0;
  std::optional<double> eps_sad_mbb;
  // Player 1's loss against a best response, and the best value player 1
  // can guarantee against y. eps_sad is their difference.
  double max_y = 0.0;
  double min_x = 0.0;
  std::optional<double> mu_x;
  std::optional<double> mu_y;
  std::optional<double> excessive_gap;
  std::optional<double> regret_x;  // average regrets (regret-based solvers)
  std::optional<double> regret_y;
};

}  // namespace saddle
