#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "saddle/game.hpp"
#include "saddle/linops.hpp"
#include "saddle/solve.hpp"
#include "saddle/treeplex.hpp"

namespace saddle {

enum class RegretKind { kRm, kRmPlus };
enum class AveragingScheme { kUniform, kLinear };

// Regret-matching state on a single simplex.
struct RegretState {
  std::vector<double> r;  // cumulative regrets
  std::vector<double> z;  // current distribution
  RegretKind kind = RegretKind::kRm;

  RegretState(int dimension, RegretKind kind);
};

// r += g - <z, g>, then z proportional to max(r, 0) (uniform if that is zero).
// g is a payoff: larger entries are better for the acting player.
const std::vector<double>& rm_update(RegretState& state, std::span<const double> g);
// Same with the regrets clipped at zero after every update.
const std::vector<double>& rm_plus_update(RegretState& state, std::span<const double> g);
// Dispatches on state.kind.
const std::vector<double>& regret_update(RegretState& state, std::span<const double> g);

// Weight of iterate t in the running average: 1/t or 2/(t + 1).
// Throws std::invalid_argument for t < 1.
double averaging_weight(AveragingScheme scheme, std::int64_t t);

struct CfrConfig {
  RegretKind kind = RegretKind::kRmPlus;
  AveragingScheme averaging = AveragingScheme::kLinear;
};
inline constexpr CfrConfig kCfrRm{RegretKind::kRm, AveragingScheme::kUniform};
inline constexpr CfrConfig kCfrRmPlus{RegretKind::kRmPlus, AveragingScheme::kUniform};
inline constexpr CfrConfig kCfrPlus{RegretKind::kRmPlus, AveragingScheme::kLinear};

// Regret state of one player, stored flat with sequence indexing: the
// simplex block of z is that simplex's current behavioral distribution.
struct PlayerRegrets {
  std::vector<double> r;
  BehavioralVector z;
  SequenceVector current;
  SequenceVector average;
};

struct CfrState {
  CfrConfig config;
  PlayerRegrets x;
  PlayerRegrets y;
  std::int64_t t = 0;
  // Weighted average of <x^t, A y^t> under the same weights as the strategies.
  double average_value = 0.0;
};

// Uniform strategies, zero regrets.
CfrState make_cfr_state(const GameInstance& game, CfrConfig config);

// One alternating iteration: X responds to -A y^{t-1}, then Y to A^T x^t.
// Within each player, simplexes are processed bottom-up and each simplex's
// expected value under its current distribution is added to its parent
// sequence entry before the regret update. Two products.
void cfr_iteration(const GameInstance& game, CfrState& state, GradientCounter& counter);

// 2 |S_X| L sqrt(max_j n_j) / sqrt(T), with |S_X| the number of player-1
// information sets.
double cfr_plus_regret_bound(const GameInstance& game, std::int64_t iterations);

struct CfrResult {
  SolveResult solve;  // x, y are the average strategies
  CfrState final_state;
};

CfrResult run_cfr(const GameInstance& game, CfrConfig config, const SolveOptions& options);

std::string to_string(CfrConfig config);

}  // namespace saddle
