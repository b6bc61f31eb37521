#include "saddle/cfr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "saddle/parallel.hpp"

namespace saddle {

namespace {

// Shared by the flat and the per-simplex forms.
void regret_step(std::span<double> r, std::span<double> z, std::span<const double> g,
                 RegretKind kind) {
  double expected = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) expected += z[i] * g[i];
  double positive = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    r[i] += g[i] - expected;
    if (kind == RegretKind::kRmPlus && r[i] < 0.0) r[i] = 0.0;
    positive += std::max(r[i], 0.0);
  }
  if (positive > 0.0) {
    for (std::size_t i = 0; i < g.size(); ++i) z[i] = std::max(r[i], 0.0) / positive;
  } else {
    const double u = 1.0 / static_cast<double>(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) z[i] = u;
  }
}

void check_dimension(const RegretState& s, std::span<const double> g) {
  if (g.size() != s.z.size()) throw std::invalid_argument("regret update: dimension mismatch");
}

void player_pass(const Treeplex& t, PlayerRegrets& p, std::vector<double>& g, RegretKind kind) {
  const auto& subtrees = t.root_subtrees();
  const int root_count = static_cast<int>(subtrees.size());
  const bool parallel = root_count > 1 && t.dimension() >= min_parallel_size();
  std::vector<double>& z = p.z.values;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int r = 0; r < root_count; ++r) {
    for (int j : subtrees[r]) {
      const Simplex& s = t.simplex(j);
      if (s.parent != kRootSequence) {
        double value = 0.0;
        for (int i = s.begin(); i < s.end(); ++i) value += z[i] * g[i];
        g[s.parent] += value;
      }
      regret_step(std::span<double>(p.r).subspan(s.offset, s.dimension),
                  std::span<double>(z).subspan(s.offset, s.dimension),
                  std::span<const double>(g).subspan(s.offset, s.dimension), kind);
    }
  }
  p.current = behavioral_to_sequence_unchecked(t, p.z);
}

void blend(SequenceVector& average, const SequenceVector& current, double alpha) {
  for (std::size_t i = 0; i < average.size(); ++i) {
    average[i] = alpha * current[i] + (1.0 - alpha) * average[i];
  }
}

PlayerRegrets fresh(const Treeplex& t) {
  PlayerRegrets p;
  p.r.assign(t.dimension(), 0.0);
  p.z = uniform_behavioral(t);
  p.current = uniform_sequence(t);
  p.average = p.current;
  return p;
}

}  // namespace

RegretState::RegretState(int dimension, RegretKind k)
    : r(dimension, 0.0), z(dimension, 1.0 / dimension), kind(k) {
  if (dimension < 1) throw std::invalid_argument("RegretState: dimension must be positive");
}

const std::vector<double>& rm_update(RegretState& state, std::span<const double> g) {
  check_dimension(state, g);
  regret_step(state.r, state.z, g, RegretKind::kRm);
  return state.z;
}

const std::vector<double>& rm_plus_update(RegretState& state, std::span<const double> g) {
  check_dimension(state, g);
  regret_step(state.r, state.z, g, RegretKind::kRmPlus);
  return state.z;
}

const std::vector<double>& regret_update(RegretState& state, std::span<const double> g) {
  return state.kind == RegretKind::kRm ? rm_update(state, g) : rm_plus_update(state, g);
}

double averaging_weight(AveragingScheme scheme, std::int64_t t) {
  if (t < 1) throw std::invalid_argument("averaging_weight: t must be at least 1");
  switch (scheme) {
    case AveragingScheme::kUniform:
      return 1.0 / static_cast<double>(t);
    case AveragingScheme::kLinear:
      return 2.0 / static_cast<double>(t + 1);
  }
  throw std::invalid_argument("averaging_weight: unknown scheme");
}

CfrState make_cfr_state(const GameInstance& game, CfrConfig config) {
  CfrState s;
  s.config = config;
  s.x = fresh(game.treeplex_x);
  s.y = fresh(game.treeplex_y);
  return s;
}

void cfr_iteration(const GameInstance& game, CfrState& state, GradientCounter& counter) {
  const std::int64_t t = state.t + 1;
  const double alpha = averaging_weight(state.config.averaging, t);

  std::vector<double> gx = apply(game.payoff, state.y.current.values, counter);
  for (double& v : gx) v = -v;
  player_pass(game.treeplex_x, state.x, gx, state.config.kind);
  blend(state.x.average, state.x.current, alpha);

  std::vector<double> gy = apply_transpose(game.payoff, state.x.current.values, counter);
  // <x^t, A y^t> before the fold mutates gy
  std::vector<double> atx = gy;
  player_pass(game.treeplex_y, state.y, gy, state.config.kind);
  blend(state.y.average, state.y.current, alpha);

  const double value = dot(atx, state.y.current.values);
  state.average_value = alpha * value + (1.0 - alpha) * state.average_value;
  state.t = t;
}

double cfr_plus_regret_bound(const GameInstance& game, std::int64_t iterations) {
  if (iterations < 1) throw std::invalid_argument("cfr_plus_regret_bound: T must be at least 1");
  const double infosets = static_cast<double>(game.treeplex_x.simplex_count());
  const double n = static_cast<double>(game.treeplex_x.max_simplex_dimension());
  return 2.0 * infosets * game.payoff_range * std::sqrt(n) /
         std::sqrt(static_cast<double>(iterations));
}

CfrResult run_cfr(const GameInstance& game, CfrConfig config, const SolveOptions& options) {
  GradientCounter algorithm;
  RunMonitor monitor(game, options, algorithm);
  CfrState state = make_cfr_state(game, config);
  std::int64_t iter = 0;
  if (!monitor.observe(0, state.x.average, state.y.average)) {
    for (;;) {
      cfr_iteration(game, state, algorithm);
      iter = state.t;
      RecordExtras extras;
      extras.average_value = state.average_value;
      if (monitor.observe(iter, state.x.average, state.y.average, extras)) break;
    }
  }
  CfrResult out;
  out.solve = monitor.finish(state.x.average, state.y.average, iter);
  out.final_state = std::move(state);
  return out;
}

std::string to_string(CfrConfig config) {
  if (config.kind == RegretKind::kRm) {
    return config.averaging == AveragingScheme::kUniform ? "cfr-rm" : "cfr-rm-linear";
  }
  return config.averaging == AveragingScheme::kUniform ? "cfr-rmp" : "cfr-plus";
}

}  // namespace saddle
