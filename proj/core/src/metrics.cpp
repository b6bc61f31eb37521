#include "saddle/metrics.hpp"

#include <stdexcept>
#include <vector>

namespace saddle {

BestResponse best_response_value(const Treeplex& t, std::span<const double> g, Sense sense) {
  if (g.size() != static_cast<std::size_t>(t.dimension())) {
    throw std::invalid_argument("best_response_value: gradient length does not match treeplex");
  }
  std::vector<double> folded(g.begin(), g.end());
  std::vector<int> choice(t.simplex_count(), 0);
  BestResponse out;
  for (int j : t.bottom_up_order()) {
    const Simplex& s = t.simplex(j);
    int best = s.begin();
    for (int i = s.begin() + 1; i < s.end(); ++i) {
      const bool better = sense == Sense::kMax ? folded[i] > folded[best] : folded[i] < folded[best];
      if (better) best = i;
    }
    choice[j] = best;
    if (s.parent == kRootSequence) {
      out.value += folded[best];
    } else {
      folded[s.parent] += folded[best];
    }
  }
  out.vertex.values.assign(g.size(), 0.0);
  for (int j : t.top_down_order()) {
    out.vertex[choice[j]] = parent_value(t, out.vertex.values, j);
  }
  return out;
}

Residual saddle_point_residual(const GameInstance& game, const SequenceVector& x,
                               const SequenceVector& y, GradientCounter& counter) {
  const std::vector<double> ay = apply(game.payoff, y.values, counter);
  const std::vector<double> atx = apply_transpose(game.payoff, x.values, counter);
  Residual r;
  r.max_y = best_response_value(game.treeplex_y, atx, Sense::kMax).value;
  r.min_x = best_response_value(game.treeplex_x, ay, Sense::kMin).value;
  r.eps_sad = r.max_y - r.min_x;
  return r;
}

double to_mbb(const GameInstance& game, double eps) {
  if (!game.big_blind) {
    throw std::invalid_argument("game '" + game.name + "' has no big blind; mbb is undefined");
  }
  return eps / (*game.big_blind / 1000.0);
}

}  // namespace saddle
