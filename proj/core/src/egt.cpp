#include "saddle/egt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace saddle {

namespace {

Player other(Player p) { return p == Player::kX ? Player::kY : Player::kX; }

std::optional<std::vector<double>>& cached_loss(EgtState& s, Player p) {
  return p == Player::kX ? s.loss_x : s.loss_y;
}

SequenceVector& point_of(EgtState& s, Player p) { return p == Player::kX ? s.x : s.y; }

double& mu_of(EgtState& s, Player p) { return p == Player::kX ? s.mu_x : s.mu_y; }

std::vector<double> loss_for(const EgtContext& ctx, EgtState& s, Player p,
                             GradientCounter& counter, bool keep) {
  auto& cache = cached_loss(s, p);
  if (cache) return *cache;
  std::vector<double> g = loss_gradient(*ctx.game, p, s.point(other(p)), counter);
  if (keep) cache = g;
  return g;
}

RecordExtras extras_of(const EgtState& s) {
  RecordExtras e;
  e.mu_x = s.mu_x;
  e.mu_y = s.mu_y;
  e.excessive_gap = s.excessive_gap;
  return e;
}

enum class Variant { kTheory, kBalanced, kAggressive };

EgtResult run(const GameInstance& game, const SolveOptions& options, const EgtOptions& egt,
              Variant variant) {
  GradientCounter algorithm;
  EgtContext ctx(game);
  RunMonitor monitor(game, options, algorithm);

  double mu_x = 0.0;
  double mu_y = 0.0;
  if (variant == Variant::kTheory) {
    mu_x = mu_y = theory_mu(ctx);
  } else {
    mu_x = egt.mu0_x.value_or(default_practical_mu(ctx));
    mu_y = egt.mu0_y.value_or(default_practical_mu(ctx));
  }
  if (!(mu_x > 0.0) || !(mu_y > 0.0)) throw std::invalid_argument("initial mu must be positive");
  if (!(egt.initial_tau > 0.0 && egt.initial_tau < 1.0)) {
    throw std::invalid_argument("initial tau must lie in (0, 1)");
  }

  EgtState state;
  for (int attempt = 0;; ++attempt) {
    try {
      state = initialize(ctx, mu_x, mu_y, algorithm);
      state.mu_escalations = attempt;
      break;
    } catch (const EgtError&) {
      if (variant == Variant::kTheory || !egt.escalate_mu || attempt >= egt.max_escalations) throw;
      mu_x *= 2.0;
      mu_y *= 2.0;
    }
  }
  state.tau = egt.initial_tau;
  std::int64_t iter = 0;
  if (!monitor.observe(0, state.x, state.y, extras_of(state))) {
    for (std::int64_t t = 0;; ++t) {
      if (variant == Variant::kAggressive) {
        const Player focus = state.mu_x >= state.mu_y ? Player::kX : Player::kY;
        double tau = state.tau;
        bool first_try = true;
        EgtState candidate;
        for (;;) {
          candidate = step(ctx, state, tau, focus, algorithm);
          const double egv = excessive_gap_value(ctx, candidate, algorithm, /*cache=*/true);
          ++candidate.egv_checks;
          state.egv_checks = candidate.egv_checks;
          if (egv >= -excessive_gap_slack(ctx, candidate.mu_x, candidate.mu_y)) break;
          tau *= 0.5;
          first_try = false;
          ++state.backtracks;
          if (tau < egt.min_tau) {
            std::ostringstream msg;
            msg << "step size fell below " << egt.min_tau << " at iteration " << t + 1
                << " (mu_x=" << state.mu_x << ", mu_y=" << state.mu_y
                << ", last excessive gap " << egv << ")";
            throw EgtError(msg.str());
          }
        }
        candidate.backtracks = state.backtracks;
        candidate.tau = (egt.tau_growth && first_try) ? std::min(2.0 * tau, egt.initial_tau) : tau;
        state = std::move(candidate);
      } else {
        const double tau = 2.0 / static_cast<double>(t + 3);
        Player focus = Player::kX;
        if (variant == Variant::kTheory) {
          focus = t % 2 == 0 ? Player::kX : Player::kY;
        } else {
          focus = state.mu_x >= state.mu_y ? Player::kX : Player::kY;
        }
        state = step(ctx, state, tau, focus, algorithm);
        state.tau = tau;
        if (egt.track_excessive_gap) {
          state.excessive_gap = excessive_gap_value(ctx, state.x, state.y, state.mu_x, state.mu_y,
                                                    monitor.measurement_counter());
        }
      }
      state.t = t + 1;
      iter = t + 1;
      if (monitor.observe(iter, state.x, state.y, extras_of(state))) break;
    }
  }
  EgtResult out;
  out.solve = monitor.finish(state.x, state.y, iter);
  out.final_state = std::move(state);
  return out;
}

}  // namespace

EgtContext::EgtContext(const GameInstance& g)
    : game(&g), wx(compute_weights(g.treeplex_x)), wy(compute_weights(g.treeplex_y)) {}

std::vector<double> loss_gradient(const GameInstance& game, Player p,
                                  const SequenceVector& opponent, GradientCounter& counter) {
  if (p == Player::kX) return apply(game.payoff, opponent.values, counter);
  std::vector<double> g = apply_transpose(game.payoff, opponent.values, counter);
  for (double& v : g) v = -v;
  return g;
}

SmoothedValue smoothed_f(const EgtContext& ctx, double mu_y, const SequenceVector& x,
                         GradientCounter& counter) {
  const std::vector<double> g = loss_gradient(*ctx.game, Player::kY, x, counter);
  SmoothedValue out;
  out.response = smoothed_best_response(ctx.wy, ctx.game->treeplex_y, g, mu_y);
  out.value = -out.response.value;
  return out;
}

SmoothedValue smoothed_phi(const EgtContext& ctx, double mu_x, const SequenceVector& y,
                           GradientCounter& counter) {
  const std::vector<double> g = loss_gradient(*ctx.game, Player::kX, y, counter);
  SmoothedValue out;
  out.response = smoothed_best_response(ctx.wx, ctx.game->treeplex_x, g, mu_x);
  out.value = out.response.value;
  return out;
}

double excessive_gap_value(const EgtContext& ctx, const SequenceVector& x, const SequenceVector& y,
                           double mu_x, double mu_y, GradientCounter& counter) {
  return smoothed_phi(ctx, mu_x, y, counter).value - smoothed_f(ctx, mu_y, x, counter).value;
}

double excessive_gap_value(const EgtContext& ctx, EgtState& state, GradientCounter& counter,
                           bool cache) {
  const std::vector<double> gx = loss_for(ctx, state, Player::kX, counter, cache);
  const std::vector<double> gy = loss_for(ctx, state, Player::kY, counter, cache);
  const double value =
      smoothed_best_response(ctx.wx, ctx.game->treeplex_x, gx, state.mu_x).value +
      smoothed_best_response(ctx.wy, ctx.game->treeplex_y, gy, state.mu_y).value;
  state.excessive_gap = value;
  return value;
}

double excessive_gap_slack(const EgtContext& ctx, double mu_x, double mu_y) {
  return kExcessiveGapTolerance * (mu_x * ctx.wx.omega + mu_y * ctx.wy.omega);
}

EgtState initialize(const EgtContext& ctx, double mu_x, double mu_y, GradientCounter& counter) {
  if (!(mu_x > 0.0) || !(mu_y > 0.0)) throw std::invalid_argument("initialize: mu must be positive");
  const GameInstance& game = *ctx.game;
  EgtState s;
  s.mu_x = mu_x;
  s.mu_y = mu_y;
  s.y = smoothed_f(ctx, mu_y, ctx.wx.center, counter).response.sequence;
  std::vector<double> grad_f = loss_gradient(game, Player::kX, s.y, counter);

  std::vector<double> negated(grad_f.size());
  for (std::size_t i = 0; i < grad_f.size(); ++i) negated[i] = -grad_f[i];
  const double slack = excessive_gap_slack(ctx, mu_x, mu_y);

  s.x = smoothed_best_response(ctx.wx, game.treeplex_x, negated, mu_x).sequence;
  const double literal = excessive_gap_value(ctx, s.x, s.y, mu_x, mu_y, counter);
  if (literal >= -slack) {
    s.convention = InitConvention::kLiteral;
    s.excessive_gap = literal;
    return s;
  }
  s.x = smoothed_best_response(ctx.wx, game.treeplex_x, grad_f, mu_x).sequence;
  const double flipped = excessive_gap_value(ctx, s.x, s.y, mu_x, mu_y, counter);
  if (flipped >= -slack) {
    s.convention = InitConvention::kNegated;
    s.excessive_gap = flipped;
    return s;
  }
  std::ostringstream msg;
  msg << "initial point violates the excessive gap condition under both sign conventions "
      << "(mu_x=" << mu_x << ", mu_y=" << mu_y << ", gap " << literal << " / " << flipped
      << "); mu is too small for this game";
  throw EgtError(msg.str());
}

EgtState step(const EgtContext& ctx, const EgtState& state, double tau, Player focus,
              GradientCounter& counter) {
  if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("step: tau must lie in (0, 1)");
  const GameInstance& game = *ctx.game;
  const Player me = focus;
  const Player op = other(focus);
  const Treeplex& tm = game.treeplex(me);
  const Treeplex& to = game.treeplex(op);
  const DgfWeights& wm = ctx.weights(me);
  const DgfWeights& wo = ctx.weights(op);
  const double mu_me = state.mu(me);

  EgtState next = state;
  next.loss_x.reset();
  next.loss_y.reset();
  next.excessive_gap.reset();

  // x_mu(y) and x_hat
  const auto& cached = me == Player::kX ? state.loss_x : state.loss_y;
  const std::vector<double> g_me =
      cached ? *cached : loss_gradient(game, me, state.point(op), counter);
  const SmoothedResponse response = smoothed_best_response(wm, tm, g_me, mu_me);
  const SequenceVector hat = convex_combination(state.point(me), response.sequence, tau);

  // y_plus from the opponent's smoothed response to x_hat
  const std::vector<double> g_op = loss_gradient(game, op, hat, counter);
  const SmoothedResponse opp = smoothed_best_response(wo, to, g_op, state.mu(op));
  point_of(next, op) = convex_combination(state.point(op), opp.sequence, tau);

  // prox step from x_mu(y) along grad f(x_hat)
  std::vector<double> grad = loss_gradient(game, me, opp.sequence, counter);
  const double scale = tau / ((1.0 - tau) * mu_me);
  for (double& v : grad) v *= scale;
  const SmoothedResponse tilde = prox_mapping_behavioral(wm, tm, grad, response.behavioral, 1.0);
  point_of(next, me) = convex_combination(state.point(me), tilde.sequence, tau);
  mu_of(next, me) = (1.0 - tau) * mu_me;
  return next;
}

double theory_mu(const EgtContext& ctx) {
  const double norm = ctx.game->matrix_norm > 0.0 ? ctx.game->matrix_norm : 1.0;
  return norm * std::sqrt(ctx.wx.max_l1_norm * ctx.wy.max_l1_norm);
}

double default_practical_mu(const EgtContext& ctx) { return theory_mu(ctx) / 100.0; }

double theory_rate_bound(const EgtContext& ctx, std::int64_t iterations) {
  return 4.0 * ctx.game->matrix_norm / static_cast<double>(iterations + 1) *
         std::sqrt(ctx.wx.omega * ctx.wy.omega * ctx.wx.max_l1_norm * ctx.wy.max_l1_norm);
}

EgtResult run_egt_theory(const GameInstance& game, const SolveOptions& options, EgtOptions egt) {
  return run(game, options, egt, Variant::kTheory);
}

EgtResult run_egt_balanced(const GameInstance& game, const SolveOptions& options, EgtOptions egt) {
  return run(game, options, egt, Variant::kBalanced);
}

EgtResult run_egt_as(const GameInstance& game, const SolveOptions& options, EgtOptions egt) {
  return run(game, options, egt, Variant::kAggressive);
}

std::string to_string(InitConvention c) {
  return c == InitConvention::kLiteral ? "literal" : "negated";
}

}  // namespace saddle
