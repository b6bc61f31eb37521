#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "saddle/dgf.hpp"
#include "saddle/game.hpp"
#include "saddle/linops.hpp"
#include "saddle/solve.hpp"

namespace saddle {

// Game plus the dilated-entropy weights of both players.
struct EgtContext {
  const GameInstance* game = nullptr;
  DgfWeights wx;
  DgfWeights wy;

  explicit EgtContext(const GameInstance& g);
  const DgfWeights& weights(Player p) const { return p == Player::kX ? wx : wy; }
};

// Gradient of player p's loss against the opponent's point: A y for X and
// -A^T x for Y. Both players minimize their loss, which keeps every formula
// below symmetric. One product.
std::vector<double> loss_gradient(const GameInstance& game, Player p,
                                  const SequenceVector& opponent, GradientCounter& counter);

struct SmoothedValue {
  double value = 0.0;
  SmoothedResponse response;
};

// f_mu_y(x) = max_y <x, A y> - mu_y d_Y(y) and its maximizer y_mu_y(x).
SmoothedValue smoothed_f(const EgtContext& ctx, double mu_y, const SequenceVector& x,
                         GradientCounter& counter);
// phi_mu_x(y) = min_x <x, A y> + mu_x d_X(x) and its minimizer x_mu_x(y).
SmoothedValue smoothed_phi(const EgtContext& ctx, double mu_x, const SequenceVector& y,
                           GradientCounter& counter);

enum class InitConvention { kLiteral, kNegated };

struct EgtState {
  SequenceVector x;
  SequenceVector y;
  double mu_x = 0.0;
  double mu_y = 0.0;
  double tau = 0.5;
  std::int64_t t = 0;
  std::int64_t egv_checks = 0;
  std::int64_t backtracks = 0;
  InitConvention convention = InitConvention::kLiteral;
  std::optional<double> excessive_gap;  // at (x, y, mu), when evaluated
  int mu_escalations = 0;
  // Loss gradients against the current iterates (A y and -A^T x), kept when
  // an excessive-gap check already paid for them.
  std::optional<std::vector<double>> loss_x;
  std::optional<std::vector<double>> loss_y;

  double mu(Player p) const { return p == Player::kX ? mu_x : mu_y; }
  const SequenceVector& point(Player p) const { return p == Player::kX ? x : y; }
};

// phi_mu_x(y) - f_mu_y(x). Two products; when `cache` is set the loss
// gradients are stored in the state for reuse by the next step.
double excessive_gap_value(const EgtContext& ctx, EgtState& state, GradientCounter& counter,
                           bool cache = false);
double excessive_gap_value(const EgtContext& ctx, const SequenceVector& x, const SequenceVector& y,
                           double mu_x, double mu_y, GradientCounter& counter);

// Floating-point slack for the excessive gap condition, relative to
// mu_x * Omega_X + mu_y * Omega_Y.
inline constexpr double kExcessiveGapTolerance = 1e-9;
double excessive_gap_slack(const EgtContext& ctx, double mu_x, double mu_y);

class EgtError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// y0 = y_mu_y(x_w) at the prox center x_w, and x0 from the conjugate-gradient
// formula at grad f_mu_y(x_w). The literal sign is tried first, then the
// negated one; throws EgtError if neither satisfies the excessive gap
// condition (mu too small for this game).
EgtState initialize(const EgtContext& ctx, double mu_x, double mu_y, GradientCounter& counter);

// One Step focused on `focus`, returning the candidate state. Three products.
EgtState step(const EgtContext& ctx, const EgtState& state, double tau, Player focus,
              GradientCounter& counter);

// mu_x = mu_y = ||A|| * sqrt(M_X * M_Y), the smallest symmetric pair for
// which the O(1/T) rate guarantee holds.
double theory_mu(const EgtContext& ctx);
// Starting mu of the practical variants: theory_mu / 100.
double default_practical_mu(const EgtContext& ctx);

// 4 ||A|| / (T + 1) * sqrt(Omega_X Omega_Y / (phi_X phi_Y)).
double theory_rate_bound(const EgtContext& ctx, std::int64_t iterations);

struct EgtOptions {
  std::optional<double> mu0_x;
  std::optional<double> mu0_y;
  // Doubles tau (capped at the initial value) after a step that needed no
  // backtracking. Aggressive variant only.
  bool tau_growth = false;
  double initial_tau = 0.5;
  double min_tau = 1e-12;
  // Evaluate the excessive gap after every step and attach it to records.
  // Charged as measurement for the variants whose algorithm does not need it.
  bool track_excessive_gap = false;
  // If the initial point fails the excessive gap condition, double both mu
  // values and retry (practical variants only).
  bool escalate_mu = true;
  int max_escalations = 60;
};

struct EgtResult {
  SolveResult solve;
  EgtState final_state;
};

// Alternating steps with tau_t = 2 / (t + 3) from the theory mu.
EgtResult run_egt_theory(const GameInstance& game, const SolveOptions& options,
                         EgtOptions egt = {});
// Steps on the player with the larger mu (X on ties), tau_t = 2 / (t + 3).
EgtResult run_egt_balanced(const GameInstance& game, const SolveOptions& options,
                           EgtOptions egt = {});
// Reuses tau across iterations and halves it whenever the candidate breaks
// the excessive gap condition.
EgtResult run_egt_as(const GameInstance& game, const SolveOptions& options, EgtOptions egt = {});

std::string to_string(InitConvention c);

}  // namespace saddle
