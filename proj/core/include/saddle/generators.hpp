#pragma once

#include <optional>
#include <vector>

#include "saddle/game.hpp"
#include "saddle/rational.hpp"

namespace saddle {

// One-shot matching pennies where player 2 wins on a match, so that the
// loss matrix of player 1 is [[1, -1], [-1, 1]].
ExtensiveFormGame matching_pennies();

// Three-card Kuhn poker: ante 1, bet 1, six equally likely ordered deals.
ExtensiveFormGame kuhn_poker();

// Leduc hold'em: six cards (three ranks, two suits), ante 1, bet sizes 2 and
// 4 in the two rounds, at most two bets or raises per round. One public card
// is dealt between the rounds.
ExtensiveFormGame leduc_holdem();

// Single-street endgame: chance deals each player one rank, then
// player 1 may fold, check, or bet; responses are fold, call, or raise.
struct RiverParams {
  int num_ranks = 2;
  Rational pot{2};
  // Chips behind for each player at the start of the street.
  Rational stack{4};
  // bet_fractions[0] are the opening bet sizes as pot multiples;
  // bet_fractions[k] the sizes of the k-th raise. The last level repeats.
  std::vector<std::vector<Rational>> bet_fractions{{Rational(1)}};
  // Maximum number of raises after the opening bet.
  int raise_cap = 1;
  bool all_in = false;
  // Joint deal weights, row-major with player 1's rank as the row; empty
  // means uniform over all num_ranks^2 pairs. Normalized internally.
  std::vector<Rational> hand_weights;
  std::optional<Rational> big_blind;
};

// Throws std::invalid_argument on parameter-domain violations.
ExtensiveFormGame river_endgame(const RiverParams& params);

}  // namespace saddle
