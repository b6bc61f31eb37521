#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "saddle/linops.hpp"
#include "saddle/rational.hpp"
#include "saddle/treeplex.hpp"

namespace saddle {

enum class NodeKind { kChance, kDecision, kTerminal };
enum class Player { kX = 0, kY = 1 };

struct Edge {
  int child = -1;
  std::string label;
  Rational probability;  // chance edges only

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Node {
  NodeKind kind = NodeKind::kTerminal;
  Player player = Player::kX;  // decision nodes only
  std::string infoset;          // decision nodes only
  std::vector<Edge> edges;
  Rational payoff;  // terminal nodes only; payoff to player 1 (X)

  friend bool operator==(const Node&, const Node&) = default;
};

// Two-player zero-sum game tree. Node 0 is the root; terminal payoffs are
// to player 1 and player 2 receives the negation.
struct ExtensiveFormGame {
  std::string name;
  std::vector<Node> nodes;
  std::string payoff_unit = "chips";
  std::optional<Rational> big_blind;

  // Structural checks: tree shape rooted at node 0, chance weights
  // non-negative and summing to exactly 1, consistent action counts per
  // information set. Throws std::invalid_argument.
  void validate() const;

  friend bool operator==(const ExtensiveFormGame&, const ExtensiveFormGame&) = default;
};

// Sequence-form view of a game: min over x, max over y of <x, A y>, with A the
// chance-weighted loss of player 1 (so x is player 1's sequence-form strategy).
struct GameInstance {
  std::string name;
  Treeplex treeplex_x;
  Treeplex treeplex_y;
  SparseMatrix payoff;  // A: rows are X sequences, columns are Y sequences
  double payoff_range = 0.0;  // L: max minus min leaf payoff
  double matrix_norm = 0.0;   // ||A||, the largest absolute entry
  std::string payoff_unit = "chips";
  std::optional<double> big_blind;

  // Information-set names indexed by simplex id; "" for a dummy singleton
  // simplex of a player without decisions.
  std::vector<std::string> infosets_x;
  std::vector<std::string> infosets_y;

  const Treeplex& treeplex(Player p) const { return p == Player::kX ? treeplex_x : treeplex_y; }
};

// Throws std::invalid_argument on imperfect recall or inconsistent action
// counts, in addition to the ExtensiveFormGame::validate checks.
GameInstance build_sequence_form(const ExtensiveFormGame& game);

}  // namespace saddle
