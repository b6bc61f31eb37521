#include "saddle/generators.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <utility>

namespace saddle {

namespace {

class TreeBuilder {
 public:
  int chance() { return add(Node{NodeKind::kChance, Player::kX, {}, {}, {}}); }
  int decision(Player p, std::string infoset) {
    return add(Node{NodeKind::kDecision, p, std::move(infoset), {}, {}});
  }
  int terminal(Rational payoff) { return add(Node{NodeKind::kTerminal, Player::kX, {}, {}, payoff}); }
  void edge(int parent, int child, std::string label, Rational probability = {}) {
    nodes_[parent].edges.push_back(Edge{child, std::move(label), probability});
  }

  ExtensiveFormGame finish(std::string name, std::optional<Rational> big_blind) {
    ExtensiveFormGame g;
    g.name = std::move(name);
    g.nodes = std::move(nodes_);
    g.big_blind = big_blind;
    g.validate();
    return g;
  }

 private:
  int add(Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }
  std::vector<Node> nodes_;
};

constexpr std::array<char, 3> kKuhnRanks{'J', 'Q', 'K'};

// -------------------------------------------------------------------------
// Leduc hold'em

struct LeducState {
  int cards[2];
  int board = -1;
  int round = 0;
  int contrib[2] = {1, 1};
  std::string history;  // both rounds, '/' separates them
};

int leduc_rank(int card) { return card / 2; }

std::string leduc_card(int card) {
  return std::string(1, kKuhnRanks[leduc_rank(card)]) + (card % 2 == 0 ? "a" : "b");
}

std::string leduc_infoset(const LeducState& s, int player) {
  std::string name(1, kKuhnRanks[leduc_rank(s.cards[player])]);
  if (s.board >= 0) name += kKuhnRanks[leduc_rank(s.board)];
  return name + "." + s.history;
}

Rational leduc_showdown(const LeducState& s) {
  const auto strength = [&](int p) {
    const int r = leduc_rank(s.cards[p]);
    return r == leduc_rank(s.board) ? 10 + r : r;
  };
  const int a = strength(0);
  const int b = strength(1);
  if (a == b) return Rational(0);
  return a > b ? Rational(s.contrib[1]) : Rational(-s.contrib[0]);
}

int leduc_betting(TreeBuilder& b, LeducState s, int player, int raises, bool opened);

int leduc_round_end(TreeBuilder& b, LeducState s) {
  if (s.round == 1) return b.terminal(leduc_showdown(s));
  const int node = b.chance();
  for (int card = 0; card < 6; ++card) {
    if (card == s.cards[0] || card == s.cards[1]) continue;
    LeducState next = s;
    next.board = card;
    next.round = 1;
    next.history += '/';
    b.edge(node, leduc_betting(b, next, 0, 0, false), leduc_card(card), Rational(1, 4));
  }
  return node;
}

int leduc_betting(TreeBuilder& b, LeducState s, int player, int raises, bool opened) {
  constexpr int kMaxRaises = 2;
  const int other = 1 - player;
  const int bet = s.round == 0 ? 2 : 4;
  const int node = b.decision(player == 0 ? Player::kX : Player::kY, leduc_infoset(s, player));
  const bool facing = s.contrib[player] < s.contrib[other];
  if (facing) {
    const Rational fold = player == 0 ? Rational(-s.contrib[0]) : Rational(s.contrib[1]);
    b.edge(node, b.terminal(fold), "f");
    LeducState call = s;
    call.contrib[player] = s.contrib[other];
    call.history += 'c';
    b.edge(node, leduc_round_end(b, call), "c");
  } else {
    LeducState check = s;
    check.history += 'c';
    const int child = opened ? leduc_round_end(b, check) : leduc_betting(b, check, other, raises, true);
    b.edge(node, child, "c");
  }
  if (raises < kMaxRaises) {
    LeducState raise = s;
    raise.contrib[player] = s.contrib[other] + bet;
    raise.history += 'r';
    b.edge(node, leduc_betting(b, raise, other, raises + 1, true), "r");
  }
  return node;
}

// -------------------------------------------------------------------------
// River endgame

struct RiverState {
  int ranks[2];
  Rational contrib[2];
  int raises = 0;
  std::string history;
};

struct RiverContext {
  const RiverParams& params;
  Rational half_pot;
  TreeBuilder& builder;

  const std::vector<Rational>& level(int raises_done, bool opening) const {
    const auto& f = params.bet_fractions;
    const std::size_t want = opening ? 0 : static_cast<std::size_t>(raises_done) + 1;
    return f[std::min(want, f.size() - 1)];
  }
  Rational remaining(const RiverState& s, int p) const {
    return params.stack - (s.contrib[p] - half_pot);
  }
};

Rational river_showdown(const RiverState& s) {
  if (s.ranks[0] == s.ranks[1]) return Rational(0);
  return s.ranks[0] > s.ranks[1] ? s.contrib[1] : -s.contrib[0];
}

std::string river_infoset(const RiverState& s, int p) {
  return std::to_string(s.ranks[p]) + "." + s.history;
}

void append(std::string& history, const std::string& token) {
  if (!history.empty()) history += '-';
  history += token;
}

int river_node(RiverContext& ctx, RiverState s, int player, bool checked);

// Sizes (chips added) for a bet or raise; deduplicated, capped at the stack.
std::vector<Rational> river_sizes(const RiverContext& ctx, const RiverState& s, int player,
                                  bool opening) {
  const int other = 1 - player;
  const Rational to_call = s.contrib[other] - s.contrib[player];
  const Rational behind = ctx.remaining(s, player) - to_call;
  std::vector<Rational> sizes;
  if (behind <= Rational(0) || ctx.remaining(s, other) <= Rational(0)) return sizes;
  const Rational pot_after_call = s.contrib[0] + s.contrib[1] + to_call;
  auto add = [&](Rational extra) {
    extra = std::min(extra, behind);
    const Rational total = to_call + extra;
    if (std::find(sizes.begin(), sizes.end(), total) == sizes.end()) sizes.push_back(total);
  };
  for (const Rational& f : ctx.level(s.raises, opening)) add(f * pot_after_call);
  if (ctx.params.all_in) add(behind);
  return sizes;
}

int river_node(RiverContext& ctx, RiverState s, int player, bool checked) {
  TreeBuilder& b = ctx.builder;
  const int other = 1 - player;
  const int node = b.decision(player == 0 ? Player::kX : Player::kY, river_infoset(s, player));
  const bool facing = s.contrib[player] < s.contrib[other];

  const Rational fold = player == 0 ? -s.contrib[0] : s.contrib[1];
  b.edge(node, b.terminal(fold), "f");
  if (facing) {
    RiverState call = s;
    call.contrib[player] = s.contrib[other];
    b.edge(node, b.terminal(river_showdown(call)), "c");
    if (s.raises < ctx.params.raise_cap) {
      const auto sizes = river_sizes(ctx, s, player, false);
      for (std::size_t k = 0; k < sizes.size(); ++k) {
        RiverState raise = s;
        raise.contrib[player] += sizes[k];
        raise.raises += 1;
        append(raise.history, "r" + std::to_string(k));
        b.edge(node, river_node(ctx, raise, other, false), "r" + std::to_string(k));
      }
    }
  } else {
    RiverState check = s;
    append(check.history, "k");
    const int child = checked ? b.terminal(river_showdown(check)) : river_node(ctx, check, other, true);
    b.edge(node, child, "k");
    const auto sizes = river_sizes(ctx, s, player, true);
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      RiverState bet = s;
      bet.contrib[player] += sizes[k];
      append(bet.history, "b" + std::to_string(k));
      b.edge(node, river_node(ctx, bet, other, false), "b" + std::to_string(k));
    }
  }
  return node;
}

}  // namespace

ExtensiveFormGame matching_pennies() {
  TreeBuilder b;
  const int root = b.decision(Player::kX, "x");
  const std::array<const char*, 2> sides{"h", "t"};
  for (int i = 0; i < 2; ++i) {
    const int y = b.decision(Player::kY, "y");
    b.edge(root, y, sides[i]);
    for (int j = 0; j < 2; ++j) b.edge(y, b.terminal(Rational(i == j ? -1 : 1)), sides[j]);
  }
  return b.finish("matching_pennies", std::nullopt);
}

ExtensiveFormGame kuhn_poker() {
  TreeBuilder b;
  const int root = b.chance();
  const auto name = [](int card, const char* history) {
    return std::string(1, kKuhnRanks[card]) + "." + history;
  };
  const auto showdown = [](int c1, int c2, int stake) {
    return c1 > c2 ? Rational(stake) : Rational(-stake);
  };
  for (int c1 = 0; c1 < 3; ++c1) {
    for (int c2 = 0; c2 < 3; ++c2) {
      if (c1 == c2) continue;
      const int start = b.decision(Player::kX, name(c1, ""));
      b.edge(root, start, std::string{kKuhnRanks[c1], kKuhnRanks[c2]}, Rational(1, 6));

      const int after_check = b.decision(Player::kY, name(c2, "c"));
      b.edge(start, after_check, "c");
      b.edge(after_check, b.terminal(showdown(c1, c2, 1)), "c");
      const int facing = b.decision(Player::kX, name(c1, "cb"));
      b.edge(after_check, facing, "b");
      b.edge(facing, b.terminal(Rational(-1)), "f");
      b.edge(facing, b.terminal(showdown(c1, c2, 2)), "c");

      const int after_bet = b.decision(Player::kY, name(c2, "b"));
      b.edge(start, after_bet, "b");
      b.edge(after_bet, b.terminal(Rational(1)), "f");
      b.edge(after_bet, b.terminal(showdown(c1, c2, 2)), "c");
    }
  }
  return b.finish("kuhn", Rational(1));
}

ExtensiveFormGame leduc_holdem() {
  TreeBuilder b;
  const int root = b.chance();
  for (int c1 = 0; c1 < 6; ++c1) {
    for (int c2 = 0; c2 < 6; ++c2) {
      if (c1 == c2) continue;
      LeducState s;
      s.cards[0] = c1;
      s.cards[1] = c2;
      b.edge(root, leduc_betting(b, s, 0, 0, false), leduc_card(c1) + "," + leduc_card(c2),
             Rational(1, 30));
    }
  }
  return b.finish("leduc", Rational(1));
}

ExtensiveFormGame river_endgame(const RiverParams& params) {
  if (params.num_ranks < 2) throw std::invalid_argument("river: num_ranks must be >= 2");
  if (params.pot <= Rational(0)) throw std::invalid_argument("river: pot must be positive");
  if (params.stack < params.pot / Rational(2)) {
    throw std::invalid_argument("river: stack must be at least pot/2");
  }
  if (params.raise_cap < 0) throw std::invalid_argument("river: raise_cap must be >= 0");
  if (params.bet_fractions.empty()) throw std::invalid_argument("river: no bet fractions");
  for (const auto& level : params.bet_fractions) {
    if (level.empty()) throw std::invalid_argument("river: empty bet-fraction level");
    for (const Rational& f : level) {
      if (f <= Rational(0)) throw std::invalid_argument("river: bet fractions must be positive");
    }
  }
  const std::size_t pairs = static_cast<std::size_t>(params.num_ranks) * params.num_ranks;
  std::vector<Rational> weights = params.hand_weights;
  if (weights.empty()) weights.assign(pairs, Rational(1));
  if (weights.size() != pairs) {
    throw std::invalid_argument("river: hand_weights must have num_ranks^2 entries");
  }
  Rational total;
  for (const Rational& w : weights) {
    if (w < Rational(0)) throw std::invalid_argument("river: negative hand weight");
    total += w;
  }
  if (total == Rational(0)) throw std::invalid_argument("river: hand weights sum to zero");

  TreeBuilder b;
  RiverContext ctx{params, params.pot / Rational(2), b};
  const int root = b.chance();
  for (int r1 = 0; r1 < params.num_ranks; ++r1) {
    for (int r2 = 0; r2 < params.num_ranks; ++r2) {
      RiverState s;
      s.ranks[0] = r1;
      s.ranks[1] = r2;
      s.contrib[0] = s.contrib[1] = ctx.half_pot;
      const Rational p = weights[static_cast<std::size_t>(r1) * params.num_ranks + r2] / total;
      b.edge(root, river_node(ctx, s, 0, false), std::to_string(r1) + "v" + std::to_string(r2), p);
    }
  }
  return b.finish("river", params.big_blind);
}

}  // namespace saddle
