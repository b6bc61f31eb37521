#include "saddle/game.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace saddle {

namespace {

std::string node_name(int id) { return "node " + std::to_string(id); }

}  // namespace

void ExtensiveFormGame::validate() const {
  if (nodes.empty()) throw std::invalid_argument("game has no nodes");
  const int count = static_cast<int>(nodes.size());
  std::vector<int> parents(count, 0);
  std::map<std::pair<Player, std::string>, std::size_t> action_counts;

  for (int id = 0; id < count; ++id) {
    const Node& n = nodes[id];
    switch (n.kind) {
      case NodeKind::kTerminal:
        if (!n.edges.empty()) throw std::invalid_argument(node_name(id) + ": terminal node has children");
        break;
      case NodeKind::kChance: {
        if (n.edges.empty()) throw std::invalid_argument(node_name(id) + ": chance node has no outcomes");
        Rational total;
        for (const Edge& e : n.edges) {
          if (e.probability < Rational(0)) {
            throw std::invalid_argument(node_name(id) + ": negative chance probability");
          }
          total += e.probability;
        }
        if (total != Rational(1)) {
          throw std::invalid_argument(node_name(id) + ": chance probabilities must sum to 1 (got " +
                                      total.to_string() + ")");
        }
        break;
      }
      case NodeKind::kDecision: {
        if (n.edges.empty()) throw std::invalid_argument(node_name(id) + ": decision node has no actions");
        if (n.infoset.empty()) throw std::invalid_argument(node_name(id) + ": missing information set");
        const auto [it, inserted] = action_counts.emplace(std::pair{n.player, n.infoset}, n.edges.size());
        if (!inserted && it->second != n.edges.size()) {
          throw std::invalid_argument(node_name(id) + ": information set '" + n.infoset +
                                      "' has inconsistent action counts");
        }
        break;
      }
    }
    for (const Edge& e : n.edges) {
      if (e.child < 0 || e.child >= count) {
        throw std::invalid_argument(node_name(id) + ": child " + std::to_string(e.child) +
                                    " out of range");
      }
      if (e.child == 0) throw std::invalid_argument(node_name(id) + ": root used as a child");
      if (++parents[e.child] > 1) {
        throw std::invalid_argument(node_name(e.child) + " has more than one parent");
      }
    }
  }
  // With in-degree <= 1 and no edge into the root, every node reachable from
  // the root lies on a tree; unreachable nodes form orphaned cycles or stray
  // subtrees.
  std::vector<char> seen(count, 0);
  std::vector<int> stack{0};
  int reached = 0;
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    seen[id] = 1;
    ++reached;
    for (const Edge& e : nodes[id].edges) stack.push_back(e.child);
  }
  if (reached != count) {
    for (int id = 0; id < count; ++id) {
      if (!seen[id]) throw std::invalid_argument(node_name(id) + " is not reachable from the root");
    }
  }
}

GameInstance build_sequence_form(const ExtensiveFormGame& game) {
  game.validate();

  struct PlayerBuild {
    std::vector<SimplexSpec> specs;
    std::vector<int> offsets;
    std::vector<std::string> names;
    std::map<std::string, int> index;
    int dimension = 0;
  };
  PlayerBuild builds[2];

  struct Leaf {
    int seq_x;
    int seq_y;
    Rational weight;  // reach * payoff to player 1
  };
  std::vector<Leaf> leaves;
  Rational min_payoff, max_payoff;
  bool any_leaf = false;

  struct Frame {
    int node;
    int seq[2];
    Rational reach;
  };
  std::vector<Frame> stack{{0, {kRootSequence, kRootSequence}, Rational(1)}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    const Node& n = game.nodes[f.node];
    switch (n.kind) {
      case NodeKind::kTerminal:
        leaves.push_back({f.seq[0], f.seq[1], f.reach * n.payoff});
        if (!any_leaf) {
          min_payoff = max_payoff = n.payoff;
          any_leaf = true;
        }
        min_payoff = std::min(min_payoff, n.payoff);
        max_payoff = std::max(max_payoff, n.payoff);
        break;
      case NodeKind::kChance:
        for (auto it = n.edges.rbegin(); it != n.edges.rend(); ++it) {
          if (it->probability == Rational(0)) continue;
          stack.push_back({it->child, {f.seq[0], f.seq[1]}, f.reach * it->probability});
        }
        break;
      case NodeKind::kDecision: {
        const int p = static_cast<int>(n.player);
        PlayerBuild& b = builds[p];
        const int own = f.seq[p];
        int simplex;
        if (auto it = b.index.find(n.infoset); it == b.index.end()) {
          simplex = static_cast<int>(b.specs.size());
          b.index.emplace(n.infoset, simplex);
          b.specs.push_back({static_cast<int>(n.edges.size()), own});
          b.offsets.push_back(b.dimension);
          b.names.push_back(n.infoset);
          b.dimension += static_cast<int>(n.edges.size());
        } else {
          simplex = it->second;
          if (b.specs[simplex].parent_sequence != own) {
            throw std::invalid_argument("imperfect recall: information set '" + n.infoset +
                                        "' of player " + std::to_string(p + 1) +
                                        " is reached from different own histories");
          }
        }
        for (int a = static_cast<int>(n.edges.size()) - 1; a >= 0; --a) {
          Frame child{n.edges[a].child, {f.seq[0], f.seq[1]}, f.reach};
          child.seq[p] = b.offsets[simplex] + a;
          stack.push_back(child);
        }
        break;
      }
    }
  }

  for (auto& b : builds) {
    if (b.specs.empty()) {
      b.specs.push_back({1, kRootSequence});
      b.offsets.push_back(0);
      b.names.emplace_back();
      b.dimension = 1;
    }
  }

  GameInstance g;
  g.name = game.name;
  g.treeplex_x = Treeplex::build(builds[0].specs);
  g.treeplex_y = Treeplex::build(builds[1].specs);
  g.infosets_x = std::move(builds[0].names);
  g.infosets_y = std::move(builds[1].names);

  // A leaf where a player has not acted yet has no sequence of that player;
  // its payoff is spread over the player's first root simplex, whose entries
  // sum to one at every feasible point.
  const Simplex& spread_x = g.treeplex_x.simplex(0);
  const Simplex& spread_y = g.treeplex_y.simplex(0);
  std::vector<SparseMatrix::Triplet> triplets;
  triplets.reserve(leaves.size());
  for (const Leaf& leaf : leaves) {
    const double loss = (-leaf.weight).to_double();
    const int row_begin = leaf.seq_x == kRootSequence ? spread_x.begin() : leaf.seq_x;
    const int row_end = leaf.seq_x == kRootSequence ? spread_x.end() : leaf.seq_x + 1;
    const int col_begin = leaf.seq_y == kRootSequence ? spread_y.begin() : leaf.seq_y;
    const int col_end = leaf.seq_y == kRootSequence ? spread_y.end() : leaf.seq_y + 1;
    for (int r = row_begin; r < row_end; ++r) {
      for (int c = col_begin; c < col_end; ++c) triplets.push_back({r, c, loss});
    }
  }
  g.payoff = SparseMatrix::from_triplets(g.treeplex_x.dimension(), g.treeplex_y.dimension(),
                                         std::move(triplets));
  g.payoff_range = (max_payoff - min_payoff).to_double();
  g.matrix_norm = g.payoff.max_abs_entry();
  g.payoff_unit = game.payoff_unit;
  if (game.big_blind) g.big_blind = game.big_blind->to_double();
  return g;
}

}  // namespace saddle
