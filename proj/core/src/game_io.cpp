#include "saddle/game_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace saddle {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

int parse_id(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size() || v < 0) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "invalid node id '" + s + "'");
  }
}

Rational parse_rational(const std::string& s, int line) {
  try {
    return Rational::parse(s);
  } catch (const std::exception& e) {
    throw ParseError(line, e.what());
  }
}

void check_token(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_of(" \t\r\n:#") != std::string::npos) {
    throw std::invalid_argument(std::string("cannot write ") + what + " '" + s +
                                "': empty or contains whitespace, ':' or '#'");
  }
}

}  // namespace

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

ExtensiveFormGame read_game(std::istream& in) {
  ExtensiveFormGame game;
  std::vector<Node> nodes;
  std::vector<char> defined;
  std::vector<int> defined_on;
  bool saw_players = false;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    std::string keyword;
    if (!(ss >> keyword)) continue;
    std::vector<std::string> tokens;
    for (std::string t; ss >> t;) tokens.push_back(t);

    if (keyword == "players") {
      if (tokens.size() != 1 || tokens[0] != "2") throw ParseError(line, "only 'players 2' is supported");
      saw_players = true;
    } else if (keyword == "name") {
      if (tokens.size() != 1) throw ParseError(line, "name takes one token");
      game.name = tokens[0];
    } else if (keyword == "unit") {
      if (tokens.size() != 1) throw ParseError(line, "unit takes one token");
      game.payoff_unit = tokens[0];
    } else if (keyword == "big_blind") {
      if (tokens.size() != 1) throw ParseError(line, "big_blind takes one rational");
      game.big_blind = parse_rational(tokens[0], line);
    } else if (keyword == "node") {
      if (!saw_players) throw ParseError(line, "node record before 'players 2' header");
      if (tokens.size() < 2) throw ParseError(line, "node record needs an id and a kind");
      const int id = parse_id(tokens[0], line);
      if (id >= static_cast<int>(nodes.size())) {
        nodes.resize(id + 1);
        defined.resize(id + 1, 0);
        defined_on.resize(id + 1, 0);
      }
      if (defined[id]) {
        throw ParseError(line, "node " + std::to_string(id) + " already defined on line " +
                                   std::to_string(defined_on[id]));
      }
      defined[id] = 1;
      defined_on[id] = line;
      Node& n = nodes[id];
      const std::string& kind = tokens[1];
      std::size_t first_edge = 2;
      if (kind == "terminal") {
        if (tokens.size() != 3) throw ParseError(line, "terminal node takes exactly one payoff");
        n.kind = NodeKind::kTerminal;
        n.payoff = parse_rational(tokens[2], line);
        continue;
      } else if (kind == "chance") {
        n.kind = NodeKind::kChance;
      } else if (kind == "p1" || kind == "p2") {
        n.kind = NodeKind::kDecision;
        n.player = kind == "p1" ? Player::kX : Player::kY;
        if (tokens.size() < 3) throw ParseError(line, "decision node needs an information set");
        n.infoset = tokens[2];
        first_edge = 3;
      } else {
        throw ParseError(line, "unknown node kind '" + kind + "'");
      }
      for (std::size_t k = first_edge; k < tokens.size(); ++k) {
        const auto parts = split(tokens[k], ':');
        const std::size_t expected = n.kind == NodeKind::kChance ? 3 : 2;
        if (parts.size() != expected) {
          throw ParseError(line, "malformed edge '" + tokens[k] + "'");
        }
        Edge e;
        e.child = parse_id(parts[0], line);
        e.label = parts[1];
        if (n.kind == NodeKind::kChance) e.probability = parse_rational(parts[2], line);
        n.edges.push_back(std::move(e));
      }
      if (n.edges.empty()) throw ParseError(line, "node " + std::to_string(id) + " has no children");
    } else {
      throw ParseError(line, "unknown record '" + keyword + "'");
    }
  }
  if (!saw_players) throw ParseError(line, "missing 'players 2' header");
  if (nodes.empty()) throw ParseError(line, "no nodes");
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    if (!defined[id]) throw ParseError(line, "node " + std::to_string(id) + " is never defined");
  }
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    for (const Edge& e : nodes[id].edges) {
      if (e.child >= static_cast<int>(nodes.size())) {
        throw ParseError(defined_on[id], "child " + std::to_string(e.child) + " is never defined");
      }
    }
  }
  game.nodes = std::move(nodes);
  game.validate();
  return game;
}

void write_game(const ExtensiveFormGame& game, std::ostream& out) {
  out << "players 2\n";
  if (!game.name.empty()) {
    check_token(game.name, "name");
    out << "name " << game.name << '\n';
  }
  check_token(game.payoff_unit, "unit");
  out << "unit " << game.payoff_unit << '\n';
  if (game.big_blind) out << "big_blind " << game.big_blind->to_string() << '\n';
  for (std::size_t id = 0; id < game.nodes.size(); ++id) {
    const Node& n = game.nodes[id];
    out << "node " << id << ' ';
    switch (n.kind) {
      case NodeKind::kTerminal:
        out << "terminal " << n.payoff.to_string();
        break;
      case NodeKind::kChance:
        out << "chance";
        for (const Edge& e : n.edges) {
          check_token(e.label, "label");
          out << ' ' << e.child << ':' << e.label << ':' << e.probability.to_string();
        }
        break;
      case NodeKind::kDecision:
        check_token(n.infoset, "information set");
        out << (n.player == Player::kX ? "p1 " : "p2 ") << n.infoset;
        for (const Edge& e : n.edges) {
          check_token(e.label, "label");
          out << ' ' << e.child << ':' << e.label;
        }
        break;
    }
    out << '\n';
  }
}

ExtensiveFormGame load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open game file '" + path + "'");
  return read_game(in);
}

void save_game(const ExtensiveFormGame& game, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write game file '" + path + "'");
  write_game(game, out);
  if (!out) throw std::runtime_error("error while writing '" + path + "'");
}

}  // namespace saddle
