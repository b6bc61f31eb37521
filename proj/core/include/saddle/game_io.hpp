#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "saddle/game.hpp"

namespace saddle {

// Line-oriented UTF-8 game format:
//
//   # comment
//   players 2
//   name kuhn                       (optional)
//   unit chips                      (optional)
//   big_blind 1                     (optional, rational)
//   node <id> chance <child>:<label>:<n/d> ...
//   node <id> p1|p2 <infoset> <child>:<label> ...
//   node <id> terminal <payoff to p1 as n/d>
//
// Node ids are 0..N-1, each defined once, node 0 is the root. Labels and
// information-set names may not contain whitespace or ':'.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

ExtensiveFormGame read_game(std::istream& in);
void write_game(const ExtensiveFormGame& game, std::ostream& out);

// Throws ParseError, std::invalid_argument for semantic errors, or
// std::runtime_error when the file cannot be opened.
ExtensiveFormGame load_game(const std::string& path);
void save_game(const ExtensiveFormGame& game, const std::string& path);

}  // namespace saddle
