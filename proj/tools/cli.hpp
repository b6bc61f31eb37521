#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "saddle/egt.hpp"
#include "saddle/game.hpp"
#include "saddle/solve.hpp"

namespace saddle::cli {

enum class Algorithm { kCfrRm, kCfrRmPlus, kCfrPlus, kEgt, kEgtAs, kEgtTheory };

// Names used on the command line: cfr-rm, cfr-rmp, cfr-plus, egt, egt-as, egt-theory.
Algorithm parse_algorithm(const std::string& name);
std::string to_string(Algorithm a);
const std::vector<std::string>& algorithm_names();

inline constexpr int kExitConverged = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitUsage = 64;

// Game selectors:
//   kuhn | leduc | mp
//   river[:key=value,...] with keys ranks, pot, stack, bets, cap, allin, bb,
//     weights (uniform|random); bets lists pot fractions per raise level,
//     sizes joined by '+', levels by '|' (e.g. bets=0.5+1|1)
//   file:<path>
// `seed` drives random river hand weights. Throws std::invalid_argument on
// a malformed selector, ParseError or std::runtime_error on file problems.
ExtensiveFormGame make_game(const std::string& selector, std::uint64_t seed);

struct RunConfig {
  std::string game = "kuhn";
  Algorithm algorithm = Algorithm::kCfrPlus;
  // Target eps_sad as a fraction of the payoff range L; 0 disables it.
  double epsilon = 0.0;
  std::int64_t max_iters = 10000;
  std::optional<std::int64_t> max_gradients;
  std::optional<double> mu0_x;
  std::optional<double> mu0_y;
  bool tau_growth = false;
  int residual_every = 1;
  std::string out = "-";  // "-" is stdout
  std::uint64_t seed = 0;
  int threads = 0;  // 0: SADDLE_THREADS or the OpenMP default
  bool merge_ledgers = false;
};

struct CompareConfig {
  std::string game = "kuhn";
  std::vector<Algorithm> algorithms;
  std::int64_t gradient_budget = 2000;
  double epsilon = 0.0;
  std::int64_t max_iters = 1000000;
  std::optional<double> mu0_x;
  std::optional<double> mu0_y;
  bool tau_growth = false;
  int residual_every = 1;
  std::string out = "-";
  std::uint64_t seed = 0;
  int threads = 0;
  bool merge_ledgers = false;
};

// Runs one algorithm; records reach options.on_record as they are produced.
SolveResult solve(const GameInstance& game, Algorithm algorithm, const SolveOptions& options,
                  const EgtOptions& egt);

std::string csv_header();
std::string csv_row(const ConvergenceRecord& r);

// Both write CSV to config.out and a one-line summary to `log`. run returns
// kExitConverged or kExitBudget; errors propagate as exceptions, which
// main_entry turns into kExitError.
int run(const RunConfig& config, std::ostream& log);
int compare(const CompareConfig& config, std::ostream& log);

// Full command-line entry point (subcommands run, compare, export).
int main_entry(int argc, char** argv);

}  // namespace saddle::cli
