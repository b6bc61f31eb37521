#include "cli.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "saddle/cfr.hpp"
#include "saddle/game_io.hpp"
#include "saddle/generators.hpp"
#include "saddle/parallel.hpp"

namespace saddle::cli {

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

int parse_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || end != v.data() + v.size()) {
    throw std::invalid_argument("river: '" + key + "' expects an integer, got '" + v + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw std::invalid_argument("river: '" + key + "' expects 0/1, got '" + v + "'");
}

RiverParams parse_river(const std::string& spec, std::uint64_t seed) {
  RiverParams p;
  bool random_weights = false;
  if (!spec.empty()) {
    for (const std::string& item : split(spec, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("river: expected key=value, got '" + item + "'");
      const std::string key = item.substr(0, eq);
      const std::string value = item.substr(eq + 1);
      if (key == "ranks") {
        p.num_ranks = parse_int(key, value);
      } else if (key == "pot") {
        p.pot = Rational::parse(value);
      } else if (key == "stack") {
        p.stack = Rational::parse(value);
      } else if (key == "bets") {
        p.bet_fractions.clear();
        for (const std::string& level : split(value, '|')) {
          std::vector<Rational> sizes;
          for (const std::string& size : split(level, '+')) sizes.push_back(Rational::parse(size));
          p.bet_fractions.push_back(std::move(sizes));
        }
      } else if (key == "cap") {
        p.raise_cap = parse_int(key, value);
      } else if (key == "allin") {
        p.all_in = parse_bool(key, value);
      } else if (key == "bb") {
        p.big_blind = Rational::parse(value);
      } else if (key == "weights") {
        if (value != "uniform" && value != "random") {
          throw std::invalid_argument("river: weights must be 'uniform' or 'random'");
        }
        random_weights = value == "random";
      } else {
        throw std::invalid_argument("river: unknown key '" + key + "'");
      }
    }
  }
  if (random_weights) {
    if (p.num_ranks < 1) throw std::invalid_argument("river: ranks must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> weight(1, 9);
    p.hand_weights.clear();
    for (int i = 0; i < p.num_ranks * p.num_ranks; ++i) p.hand_weights.emplace_back(weight(rng));
  }
  return p;
}

std::string format_double(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

// Output stream owner: stdout for "-", a file otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void apply_threads(int threads) {
  set_thread_count(threads > 0 ? threads : default_thread_count());
}

EgtOptions egt_options(std::optional<double> mu0_x, std::optional<double> mu0_y, bool tau_growth) {
  EgtOptions e;
  e.mu0_x = mu0_x;
  e.mu0_y = mu0_y;
  e.tau_growth = tau_growth;
  return e;
}

}  // namespace

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"cfr-rm", "cfr-rmp", "cfr-plus",
                                              "egt",    "egt-as",  "egt-theory"};
  return names;
}

Algorithm parse_algorithm(const std::string& name) {
  const auto& names = algorithm_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<Algorithm>(i);
  }
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::string to_string(Algorithm a) { return algorithm_names()[static_cast<std::size_t>(a)]; }

ExtensiveFormGame make_game(const std::string& selector, std::uint64_t seed) {
  const auto colon = selector.find(':');
  const std::string kind = selector.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : selector.substr(colon + 1);
  if (kind == "file") {
    if (rest.empty()) throw std::invalid_argument("file: selector needs a path");
    return load_game(rest);
  }
  if (kind == "river") return river_endgame(parse_river(rest, seed));
  if (colon != std::string::npos) {
    throw std::invalid_argument("game '" + kind + "' takes no parameters");
  }
  if (kind == "kuhn") return kuhn_poker();
  if (kind == "leduc") return leduc_holdem();
  if (kind == "mp") return matching_pennies();
  throw std::invalid_argument("unknown game '" + selector + "' (expected kuhn, leduc, mp, river[:...] or file:<path>)");
}

SolveResult solve(const GameInstance& game, Algorithm algorithm, const SolveOptions& options,
                  const EgtOptions& egt) {
  switch (algorithm) {
    case Algorithm::kCfrRm:
      return run_cfr(game, kCfrRm, options).solve;
    case Algorithm::kCfrRmPlus:
      return run_cfr(game, kCfrRmPlus, options).solve;
    case Algorithm::kCfrPlus:
      return run_cfr(game, kCfrPlus, options).solve;
    case Algorithm::kEgt:
      return run_egt_balanced(game, options, egt).solve;
    case Algorithm::kEgtAs:
      return run_egt_as(game, options, egt).solve;
    case Algorithm::kEgtTheory:
      return run_egt_theory(game, options, egt).solve;
  }
  throw std::invalid_argument("unknown algorithm");
}

std::string csv_header() { return "iter,grad_count,wall_s,eps_sad,eps_sad_mbb"; }

std::string csv_row(const ConvergenceRecord& r) {
  char wall[32];
  std::snprintf(wall, sizeof(wall), "%.6f", r.wall_time);
  std::string row = std::to_string(r.iteration) + "," + std::to_string(r.gradient_count) + "," +
                    wall + "," + format_double(r.eps_sad) + ",";
  if (r.eps_sad_mbb) row += format_double(*r.eps_sad_mbb);
  return row;
}

int run(const RunConfig& config, std::ostream& log) {
  apply_threads(config.threads);
  const GameInstance game = build_sequence_form(make_game(config.game, config.seed));
  Output output(config.out);
  std::ostream& out = output.stream();

  SolveOptions options;
  options.epsilon = config.epsilon * game.payoff_range;
  options.max_iters = config.max_iters;
  if (config.max_gradients) options.max_gradients = *config.max_gradients;
  options.residual_every = config.residual_every;
  options.merge_ledgers = config.merge_ledgers;
  out << csv_header() << '\n';
  options.on_record = [&out](const ConvergenceRecord& r) { out << csv_row(r) << '\n'; };

  const SolveResult result =
      solve(game, config.algorithm, options, egt_options(config.mu0_x, config.mu0_y, config.tau_growth));
  out.flush();
  const ConvergenceRecord& last = result.records.back();
  log << to_string(config.algorithm) << " on " << game.name << ": " << to_string(result.status)
      << " after " << result.iterations << " iterations, " << result.gradient_count
      << " gradient computations, eps_sad " << format_double(last.eps_sad) << ' '
      << game.payoff_unit << '\n';
  return result.status == SolveStatus::kConverged ? kExitConverged : kExitBudget;
}

int compare(const CompareConfig& config, std::ostream& log) {
  if (config.algorithms.empty()) throw std::invalid_argument("compare needs at least one algorithm");
  if (config.gradient_budget <= 0) throw std::invalid_argument("gradient budget must be positive");
  apply_threads(config.threads);
  const GameInstance game = build_sequence_form(make_game(config.game, config.seed));
  Output output(config.out);
  std::ostream& out = output.stream();
  out << "alg," << csv_header() << '\n';
  for (Algorithm a : config.algorithms) {
    SolveOptions options;
    options.epsilon = config.epsilon * game.payoff_range;
    options.max_iters = config.max_iters;
    options.max_gradients = config.gradient_budget;
    options.residual_every = config.residual_every;
    options.merge_ledgers = config.merge_ledgers;
    const std::string name = to_string(a);
    options.on_record = [&out, &name](const ConvergenceRecord& r) {
      out << name << ',' << csv_row(r) << '\n';
    };
    const SolveResult result =
        solve(game, a, options, egt_options(config.mu0_x, config.mu0_y, config.tau_growth));
    log << name << ": " << to_string(result.status) << " after " << result.iterations
        << " iterations, eps_sad " << format_double(result.records.back().eps_sad) << '\n';
  }
  out.flush();
  return kExitConverged;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Approximate Nash equilibria of two-player zero-sum extensive-form games"};
  app.require_subcommand(1);

  RunConfig rc;
  std::string run_alg = "cfr-plus";
  std::int64_t run_max_gradients = 0;
  CLI::App* run_cmd = app.add_subcommand("run", "Solve one game with one algorithm, CSV telemetry");
  run_cmd->add_option("--game", rc.game, "kuhn | leduc | mp | river[:k=v,...] | file:<path>")->required();
  run_cmd->add_option("--alg", run_alg, "cfr-rm | cfr-rmp | cfr-plus | egt | egt-as | egt-theory")
      ->check(CLI::IsMember(algorithm_names()));
  run_cmd->add_option("--eps", rc.epsilon, "target eps_sad as a fraction of the payoff range")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--max-iters", rc.max_iters, "iteration budget")->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--max-gradients", run_max_gradients, "gradient-computation budget")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--mu0-x", rc.mu0_x, "initial smoothing for player 1 (EGT)")->check(CLI::PositiveNumber);
  run_cmd->add_option("--mu0-y", rc.mu0_y, "initial smoothing for player 2 (EGT)")->check(CLI::PositiveNumber);
  run_cmd->add_flag("--tau-growth", rc.tau_growth, "let EGT/as grow tau after clean steps");
  run_cmd->add_option("--residual-every", rc.residual_every, "evaluate eps_sad every N iterations")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--out", rc.out, "CSV output path, '-' for stdout");
  run_cmd->add_option("--seed", rc.seed, "seed for randomized game parameters");
  run_cmd->add_option("--threads", rc.threads, "worker threads (default: SADDLE_THREADS)")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_flag("--merge-ledgers", rc.merge_ledgers, "count residual evaluations in grad_count");

  CompareConfig cc;
  std::vector<std::string> compare_algs;
  CLI::App* cmp_cmd = app.add_subcommand("compare", "Run several algorithms under one gradient budget");
  cmp_cmd->add_option("--game", cc.game, "game selector")->required();
  cmp_cmd->add_option("--algs", compare_algs, "algorithms, comma separated")
      ->delimiter(',')
      ->check(CLI::IsMember(algorithm_names()));
  cmp_cmd->add_option("--budget", cc.gradient_budget, "gradient computations per algorithm")
      ->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--eps", cc.epsilon, "stop early at this eps_sad / L")->check(CLI::NonNegativeNumber);
  cmp_cmd->add_option("--max-iters", cc.max_iters, "iteration cap per algorithm")->check(CLI::NonNegativeNumber);
  cmp_cmd->add_option("--mu0-x", cc.mu0_x)->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--mu0-y", cc.mu0_y)->check(CLI::PositiveNumber);
  cmp_cmd->add_flag("--tau-growth", cc.tau_growth);
  cmp_cmd->add_option("--residual-every", cc.residual_every)->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--out", cc.out, "CSV output path, '-' for stdout");
  cmp_cmd->add_option("--seed", cc.seed);
  cmp_cmd->add_option("--threads", cc.threads)->check(CLI::NonNegativeNumber);
  cmp_cmd->add_flag("--merge-ledgers", cc.merge_ledgers);

  std::string export_game = "kuhn";
  std::string export_out = "-";
  std::uint64_t export_seed = 0;
  CLI::App* exp_cmd = app.add_subcommand("export", "Write a game in the text game format");
  exp_cmd->add_option("--game", export_game, "game selector")->required();
  exp_cmd->add_option("--out", export_out, "output path, '-' for stdout");
  exp_cmd->add_option("--seed", export_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run_cmd) {
      rc.algorithm = parse_algorithm(run_alg);
      if (run_max_gradients > 0) rc.max_gradients = run_max_gradients;
      return run(rc, std::cerr);
    }
    if (*cmp_cmd) {
      if (compare_algs.empty()) {
        std::cerr << "usage error: compare needs --algs with at least one algorithm\n";
        return kExitUsage;
      }
      for (const std::string& a : compare_algs) cc.algorithms.push_back(parse_algorithm(a));
      return compare(cc, std::cerr);
    }
    if (*exp_cmd) {
      const ExtensiveFormGame game = make_game(export_game, export_seed);
      if (export_out == "-") {
        write_game(game, std::cout);
      } else {
        save_game(game, export_out);
      }
      return kExitConverged;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace saddle::cli
