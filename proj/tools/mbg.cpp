#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mbg/boxgame.hpp"
#include "mbg/harness.hpp"
#include "mbg/maker.hpp"

namespace {

using namespace mbg;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kConfigError = 2;

struct GameArgs {
  unsigned n = 0;
  unsigned b = 1;
  std::string maker;
  std::string breaker = "passive";
  std::string goal;
  unsigned c = 0;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string transcript;
  std::uint64_t cap = 0;
  double delta = 0.1;
};

Config load_config(const std::string& path) { return path.empty() ? Config{} : Config::load(path); }

void write_transcript(const Transcript& t, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GameError(ErrorKind::ConfigError, "cannot write '" + path + "'");
  t.write(out);
}

int print_violations(const std::vector<harness::Violation>& vs) {
  for (const auto& v : vs) std::cout << v.to_json() << "\n";
  return vs.empty() ? kOk : kViolation;
}

int simulate(const GameArgs& a) {
  if (harness::breaker_randomized(a.breaker) && !a.seed)
    throw GameError(ErrorKind::ConfigError, "--seed is required for breaker '" + a.breaker + "'");
  const Config cfg = load_config(a.config);
  const std::uint64_t seed = a.seed.value_or(0);
  const Goal goal = parse_goal(a.goal);
  auto maker = maker::make_maker(a.maker, cfg, Rng::splitmix(seed), a.c);
  auto breaker = harness::make_breaker(a.breaker, seed);
  PlayOptions opts;
  opts.goal = goal;
  opts.target_degree = a.c;
  opts.seed = seed;
  opts.move_cap = a.cap;
  opts.config_hash = harness::experiment_hash(cfg);
  const GameResult r = play(new_game(a.n, a.b), *maker, *breaker, opts);
  write_transcript(r.transcript, a.transcript);
  const double excess = static_cast<double>(r.maker_moves_used) - harness::base_moves(goal, a.n, a.c);
  std::cout << "winner " << to_string(r.winner) << "\nmaker_moves " << r.maker_moves_used << "\nexcess " << excess
            << "\n";
  if (!r.forfeit_reason.empty()) std::cout << "reason " << r.forfeit_reason << "\n";
  return print_violations(harness::run_monitors(r.transcript, {"auto"}, {a.delta, harness::Preset::DeskScale}));
}

int sweep(const std::string& path, const std::string& csv, const std::vector<std::string>& bounds,
          std::optional<double> fixed_c) {
  Config cfg = load_config(path);
  if (!csv.empty()) cfg.set("output.csv", csv);
  const auto exp = harness::ExperimentConfig::from_config(cfg);
  std::vector<std::string> wanted = bounds;
  for (const auto& b : cfg.get_list("bounds")) wanted.push_back(b);
  std::vector<harness::BoundSpec> specs;
  for (const auto& b : wanted) specs.push_back({harness::parse_bound(b), fixed_c});

  const auto rows = harness::run_sweep(exp);
  if (exp.csv_path.empty()) harness::write_csv(std::cout, rows);
  int code = kOk;
  std::size_t violations = 0, errors = 0;
  for (const auto& r : rows) {
    violations += r.violations.size();
    if (r.winner == "Error") {
      ++errors;
      std::cerr << "error n=" << r.n << " b=" << r.b << " breaker=" << r.breaker << " seed=" << r.seed << ": "
                << r.reason << "\n";
    }
  }
  for (const auto& s : harness::summarize(rows))
    std::cerr << "n=" << s.n << " b=" << s.b << " " << s.breaker << ": " << s.maker_wins << "/" << s.cells
              << " Maker wins, excess min/median/max " << s.min << "/" << s.median << "/" << s.max << "\n";
  for (const auto& spec : specs) {
    const auto rep = harness::bound_check(rows, spec);
    std::cerr << to_string(rep.kind) << ": " << rep.cells_checked << " cells";
    if (rep.fitted_C) std::cerr << ", fitted C " << *rep.fitted_C;
    if (rep.worst)
      std::cerr << ", max-excess cell n=" << rep.worst->n << " b=" << rep.worst->b << " " << rep.worst->breaker
                << " excess " << rep.worst->excess;
    std::cerr << (rep.ok() ? ", ok" : ", VIOLATED") << "\n";
    for (const auto& v : rep.violations) std::cerr << "  " << v << "\n";
    if (!rep.ok()) code = kViolation;
  }
  std::cerr << rows.size() << " cells, " << violations << " monitor violations, " << errors << " errors\n";
  if (violations) code = kViolation;
  return code;
}

int verify(const std::vector<std::string>& paths, const std::string& config_path) {
  const Config cfg = load_config(config_path);
  int code = kOk;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw GameError(ErrorKind::ConfigError, "cannot open transcript '" + path + "'");
    const Transcript t = Transcript::read(in);
    if (!t.header.config_hash.empty() && t.header.config_hash != harness::experiment_hash(cfg))
      throw GameError(ErrorKind::ConfigError, path + ": config hash differs; pass the config the game was played with");
    const GameState final_state = t.replay();
    // re-run the Maker strategy against the recorded Breaker moves
    struct Scripted final : BreakerStrategy {
      const Transcript& t;
      std::size_t next = 0;
      explicit Scripted(const Transcript& tr) : t(tr) {}
      std::string name() const override { return t.header.breaker; }
      std::vector<Edge> next_move(const GameState&, Annotations&) override {
        while (next < t.records.size() && t.records[next].player != Player::Breaker) ++next;
        if (next == t.records.size()) throw GameError(ErrorKind::CorruptTranscript, "transcript ended early");
        return t.records[next++].edges;
      }
    } scripted(t);
    auto maker = maker::make_maker(t.header.maker, cfg, Rng::splitmix(t.header.seed), t.header.target_degree);
    PlayOptions opts;
    opts.goal = t.header.goal;
    opts.target_degree = t.header.target_degree;
    opts.seed = t.header.seed;
    opts.config_hash = t.header.config_hash;
    opts.move_cap = final_state.maker_moves();
    GameState start = t.initial_state();
    GameResult r;
    try {
      r = play(std::move(start), *maker, scripted, opts);
    } catch (const GameError& e) {
      std::cout << path << ": FAIL strategy replay: " << e.what() << "\n";
      code = kViolation;
      continue;
    }
    std::vector<MoveRecord> replayed = r.transcript.records;
    std::vector<MoveRecord> recorded = t.records;
    bool same = replayed.size() == recorded.size();
    for (std::size_t i = 0; same && i < replayed.size(); ++i)
      same = replayed[i].player == recorded[i].player && replayed[i].edges == recorded[i].edges;
    if (!same) {
      std::cout << path << ": FAIL Maker moves differ from the recorded game\n";
      code = kViolation;
      continue;
    }
    if (!r.certificate) {
      std::cout << path << ": no win certificate (" << to_string(r.winner) << ")\n";
      continue;
    }
    const bool ok = verify_certificate(final_state, t.header.goal, *r.certificate, t.header.target_degree);
    std::cout << path << ": certificate " << (ok ? "ok" : "INVALID");
    if (t.header.n <= 20 || (t.header.goal != Goal::PerfectMatching && t.header.n <= 24)) {
      const bool exact = exact_goal_check(Graph::of_player(final_state, Player::Maker), t.header.goal,
                                          t.header.target_degree);
      std::cout << ", exact check " << (exact ? "agrees" : "DISAGREES");
      if (!exact) code = kViolation;
    }
    std::cout << "\n";
    if (!ok) code = kViolation;
  }
  return code;
}

int box_query_cmd(const std::string& query, std::vector<std::uint64_t> args) {
  auto need = [&](std::size_t k, const char* usage) {
    if (args.size() != k) throw GameError(ErrorKind::ConfigError, std::string("usage: mbg box ") + usage);
  };
  if (!query.empty() && std::all_of(query.begin(), query.end(), [](unsigned char c) { return std::isdigit(c); })) {
    // report form: K T A
    args.insert(args.begin(), std::stoull(query));
    need(3, "K T A");
    const std::uint64_t k = args[0], t = args[1], a = args[2];
    if (k == 0 || a == 0) throw GameError(ErrorKind::InvalidArgument, "K and A must be positive");
    const double h = box::harmonic(k);
    const auto f = box::f(k, a);
    std::cout << "f " << f << "\nlower (a-1)k*H_k " << static_cast<double>(a - 1) * static_cast<double>(k) * h
              << "\nupper a*k*H_k " << static_cast<double>(a) * static_cast<double>(k) * h << "\nwinner "
              << (t <= f ? "BoxMaker" : "BoxBreaker") << "\n";
  } else if (query == "f") {
    need(2, "f K A");
    std::cout << box::f(args[0], args[1]) << "\n";
  } else if (query == "wins") {
    need(3, "wins K T A");
    std::cout << (box::boxmaker_wins(args[0], args[1], args[2]) ? "BoxMaker" : "BoxBreaker") << "\n";
  } else if (query == "simulate") {
    need(3, "simulate K T A");
    const auto r = box::simulate(box::BoxState(args[0], args[1], args[2]));
    std::cout << "winner " << (r.boxmaker_won ? "BoxMaker" : "BoxBreaker") << "\nrounds " << r.rounds
              << "\nmax_eaten " << r.max_eaten << "\n";
  } else if (query == "load") {
    need(2, "load K PER_MOVE");
    const auto load = box::max_box_load(args[0], args[1]);
    std::cout << load << " (" << load.convert_to<double>() << ")\n";
  } else {
    throw GameError(ErrorKind::ConfigError, "unknown box query '" + query + "' (f, wins, simulate, load)");
  }
  return kOk;
}

void add_game_options(CLI::App* cmd, GameArgs& a, bool with_breaker) {
  cmd->add_option("--n", a.n, "number of vertices")->required()->check(CLI::Range(4u, 1u << 20));
  cmd->add_option("--b", a.b, "Breaker bias")->check(CLI::PositiveNumber);
  cmd->add_option("--maker", a.maker, "maker strategy")->required();
  if (with_breaker) cmd->add_option("--breaker", a.breaker, "breaker strategy");
  cmd->add_option("--goal", a.goal, "PM, HC, CONN or DEG")->required();
  cmd->add_option("--c", a.c, "target minimum degree for DEG");
  cmd->add_option("--config", a.config, "strategy config file");
  cmd->add_option("--transcript", a.transcript, "write the JSONL transcript here");
  cmd->add_option("--seed", a.seed, "seed; required for randomized breakers");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maker-Breaker graph game simulator"};
  app.require_subcommand(1);

  GameArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "play one game");
  add_game_options(simulate_cmd, sim, true);
  simulate_cmd->add_option("--cap", sim.cap, "Maker move cap (0 = none)");
  simulate_cmd->add_option("--delta", sim.delta, "delta for the matching monitor");

  std::string sweep_config, sweep_csv;
  std::vector<std::string> bounds;
  std::optional<double> fixed_c;
  auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep from a config file");
  sweep_cmd->add_option("config", sweep_config, "sweep config")->required();
  sweep_cmd->add_option("--csv", sweep_csv, "CSV output path (default stdout)");
  sweep_cmd->add_option("--bound", bounds, "bound to check: PM_upper, HVS_upper, HS_upper, PM_lower, HC_lower, "
                                           "CONN_exact, KRIVI_cap");
  sweep_cmd->add_option("--C", fixed_c, "assert upper bounds with this constant instead of fitting");

  std::string box_query;
  std::vector<std::uint64_t> box_args;
  auto* box_cmd = app.add_subcommand("box", "box game: K T A | f K A | wins K T A | simulate K T A | load K A");
  box_cmd->add_option("query", box_query)->required();
  box_cmd->add_option("args", box_args)->required();

  std::string replay_path;
  std::vector<std::string> monitors{"auto"};
  double replay_delta = 0.1;
  bool paper = false;
  auto* replay_cmd = app.add_subcommand("replay", "re-execute a transcript under monitors");
  replay_cmd->add_option("transcript", replay_path)->required();
  replay_cmd->add_option("--monitor", monitors, "claim1 claim2 claim3 caps phase stage2 danger box-load clique, "
                                                "auto, or none");
  replay_cmd->add_option("--delta", replay_delta, "delta for the matching monitor");
  replay_cmd->add_flag("--paper-params", paper, "also assert monitors that hold only at full-scale parameters");

  GameArgs human;
  auto* play_cmd = app.add_subcommand("play", "play Breaker interactively");
  add_game_options(play_cmd, human, false);

  std::vector<std::string> verify_paths;
  std::string verify_config;
  auto* verify_cmd = app.add_subcommand("verify", "re-check win certificates of stored transcripts");
  verify_cmd->add_option("transcripts", verify_paths)->required();
  verify_cmd->add_option("--config", verify_config, "strategy config the games were played with");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (*simulate_cmd) return simulate(sim);
    if (*sweep_cmd) return sweep(sweep_config, sweep_csv, bounds, fixed_c);
    if (*box_cmd) return box_query_cmd(box_query, box_args);
    if (*replay_cmd) {
      if (monitors.size() == 1 && monitors[0] == "none") monitors.clear();
      return print_violations(harness::replay(
          replay_path, monitors, {replay_delta, paper ? harness::Preset::PaperParams : harness::Preset::DeskScale}));
    }
    if (*play_cmd) {
      harness::InteractiveOptions o;
      o.n = human.n;
      o.b = human.b;
      o.maker = human.maker;
      o.goal = parse_goal(human.goal);
      o.target_degree = human.c;
      o.seed = human.seed.value_or(0);
      o.strategy = load_config(human.config);
      const GameResult r = harness::interactive_play(o, std::cin, std::cout);
      write_transcript(r.transcript, human.transcript.empty() ? "play.jsonl" : human.transcript);
      return kOk;
    }
    if (*verify_cmd) return verify(verify_paths, verify_config);
  } catch (const GameError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::ConfigError || e.kind() == ErrorKind::CorruptTranscript ||
        e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::PreconditionViolated ||
        e.kind() == ErrorKind::InstanceTooLarge)
      return kConfigError;
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kOk;
}
