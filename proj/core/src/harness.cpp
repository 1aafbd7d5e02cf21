#include "mbg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "mbg/boxgame.hpp"
#include "mbg/breaker.hpp"
#include "mbg/degree_game.hpp"
#include "mbg/maker.hpp"
#include "mbg/rng.hpp"

namespace mbg::harness {

namespace {

[[noreturn]] void config_error(const std::string& why) { throw GameError(ErrorKind::ConfigError, why); }

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(10);
  ss << x;
  return ss.str();
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    config_error("'" + key + "': expected a non-negative integer, got '" + text + "'");
  }
}

bool contains(const std::vector<std::string>& names, const std::string& x) {
  return std::find(names.begin(), names.end(), x) != names.end();
}

const double* note(const MoveRecord& r, const std::string& key) {
  auto it = r.annotations.find(key);
  return it == r.annotations.end() ? nullptr : &it->second;
}

}  // namespace

// ------------------------------------------------------------ adversaries

std::vector<std::string> breaker_names() {
  return {"passive", "random", "endpoint-greedy", "box-emulating", "pair-destroyer", "clique-delay-pm",
          "clique-delay-hc"};
}

bool breaker_randomized(const std::string& name) {
  // pool breakers fall back to random draws
  return name == "random" || name == "endpoint-greedy" || name == "box-emulating" || name == "pair-destroyer";
}

std::unique_ptr<BreakerStrategy> make_breaker(const std::string& name, std::uint64_t seed) {
  using namespace breaker;
  if (name == "passive") return std::make_unique<PassiveBreaker>();
  if (name == "random") return std::make_unique<PoolBreaker>(PoolKind::Random, seed);
  if (name == "endpoint-greedy") return std::make_unique<PoolBreaker>(PoolKind::EndpointGreedy, seed);
  if (name == "box-emulating") return std::make_unique<PoolBreaker>(PoolKind::BoxEmulating, seed);
  if (name == "pair-destroyer") return std::make_unique<PoolBreaker>(PoolKind::PairDestroyer, seed);
  if (name == "clique-delay-pm") return std::make_unique<CliqueDelay>(DelayMode::PM);
  if (name == "clique-delay-hc") return std::make_unique<CliqueDelay>(DelayMode::HC);
  config_error("unknown breaker '" + name + "'");
}

double base_moves(Goal goal, Vertex n, std::uint32_t c) {
  switch (goal) {
    case Goal::PerfectMatching: return n / 2.0;
    case Goal::HamiltonCycle: return n;
    case Goal::Connectivity: return n - 1.0;
    case Goal::MinDegree: return std::ceil(static_cast<double>(c) * n / 2.0);
  }
  return 0;
}

// ------------------------------------------------------------ config

const char* to_string(Preset p) { return p == Preset::PaperParams ? "paper-params" : "desk-scale"; }

std::string experiment_hash(const Config& cfg) {
  Config defining;
  for (const auto& [k, v] : cfg.values())
    if (k.rfind("output.", 0) != 0) defining.set(k, v);
  return config_hash(defining.canonical());
}

ExperimentConfig ExperimentConfig::from_config(const Config& cfg) {
  ExperimentConfig e;
  for (const auto& item : cfg.get_list("n")) {
    const auto v = parse_u64("n", item);
    if (v < 4) config_error("'n': board needs at least 4 vertices, got " + item);
    e.n.push_back(static_cast<Vertex>(v));
  }
  if (e.n.empty()) config_error("'n' list is empty");
  e.b = cfg.get_list("b");
  if (e.b.empty()) config_error("'b' list is empty");

  e.maker = cfg.get_string("maker");
  if (!contains(maker::maker_names(), e.maker)) config_error("unknown maker '" + e.maker + "'");
  for (const auto& name : cfg.get_list("breakers")) {
    if (name == "pool") {
      for (const auto& p : breaker_names())
        if (!contains(e.breakers, p)) e.breakers.push_back(p);
    } else if (contains(breaker_names(), name)) {
      if (!contains(e.breakers, name)) e.breakers.push_back(name);
    } else {
      config_error("unknown breaker '" + name + "'");
    }
  }
  if (e.breakers.empty()) config_error("'breakers' list is empty");

  try {
    e.goal = parse_goal(cfg.get_string("goal", "CONN"));
  } catch (const GameError& err) {
    config_error(err.what());
  }
  e.target_degree = static_cast<std::uint32_t>(cfg.get_int("c", 0));
  if (e.goal == Goal::MinDegree && e.target_degree == 0) config_error("goal DEG needs c >= 1");

  for (const auto& item : cfg.get_list("seeds")) e.seeds.push_back(parse_u64("seeds", item));
  if (e.seeds.empty()) {
    if (!cfg.has("seed")) config_error("either 'seeds' or 'seed' is required");
    const auto base = parse_u64("seed", cfg.get_string("seed"));
    const auto reps = cfg.get_int("repetitions", 1);
    if (reps < 1) config_error("'repetitions' must be >= 1");
    for (std::int64_t i = 0; i < reps; ++i) e.seeds.push_back(base + static_cast<std::uint64_t>(i));
  }
  std::sort(e.seeds.begin(), e.seeds.end());
  e.seeds.erase(std::unique(e.seeds.begin(), e.seeds.end()), e.seeds.end());

  const std::string preset = cfg.get_string("preset", "desk-scale");
  if (preset == "paper-params")
    e.preset = Preset::PaperParams;
  else if (preset == "desk-scale")
    e.preset = Preset::DeskScale;
  else
    config_error("unknown preset '" + preset + "'");

  e.delta = cfg.get_double("delta", 0.1);
  e.move_cap = cfg.get_string("move_cap");
  e.forbidden_p = cfg.get_double("forbidden.p", 0.0);
  e.forbidden_max_degree = cfg.get_double("forbidden.max_degree", 0.2);
  if (e.forbidden_p < 0 || e.forbidden_p > 1) config_error("'forbidden.p' must lie in [0,1]");
  if (cfg.has("monitors")) e.monitors = cfg.get_list("monitors");
  for (const auto& m : e.monitors)
    if (m != "auto" && !contains(monitor_names(), m)) config_error("unknown monitor '" + m + "'");
  e.csv_path = cfg.get_string("output.csv");
  e.transcript_dir = cfg.get_string("output.transcripts");
  e.strategy = cfg;
  e.hash = experiment_hash(cfg);
  // every b formula must evaluate on every n
  for (Vertex n : e.n) e.biases(n);
  return e;
}

std::vector<std::uint32_t> ExperimentConfig::biases(Vertex nv) const {
  const std::map<std::string, double> vars{{"n", static_cast<double>(nv)}, {"delta", delta}};
  auto eval = [&](const std::string& expr) {
    double v = 0;
    try {
      v = eval_formula(expr, vars);
    } catch (const GameError& err) {
      config_error("b formula '" + expr + "': " + err.what());
    }
    if (!std::isfinite(v) || v < 1)
      config_error("b formula '" + expr + "' gives " + fmt(v) + " at n=" + std::to_string(nv) + "; b must be >= 1");
    return static_cast<std::uint32_t>(std::floor(v + 1e-9));
  };
  std::set<std::uint32_t> out;
  for (const auto& item : b) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.insert(eval(item));
      continue;
    }
    const auto lo = eval(trim(item.substr(0, dots)));
    const auto hi = eval(trim(item.substr(dots + 2)));
    for (auto v = lo; v <= hi; ++v) out.insert(v);
  }
  if (out.empty()) config_error("'b' list is empty");
  return {out.begin(), out.end()};
}

// ------------------------------------------------------------ monitors

std::string Violation::to_json() const {
  nlohmann::ordered_json j;
  j["monitor"] = monitor;
  j["i"] = move_index;
  j["what"] = what;
  j["value"] = value;
  j["bound"] = bound;
  return j.dump();
}

std::vector<std::string> monitor_names() {
  return {"claim1", "claim2", "claim3", "caps", "phase", "stage2", "danger", "box-load", "clique"};
}

std::vector<std::string> applicable_monitors(const TranscriptHeader& h) {
  std::vector<std::string> out;
  if (h.maker == "pm") out.push_back("claim1");
  if (h.maker == "hvs") out.insert(out.end(), {"claim2", "claim3", "caps", "phase", "stage2"});
  if (h.maker == "hs") out.insert(out.end(), {"caps", "box-load"});
  if (h.goal == Goal::MinDegree) out.push_back("danger");
  if (h.breaker == "clique-delay-pm" || h.breaker == "clique-delay-hc") out.push_back("clique");
  return out;
}

namespace {

void add(std::vector<Violation>& out, const std::string& monitor, const std::vector<maker::MonitorViolation>& in) {
  for (const auto& v : in) out.push_back({monitor, v.move_index, v.what, v.value, v.bound});
}

// Re-runs the deterministic delay breaker on the replayed boards; its moves
// must match the record and its clique must stay a Breaker clique.
void clique_monitor(const Transcript& t, std::vector<Violation>& out) {
  const auto mode = t.header.breaker == "clique-delay-pm" ? breaker::DelayMode::PM : breaker::DelayMode::HC;
  breaker::CliqueDelay shadow(mode);
  GameState s = t.initial_state();
  shadow.start(s);
  const double b = t.header.b;
  bool half_checked = false;
  for (const MoveRecord& r : t.records) {
    if (r.player == Player::Breaker) {
      Annotations notes;
      auto expect = shadow.next_move(s, notes);
      for (Edge& e : expect) e = Edge::of(e.u, e.v);
      if (expect != r.edges) out.push_back({"clique", r.index, "move_mismatch", 0, 0});
    }
    if (r.player == Player::Breaker && r.edges.empty())
      s.pass_breaker();
    else
      s.claim(r.player, r.edges);
    if (r.player == Player::Breaker && !breaker::is_breaker_clique(s, shadow.clique()))
      out.push_back({"clique", r.index, "not_a_clique", static_cast<double>(shadow.clique().size()), 0});
    if (!half_checked && shadow.used_at_half() > 0) {
      half_checked = true;
      // touched-vertex budget while growing to b/2; meaningful from b = 16
      const double budget = (13.0 * b - 76.0) / 12.0;
      if (b >= 16 && static_cast<double>(shadow.used_at_half()) > budget)
        out.push_back({"clique", r.index, "used_at_half", static_cast<double>(shadow.used_at_half()), budget});
    }
  }
}

void box_load_monitor(const Transcript& t, std::vector<Violation>& out) {
  for (const MoveRecord& r : t.records) {
    const double* load = note(r, "box_load");
    const double* min_box = note(r, "box_min");
    if (!load || !min_box) continue;
    if (!(*load < *min_box)) out.push_back({"box-load", r.index, "box_load", *load, *min_box});
    if (const double* k = note(r, "hookups")) {
      const auto exact = box::max_box_load(static_cast<std::uint64_t>(*k), t.header.b);
      if (!(exact < box::Rational(static_cast<long long>(*min_box))))
        out.push_back({"box-load", r.index, "box_load_exact", exact.convert_to<double>(), *min_box});
    }
  }
}

}  // namespace

std::vector<Violation> run_monitors(const Transcript& t, const std::vector<std::string>& requested,
                                    const MonitorOptions& opts) {
  t.replay();  // throws CorruptTranscript with the offending line
  std::vector<std::string> monitors = requested;
  if (contains(monitors, "auto")) {
    monitors.erase(std::remove(monitors.begin(), monitors.end(), "auto"), monitors.end());
    for (const auto& m : applicable_monitors(t.header))
      if (!contains(monitors, m)) monitors.push_back(m);
  }
  const double b = t.header.b;
  std::vector<Violation> out;
  for (const auto& m : monitors) {
    if (m == "claim1") {
      add(out, m, maker::claim1_monitor(t, opts.delta));
      add(out, m, maker::claim1_recompute(t, opts.delta));
    } else if (m == "claim2") {
      for (const MoveRecord& r : t.records) {
        const double* sum = note(r, "claim2_sum");
        const double* d = note(r, "claim2_D");
        if (sum && d && *sum + 1e-9 < *d) out.push_back({m, r.index, "claim2", *sum, *d});
      }
    } else if (m == "claim3") {
      for (const MoveRecord& r : t.records) {
        const double* d = note(r, "D");
        const double* top = note(r, "Delta");
        const double* end = note(r, "End");
        if (!d || !top || !end) continue;
        const double* dl = note(r, "delta");
        const double cap = (dl ? *dl : opts.delta) * *end;
        if (*d > 4 * b + 1e-9) out.push_back({m, r.index, "D", *d, 4 * b});
        if (!(*top < cap)) out.push_back({m, r.index, "Delta", *top, cap});
      }
    } else if (m == "caps") {
      for (const MoveRecord& r : t.records)
        for (const auto& [key, bound] : {std::pair{"cap_end", "cap_end_bound"}, std::pair{"cap_total", "cap_total_bound"},
                                         std::pair{"cap1_max", "cap1_bound"}, std::pair{"cap2_max", "cap2_bound"}}) {
          const double* v = note(r, key);
          const double* cap = note(r, bound);
          if (v && cap && *v > *cap + 1e-9) out.push_back({m, r.index, key, *v, *cap});
        }
    } else if (m == "phase") {
      for (const MoveRecord& r : t.records)
        if (const double* k = note(r, "phase_moves"); k && *k > 2 * b + 1)
          out.push_back({m, r.index, "phase_moves", *k, 2 * b + 1});
    } else if (m == "stage2") {
      // the 23 b ln b duration only holds at full-scale parameters
      if (opts.preset != Preset::PaperParams) continue;
      for (const MoveRecord& r : t.records)
        if (const double* k = note(r, "stage2_moves"); k && b >= 2 && *k < 23 * b * std::log(b))
          out.push_back({m, r.index, "stage2_moves", *k, 23 * b * std::log(b)});
    } else if (m == "danger") {
      for (const auto& v : degree::danger_invariant_check(t, t.header.target_degree, t.header.b))
        out.push_back({m, v.move_index, v.kind, v.dang, v.threshold});
    } else if (m == "box-load") {
      box_load_monitor(t, out);
    } else if (m == "clique") {
      if (t.header.breaker.rfind("clique-delay", 0) == 0) clique_monitor(t, out);
    } else {
      config_error("unknown monitor '" + m + "'");
    }
  }
  return out;
}

std::vector<Violation> replay(const std::string& path, const std::vector<std::string>& monitors,
                              const MonitorOptions& opts) {
  std::ifstream in(path);
  if (!in) throw GameError(ErrorKind::ConfigError, "cannot open transcript '" + path + "'");
  return run_monitors(Transcript::read(in), monitors, opts);
}

// ------------------------------------------------------------ sweeps

std::vector<Edge> forbidden_graph(const ExperimentConfig& cfg, Vertex n, std::uint64_t seed) {
  std::vector<Edge> out;
  if (cfg.forbidden_p <= 0) return out;
  Rng rng(Rng::splitmix(seed ^ 0x466f7262ULL));
  const double cap = cfg.forbidden_max_degree * n;
  std::vector<std::uint32_t> deg(n, 0);
  const auto scale = static_cast<double>(UINT64_MAX);
  for (Vertex v = 1; v < n; ++v)
    for (Vertex u = 0; u < v; ++u) {
      if (static_cast<double>(rng.next()) / scale >= cfg.forbidden_p) continue;
      if (deg[u] + 1 > cap || deg[v] + 1 > cap) continue;
      ++deg[u];
      ++deg[v];
      out.push_back({u, v});
    }
  return out;
}

namespace {

std::string stage_stats(const Transcript& t) {
  std::map<int, std::uint64_t> per_stage;
  std::map<std::string, double> peaks;
  static const std::vector<std::string> kPeakKeys{"phase_moves", "stage2_moves", "stage3_moves", "cap_end",
                                                  "cap_total", "cap1_max", "cap2_max", "box_min", "box_load",
                                                  "clique", "used", "endgame_moves", "dang"};
  std::uint64_t phases = 0;
  for (const MoveRecord& r : t.records) {
    if (r.player == Player::Maker)
      if (const double* st = note(r, "stage")) ++per_stage[static_cast<int>(*st)];
    if (note(r, "phase_moves")) ++phases;
    for (const auto& key : kPeakKeys)
      if (const double* v = note(r, key)) {
        auto [it, fresh] = peaks.emplace(key, *v);
        if (!fresh) it->second = std::max(it->second, *v);
      }
  }
  std::string out;
  auto put = [&](const std::string& k, const std::string& v) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  };
  for (const auto& [st, k] : per_stage) put("s" + std::to_string(st), std::to_string(k));
  if (phases) put("phases", std::to_string(phases));
  for (const auto& [k, v] : peaks) put("max_" + k, fmt(v));
  return out;
}

std::string winner_label(const GameResult& r) {
  if (r.winner == Winner::Forfeit && r.forfeit_reason.find("degree_blocked") != std::string::npos)
    return "DegreeBlocked";
  return to_string(r.winner);
}

std::string transcript_name(const CellResult& c) {
  return c.maker + "_" + c.breaker + "_" + goal_code(c.goal) + "_n" + std::to_string(c.n) + "_b" +
         std::to_string(c.b) + "_s" + std::to_string(c.seed) + ".jsonl";
}

}  // namespace

CellResult run_cell(const ExperimentConfig& cfg, Vertex n, std::uint32_t b, const std::string& breaker,
                    std::uint64_t seed, bool keep_transcript) {
  CellResult c;
  c.n = n;
  c.b = b;
  c.goal = cfg.goal;
  c.maker = cfg.maker;
  c.breaker = breaker;
  c.seed = seed;
  try {
    auto maker = maker::make_maker(cfg.maker, cfg.strategy, Rng::splitmix(seed), cfg.target_degree);
    auto adversary = make_breaker(breaker, seed);
    GameState state = new_game(n, b);
    const auto forbidden = forbidden_graph(cfg, n, seed);
    if (!forbidden.empty()) state.preclaim_breaker(forbidden);
    PlayOptions opts;
    opts.goal = cfg.goal;
    opts.target_degree = cfg.target_degree;
    opts.seed = seed;
    opts.config_hash = cfg.hash;
    if (!cfg.move_cap.empty()) {
      const double cap = eval_formula(cfg.move_cap, {{"n", static_cast<double>(n)}, {"b", static_cast<double>(b)}});
      opts.move_cap = static_cast<std::uint64_t>(std::max(1.0, std::floor(cap)));
    }
    GameResult r = play(std::move(state), *maker, *adversary, opts);
    c.winner = winner_label(r);
    c.maker_moves = r.maker_moves_used;
    c.reason = r.forfeit_reason;
    if (r.cap_hit) c.reason = "move cap reached";
    c.violations = run_monitors(r.transcript, cfg.monitors, {cfg.delta, cfg.preset});
    c.stats = stage_stats(r.transcript);
    if (keep_transcript) c.transcript = std::move(r.transcript);
  } catch (const std::exception& err) {
    c.winner = "Error";
    c.reason = err.what();
  }
  c.excess = static_cast<double>(c.maker_moves) - base_moves(cfg.goal, n, cfg.target_degree);
  if (!c.reason.empty()) {
    std::string why = c.reason;
    std::replace(why.begin(), why.end(), ';', ',');
    c.stats += (c.stats.empty() ? "" : ";") + std::string("reason=") + why;
  }
  return c;
}

unsigned worker_count() {
  if (const char* env = std::getenv("MBG_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    config_error(std::string("MBG_WORKERS must be a positive integer, got '") + env + "'");
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::vector<CellResult> run_sweep(const ExperimentConfig& cfg, unsigned workers) {
  struct Job {
    Vertex n;
    std::uint32_t b;
    std::string breaker;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (Vertex n : cfg.n)
    for (std::uint32_t b : cfg.biases(n))
      for (const auto& br : cfg.breakers)
        for (std::uint64_t s : cfg.seeds) jobs.push_back({n, b, br, s});

  const bool keep = !cfg.transcript_dir.empty();
  if (keep) std::filesystem::create_directories(cfg.transcript_dir);
  std::vector<CellResult> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& j = jobs[i];
      rows[i] = run_cell(cfg, j.n, j.b, j.breaker, j.seed, keep);
      if (keep && rows[i].transcript) {
        std::ofstream out(std::filesystem::path(cfg.transcript_dir) / transcript_name(rows[i]), std::ios::binary);
        rows[i].transcript->write(out);
        rows[i].transcript.reset();
      }
    }
  };
  const unsigned count = std::max(1U, std::min<unsigned>(workers ? workers : worker_count(),
                                                         static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < count; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  std::sort(rows.begin(), rows.end(), [](const CellResult& a, const CellResult& b) {
    return std::tie(a.n, a.b, a.breaker, a.seed) < std::tie(b.n, b.b, b.breaker, b.seed);
  });
  if (!cfg.csv_path.empty()) {
    std::ofstream out(cfg.csv_path, std::ios::binary);
    if (!out) config_error("cannot write '" + cfg.csv_path + "'");
    write_csv(out, rows);
  }
  return rows;
}

std::string csv_header() {
  return "n,b,goal,maker,breaker,seed,winner,maker_moves,excess,violations,fitted_stage_stats";
}

void write_csv(std::ostream& out, const std::vector<CellResult>& rows) {
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  out << csv_header() << '\n';
  for (const auto& r : rows)
    out << r.n << ',' << r.b << ',' << goal_code(r.goal) << ',' << field(r.maker) << ',' << field(r.breaker) << ','
        << r.seed << ',' << r.winner << ',' << r.maker_moves << ',' << fmt(r.excess) << ',' << r.violations.size()
        << ',' << field(r.stats) << '\n';
}

std::vector<ExcessSummary> summarize(const std::vector<CellResult>& rows) {
  std::map<std::tuple<Vertex, std::uint32_t, std::string>, std::pair<std::size_t, std::vector<double>>> groups;
  for (const auto& r : rows) {
    auto& g = groups[{r.n, r.b, r.breaker}];
    ++g.first;
    if (r.maker_won()) g.second.push_back(r.excess);
  }
  std::vector<ExcessSummary> out;
  for (auto& [key, g] : groups) {
    ExcessSummary s;
    std::tie(s.n, s.b, s.breaker) = key;
    s.cells = g.first;
    auto& xs = g.second;
    s.maker_wins = xs.size();
    if (!xs.empty()) {
      std::sort(xs.begin(), xs.end());
      s.min = xs.front();
      s.max = xs.back();
      const std::size_t m = xs.size() / 2;
      s.median = xs.size() % 2 ? xs[m] : (xs[m - 1] + xs[m]) / 2;
    }
    out.push_back(s);
  }
  return out;
}

// ------------------------------------------------------------ bounds

const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::PmUpper: return "PM_upper";
    case BoundKind::HvsUpper: return "HVS_upper";
    case BoundKind::HsUpper: return "HS_upper";
    case BoundKind::PmLower: return "PM_lower";
    case BoundKind::HcLower: return "HC_lower";
    case BoundKind::ConnExact: return "CONN_exact";
    case BoundKind::KrivCap: return "KRIVI_cap";
  }
  return "?";
}

BoundKind parse_bound(const std::string& name) {
  for (auto k : {BoundKind::PmUpper, BoundKind::HvsUpper, BoundKind::HsUpper, BoundKind::PmLower, BoundKind::HcLower,
                 BoundKind::ConnExact, BoundKind::KrivCap})
    if (name == to_string(k)) return k;
  config_error("unknown bound '" + name + "'");
}

BoundReport bound_check(const std::vector<CellResult>& rows, const BoundSpec& spec) {
  BoundReport rep;
  rep.kind = spec.kind;
  auto cell = [](const CellResult& r) {
    return "n=" + std::to_string(r.n) + " b=" + std::to_string(r.b) + " breaker=" + r.breaker +
           " seed=" + std::to_string(r.seed);
  };
  const bool upper = spec.kind == BoundKind::PmUpper || spec.kind == BoundKind::HvsUpper || spec.kind == BoundKind::HsUpper;
  if (upper) {
    for (const auto& r : rows) {
      if (!r.maker_won()) continue;
      const double b = r.b;
      const double lb = std::max(1.0, std::log(b));
      double scale = 1;
      switch (spec.kind) {
        case BoundKind::PmUpper: scale = b * lb; break;
        case BoundKind::HvsUpper: scale = b * b * lb; break;
        default: scale = b * b * std::pow(std::log(static_cast<double>(r.n)), 5); break;
      }
      ++rep.cells_checked;
      const double c = std::max(0.0, r.excess) / scale;
      if (!rep.fitted_C || c > *rep.fitted_C) {
        rep.fitted_C = c;
        rep.worst = r;
      }
      if (spec.C && r.excess > *spec.C * scale + 1e-9)
        rep.violations.push_back(cell(r) + ": excess " + fmt(r.excess) + " > C*" + fmt(scale));
    }
    return rep;
  }
  for (const auto& r : rows) {
    switch (spec.kind) {
      case BoundKind::PmLower:
      case BoundKind::HcLower: {
        const bool pm = spec.kind == BoundKind::PmLower;
        if (r.breaker != (pm ? "clique-delay-pm" : "clique-delay-hc") || !r.maker_won()) break;
        ++rep.cells_checked;
        const double need = pm ? r.b / 4.0 : r.b / 2.0;
        if (r.excess + 1e-9 < need)
          rep.violations.push_back(cell(r) + ": excess " + fmt(r.excess) + " < " + fmt(need));
        break;
      }
      case BoundKind::ConnExact:
        ++rep.cells_checked;
        if (!r.maker_won() || r.excess != 0)
          rep.violations.push_back(cell(r) + ": winner " + r.winner + " excess " + fmt(r.excess));
        break;
      case BoundKind::KrivCap:
        ++rep.cells_checked;
        if (!r.maker_won() || static_cast<double>(r.maker_moves) > 14.0 * r.n)
          rep.violations.push_back(cell(r) + ": winner " + r.winner + " moves " + std::to_string(r.maker_moves));
        break;
      default: break;
    }
    if (!rep.worst || r.excess > rep.worst->excess) rep.worst = r;
  }
  return rep;
}

// ------------------------------------------------------------ interactive

namespace {

class RecordingMaker final : public MakerStrategy {
 public:
  explicit RecordingMaker(std::unique_ptr<MakerStrategy> inner) : inner_(std::move(inner)) {}
  std::string name() const override { return inner_->name(); }
  void start(const GameState& s) override { inner_->start(s); }
  void observe(const GameState& s, Player p, std::span<const Edge> e) override { inner_->observe(s, p, e); }
  MakerMove next_move(const GameState& s, Annotations& notes) override {
    MakerMove mv = inner_->next_move(s, notes);
    last_ = notes;
    return mv;
  }
  std::optional<std::vector<Edge>> certificate(const GameState& s) override { return inner_->certificate(s); }
  const Annotations& last_notes() const { return last_; }

 private:
  std::unique_ptr<MakerStrategy> inner_;
  Annotations last_;
};

class HumanBreaker final : public BreakerStrategy {
 public:
  HumanBreaker(std::istream& in, std::ostream& out, const RecordingMaker& maker)
      : in_(in), out_(out), maker_(maker) {}
  std::string name() const override { return "human"; }

  std::vector<Edge> next_move(const GameState& s, Annotations&) override {
    if (resigned_) return {};
    summary(s);
    std::vector<Edge> picked;
    const std::uint64_t quota = s.breaker_quota();
    while (picked.size() < quota) {
      out_ << "breaker edge " << picked.size() + 1 << "/" << quota << " (u v): " << std::flush;
      std::string line;
      if (!std::getline(in_, line)) {
        out_ << "\nresigned; Maker plays on against passes\n";
        resigned_ = true;
        return {};
      }
      std::istringstream ss(line);
      long long u = -1, v = -1;
      std::string rest;
      if (!(ss >> u >> v) || (ss >> rest)) {
        out_ << "expected two vertex numbers\n";
        continue;
      }
      if (u < 0 || v < 0 || u >= s.n() || v >= s.n() || u == v) {
        out_ << "vertices must be distinct and in [0," << s.n() << ")\n";
        continue;
      }
      const Edge e = Edge::of(static_cast<Vertex>(u), static_cast<Vertex>(v));
      if (s.owner(e) != Owner::Free) {
        out_ << "edge " << to_string(e) << " is already claimed by " << (s.owner(e) == Owner::Maker ? "Maker" : "Breaker")
             << "\n";
        continue;
      }
      if (std::find(picked.begin(), picked.end(), e) != picked.end()) {
        out_ << "edge " << to_string(e) << " already chosen this turn\n";
        continue;
      }
      picked.push_back(e);
    }
    return picked;
  }

 private:
  void summary(const GameState& s) const {
    const Graph g = Graph::of_player(s, Player::Maker);
    std::map<std::uint32_t, std::uint32_t> hist;
    for (Vertex v = 0; v < s.n(); ++v) ++hist[g.degree(v)];
    out_ << "-- Maker edges " << s.edges(Player::Maker).size() << ", components " << g.component_count()
         << ", degrees";
    for (const auto& [d, k] : hist) out_ << " " << d << ":" << k;
    if (auto it = maker_.last_notes().find("stage"); it != maker_.last_notes().end()) out_ << ", stage " << it->second;
    const auto& mine = s.edges(Player::Maker);
    if (!mine.empty()) {
      out_ << "\n   Maker graph:";
      for (const Edge& e : mine) out_ << " " << to_string(e);
    }
    out_ << "\n";
  }

  std::istream& in_;
  std::ostream& out_;
  const RecordingMaker& maker_;
  bool resigned_ = false;
};

}  // namespace

GameResult interactive_play(const InteractiveOptions& o, std::istream& in, std::ostream& out) {
  RecordingMaker maker(maker::make_maker(o.maker, o.strategy, o.seed, o.target_degree));
  HumanBreaker human(in, out, maker);
  PlayOptions opts;
  opts.goal = o.goal;
  opts.target_degree = o.target_degree;
  opts.seed = o.seed;
  opts.config_hash = config_hash(o.strategy.canonical());
  out << "n=" << o.n << " b=" << o.b << " goal " << goal_code(o.goal) << " vs " << maker.name()
      << "; you are Breaker and move first\n";
  GameResult r = play(new_game(o.n, o.b), maker, human, opts);
  out << "result: " << to_string(r.winner) << " after " << r.maker_moves_used << " Maker moves";
  if (!r.forfeit_reason.empty()) out << " (" << r.forfeit_reason << ")";
  out << "\n";
  return r;
}

}  // namespace mbg::harness
