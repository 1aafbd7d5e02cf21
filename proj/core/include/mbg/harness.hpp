#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mbg/config.hpp"
#include "mbg/engine.hpp"
#include "mbg/transcript.hpp"

namespace mbg::harness {

// ---- adversaries ----

/// passive, random, endpoint-greedy, box-emulating, pair-destroyer,
/// clique-delay-pm, clique-delay-hc
std::vector<std::string> breaker_names();
/// True when the breaker draws from a seeded stream.
bool breaker_randomized(const std::string& name);
/// Throws ConfigError for unknown names.
std::unique_ptr<BreakerStrategy> make_breaker(const std::string& name, std::uint64_t seed);

/// Size of the smallest winning set: n/2 (PM), n (HC), n-1 (CONN), ceil(cn/2) (DEG).
double base_moves(Goal goal, Vertex n, std::uint32_t c = 0);

// ---- experiments ----

enum class Preset { PaperParams, DeskScale };
const char* to_string(Preset p);

struct ExperimentConfig {
  std::vector<Vertex> n;
  /// Formulas over n and delta; "lo..hi" expands to every integer in range.
  std::vector<std::string> b;
  std::string maker;
  std::vector<std::string> breakers;
  Goal goal = Goal::Connectivity;
  std::uint32_t target_degree = 0;
  std::vector<std::uint64_t> seeds;
  Preset preset = Preset::DeskScale;
  double delta = 0.1;
  /// Formula over n and b; empty means no cap.
  std::string move_cap;
  /// Random forbidden graph H given to Breaker before the game: each pair
  /// with probability forbidden_p, skipped when an endpoint would exceed
  /// forbidden_max_degree * n. Zero disables it.
  double forbidden_p = 0;
  double forbidden_max_degree = 0.2;
  /// Monitor names, or {"auto"} for every applicable one.
  std::vector<std::string> monitors{"auto"};
  std::string csv_path;
  std::string transcript_dir;
  /// Whole file; strategy keys live under "<maker>." sections.
  Config strategy;
  std::string hash;

  /// Keys: n, b, maker, breakers ("pool" = all), goal, c, seeds or
  /// seed + repetitions, preset, delta, move_cap, forbidden.p,
  /// forbidden.max_degree, monitors, output.csv, output.transcripts.
  /// Throws ConfigError.
  static ExperimentConfig from_config(const Config& cfg);
  /// Distinct biases for `n`, ascending. Throws ConfigError when a value
  /// evaluates below 1 or the list is empty.
  std::vector<std::uint32_t> biases(Vertex n) const;
};

/// Hash of every key except output.*, since output locations do not change
/// results. Written to transcript headers and checked by verify.
std::string experiment_hash(const Config& cfg);

struct Violation {
  std::string monitor;
  std::uint64_t move_index = 0;
  std::string what;
  double value = 0;
  double bound = 0;
  std::string to_json() const;
};

struct CellResult {
  Vertex n = 0;
  std::uint32_t b = 0;
  Goal goal = Goal::Connectivity;
  std::string maker;
  std::string breaker;
  std::uint64_t seed = 0;
  /// Maker, Breaker, Forfeit, DegreeBlocked, Undecided or Error
  std::string winner;
  std::uint64_t maker_moves = 0;
  double excess = 0;
  std::vector<Violation> violations;
  /// "key=value" pairs joined by ';'
  std::string stats;
  std::string reason;
  std::optional<Transcript> transcript;

  bool maker_won() const { return winner == "Maker"; }
};

/// Breaker's pre-claimed edges for a cell (empty unless forbidden_p > 0).
std::vector<Edge> forbidden_graph(const ExperimentConfig& cfg, Vertex n, std::uint64_t seed);

/// Plays one game and runs the configured monitors on its transcript.
/// Strategy errors become winner "Error" with the message in `reason`.
CellResult run_cell(const ExperimentConfig& cfg, Vertex n, std::uint32_t b, const std::string& breaker,
                    std::uint64_t seed, bool keep_transcript = false);

/// Worker count from MBG_WORKERS, else the hardware concurrency.
unsigned worker_count();

/// Every (n, b, breaker, seed) cell on a worker pool; the result is sorted
/// by (n, b, breaker, seed) and independent of scheduling. Writes the CSV
/// and transcripts when the config names output paths.
std::vector<CellResult> run_sweep(const ExperimentConfig& cfg, unsigned workers = 0);

void write_csv(std::ostream& out, const std::vector<CellResult>& rows);
std::string csv_header();

struct ExcessSummary {
  Vertex n = 0;
  std::uint32_t b = 0;
  std::string breaker;
  std::size_t cells = 0;
  std::size_t maker_wins = 0;
  double min = 0;
  double median = 0;
  double max = 0;
};
/// Min/median/max excess over the Maker-win cells of each (n, b, breaker).
std::vector<ExcessSummary> summarize(const std::vector<CellResult>& rows);

// ---- bounds ----

enum class BoundKind { PmUpper, HvsUpper, HsUpper, PmLower, HcLower, ConnExact, KrivCap };
const char* to_string(BoundKind k);
BoundKind parse_bound(const std::string& name);

struct BoundSpec {
  BoundKind kind = BoundKind::ConnExact;
  /// Upper bounds: fixed constant to assert; empty means fit and report.
  std::optional<double> C;
};

struct BoundReport {
  BoundKind kind = BoundKind::ConnExact;
  std::size_t cells_checked = 0;
  /// Smallest C satisfying the upper formula on every Maker-win cell.
  std::optional<double> fitted_C;
  std::optional<CellResult> worst;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Upper formulas scale C by b*max(1,ln b) (PM), b^2*max(1,ln b) (HVS) or
/// b^2*ln^5 n (HS) and are fitted unless C is fixed. Lower bounds are
/// asserted on the Maker-win cells played by the matching clique-delay
/// breaker; CONN_exact and KRIVI_cap are asserted on every cell.
BoundReport bound_check(const std::vector<CellResult>& rows, const BoundSpec& spec);

// ---- transcripts ----

/// claim1, claim2, claim3, caps, phase, stage2, danger, box-load, clique
std::vector<std::string> monitor_names();
/// Monitors meaningful for the transcript's maker, breaker and goal.
std::vector<std::string> applicable_monitors(const TranscriptHeader& h);

struct MonitorOptions {
  double delta = 0.1;
  Preset preset = Preset::DeskScale;
};

/// Runs monitors on an in-memory transcript. Replays the moves first, so a
/// transcript that does not re-execute throws CorruptTranscript.
std::vector<Violation> run_monitors(const Transcript& t, const std::vector<std::string>& monitors,
                                    const MonitorOptions& opts = {});

/// Reads a JSONL transcript and runs `monitors` ({"auto"} = applicable).
std::vector<Violation> replay(const std::string& path, const std::vector<std::string>& monitors,
                              const MonitorOptions& opts = {});

// ---- interactive ----

struct InteractiveOptions {
  Vertex n = 20;
  std::uint32_t b = 1;
  std::string maker = "pm";
  Goal goal = Goal::PerfectMatching;
  std::uint32_t target_degree = 0;
  std::uint64_t seed = 0;
  Config strategy;
};

/// Human plays Breaker: each turn reads "u v" lines until the quota is
/// filled, re-prompting on invalid input. EOF resigns, after which Breaker
/// passes every turn.
GameResult interactive_play(const InteractiveOptions& opts, std::istream& in, std::ostream& out);

}  // namespace mbg::harness
