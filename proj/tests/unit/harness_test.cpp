#include "doctest.h"

#include <sstream>

#include "mbg/harness.hpp"

using namespace mbg;
using namespace mbg::harness;

namespace {
ExperimentConfig experiment(const std::string& text) { return ExperimentConfig::from_config(Config::parse(text)); }
}  // namespace

TEST_CASE("connectivity sweep is exact") {
  const auto rows = run_sweep(experiment(
      "n = [20, 50, 100]\nb = [1, 2, 3]\nmaker = connectivity\nbreakers = [pool]\ngoal = CONN\nseeds = [1]\n"));
  CHECK(rows.size() == 3 * 3 * breaker_names().size());
  for (const auto& r : rows) {
    CHECK(r.maker_won());
    CHECK(r.maker_moves == r.n - 1);
  }
  CHECK(bound_check(rows, {BoundKind::ConnExact, std::nullopt}).ok());
}

TEST_CASE("six-vertex matching sweep") {
  const auto rows = run_sweep(experiment(
      "n = [6]\nb = [1]\nmaker = pm\nbreakers = [pool]\ngoal = PM\nseeds = [1, 2, 3]\n"
      "[pm]\nenforce_range = false\n"));
  for (const auto& r : rows) {
    CHECK(r.maker_won());
    CHECK(r.maker_moves <= 4);
  }
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(experiment("n = [20]\nb = []\nmaker = connectivity\nbreakers = [pool]\ngoal = CONN\nseeds = [1]\n"),
                  GameError);
  CHECK_THROWS_AS(experiment("n = [20]\nb = [1]\nmaker = nobody\nbreakers = [pool]\ngoal = CONN\nseeds = [1]\n"),
                  GameError);
}

TEST_CASE("lower bound on matching delay games") {
  const auto rows = run_sweep(experiment(
      "n = [100]\nb = [8]\nmaker = pm\nbreakers = [clique-delay-pm]\ngoal = PM\nseeds = [1]\n"
      "[pm]\nenforce_range = false\n"));
  const auto rep = bound_check(rows, {BoundKind::PmLower, std::nullopt});
  CHECK(rep.ok());
  for (const auto& r : rows)
    if (r.maker_won()) CHECK(r.excess >= 8.0 / 4);
}

TEST_CASE("monitors on a fresh matching transcript") {
  auto cfg = experiment("n = [200]\nb = [2]\nmaker = pm\nbreakers = [endpoint-greedy]\ngoal = PM\nseeds = [1]\n"
                        "[pm]\nenforce_range = false\n");
  const auto cell = run_cell(cfg, 200, 2, "endpoint-greedy", 1, true);
  REQUIRE(cell.transcript);
  CHECK(cell.maker_won());
  CHECK(run_monitors(*cell.transcript, {"claim1"}).empty());
  CHECK(run_monitors(*cell.transcript, {}).empty());
}

TEST_CASE("sweep output does not depend on the worker count") {
  const std::string text =
      "n = [40, 60]\nb = [1, 2]\nmaker = greedy-pm\nbreakers = [pool]\ngoal = PM\nseeds = [1, 2]\n";
  std::ostringstream a, b;
  write_csv(a, run_sweep(experiment(text), 1));
  write_csv(b, run_sweep(experiment(text), 4));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind(csv_header(), 0) == 0);
}

TEST_CASE("interactive play") {
  InteractiveOptions opts;
  opts.n = 20;
  opts.b = 2;
  opts.strategy = Config::parse("[pm]\nenforce_range = false\n");
  SUBCASE("an occupied pair is refused and re-prompted") {
    std::istringstream in("0 1\n0 1\n2 3\n");
    std::ostringstream out;
    interactive_play(opts, in, out);
    CHECK(out.str().find("already") != std::string::npos);
  }
  SUBCASE("resigning lets Maker finish alone") {
    std::istringstream in("");
    std::ostringstream out;
    const auto r = interactive_play(opts, in, out);
    CHECK(r.winner == Winner::Maker);
    for (const auto& rec : r.transcript.records)
      if (rec.player == Player::Breaker) CHECK(rec.edges.empty());
  }
  SUBCASE("a session replays exactly") {
    std::string moves;
    for (Vertex u = 0; u < 19; ++u) moves += std::to_string(u) + " 19\n";
    std::istringstream in(moves);
    std::ostringstream out;
    const auto r = interactive_play(opts, in, out);
    const Transcript back = Transcript::from_jsonl(r.transcript.to_jsonl());
    CHECK(back == r.transcript);
    CHECK(back.replay() == r.final_state);
  }
}
