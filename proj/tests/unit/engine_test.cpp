#include "doctest.h"

#include <sstream>

#include "mbg/breaker.hpp"
#include "mbg/engine.hpp"
#include "mbg/maker.hpp"

using namespace mbg;

TEST_CASE("connectivity in exactly n-1 moves") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    maker::ConnectivityMaker m;
    breaker::PoolBreaker b(breaker::PoolKind::Random, seed);
    const auto r = play(new_game(20, 1), m, b, {.goal = Goal::Connectivity});
    CHECK(r.winner == Winner::Maker);
    CHECK(r.maker_moves_used == 19);
  }
}

TEST_CASE("move cap leaves the game undecided") {
  maker::ConnectivityMaker m;
  breaker::PassiveBreaker b;
  const auto r = play(new_game(20, 1), m, b, {.goal = Goal::Connectivity, .move_cap = 1});
  CHECK(r.winner == Winner::Undecided);
  CHECK(r.cap_hit);
}

TEST_CASE("perfect matching on six vertices within n/2+1") {
  const Config cfg = Config::parse("enforce_range = false\n");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    maker::PmMaker m(cfg, seed);
    breaker::PoolBreaker b(breaker::PoolKind::Random, seed);
    const auto r = play(new_game(6, 1), m, b, {.goal = Goal::PerfectMatching});
    CHECK(r.winner == Winner::Maker);
    CHECK(r.maker_moves_used <= 4);
  }
}

TEST_CASE("certificates") {
  const std::vector<Edge> pm{{0, 1}, {2, 3}};
  const std::vector<Edge> hc{{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  const std::vector<Edge> half{{0, 1}, {1, 2}};
  CHECK(verify_certificate(4, Goal::PerfectMatching, pm));
  CHECK(verify_certificate(4, Goal::HamiltonCycle, hc));
  CHECK_FALSE(verify_certificate(4, Goal::PerfectMatching, half));
  CHECK_FALSE(verify_certificate(4, Goal::Connectivity, half));
}

TEST_CASE("exact goal check") {
  const Graph c5 = Graph::from_edges(5, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  CHECK(exact_goal_check(c5, Goal::HamiltonCycle));
  CHECK(exact_goal_check(Graph::from_edges(4, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}}), Goal::PerfectMatching));
  CHECK_FALSE(exact_goal_check(Graph::from_edges(4, std::vector<Edge>{{1, 2}, {2, 3}}), Goal::PerfectMatching));
  CHECK_FALSE(exact_goal_check(Graph::from_edges(4, std::vector<Edge>{{0, 1}, {1, 2}}), Goal::PerfectMatching));
  const Graph star = Graph::from_edges(6, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  CHECK_FALSE(exact_goal_check(star, Goal::HamiltonCycle));
  CHECK(exact_goal_check(star, Goal::Connectivity));
}

TEST_CASE("transcripts round-trip and replay") {
  maker::ConnectivityMaker m;
  breaker::PoolBreaker b(breaker::PoolKind::Random, 3);
  const auto r = play(new_game(12, 2), m, b, {.goal = Goal::Connectivity, .seed = 3});
  const Transcript back = Transcript::from_jsonl(r.transcript.to_jsonl());
  CHECK(back == r.transcript);
  CHECK(back.replay() == r.final_state);
}

TEST_CASE("a duplicated record is a corrupt transcript") {
  maker::ConnectivityMaker m;
  breaker::PassiveBreaker b;
  const auto r = play(new_game(8, 1), m, b, {.goal = Goal::Connectivity});
  std::istringstream in(r.transcript.to_jsonl());
  std::string header, first, rest, line;
  std::getline(in, header);
  std::getline(in, first);
  while (std::getline(in, line)) rest += line + "\n";
  const std::string text = header + "\n" + first + "\n" + first + "\n" + rest;
  try {
    Transcript::from_jsonl(text).replay();
    FAIL("replayed a duplicated record");
  } catch (const GameError& e) {
    CHECK(e.kind() == ErrorKind::CorruptTranscript);
  }
}
