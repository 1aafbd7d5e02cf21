#include "doctest.h"

#include "mbg/breaker.hpp"
#include "mbg/degree_game.hpp"
#include "mbg/engine.hpp"

using namespace mbg;
using namespace mbg::degree;

TEST_CASE("danger values") {
  GameState s = new_game(20, 2);
  for (Vertex u = 1; u <= 7; ++u) s.assign(Player::Breaker, Edge::of(0, u));
  s.assign(Player::Maker, Edge{0, 8});
  CHECK(danger(s, 0, 2) == 3);
  for (Vertex u = 11; u <= 13; ++u) s.assign(Player::Maker, Edge::of(10, u));
  CHECK(danger(s, 10, 2) == -12);
  const GameState fresh = new_game(20, 2);
  for (Vertex v = 0; v < 20; ++v) CHECK(danger(fresh, v, 2) == 0);
}

TEST_CASE("the most dangerous vertex is served first") {
  GameState s = new_game(20, 1);
  for (Vertex u = 10; u < 15; ++u) s.assign(Player::Breaker, Edge::of(3, u));
  for (Vertex u = 15; u < 18; ++u) s.assign(Player::Breaker, Edge::of(7, u));
  DangerPlayer p(2);
  Annotations notes;
  const MakerMove mv = p.next(s, notes);
  REQUIRE(std::holds_alternative<Edge>(mv));
  CHECK(std::get<Edge>(mv).touches(3));
}

TEST_CASE("finished once every vertex reaches the target") {
  GameState s = new_game(6, 1);
  for (Vertex v = 0; v < 6; ++v) s.assign(Player::Maker, Edge::of(v, (v + 1) % 6));
  DangerPlayer p(2);
  CHECK(p.finished(s));
  CHECK_FALSE(p.most_dangerous(s).has_value());
}

TEST_CASE("minimum degree 2 at n=30 within 2n moves") {
  MinDegreeMaker m(2);
  breaker::PoolBreaker b(breaker::PoolKind::EndpointGreedy, 1);
  const auto r = play(new_game(30, 1), m, b, {.goal = Goal::MinDegree, .target_degree = 2});
  CHECK(r.winner == Winner::Maker);
  CHECK(r.maker_moves_used <= 60);
  CHECK(danger_invariant_check(r.transcript, 2, 1).empty());
}

TEST_CASE("danger invariant flags extra Breaker edges") {
  Transcript t;
  t.header.n = 10;
  t.header.b = 3;
  CHECK(danger_invariant_check(t, 1, 1).empty());
  // three Breaker edges per turn checked against bias 1
  t.records.push_back({0, Player::Breaker, {{0, 1}, {0, 2}, {0, 3}}, {}});
  t.records.push_back({1, Player::Maker, {{8, 9}}, {}});
  t.records.push_back({2, Player::Breaker, {{0, 4}, {0, 5}, {0, 6}}, {}});
  CHECK_FALSE(danger_invariant_check(t, 1, 1).empty());
}

TEST_CASE("preconditions") {
  CHECK(preconditions_hold(500, 1, 1, 499));
  CHECK_FALSE(preconditions_hold(100, 1, 12, 99));
}
