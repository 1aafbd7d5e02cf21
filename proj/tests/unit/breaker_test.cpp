#include "doctest.h"

#include <algorithm>
#include <set>

#include "mbg/breaker.hpp"

using namespace mbg;
using namespace mbg::breaker;

TEST_CASE("delay batch sizes") {
  CHECK(delay_batch_size(0, 12) == 4);
  CHECK(delay_batch_size(5, 12) == 1);
  // C(2,2) = 1 fits a budget of 1
  CHECK(delay_batch_size(0, 1) == 1);
  CHECK(delay_batch_size(1, 1) == 0);
}

TEST_CASE("matching delay opens with a clique plus filler") {
  const GameState s = new_game(100, 12);
  CliqueDelay d(DelayMode::PM);
  d.start(s);
  Annotations notes;
  const auto move = d.next_move(s, notes);
  CHECK(move.size() == 12);
  const std::set<Edge> claimed(move.begin(), move.end());
  for (Vertex a = 0; a < 5; ++a)
    for (Vertex b = a + 1; b < 5; ++b) CHECK(claimed.count(Edge{a, b}) == 1);
  CHECK(d.clique() == std::vector<Vertex>{0, 1, 2, 3, 4});
}

namespace {
// plays Maker edges into the delay breaker until its clique stabilises
GameState after_moves(CliqueDelay& d, GameState s, const std::vector<Edge>& maker_moves) {
  Annotations notes;
  d.start(s);
  for (const Edge& e : maker_moves) {
    const auto mv = d.next_move(s, notes);
    s.claim(Player::Breaker, mv);
    d.observe(s, Player::Breaker, mv);
    s.claim(Player::Maker, e);
    d.observe(s, Player::Maker, std::span<const Edge>(&e, 1));
  }
  return s;
}
}  // namespace

TEST_CASE("matching delay replaces a touched member") {
  CliqueDelay d(DelayMode::PM);
  GameState s = after_moves(d, new_game(60, 4), {{50, 51}, {52, 53}, {54, 55}});
  REQUIRE(d.clique().size() == 2);
  const Vertex touched = d.clique().front();
  const Vertex outside = 59;
  Annotations notes;
  s.claim(Player::Breaker, d.next_move(s, notes));
  s.claim(Player::Maker, Edge::of(touched, outside));
  d.observe(s, Player::Maker, std::vector<Edge>{Edge::of(touched, outside)});
  const auto mv = d.next_move(s, notes);
  s.claim(Player::Breaker, mv);
  const auto& c = d.clique();
  CHECK(std::find(c.begin(), c.end(), touched) == c.end());
  CHECK(is_breaker_clique(s, c));
}

TEST_CASE("Hamilton delay keeps degree-1 members and drops degree-2 members") {
  CliqueDelay d(DelayMode::HC);
  GameState s = after_moves(d, new_game(60, 4), {{50, 51}, {52, 53}});
  REQUIRE(d.clique().size() >= 2);
  const Vertex m = d.clique().front();
  Annotations notes;
  auto mv = d.next_move(s, notes);
  s.claim(Player::Breaker, mv);
  s.claim(Player::Maker, Edge::of(m, 58));
  d.observe(s, Player::Maker, std::vector<Edge>{Edge::of(m, 58)});
  mv = d.next_move(s, notes);
  s.claim(Player::Breaker, mv);
  CHECK(std::find(d.clique().begin(), d.clique().end(), m) != d.clique().end());
  s.claim(Player::Maker, Edge::of(m, 59));
  d.observe(s, Player::Maker, std::vector<Edge>{Edge::of(m, 59)});
  mv = d.next_move(s, notes);
  s.claim(Player::Breaker, mv);
  CHECK(std::find(d.clique().begin(), d.clique().end(), m) == d.clique().end());
  CHECK(is_breaker_clique(s, d.clique()));
}

TEST_CASE("Hamilton delay grows one vertex per move past b/2") {
  CliqueDelay d(DelayMode::HC);
  GameState s = new_game(80, 8);
  d.start(s);
  Annotations notes;
  Vertex far = 40;
  std::size_t last = 0;
  bool grew_by_one = false;
  for (int i = 0; i < 6; ++i) {
    const auto mv = d.next_move(s, notes);
    s.claim(Player::Breaker, mv);
    const std::size_t now = d.clique().size();
    if (last >= 4 && now == last + 1) grew_by_one = true;
    last = now;
    const Edge e{far, far + 1};
    far += 2;
    s.claim(Player::Maker, e);
    d.observe(s, Player::Maker, std::span<const Edge>(&e, 1));
  }
  CHECK(grew_by_one);
}

TEST_CASE("pool breakers") {
  const GameState s = new_game(30, 3);
  Annotations notes;
  PoolBreaker r1(PoolKind::Random, 9), r2(PoolKind::Random, 9);
  CHECK(r1.next_move(s, notes) == r2.next_move(s, notes));

  PoolBreaker greedy(PoolKind::EndpointGreedy, 0);
  const auto g = greedy.next_move(s, notes);
  CHECK(g.size() == 3);
  for (const Edge& e : g) CHECK(e.touches(0));

  PoolBreaker pd(PoolKind::PairDestroyer, 4);
  const auto p = pd.next_move(s, notes);
  CHECK(p.size() == 3);
  for (const Edge& e : p) CHECK(s.is_free(e));
}
