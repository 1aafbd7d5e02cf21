#include "doctest.h"

#include "mbg/board.hpp"
#include "mbg/graph.hpp"

using namespace mbg;

TEST_CASE("new_game sizes and turn") {
  CHECK(new_game(10, 2).free_count() == 45);
  const GameState s = new_game(4, 1);
  CHECK(s.free_count() == 6);
  CHECK(s.turn() == Player::Breaker);
  CHECK_THROWS_AS(new_game(3, 1), GameError);
  CHECK_THROWS_AS(new_game(10, 0), GameError);
}

TEST_CASE("claim enforces ownership, turn and arity") {
  GameState s = new_game(4, 1);
  s.claim(Player::Breaker, Edge{2, 3});
  s.claim(Player::Maker, Edge{0, 1});
  CHECK(s.edges(Player::Maker) == std::vector<Edge>{{0, 1}});
  CHECK(s.edges(Player::Breaker) == std::vector<Edge>{{2, 3}});

  GameState t = new_game(4, 1);
  t.claim(Player::Breaker, Edge{2, 3});
  try {
    t.claim(Player::Maker, Edge{2, 3});
    FAIL("claimed a Breaker edge");
  } catch (const GameError& e) {
    CHECK(e.kind() == ErrorKind::EdgeNotFree);
  }
  CHECK_THROWS_AS(t.claim(Player::Breaker, Edge{0, 1}), GameError);
}

TEST_CASE("Breaker takes the remaining edges when fewer than b are free") {
  GameState s = new_game(4, 3);
  s.claim(Player::Breaker, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}});
  s.claim(Player::Maker, Edge{1, 2});
  s.claim(Player::Breaker, std::vector<Edge>{{1, 3}, {2, 3}});
  CHECK(s.free_count() == 0);
}

TEST_CASE("degrees and free neighbours") {
  GameState s = new_game(8, 2);
  s.claim(Player::Breaker, std::vector<Edge>{{0, 1}, {0, 2}});
  CHECK(deg_B(s, 0) == 2);
  CHECK(deg_B(s, 0, VertexSet(8, std::vector<Vertex>{1})) == 1);
  CHECK(deg_B(new_game(8, 1), 5) == 0);

  const GameState fresh = new_game(8, 1);
  const VertexSet s123(8, std::vector<Vertex>{1, 2, 3});
  CHECK(fresh.free_neighbors(0, s123) == std::vector<Vertex>{1, 2, 3});
  GameState b = new_game(8, 1);
  b.claim(Player::Breaker, Edge{0, 2});
  CHECK(b.free_neighbors(0, s123) == std::vector<Vertex>{1, 3});
  CHECK(b.free_neighbors(0, VertexSet(8)).empty());
}

TEST_CASE("graph basics") {
  const Graph g = Graph::from_edges(5, std::vector<Edge>{{0, 1}, {1, 2}, {3, 4}});
  CHECK(g.component_count() == 2);
  CHECK(g.is_forest());
  CHECK(g.min_degree() == 1);
  CHECK(g.max_degree() == 2);
  DisjointSets d(4);
  CHECK(d.unite(0, 1));
  CHECK_FALSE(d.unite(1, 0));
  CHECK(d.size_of(0) == 2);
}
