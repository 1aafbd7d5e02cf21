#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "mbg/breaker.hpp"
#include "mbg/maker.hpp"

using namespace mbg;
using namespace mbg::maker;

namespace {
Graph path_graph(Vertex n) {
  Graph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}
}  // namespace

TEST_CASE("connectivity tie rule") {
  GameState s = new_game(5, 1);
  s.assign(Player::Maker, Edge{0, 1});
  s.assign(Player::Maker, Edge{3, 4});
  ConnectivityMaker m;
  Annotations notes;
  const MakerMove mv = m.next_move(s, notes);
  REQUIRE(std::holds_alternative<Edge>(mv));
  CHECK(std::get<Edge>(mv) == Edge{0, 2});
}

TEST_CASE("matching rule on the isolated set") {
  GameState s = new_game(12, 1);
  for (const Edge& e : std::vector<Edge>{{0, 4}, {0, 6}, {0, 7}, {1, 8}, {4, 9}}) s.assign(Player::Breaker, e);
  const VertexSet u(12, std::vector<Vertex>{0, 1, 2, 3, 4, 5});
  const MakerMove mv = pm_stage1_move(s, u);
  REQUIRE(std::holds_alternative<Edge>(mv));
  CHECK(std::get<Edge>(mv) == Edge{0, 1});

  const MakerMove fresh = pm_stage1_move(new_game(12, 1), u);
  CHECK(std::get<Edge>(fresh) == Edge{0, 1});

  GameState blocked = new_game(12, 1);
  for (Vertex a = 0; a < 6; ++a)
    for (Vertex b = a + 1; b < 6; ++b) blocked.assign(Player::Breaker, Edge{a, b});
  CHECK(std::holds_alternative<Forfeit>(pm_stage1_move(blocked, u)));
}

TEST_CASE("pm refuses biases above its range") {
  PmMaker m(Config{}, 0);
  CHECK_THROWS_AS(m.start(new_game(100, 50)), GameError);
}

TEST_CASE("pair lemma") {
  const auto [x, y] = lemma10_pair(path_graph(3));
  CHECK(Edge::of(x, y) == Edge{0, 2});
  const auto [p, q] = lemma10_pair(Graph(4));
  CHECK(p != q);
}

TEST_CASE("near-middle range and split") {
  CHECK(near_middle_range(100, 0.1) == std::pair<std::size_t, std::size_t>{45, 55});
  GameState s = new_game(102, 1);
  std::vector<Vertex> q;
  for (Vertex v = 0; v <= 100; ++v) q.push_back(v);
  for (Vertex v = 0; v < 100; ++v) s.assign(Player::Maker, Edge{v, v + 1});
  PathSystem ps(102, std::vector<Vertex>{101});
  const PathId qid = ps.add(q);
  const PathId pid = ps.path_of(101);
  const auto c = near_middle_split(s, ps, pid, qid, 0.1, 1e9);
  REQUIRE(c.has_value());
  CHECK(c->x == 45);
}

TEST_CASE("equitable partitions") {
  std::vector<Vertex> vs(10);
  std::iota(vs.begin(), vs.end(), 0);
  const auto p = equitable_partition(vs, Graph(10), 3);
  std::vector<std::size_t> sizes;
  for (const auto& c : p.classes) sizes.push_back(c.size());
  std::sort(sizes.rbegin(), sizes.rend());
  CHECK(sizes == std::vector<std::size_t>{4, 3, 3});

  const Graph c4 = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const std::vector<Vertex> four{0, 1, 2, 3};
  for (const auto& cls : equitable_partition(four, c4, 3).classes)
    for (Vertex a : cls)
      for (Vertex b : cls) CHECK_FALSE(c4.adjacent(a, b));
}

TEST_CASE("random equitable partitions are proper") {
  Rng rng(5);
  for (int rep = 0; rep < 40; ++rep) {
    const Vertex n = 10 + static_cast<Vertex>(rng.below(41));
    Graph g(n);
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b)
        if (rng.below(10) == 0) g.add_edge(a, b);
    std::vector<Vertex> vs(n);
    std::iota(vs.begin(), vs.end(), 0);
    const std::size_t k = g.max_degree() + 1;
    const auto p = equitable_partition(vs, g, k);
    REQUIRE(p.classes.size() == k);
    std::size_t total = 0;
    for (const auto& cls : p.classes) {
      total += cls.size();
      CHECK(cls.size() + (p.relaxed ? 1 : 0) >= n / k);
      CHECK(cls.size() <= (n + k - 1) / k + (p.relaxed ? 1 : 0));
      for (Vertex a : cls)
        for (Vertex b : cls) CHECK_FALSE(g.adjacent(a, b));
    }
    CHECK(total == n);
  }
}

TEST_CASE("expander spot check") {
  Rng rng(1);
  Graph k7(7);
  for (Vertex a = 0; a < 7; ++a)
    for (Vertex b = a + 1; b < 7; ++b) k7.add_edge(a, b);
  CHECK(expander_spotcheck(k7, 2, 10, rng));
  Graph star(10);
  for (Vertex v = 1; v < 10; ++v) star.add_edge(0, v);
  CHECK_FALSE(expander_spotcheck(star, 3, 10, rng));
  Graph two(10);
  for (Vertex base : {0u, 5u})
    for (Vertex a = 0; a < 5; ++a)
      for (Vertex b = a + 1; b < 5; ++b) two.add_edge(base + a, base + b);
  CHECK_FALSE(expander_spotcheck(two, 4, 10, rng));
}

TEST_CASE("boosters") {
  auto all_free = [](Vertex, Vertex) { return true; };
  CHECK(find_booster(path_graph(8), all_free) == Edge{0, 7});
  Graph cycle = path_graph(8);
  cycle.add_edge(0, 7);
  try {
    find_booster(cycle, all_free);
    FAIL("accepted a Hamiltonian graph");
  } catch (const GameError& e) {
    CHECK(e.kind() == ErrorKind::PreconditionViolated);
  }
  const auto all = all_boosters(path_graph(6), all_free);
  CHECK(std::find(all.begin(), all.end(), Edge{0, 5}) != all.end());
}

TEST_CASE("Hamilton-connected expander building") {
  Graph k4(4);
  for (Vertex a = 0; a < 4; ++a)
    for (Vertex b = a + 1; b < 4; ++b) k4.add_edge(a, b);
  CHECK(hamconn_check(k4).ok);

  std::vector<Vertex> t(8);
  std::iota(t.begin(), t.end(), 0);
  GameState s = new_game(20, 1);
  HamconnBuilder hb(VertexSet(20, t), 3, 100);
  Annotations notes;
  int guard = 0;
  while (!hb.complete(s) && guard++ < 100) {
    const MakerMove mv = hb.next(s, notes);
    REQUIRE(std::holds_alternative<Edge>(mv));
    s.assign(Player::Maker, std::get<Edge>(mv));
  }
  REQUIRE(hb.complete(s));
  CHECK(exact::hamilton_connected(Graph::of_player(s, Player::Maker).induced(t)));

  GameState s1 = new_game(20, 1);
  HamconnBuilder tight(VertexSet(20, t), 3, 1);
  const MakerMove first = tight.next(s1, notes);
  REQUIRE(std::holds_alternative<Edge>(first));
  s1.assign(Player::Maker, std::get<Edge>(first));
  CHECK_FALSE(tight.complete(s1));
  CHECK(std::holds_alternative<Forfeit>(tight.next(s1, notes)));
}

TEST_CASE("hnf wins with an empty forbidden graph and rejects a dense one") {
  HnfMaker m(Config{}, 0);
  breaker::PassiveBreaker b;
  const auto r = play(new_game(40, 1), m, b, {.goal = Goal::HamiltonCycle});
  CHECK(r.winner == Winner::Maker);
  CHECK(r.maker_moves_used <= 14 * 40);

  GameState dense = new_game(20, 1);
  std::vector<Edge> h;
  for (Vertex a = 0; a < 20 && h.size() < 150; ++a)
    for (Vertex c = a + 1; c < 20 && h.size() < 150; ++c) h.push_back({a, c});
  dense.preclaim_breaker(h);
  HnfMaker again(Config{}, 0);
  CHECK_THROWS_AS(again.start(dense), GameError);
}

TEST_CASE("path system bookkeeping") {
  PathSystem ps = PathSystem::isolated(6);
  CHECK(ps.end_size() == 12);
  CHECK(ps.end_multiplicity(3) == 2);
  const PathId id = ps.join(0, 1);
  CHECK(ps.length(id) == 1);
  CHECK(ps.partner(0) == 1);
  CHECK(ps.path_count() == 5);
}
