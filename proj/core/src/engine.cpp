#include "mbg/engine.hpp"

#include <algorithm>
#include <set>

namespace mbg {

const char* to_string(Winner w) {
  switch (w) {
    case Winner::Maker: return "Maker";
    case Winner::Breaker: return "Breaker";
    case Winner::Forfeit: return "Forfeit";
    case Winner::Undecided: return "Undecided";
  }
  return "?";
}

namespace {

[[noreturn]] void illegal(const std::string& who, const std::string& why) {
  throw GameError(ErrorKind::IllegalStrategyMove, who + ": " + why);
}

void check_breaker_move(const GameState& s, const std::string& who, std::span<const Edge> edges) {
  if (!edges.empty() && edges.size() != s.breaker_quota())
    illegal(who, "returned " + std::to_string(edges.size()) + " edges, expected " +
                     std::to_string(s.breaker_quota()));
  std::set<Edge> seen;
  for (const Edge& raw : edges) {
    if (raw.u == raw.v || raw.u >= s.n() || raw.v >= s.n()) illegal(who, "invalid edge " + to_string(raw));
    const Edge e = Edge::of(raw.u, raw.v);
    if (!s.is_free(e)) illegal(who, "edge " + to_string(e) + " is not free");
    if (!seen.insert(e).second) illegal(who, "edge " + to_string(e) + " repeated");
  }
}

}  // namespace

GameResult play(GameState state, MakerStrategy& maker, BreakerStrategy& breaker,
                const PlayOptions& opts) {
  GameResult result;
  Transcript& t = result.transcript;
  t.header.n = state.n();
  t.header.b = state.bias();
  t.header.maker = maker.name();
  t.header.breaker = breaker.name();
  t.header.goal = opts.goal;
  t.header.target_degree = opts.target_degree;
  t.header.seed = opts.seed;
  t.header.config_hash = opts.config_hash;
  {
    // pre-claimed edges are everything Breaker owns before the first move
    const auto& pre = state.edges(Player::Breaker);
    t.header.preclaimed.assign(pre.begin(), pre.end());
  }
  const std::uint64_t cap = opts.move_cap ? opts.move_cap : pair_count(state.n());

  maker.start(state);
  breaker.start(state);

  std::uint64_t index = 0;
  while (true) {
    if (state.free_count() == 0) {
      result.winner = Winner::Breaker;
      break;
    }
    {
      Annotations notes;
      std::vector<Edge> edges = breaker.next_move(state, notes);
      for (Edge& e : edges) e = Edge::of(e.u, e.v);
      check_breaker_move(state, breaker.name(), edges);
      if (edges.empty())
        state.pass_breaker();
      else
        state.claim(Player::Breaker, edges);
      t.records.push_back({index++, Player::Breaker, edges, std::move(notes)});
      maker.observe(state, Player::Breaker, edges);
      breaker.observe(state, Player::Breaker, edges);
    }
    if (state.free_count() == 0) {
      result.winner = Winner::Breaker;
      break;
    }
    {
      Annotations notes;
      MakerMove mv = maker.next_move(state, notes);
      if (auto* f = std::get_if<Forfeit>(&mv)) {
        result.winner = Winner::Forfeit;
        result.forfeit_reason = f->reason;
        break;
      }
      const Edge raw = std::get<Edge>(mv);
      if (raw.u == raw.v || raw.u >= state.n() || raw.v >= state.n())
        illegal(maker.name(), "invalid edge " + to_string(raw));
      const Edge e = Edge::of(raw.u, raw.v);
      if (!state.is_free(e)) illegal(maker.name(), "edge " + to_string(e) + " is not free");
      state.claim(Player::Maker, e);
      t.records.push_back({index++, Player::Maker, {e}, std::move(notes)});
      maker.observe(state, Player::Maker, std::span<const Edge>(&e, 1));
      breaker.observe(state, Player::Maker, std::span<const Edge>(&e, 1));
    }
    if (auto cert = maker.certificate(state)) {
      if (!verify_certificate(state, opts.goal, *cert, opts.target_degree))
        illegal(maker.name(), "certificate failed verification");
      result.winner = Winner::Maker;
      result.certificate = std::move(cert);
      break;
    }
    if (state.maker_moves() >= cap) {
      result.cap_hit = true;
      result.winner = Winner::Undecided;
      break;
    }
  }
  result.maker_moves_used = state.maker_moves();
  result.final_state = std::move(state);
  return result;
}

bool verify_certificate(Vertex n, Goal goal, std::span<const Edge> certificate,
                        std::uint32_t target_degree) {
  std::set<Edge> edges;
  for (const Edge& raw : certificate) {
    if (raw.u == raw.v || raw.u >= n || raw.v >= n) return false;
    if (!edges.insert(Edge::of(raw.u, raw.v)).second) return false;
  }
  std::vector<std::uint32_t> deg(n, 0);
  for (const Edge& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  switch (goal) {
    case Goal::PerfectMatching:
      return n % 2 == 0 && edges.size() == n / 2 &&
             std::all_of(deg.begin(), deg.end(), [](auto d) { return d == 1; });
    case Goal::HamiltonCycle: {
      if (n < 3 || edges.size() != n) return false;
      if (!std::all_of(deg.begin(), deg.end(), [](auto d) { return d == 2; })) return false;
      DisjointSets ds(n);
      for (const Edge& e : edges) ds.unite(e.u, e.v);
      return ds.size_of(0) == n;
    }
    case Goal::Connectivity: {
      if (edges.size() + 1 != n) return false;
      DisjointSets ds(n);
      for (const Edge& e : edges)
        if (!ds.unite(e.u, e.v)) return false;
      return true;
    }
    case Goal::MinDegree:
      return std::all_of(deg.begin(), deg.end(), [&](auto d) { return d >= target_degree; });
  }
  return false;
}

bool verify_certificate(const GameState& s, Goal goal, std::span<const Edge> certificate,
                        std::uint32_t target_degree) {
  for (const Edge& e : certificate) {
    if (e.u == e.v || e.u >= s.n() || e.v >= s.n()) return false;
    if (!s.has(Player::Maker, e.u, e.v)) return false;
  }
  return verify_certificate(s.n(), goal, certificate, target_degree);
}

bool exact_goal_check(const Graph& g, Goal goal, std::uint32_t target_degree) {
  switch (goal) {
    case Goal::PerfectMatching:
      return exact::has_perfect_matching(g);
    case Goal::HamiltonCycle:
      return exact::has_hamilton_cycle(g);
    case Goal::Connectivity:
      if (g.order() > 2000)
        throw GameError(ErrorKind::InstanceTooLarge, "connectivity oracle limited to 2000 vertices");
      return g.is_connected();
    case Goal::MinDegree:
      return g.min_degree() >= target_degree;
  }
  return false;
}

}  // namespace mbg
