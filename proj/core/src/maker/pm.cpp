#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include "json.hpp"
#include "mbg/maker.hpp"

namespace mbg::maker {

MakerMove pm_stage1_move(const GameState& s, const VertexSet& u) {
  const auto members = u.sorted();
  if (members.size() < 2) return Forfeit{"pm stage 1: fewer than two isolated vertices"};
  Vertex v = members.front();
  std::uint32_t best = 0;
  bool first = true;
  for (Vertex x : members) {
    const std::uint32_t d = s.degree_into(Player::Breaker, x, u);
    if (first || d > best) {
      v = x;
      best = d;
      first = false;
    }
  }
  std::optional<Vertex> w;
  std::uint32_t wbest = 0;
  for (Vertex x : members) {
    if (x == v || !s.is_free(v, x)) continue;
    const std::uint32_t d = s.degree_into(Player::Breaker, x, u);
    if (!w || d > wbest) {
      w = x;
      wbest = d;
    }
  }
  if (!w) return Forfeit{"pm stage 1: vertex " + std::to_string(v) + " has no free partner"};
  return Edge::of(v, *w);
}

std::uint32_t pm_residual(Vertex n, std::uint32_t b, const Config& cfg) {
  std::int64_t m;
  if (cfg.has("m")) {
    m = cfg.get_int("m", 20);
  } else {
    const double lnb = std::ceil(std::log(static_cast<double>(b) + 1.0));
    m = std::max<std::int64_t>(20, static_cast<std::int64_t>(4.0 * b * lnb));
  }
  m = std::clamp<std::int64_t>(m, 0, n);
  if ((n - m) % 2 != 0) m = (m + 1 <= static_cast<std::int64_t>(n)) ? m + 1 : m - 1;
  return static_cast<std::uint32_t>(m);
}

// ------------------------------------------------------------ endgame

namespace {

struct SmallBoard {
  std::vector<std::pair<int, int>> pairs;  // local vertex pairs by index
  int k = 0;

  bool has_pm(std::uint32_t edges) const {
    if (k % 2) return false;
    std::vector<std::uint32_t> nb(k, 0);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (edges >> i & 1U) {
        nb[pairs[i].first] |= 1U << pairs[i].second;
        nb[pairs[i].second] |= 1U << pairs[i].first;
      }
    auto go = [&](auto&& self, std::uint32_t left) -> bool {
      if (!left) return true;
      const int v = std::countr_zero(left);
      for (std::uint32_t it = nb[v] & left; it; it &= it - 1)
        if (self(self, left & ~(1U << v) & ~(1U << std::countr_zero(it)))) return true;
      return false;
    };
    return go(go, (1U << k) - 1);
  }

  std::vector<std::uint32_t> pm_edges(std::uint32_t edges) const {
    std::vector<std::uint32_t> chosen;
    auto go = [&](auto&& self, std::uint32_t left) -> bool {
      if (!left) return true;
      const int v = std::countr_zero(left);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!(edges >> i & 1U)) continue;
        const auto [a, b] = pairs[i];
        const int u = a == v ? b : (b == v ? a : -1);
        if (u < 0 || !(left >> u & 1U)) continue;
        chosen.push_back(static_cast<std::uint32_t>(i));
        if (self(self, left & ~(1U << v) & ~(1U << u))) return true;
        chosen.pop_back();
      }
      return false;
    };
    go(go, (1U << k) - 1);
    return chosen;
  }
};

struct EndgameSearch {
  const SmallBoard& board;
  std::uint32_t bias;
  std::unordered_map<std::uint64_t, bool> memo;

  bool breaker_replies_lose(std::uint32_t mk, std::uint32_t bk, std::uint32_t r) {
    const std::uint32_t all = static_cast<std::uint32_t>((std::uint64_t{1} << board.pairs.size()) - 1);
    const std::uint32_t free = all & ~mk & ~bk;
    const int nfree = std::popcount(free);
    if (nfree == 0) return false;
    const int take = std::min<int>(static_cast<int>(bias), nfree);
    std::vector<int> idx;
    for (std::uint32_t it = free; it; it &= it - 1) idx.push_back(std::countr_zero(it));
    // every Breaker choice of `take` free pairs must still lose
    std::vector<int> sel(take);
    for (int i = 0; i < take; ++i) sel[i] = i;
    while (true) {
      std::uint32_t add = 0;
      for (int i : sel) add |= 1U << idx[i];
      if (!win(mk, bk | add, r)) return false;
      int i = take - 1;
      while (i >= 0 && sel[i] == nfree - take + i) --i;
      if (i < 0) break;
      ++sel[i];
      for (int j = i + 1; j < take; ++j) sel[j] = sel[j - 1] + 1;
    }
    return true;
  }

  bool win(std::uint32_t mk, std::uint32_t bk, std::uint32_t r, int* first = nullptr) {
    if (r == 0) return false;
    const std::uint64_t key = (static_cast<std::uint64_t>(mk) << 34) ^ (static_cast<std::uint64_t>(bk) << 6) ^ r;
    if (!first) {
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
    }
    const std::uint32_t all = static_cast<std::uint32_t>((std::uint64_t{1} << board.pairs.size()) - 1);
    bool ok = false;
    for (std::uint32_t it = all & ~mk & ~bk; it && !ok; it &= it - 1) {
      const int e = std::countr_zero(it);
      const std::uint32_t next = mk | (1U << e);
      if (board.has_pm(next) || (r > 1 && breaker_replies_lose(next, bk, r - 1))) {
        ok = true;
        if (first) *first = e;
      }
    }
    memo[key] = ok;
    return ok;
  }
};

SmallBoard small_board(std::span<const Vertex> u) {
  SmallBoard sb;
  sb.k = static_cast<int>(u.size());
  for (int a = 0; a < sb.k; ++a)
    for (int b = a + 1; b < sb.k; ++b) sb.pairs.push_back({a, b});
  return sb;
}

}  // namespace

std::optional<EndgamePlan> pm_endgame(const GameState& s, std::span<const Vertex> u,
                                      std::uint32_t max_moves) {
  if (u.size() > 8) throw GameError(ErrorKind::InstanceTooLarge, "pm_endgame limited to 8 vertices");
  const SmallBoard sb = small_board(u);
  std::uint32_t mk = 0, bk = 0;
  for (std::size_t i = 0; i < sb.pairs.size(); ++i) {
    const Vertex a = u[sb.pairs[i].first], b = u[sb.pairs[i].second];
    if (s.has(Player::Maker, a, b)) mk |= 1U << i;
    if (s.has(Player::Breaker, a, b)) bk |= 1U << i;
  }
  EndgameSearch search{sb, s.bias(), {}};
  for (std::uint32_t r = 1; r <= max_moves; ++r) {
    int first = -1;
    if (search.win(mk, bk, r, &first)) {
      const auto [a, b] = sb.pairs[static_cast<std::size_t>(first)];
      return EndgamePlan{r, Edge::of(u[a], u[b])};
    }
  }
  return std::nullopt;
}

namespace {

// Maximum matching of Maker's graph on `members`; mate[v] == n when exposed
// or outside `members`.
std::vector<Vertex> max_matching_mates(const GameState& s, std::span<const Vertex> members) {
  using G = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  const Vertex n = s.n();
  std::vector<Vertex> local(n, n);
  for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<Vertex>(i);
  G g(members.size());
  for (const Edge& e : s.edges(Player::Maker))
    if (local[e.u] != n && local[e.v] != n) boost::add_edge(local[e.u], local[e.v], g);
  std::vector<boost::graph_traits<G>::vertex_descriptor> mate(members.size());
  boost::edmonds_maximum_cardinality_matching(g, &mate[0]);
  std::vector<Vertex> out(n, n);
  const auto null = boost::graph_traits<G>::null_vertex();
  for (std::size_t i = 0; i < members.size(); ++i)
    if (mate[i] != null) out[members[i]] = members[mate[i]];
  return out;
}

std::vector<Vertex> max_matching_mates(const GameState& s) {
  std::vector<Vertex> all(s.n());
  for (Vertex v = 0; v < s.n(); ++v) all[v] = v;
  return max_matching_mates(s, all);
}

}  // namespace

// ------------------------------------------------------------ PmMaker

namespace {

std::pair<double, double> claim1_values(const GameState& s, const VertexSet& u) {
  if (u.empty()) return {0.0, 0.0};
  std::uint64_t sum = 0;
  std::uint32_t top = 0;
  for (Vertex v : u.members()) {
    const std::uint32_t d = s.degree_into(Player::Breaker, v, u);
    sum += d;
    top = std::max(top, d);
  }
  return {static_cast<double>(sum) / static_cast<double>(u.size()), static_cast<double>(top)};
}

}  // namespace

void PmMaker::start(const GameState& s) {
  const Vertex n = s.n();
  if (n % 2) throw GameError(ErrorKind::PreconditionViolated, "pm: n must be even");
  if (cfg_.get_bool("enforce_range", true)) {
    const std::map<std::string, double> vars{{"n", static_cast<double>(n)},
                                             {"delta", cfg_.get_double("delta", 0.1)}};
    const double limit = eval_formula(cfg_.get_string("b_max", "delta*n/(100*ln(n))"), vars);
    if (static_cast<double>(s.bias()) > limit)
      throw GameError(ErrorKind::PreconditionViolated,
                      "pm: bias " + std::to_string(s.bias()) + " above configured maximum " + std::to_string(limit));
  }
  m_ = pm_residual(n, s.bias(), cfg_);
  ell_ = (n - m_) / 2;
  made_ = 0;
  u_ = VertexSet::all(n);
  matching_.clear();
  hnf_.reset();
  endgame_ = false;
  matching_fallback_ = false;
}

MakerMove PmMaker::endgame_move(const GameState& s, Annotations& notes) {
  const auto members = u_.sorted();
  const auto plan = pm_endgame(s, members, static_cast<std::uint32_t>(pair_count(members.size())));
  if (!plan) return Forfeit{"pm stage 2: endgame has no forced perfect matching"};
  notes["endgame_moves"] = plan->moves;
  return plan->first;
}

MakerMove PmMaker::next_move(const GameState& s, Annotations& notes) {
  if (made_ < ell_) {
    MakerMove mv = pm_stage1_move(s, u_);
    if (const Edge* e = std::get_if<Edge>(&mv)) {
      u_.erase(e->u);
      u_.erase(e->v);
      matching_.push_back(*e);
      ++made_;
      // D_i and Delta_i on U_i, before Breaker's next move
      const auto [d, delta] = claim1_values(s, u_);
      notes["stage"] = 1;
      notes["D"] = d;
      notes["Delta"] = delta;
      notes["U"] = static_cast<double>(u_.size());
    }
    return mv;
  }
  notes["stage"] = 2;
  const std::uint32_t endgame_max = static_cast<std::uint32_t>(cfg_.get_int("endgame_max", 6));
  if (!hnf_ && !endgame_) {
    if (u_.size() <= endgame_max) {
      endgame_ = true;
    } else {
      hnf_ = std::make_unique<HnfPlayer>(u_, cfg_.section("hnf"), seed_);
    }
  }
  if (endgame_) return endgame_move(s, notes);
  if (!matching_fallback_) {
    MakerMove mv = hnf_->next(s, notes);
    if (std::holds_alternative<Edge>(mv)) return mv;
    // a perfect matching of the residual set still suffices
    matching_fallback_ = true;
  }
  notes["matching_fallback"] = 1;
  return residual_matching_move(s);
}

MakerMove PmMaker::residual_matching_move(const GameState& s) const {
  const Vertex n = s.n();
  const auto members = u_.sorted();
  const auto mate = max_matching_mates(s, members);
  std::vector<Vertex> exposed;
  for (Vertex v : members)
    if (mate[v] == n) exposed.push_back(v);
  auto threat = [&](Vertex v) { return s.degree_into(Player::Breaker, v, u_); };
  std::stable_sort(exposed.begin(), exposed.end(), [&](Vertex a, Vertex b) { return threat(a) > threat(b); });
  for (Vertex v : exposed)
    for (Vertex x : exposed)
      if (x != v && s.is_free(v, x)) return Edge::of(v, x);
  // one step of an augmenting path v - u = mate(u) - x; prefer x already joined
  std::optional<Edge> partial;
  for (Vertex v : exposed)
    for (Vertex u : members) {
      if (mate[u] == n || !s.is_free(v, u)) continue;
      for (Vertex x : exposed) {
        if (x == v || x == mate[u]) continue;
        if (s.has(Player::Maker, mate[u], x)) return Edge::of(v, u);
        if (!partial && s.is_free(mate[u], x)) partial = Edge::of(v, u);
      }
    }
  if (partial) return *partial;
  return Forfeit{"pm stage 2: no perfect matching reachable in the residual set"};
}

std::optional<std::vector<Edge>> PmMaker::certificate(const GameState& s) {
  if (made_ < ell_) return std::nullopt;
  std::vector<Edge> out = matching_;
  if (u_.empty()) return out;
  if (endgame_ || (!hnf_ && u_.size() <= static_cast<std::size_t>(cfg_.get_int("endgame_max", 6)))) {
    const auto members = u_.sorted();
    if (members.size() > 8) return std::nullopt;
    const SmallBoard sb = small_board(members);
    std::uint32_t mk = 0;
    for (std::size_t i = 0; i < sb.pairs.size(); ++i)
      if (s.has(Player::Maker, members[sb.pairs[i].first], members[sb.pairs[i].second])) mk |= 1U << i;
    if (!sb.has_pm(mk)) return std::nullopt;
    for (std::uint32_t i : sb.pm_edges(mk))
      out.push_back(Edge::of(members[sb.pairs[i].first], members[sb.pairs[i].second]));
    return out;
  }
  if (!hnf_) return std::nullopt;
  if (!hnf_->done(s)) {
    const auto members = u_.sorted();
    const auto mate = max_matching_mates(s, members);
    for (Vertex v : members) {
      if (mate[v] == s.n()) return std::nullopt;
      if (v < mate[v]) out.push_back({v, mate[v]});
    }
    return out;
  }
  const auto& cycle = *hnf_->cycle();
  for (std::size_t i = 0; i + 1 < cycle.size(); i += 2) out.push_back(Edge::of(cycle[i], cycle[i + 1]));
  return out;
}

// ------------------------------------------------------------ greedy PM

MakerMove GreedyPmMaker::next_move(const GameState& s, Annotations& notes) {
  const Vertex n = s.n();
  const auto mate = max_matching_mates(s);
  std::vector<Vertex> exposed;
  for (Vertex v = 0; v < n; ++v)
    if (mate[v] == n) exposed.push_back(v);
  std::stable_sort(exposed.begin(), exposed.end(),
                   [&](Vertex a, Vertex b) { return s.deg_B(a) > s.deg_B(b); });
  notes["exposed"] = static_cast<double>(exposed.size());
  for (Vertex v : exposed) {
    std::optional<Vertex> w;
    for (Vertex x : exposed)
      if (x != v && s.is_free(v, x) && (!w || s.deg_B(x) > s.deg_B(*w))) w = x;
    if (w) return Edge::of(v, *w);
  }
  // no free edge between exposed vertices: extend towards an augmenting path
  for (Vertex v : exposed)
    for (Vertex x = 0; x < n; ++x)
      if (x != v && s.is_free(v, x)) return Edge::of(v, x);
  return Forfeit{"greedy-pm: exposed vertices have no free edges"};
}

std::optional<std::vector<Edge>> GreedyPmMaker::certificate(const GameState& s) {
  if (s.n() % 2) return std::nullopt;
  const auto mate = max_matching_mates(s);
  std::vector<Edge> out;
  for (Vertex v = 0; v < s.n(); ++v) {
    if (mate[v] == s.n()) return std::nullopt;
    if (v < mate[v]) out.push_back({v, mate[v]});
  }
  return out;
}

// ------------------------------------------------------------ monitors

std::string MonitorViolation::to_json() const {
  nlohmann::ordered_json j;
  j["move_index"] = move_index;
  j["what"] = what;
  j["value"] = value;
  j["bound"] = bound;
  return j.dump();
}

std::vector<MonitorViolation> claim1_monitor(const Transcript& t, double delta) {
  std::vector<MonitorViolation> out;
  const double b = t.header.b;
  for (const MoveRecord& r : t.records) {
    if (r.player != Player::Maker) continue;
    const auto& a = r.annotations;
    auto stage = a.find("stage");
    if (stage == a.end() || stage->second != 1) continue;
    auto d = a.find("D"), dl = a.find("Delta"), u = a.find("U");
    if (d == a.end() || dl == a.end() || u == a.end()) continue;
    if (d->second > 2 * b) out.push_back({r.index, "D", d->second, 2 * b});
    if (dl->second > delta * u->second) out.push_back({r.index, "Delta", dl->second, delta * u->second});
  }
  return out;
}

std::vector<MonitorViolation> claim1_recompute(const Transcript& t, double delta) {
  std::vector<MonitorViolation> out;
  GameState s = t.initial_state();
  VertexSet u = VertexSet::all(s.n());
  const double b = t.header.b;
  for (const MoveRecord& r : t.records) {
    if (r.player == Player::Breaker && r.edges.empty()) {
      s.pass_breaker();
      continue;
    }
    s.claim(r.player, r.edges);
    if (r.player != Player::Maker) continue;
    auto stage = r.annotations.find("stage");
    if (stage == r.annotations.end() || stage->second != 1) continue;
    const Edge& e = r.edges.front();
    if (!u.contains(e.u) || !u.contains(e.v)) {
      out.push_back({r.index, "matching", 0, 0});
      continue;
    }
    u.erase(e.u);
    u.erase(e.v);
    const auto [d, top] = claim1_values(s, u);
    if (d > 2 * b) out.push_back({r.index, "D", d, 2 * b});
    const double cap = delta * static_cast<double>(u.size());
    if (top > cap) out.push_back({r.index, "Delta", top, cap});
  }
  return out;
}

}  // namespace mbg::maker
