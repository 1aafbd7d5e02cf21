#include "mbg/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <unordered_set>

namespace mbg {

Graph::Graph(Vertex n)
    : n_(n), words_((n + 63) / 64), rows_(static_cast<std::size_t>(n) * ((n + 63) / 64), 0), adj_(n) {}

Graph Graph::from_edges(Vertex n, std::span<const Edge> edges) {
  Graph g(n);
  for (const Edge& e : edges) g.add_edge(e.u, e.v);
  return g;
}

Graph Graph::of_player(const GameState& s, Player p) {
  return from_edges(s.n(), s.edges(p));
}

bool Graph::add_edge(Vertex a, Vertex b) {
  if (a == b || adjacent(a, b)) return false;
  rows_[a * words_ + (b >> 6)] |= std::uint64_t{1} << (b & 63);
  rows_[b * words_ + (a >> 6)] |= std::uint64_t{1} << (a & 63);
  adj_[a].push_back(b);
  adj_[b].push_back(a);
  ++m_;
  return true;
}

std::uint32_t Graph::min_degree() const {
  std::uint32_t d = n_ == 0 ? 0 : UINT32_MAX;
  for (Vertex v = 0; v < n_; ++v) d = std::min(d, degree(v));
  return d;
}

std::uint32_t Graph::max_degree() const {
  std::uint32_t d = 0;
  for (Vertex v = 0; v < n_; ++v) d = std::max(d, degree(v));
  return d;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (Vertex v = 0; v < n_; ++v)
    for (Vertex u : adj_[v])
      if (v < u) out.push_back({v, u});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> Graph::component_labels() const {
  std::vector<std::uint32_t> label(n_, UINT32_MAX);
  std::uint32_t next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n_; ++s) {
    if (label[s] != UINT32_MAX) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex u : adj_[v])
        if (label[u] == UINT32_MAX) {
          label[u] = next;
          stack.push_back(u);
        }
    }
    ++next;
  }
  return label;
}

std::uint32_t Graph::component_count() const {
  auto labels = component_labels();
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

bool Graph::is_forest() const {
  return m_ + component_count() == n_;
}

Graph Graph::induced(std::span<const Vertex> vs) const {
  Graph g(static_cast<Vertex>(vs.size()));
  for (Vertex i = 0; i < vs.size(); ++i)
    for (Vertex j = i + 1; j < vs.size(); ++j)
      if (adjacent(vs[i], vs[j])) g.add_edge(i, j);
  return g;
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

std::size_t DisjointSets::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  return true;
}

namespace {

std::vector<std::uint32_t> neighbor_masks(const Graph& g) {
  std::vector<std::uint32_t> nb(g.order(), 0);
  for (Vertex v = 0; v < g.order(); ++v)
    for (Vertex u : g.neighbors(v)) nb[v] |= 1U << u;
  return nb;
}

void require_order(const Graph& g, Vertex limit, const char* what) {
  if (g.order() > limit)
    throw GameError(ErrorKind::InstanceTooLarge,
                    std::string(what) + ": exact oracle limited to " + std::to_string(limit) +
                        " vertices, got " + std::to_string(g.order()));
}

bool mask_connected(std::uint32_t mask, const std::vector<std::uint32_t>& nb) {
  if (mask == 0) return true;
  std::uint32_t seen = mask & (~mask + 1);
  std::uint32_t frontier = seen;
  while (frontier) {
    const int v = std::countr_zero(frontier);
    frontier &= frontier - 1;
    const std::uint32_t next = nb[v] & mask & ~seen;
    seen |= next;
    frontier |= next;
  }
  return seen == mask;
}

struct PathSearch {
  const std::vector<std::uint32_t>& nb;
  std::uint32_t full;
  Vertex target;
  std::unordered_set<std::uint64_t> dead;
  std::vector<Vertex> path;

  bool run(Vertex cur, std::uint32_t visited) {
    if (visited == full) return cur == target;
    if (cur == target) return false;
    const std::uint64_t key = (static_cast<std::uint64_t>(visited) << 5) | cur;
    if (dead.contains(key)) return false;
    const std::uint32_t rest = full & ~visited;
    // the unvisited part must hang together and be reachable from cur
    if (!(nb[cur] & rest) || !mask_connected(rest, nb)) {
      dead.insert(key);
      return false;
    }
    std::uint32_t cand = nb[cur] & rest;
    if ((visited | (1U << target)) != full) cand &= ~(1U << target);
    while (cand) {
      const Vertex u = static_cast<Vertex>(std::countr_zero(cand));
      cand &= cand - 1;
      path.push_back(u);
      if (run(u, visited | (1U << u))) return true;
      path.pop_back();
    }
    dead.insert(key);
    return false;
  }
};

}  // namespace

namespace exact {

bool has_hamilton_cycle(const Graph& g) {
  require_order(g, kMaxHamiltonOrder, "has_hamilton_cycle");
  const Vertex n = g.order();
  if (n < 3) return false;
  if (g.min_degree() < 2) return false;
  const auto nb = neighbor_masks(g);
  // reach[mask] over vertices 1..n-1: ends of paths from 0 covering {0} + mask
  const std::uint32_t inner = n - 1;
  const std::uint32_t full = (inner == 32) ? UINT32_MAX : ((1U << inner) - 1);
  std::vector<std::uint32_t> reach(std::size_t{1} << inner, 0);
  for (Vertex v = 1; v < n; ++v)
    if (g.adjacent(0, v)) reach[1U << (v - 1)] |= 1U << (v - 1);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    std::uint32_t ends = reach[mask];
    while (ends) {
      const int e = std::countr_zero(ends);
      ends &= ends - 1;
      const std::uint32_t next = (nb[e + 1] >> 1) & ~mask & full;
      std::uint32_t it = next;
      while (it) {
        const int u = std::countr_zero(it);
        it &= it - 1;
        reach[mask | (1U << u)] |= 1U << u;
      }
    }
    if (mask == full) break;
  }
  return (reach[full] & (nb[0] >> 1)) != 0;
}

std::optional<std::vector<Vertex>> hamilton_path(const Graph& g, Vertex p, Vertex q) {
  require_order(g, kMaxHamiltonOrder, "hamilton_path");
  const Vertex n = g.order();
  if (p == q) {
    if (n == 1) return std::vector<Vertex>{p};
    return std::nullopt;
  }
  const auto nb = neighbor_masks(g);
  const std::uint32_t full = (n == 32) ? UINT32_MAX : ((1U << n) - 1);
  PathSearch search{nb, full, q, {}, {p}};
  if (search.run(p, 1U << p)) return search.path;
  return std::nullopt;
}

bool hamilton_connected(const Graph& g) {
  require_order(g, kMaxHamiltonOrder, "hamilton_connected");
  const Vertex n = g.order();
  if (n <= 1) return true;
  if (n == 2) return g.adjacent(0, 1);
  if (n >= 4 && g.min_degree() < 3) return false;
  if (ore_hamilton_connected(g)) return true;
  for (Vertex p = 0; p < n; ++p)
    for (Vertex q = p + 1; q < n; ++q)
      if (!hamilton_path(g, p, q)) return false;
  return true;
}

bool has_perfect_matching(const Graph& g) {
  require_order(g, kMaxMatchingOrder, "has_perfect_matching");
  const Vertex n = g.order();
  if (n % 2 == 1) return false;
  if (n == 0) return true;
  const auto nb = neighbor_masks(g);
  const std::uint32_t full = (1U << n) - 1;
  // memo: 0 unknown, 1 yes, 2 no; indexed by the set of unmatched vertices
  std::vector<std::uint8_t> memo(std::size_t{1} << n, 0);
  auto solve = [&](auto&& self, std::uint32_t left) -> bool {
    if (left == 0) return true;
    auto& m = memo[left];
    if (m) return m == 1;
    const int v = std::countr_zero(left);
    std::uint32_t partners = nb[v] & left;
    bool ok = false;
    while (partners && !ok) {
      const int u = std::countr_zero(partners);
      partners &= partners - 1;
      ok = self(self, left & ~(1U << v) & ~(1U << u));
    }
    m = ok ? 1 : 2;
    return ok;
  };
  return solve(solve, full);
}

std::vector<Vertex> longest_path(const Graph& g) {
  require_order(g, kMaxHamiltonOrder, "longest_path");
  const Vertex n = g.order();
  if (n == 0) return {};
  const auto nb = neighbor_masks(g);
  const std::uint32_t full = (1U << n) - 1;
  std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);
  for (Vertex v = 0; v < n; ++v) reach[1U << v] = 1U << v;
  std::uint32_t best_mask = 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    std::uint32_t ends = reach[mask];
    if (!ends) continue;
    if (std::popcount(mask) > std::popcount(best_mask)) best_mask = mask;
    while (ends) {
      const int e = std::countr_zero(ends);
      ends &= ends - 1;
      std::uint32_t next = nb[e] & ~mask;
      while (next) {
        const int u = std::countr_zero(next);
        next &= next - 1;
        reach[mask | (1U << u)] |= 1U << u;
      }
    }
    if (mask == full) break;
  }
  // walk back from any end of the best mask
  std::vector<Vertex> path;
  std::uint32_t mask = best_mask;
  Vertex cur = static_cast<Vertex>(std::countr_zero(reach[mask]));
  while (true) {
    path.push_back(cur);
    const std::uint32_t prev = mask & ~(1U << cur);
    if (!prev) break;
    const std::uint32_t cands = reach[prev] & nb[cur];
    cur = static_cast<Vertex>(std::countr_zero(cands));
    mask = prev;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace exact

bool ore_hamilton_connected(const Graph& g) {
  const Vertex n = g.order();
  if (n <= 2) return n < 2 || g.adjacent(0, 1);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!g.adjacent(u, v) && g.degree(u) + g.degree(v) < n + 1) return false;
  return true;
}

namespace {

// Max number of internally vertex-disjoint s-t paths (s, t nonadjacent).
std::uint32_t local_connectivity(const Graph& g, Vertex s, Vertex t, std::uint32_t cap) {
  const Vertex n = g.order();
  // split node v into v_in = 2v, v_out = 2v+1 with capacity 1 (inf for s, t)
  const std::size_t nodes = 2 * static_cast<std::size_t>(n);
  std::vector<std::vector<std::size_t>> to(nodes);
  std::vector<std::vector<int>> capv(nodes);
  std::vector<std::vector<std::size_t>> rev(nodes);
  auto add = [&](std::size_t a, std::size_t b, int c) {
    to[a].push_back(b);
    capv[a].push_back(c);
    rev[a].push_back(to[b].size());
    to[b].push_back(a);
    capv[b].push_back(0);
    rev[b].push_back(to[a].size() - 1);
  };
  const int inf = static_cast<int>(n) + 1;
  for (Vertex v = 0; v < n; ++v) add(2 * v, 2 * v + 1, (v == s || v == t) ? inf : 1);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex u : g.neighbors(v)) add(2 * v + 1, 2 * u, 1);
  const std::size_t src = 2 * s + 1;
  const std::size_t dst = 2 * t;
  std::uint32_t flow = 0;
  while (flow < cap) {
    std::vector<std::pair<std::size_t, std::size_t>> via(nodes, {SIZE_MAX, 0});
    std::queue<std::size_t> q;
    q.push(src);
    via[src] = {src, 0};
    while (!q.empty() && via[dst].first == SIZE_MAX) {
      auto x = q.front();
      q.pop();
      for (std::size_t i = 0; i < to[x].size(); ++i)
        if (capv[x][i] > 0 && via[to[x][i]].first == SIZE_MAX) {
          via[to[x][i]] = {x, i};
          q.push(to[x][i]);
        }
    }
    if (via[dst].first == SIZE_MAX) break;
    for (std::size_t y = dst; y != src;) {
      auto [x, i] = via[y];
      capv[x][i] -= 1;
      capv[y][rev[x][i]] += 1;
      y = x;
    }
    ++flow;
  }
  return flow;
}

}  // namespace

std::uint32_t vertex_connectivity(const Graph& g) {
  const Vertex n = g.order();
  if (n <= 1) return 0;
  if (!g.is_connected()) return 0;
  std::uint32_t best = n - 1;
  // some vertex among the first best+1 lies outside any minimum separator
  for (Vertex s = 0; s < n && s <= best; ++s)
    for (Vertex t = s + 1; t < n; ++t)
      if (!g.adjacent(s, t)) best = std::min(best, local_connectivity(g, s, t, best));
  return best;
}

std::uint32_t independence_number(const Graph& g) {
  const Vertex n = g.order();
  if (n > 64)
    throw GameError(ErrorKind::InstanceTooLarge, "independence_number limited to 64 vertices");
  std::vector<std::uint64_t> nb(n, 0);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex u : g.neighbors(v)) nb[v] |= std::uint64_t{1} << u;
  std::uint32_t best = 0;
  auto search = [&](auto&& self, std::uint64_t cand, std::uint32_t size) -> void {
    if (!cand) {
      best = std::max(best, size);
      return;
    }
    if (size + static_cast<std::uint32_t>(std::popcount(cand)) <= best) return;
    // branch on the candidate with the most candidate neighbours
    int pick = -1;
    int pick_deg = -1;
    for (std::uint64_t it = cand; it; it &= it - 1) {
      const int v = std::countr_zero(it);
      const int d = std::popcount(nb[v] & cand);
      if (d > pick_deg) {
        pick_deg = d;
        pick = v;
      }
    }
    if (pick_deg == 0) {
      best = std::max(best, size + static_cast<std::uint32_t>(std::popcount(cand)));
      return;
    }
    const std::uint64_t bit = std::uint64_t{1} << pick;
    self(self, cand & ~bit & ~nb[pick], size + 1);
    self(self, cand & ~bit, size);
  };
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  search(search, all, 0);
  return best;
}

bool chvatal_erdos_hamilton_connected(const Graph& g) {
  if (g.order() <= 2) return ore_hamilton_connected(g);
  return vertex_connectivity(g) > independence_number(g);
}

}  // namespace mbg
