#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <set>

#include "mbg/maker.hpp"

namespace mbg::maker {

std::pair<Vertex, Vertex> lemma10_pair(const Graph& g) {
  const Vertex n = g.order();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  const double avg = n ? 2.0 * static_cast<double>(g.edge_count()) / n : 0.0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const Vertex x = order[i];
      const Vertex y = order[j];
      if (g.adjacent(x, y)) continue;
      if (g.degree(x) + g.degree(y) + 1e-9 >= avg) return {std::min(x, y), std::max(x, y)};
    }
  throw GameError(ErrorKind::NoNonadjacentPair, "lemma10_pair: no qualifying nonadjacent pair");
}

// ------------------------------------------------------------ partition

namespace {

bool fits(const Graph& conflict, const std::vector<Vertex>& cls, Vertex v) {
  return std::none_of(cls.begin(), cls.end(), [&](Vertex u) { return conflict.adjacent(u, v); });
}

// Moves vertices along a chain of classes from a largest class to one at
// least two smaller; each step moves one vertex that fits its next class.
bool shift_once(const Graph& conflict, std::vector<std::vector<Vertex>>& cls) {
  const std::size_t k = cls.size();
  std::size_t top = 0;
  for (const auto& c : cls) top = std::max(top, c.size());
  std::vector<std::size_t> sources;
  for (std::size_t c = 0; c < k; ++c)
    if (cls[c].size() == top) sources.push_back(c);
  auto is_sink = [&](std::size_t d) { return cls[d].size() + 2 <= top; };
  // BFS over classes: edge c -> d if some vertex of c fits d
  std::vector<std::pair<std::size_t, Vertex>> via(k, {SIZE_MAX, 0});
  std::deque<std::size_t> q;
  for (std::size_t s : sources) {
    via[s] = {s, 0};
    q.push_back(s);
  }
  std::size_t hit = SIZE_MAX;
  while (!q.empty() && hit == SIZE_MAX) {
    const std::size_t c = q.front();
    q.pop_front();
    for (std::size_t d = 0; d < k && hit == SIZE_MAX; ++d) {
      if (via[d].first != SIZE_MAX) continue;
      for (Vertex v : cls[c])
        if (fits(conflict, cls[d], v)) {
          via[d] = {c, v};
          if (is_sink(d)) hit = d;
          else q.push_back(d);
          break;
        }
    }
  }
  if (hit == SIZE_MAX) return false;
  // apply moves from the sink backwards so every target check stays valid
  std::vector<std::pair<std::size_t, Vertex>> moves;  // (to, vertex)
  for (std::size_t d = hit; via[d].first != d; d = via[d].first) moves.push_back({d, via[d].second});
  for (auto [to, v] : moves) {
    for (auto& c : cls) {
      auto it = std::find(c.begin(), c.end(), v);
      if (it != c.end()) {
        c.erase(it);
        break;
      }
    }
    cls[to].push_back(v);
  }
  return true;
}

}  // namespace

Partition equitable_partition(std::span<const Vertex> vertices, const Graph& conflict,
                              std::size_t num_classes) {
  if (num_classes == 0) throw GameError(ErrorKind::PartitionFailed, "equitable_partition: zero classes");
  const VertexSet in(conflict.order(), vertices);
  std::uint32_t max_deg = 0;
  for (Vertex v : vertices) {
    std::uint32_t d = 0;
    for (Vertex u : conflict.neighbors(v)) d += in.contains(u) ? 1 : 0;
    max_deg = std::max(max_deg, d);
  }
  if (num_classes < static_cast<std::size_t>(max_deg) + 1)
    throw GameError(ErrorKind::PartitionFailed, "equitable_partition: fewer classes than max degree + 1");

  Partition out;
  out.classes.assign(num_classes, {});
  for (Vertex v : vertices) {
    std::size_t pick = SIZE_MAX;
    for (std::size_t c = 0; c < num_classes; ++c)
      if (fits(conflict, out.classes[c], v) &&
          (pick == SIZE_MAX || out.classes[c].size() < out.classes[pick].size()))
        pick = c;
    out.classes[pick].push_back(v);
  }
  const std::size_t lo = vertices.size() / num_classes;
  auto balanced = [&] {
    return std::all_of(out.classes.begin(), out.classes.end(),
                       [&](const auto& c) { return c.size() >= lo && c.size() <= lo + 1; });
  };
  for (std::size_t guard = 0; !balanced() && guard < 4 * vertices.size() + 4; ++guard)
    if (!shift_once(conflict, out.classes)) break;
  if (!balanced()) {
    out.relaxed = true;
    const std::size_t floor_min = lo ? lo - 1 : 0;
    for (const auto& c : out.classes)
      if (c.size() < floor_min)
        throw GameError(ErrorKind::PartitionFailed, "equitable_partition: relaxed size target unmet");
  }
  for (auto& c : out.classes) std::sort(c.begin(), c.end());
  return out;
}

// ------------------------------------------------------------ expansion

bool expander_spotcheck(const Graph& g, std::size_t k0, std::size_t samples, Rng& rng) {
  const Vertex n = g.order();
  std::vector<std::uint32_t> mark(n, 0);
  std::uint32_t stamp = 0;
  auto outside = [&](std::span<const Vertex> xs) {
    ++stamp;
    for (Vertex x : xs) mark[x] = stamp;
    std::size_t count = 0;
    const std::uint32_t member = stamp;
    ++stamp;
    for (Vertex x : xs)
      for (Vertex u : g.neighbors(x))
        if (mark[u] != member && mark[u] != stamp) {
          mark[u] = stamp;
          ++count;
        }
    return count;
  };
  const std::size_t exhaustive = std::min<std::size_t>(3, k0);
  if (exhaustive >= 1)
    for (Vertex a = 0; a < n; ++a) {
      const Vertex one[] = {a};
      if (outside(one) < 2) return false;
      if (exhaustive < 2) continue;
      for (Vertex b = a + 1; b < n; ++b) {
        const Vertex two[] = {a, b};
        if (outside(two) < 4) return false;
        if (exhaustive < 3) continue;
        for (Vertex c = b + 1; c < n; ++c) {
          const Vertex three[] = {a, b, c};
          if (outside(three) < 6) return false;
        }
      }
    }
  if (k0 >= 4 && n >= 4) {
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), 0);
    const std::size_t top = std::min<std::size_t>(k0, n);
    for (std::size_t s = 0; s < samples; ++s) {
      const std::size_t size = 4 + rng.below(top - 3);
      for (std::size_t i = 0; i < size; ++i) std::swap(all[i], all[i + rng.below(n - i)]);
      if (outside(std::span<const Vertex>(all.data(), size)) < 2 * size) return false;
    }
  }
  return true;
}

// ------------------------------------------------------------ long paths

namespace {

constexpr Vertex kExactPathOrder = 20;

// Pósa rotation with the front fixed: path p0..pk, neighbour p_i of p_k gives
// p0..p_i, p_k, ..., p_{i+1}.
std::vector<Vertex> rotate(const std::vector<Vertex>& p, std::size_t i) {
  std::vector<Vertex> out(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  out.insert(out.end(), p.rbegin(), p.rend() - static_cast<std::ptrdiff_t>(i) - 1);
  return out;
}

bool extend_greedy(const Graph& g, std::vector<Vertex>& path, std::vector<char>& on) {
  bool grew = false;
  for (int side = 0; side < 2; ++side) {
    while (true) {
      const Vertex end = path.back();
      Vertex next = g.order();
      std::uint32_t best = UINT32_MAX;
      // prefer the off-path neighbour with fewest off-path neighbours
      for (Vertex u : g.neighbors(end)) {
        if (on[u]) continue;
        std::uint32_t free_deg = 0;
        for (Vertex w : g.neighbors(u)) free_deg += on[w] ? 0 : 1;
        if (free_deg < best || (free_deg == best && u < next)) {
          best = free_deg;
          next = u;
        }
      }
      if (next == g.order()) break;
      path.push_back(next);
      on[next] = 1;
      grew = true;
    }
    std::reverse(path.begin(), path.end());
  }
  return grew;
}

// One round of rotations from the back end looking for an extendable endpoint
// or a cycle that can be opened towards an outside vertex.
bool rotate_extend(const Graph& g, std::vector<Vertex>& path, std::vector<char>& on,
                   std::size_t max_states) {
  const Vertex n = g.order();
  std::vector<char> seen(n, 0);
  std::deque<std::vector<Vertex>> q;
  q.push_back(path);
  seen[path.back()] = 1;
  std::size_t states = 0;
  while (!q.empty() && states < max_states) {
    std::vector<Vertex> p = std::move(q.front());
    q.pop_front();
    ++states;
    const Vertex end = p.back();
    for (Vertex u : g.neighbors(end))
      if (!on[u]) {
        p.push_back(u);
        on[u] = 1;
        path = std::move(p);
        return true;
      }
    // closed cycle: open it at a vertex with an outside neighbour
    if (p.size() >= 3 && g.adjacent(p.front(), end)) {
      for (std::size_t i = 0; i < p.size(); ++i)
        for (Vertex u : g.neighbors(p[i]))
          if (!on[u]) {
            std::vector<Vertex> opened(p.begin() + static_cast<std::ptrdiff_t>(i) + 1, p.end());
            opened.insert(opened.end(), p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i) + 1);
            // opened ends at p[i]
            opened.push_back(u);
            on[u] = 1;
            path = std::move(opened);
            return true;
          }
    }
    std::vector<std::size_t> pos(n, SIZE_MAX);
    for (std::size_t i = 0; i < p.size(); ++i) pos[p[i]] = i;
    for (Vertex u : g.neighbors(end)) {
      const std::size_t i = pos[u];
      if (i == SIZE_MAX || i + 1 >= p.size() - 1) continue;
      const Vertex fresh = p[i + 1];
      if (seen[fresh]) continue;
      seen[fresh] = 1;
      q.push_back(rotate(p, i));
    }
  }
  return false;
}

}  // namespace

std::vector<Vertex> long_path(const Graph& g) {
  const Vertex n = g.order();
  if (n == 0) return {};
  if (n <= kExactPathOrder) return exact::longest_path(g);
  std::vector<Vertex> best;
  // a few starts: max degree vertex, min degree vertex, vertex 0
  std::vector<Vertex> starts{0};
  Vertex lo = 0, hi = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) < g.degree(lo)) lo = v;
    if (g.degree(v) > g.degree(hi)) hi = v;
  }
  starts.push_back(lo);
  starts.push_back(hi);
  for (Vertex s : starts) {
    std::vector<Vertex> path{s};
    std::vector<char> on(n, 0);
    on[s] = 1;
    while (path.size() < n) {
      if (extend_greedy(g, path, on)) continue;
      if (rotate_extend(g, path, on, 4 * n)) continue;
      std::reverse(path.begin(), path.end());
      if (rotate_extend(g, path, on, 4 * n)) continue;
      break;
    }
    if (path.size() > best.size()) best = std::move(path);
    if (best.size() == n) break;
  }
  return best;
}

// ------------------------------------------------------------ boosters

namespace {

// Endpoints reachable by rotations with path.front() fixed, with one path each.
std::vector<std::vector<Vertex>> rotation_closure(const Graph& g, const std::vector<Vertex>& path,
                                                  std::size_t max_states) {
  const Vertex n = g.order();
  std::vector<std::vector<Vertex>> out;
  std::vector<char> seen(n, 0);
  std::deque<std::vector<Vertex>> q;
  q.push_back(path);
  seen[path.back()] = 1;
  std::vector<std::size_t> pos(n, SIZE_MAX);
  while (!q.empty() && out.size() < max_states) {
    std::vector<Vertex> p = std::move(q.front());
    q.pop_front();
    for (std::size_t i = 0; i < p.size(); ++i) pos[p[i]] = i;
    const Vertex end = p.back();
    for (Vertex u : g.neighbors(end)) {
      const std::size_t i = pos[u];
      if (i == SIZE_MAX || i + 2 > p.size() - 1) continue;
      const Vertex fresh = p[i + 1];
      if (seen[fresh]) continue;
      seen[fresh] = 1;
      q.push_back(rotate(p, i));
    }
    for (Vertex v : p) pos[v] = SIZE_MAX;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

std::vector<Edge> booster_candidates(const Graph& g, const std::vector<Vertex>& path,
                                     std::size_t max_states) {
  std::vector<Edge> out;
  if (path.size() < 2) return out;
  std::set<Edge> seen;
  auto push = [&](Vertex a, Vertex b) {
    if (a == b || g.adjacent(a, b)) return;
    const Edge e = Edge::of(a, b);
    if (seen.insert(e).second) out.push_back(e);
  };
  // a free pair from a rotation endpoint to a vertex off the path extends it
  std::vector<char> on(g.order(), 0);
  for (Vertex v : path) on[v] = 1;
  std::vector<Vertex> off;
  for (Vertex v = 0; v < g.order(); ++v)
    if (!on[v]) off.push_back(v);
  auto extend = [&](Vertex end) {
    for (Vertex x : off) push(end, x);
  };
  const auto level1 = rotation_closure(g, path, max_states);
  const Vertex a = path.front();
  for (const auto& p : level1) push(a, p.back());
  extend(a);
  for (const auto& p : level1) extend(p.back());
  for (const auto& p : level1) {
    std::vector<Vertex> flipped(p.rbegin(), p.rend());
    const auto level2 = rotation_closure(g, flipped, std::max<std::size_t>(1, max_states / 8));
    for (const auto& q : level2) {
      push(flipped.front(), q.back());
      extend(q.back());
    }
    if (out.size() > max_states) break;
  }
  return out;
}

std::optional<std::vector<Vertex>> close_by_rotations(const Graph& g, const std::vector<Vertex>& path,
                                                      std::size_t max_states) {
  if (path.size() != g.order() || path.size() < 3) return std::nullopt;
  for (const auto& p : rotation_closure(g, path, max_states)) {
    if (g.adjacent(p.front(), p.back())) return p;
    std::vector<Vertex> flipped(p.rbegin(), p.rend());
    for (const auto& q : rotation_closure(g, flipped, std::max<std::size_t>(1, max_states / 8)))
      if (g.adjacent(q.front(), q.back())) return q;
  }
  return std::nullopt;
}

namespace {

void require_connected_nonhamiltonian(const Graph& g) {
  if (!g.is_connected())
    throw GameError(ErrorKind::PreconditionViolated, "find_booster: graph is not connected");
  if (g.order() <= exact::kMaxHamiltonOrder && exact::has_hamilton_cycle(g))
    throw GameError(ErrorKind::PreconditionViolated, "find_booster: graph is already Hamiltonian");
}

}  // namespace

Edge find_booster(const Graph& g, const std::function<bool(Vertex, Vertex)>& is_free) {
  require_connected_nonhamiltonian(g);
  const auto path = long_path(g);
  for (const Edge& e : booster_candidates(g, path))
    if (is_free(e.u, e.v)) return e;
  if (g.order() <= kExactPathOrder) {
    auto all = all_boosters(g, is_free);
    if (!all.empty()) return all.front();
  }
  throw GameError(ErrorKind::NoBooster, "find_booster: no free booster found");
}

std::vector<Edge> all_boosters(const Graph& g, const std::function<bool(Vertex, Vertex)>& is_free) {
  const Vertex n = g.order();
  if (n > kExactPathOrder)
    throw GameError(ErrorKind::InstanceTooLarge, "all_boosters limited to 20 vertices");
  std::vector<Edge> out;
  if (n < 3) return out;
  const auto nb = [&] {
    std::vector<std::uint32_t> m(n, 0);
    for (Vertex v = 0; v < n; ++v)
      for (Vertex u : g.neighbors(v)) m[v] |= 1U << u;
    return m;
  }();
  const std::uint32_t full = (1U << n) - 1;
  std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);
  for (Vertex v = 0; v < n; ++v) reach[1U << v] = 1U << v;
  int longest = 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    std::uint32_t ends = reach[mask];
    if (!ends) continue;
    longest = std::max(longest, std::popcount(mask));
    while (ends) {
      const int e = std::countr_zero(ends);
      ends &= ends - 1;
      for (std::uint32_t next = nb[e] & ~mask; next; next &= next - 1)
        reach[mask | (1U << std::countr_zero(next))] |= 1U << std::countr_zero(next);
    }
  }
  if (longest == static_cast<int>(n)) {
    // a Hamilton path exists; only a closing edge helps
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (!g.adjacent(u, v) && is_free(u, v) && exact::hamilton_path(g, u, v))
          out.push_back({u, v});
    return out;
  }
  // best[C][v]: most vertices of a path inside C ending at v
  std::vector<std::uint8_t> best((std::size_t{1} << n) * n, 0);
  for (std::uint32_t c = 1; c <= full; ++c) {
    std::uint8_t* row = &best[static_cast<std::size_t>(c) * n];
    const auto size = static_cast<std::uint8_t>(std::popcount(c));
    for (std::uint32_t it = reach[c]; it; it &= it - 1) row[std::countr_zero(it)] = size;
    for (std::uint32_t it = c; it; it &= it - 1) {
      const std::uint8_t* sub = &best[static_cast<std::size_t>(c & ~(1U << std::countr_zero(it))) * n];
      for (Vertex v = 0; v < n; ++v) row[v] = std::max(row[v], sub[v]);
    }
  }
  std::vector<int> join(static_cast<std::size_t>(n) * n, 0);
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    const int here = std::popcount(mask);
    const std::uint8_t* rest = &best[static_cast<std::size_t>(full & ~mask) * n];
    for (std::uint32_t it = reach[mask]; it; it &= it - 1) {
      const int u = std::countr_zero(it);
      for (std::uint32_t jt = full & ~mask & ~nb[u]; jt; jt &= jt - 1) {
        const int v = std::countr_zero(jt);
        int& slot = join[static_cast<std::size_t>(u) * n + v];
        slot = std::max(slot, here + rest[v]);
      }
    }
  }
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!g.adjacent(u, v) && is_free(u, v) && join[static_cast<std::size_t>(u) * n + v] > longest)
        out.push_back({u, v});
  return out;
}

HamconnCertificate hamconn_check(const Graph& g) {
  HamconnCertificate c;
  if (g.order() <= exact::kMaxHamiltonOrder) {
    c.ok = exact::hamilton_connected(g);
    return c;
  }
  c.heuristic = true;
  if (g.order() >= 4 && g.min_degree() < 3) return c;
  if (ore_hamilton_connected(g)) {
    c.ok = true;
    return c;
  }
  if (g.order() <= 64) c.ok = chvatal_erdos_hamilton_connected(g);
  return c;
}

}  // namespace mbg::maker
