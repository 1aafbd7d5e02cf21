#include "mbg/breaker.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace mbg::breaker {

std::uint32_t delay_batch_size(std::uint32_t clique_size, std::uint32_t b) {
  std::uint64_t u = 0;
  auto cost = [&](std::uint64_t x) { return (x + 1) * x / 2 + (x + 1) * clique_size; };
  if (cost(0) > b) return 0;
  while (cost(u + 1) <= b) ++u;
  return static_cast<std::uint32_t>(u);
}

bool is_breaker_clique(const GameState& s, const std::vector<Vertex>& members) {
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (!s.has(Player::Breaker, members[i], members[j])) return false;
  return true;
}

void CliqueDelay::start(const GameState& s) {
  const std::uint32_t b = s.bias();
  half_ = std::max<std::uint32_t>(1, b / 2);
  target_ = mode_ == DelayMode::PM ? half_ : std::max<std::uint32_t>(1, b);
  clique_.clear();
  ever_used_.assign(s.n(), 0);
  used_ = 0;
  used_at_half_ = 0;
}

std::vector<Edge> CliqueDelay::next_move(const GameState& s, Annotations& notes) {
  if (ever_used_.size() != s.n()) start(s);
  const std::uint64_t quota = s.breaker_quota();
  std::vector<Edge> out;
  std::set<Edge> planned;
  auto take = [&](Vertex a, Vertex b) {
    const Edge e = Edge::of(a, b);
    if (s.is_free(e) && planned.insert(e).second) out.push_back(e);
  };

  std::erase_if(clique_, [&](Vertex w) { return s.deg_M(w) >= removal_degree(); });

  std::uint64_t want = 0;
  if (clique_.size() < half_) {
    want = std::min<std::uint64_t>(delay_batch_size(static_cast<std::uint32_t>(clique_.size()), s.bias()) + 1,
                                   target_ - clique_.size());
  } else if (clique_.size() < target_) {
    want = mode_ == DelayMode::PM ? target_ - clique_.size() : 1;
  }

  std::vector<char> in_clique(s.n(), 0);
  for (Vertex w : clique_) in_clique[w] = 1;
  const std::size_t old_size = clique_.size();

  auto try_add = [&](Vertex x) {
    if (in_clique[x]) return false;
    std::uint64_t cost = 0;
    for (Vertex w : clique_) {
      if (s.has(Player::Maker, x, w)) return false;
      if (s.is_free(x, w)) ++cost;
    }
    if (out.size() + cost > quota) return false;
    for (Vertex w : clique_) take(x, w);
    clique_.push_back(x);
    in_clique[x] = 1;
    if (!ever_used_[x]) {
      ever_used_[x] = 1;
      ++used_;
    }
    return true;
  };

  // untouched vertices first; HC mode may fall back to Maker degree 1
  const std::uint32_t max_deg = mode_ == DelayMode::PM ? 0 : 1;
  for (std::uint32_t d = 0; d <= max_deg && clique_.size() - old_size < want; ++d)
    for (Vertex x = 0; x < s.n() && clique_.size() - old_size < want; ++x)
      if (s.deg_M(x) == d) try_add(x);

  if (used_at_half_ == 0 && clique_.size() >= half_) used_at_half_ = used_;

  // filler: lowest-index free edges away from the clique, then anything
  for (int pass = 0; pass < 2 && out.size() < quota; ++pass)
    for (Vertex v = 1; v < s.n() && out.size() < quota; ++v)
      for (Vertex u = 0; u < v && out.size() < quota; ++u) {
        if (pass == 0 && (in_clique[u] || in_clique[v])) continue;
        take(u, v);
      }

  notes["clique"] = static_cast<double>(clique_.size());
  notes["used"] = static_cast<double>(used_);
  return out;
}

const char* to_string(PoolKind k) {
  switch (k) {
    case PoolKind::Random: return "random";
    case PoolKind::EndpointGreedy: return "endpoint-greedy";
    case PoolKind::BoxEmulating: return "box-emulating";
    case PoolKind::PairDestroyer: return "pair-destroyer";
  }
  return "?";
}

std::string PoolBreaker::name() const { return to_string(kind_); }

std::vector<Edge> PoolBreaker::next_move(const GameState& s, Annotations&) {
  const std::uint64_t quota = s.breaker_quota();
  switch (kind_) {
    case PoolKind::Random: return random_edges(s, quota, {});
    case PoolKind::EndpointGreedy: return endpoint_greedy(s, quota);
    case PoolKind::BoxEmulating: return box_emulating(s, quota);
    case PoolKind::PairDestroyer: return pair_destroyer(s, quota);
  }
  return {};
}

std::vector<Edge> PoolBreaker::random_edges(const GameState& s, std::uint64_t count,
                                            std::vector<Edge> taken) {
  std::set<Edge> have(taken.begin(), taken.end());
  const std::uint64_t available = s.free_count() - have.size();
  count = std::min(count, available);
  const Vertex n = s.n();
  if (s.free_count() * 8 >= pair_count(n)) {
    while (count > 0) {
      const Vertex a = static_cast<Vertex>(rng_.below(n));
      Vertex b = static_cast<Vertex>(rng_.below(n - 1));
      if (b >= a) ++b;
      const Edge e = Edge::of(a, b);
      if (!s.is_free(e) || !have.insert(e).second) continue;
      taken.push_back(e);
      --count;
    }
    return taken;
  }
  std::vector<Edge> pool;
  for (Vertex v = 1; v < n; ++v)
    for (Vertex u = 0; u < v; ++u)
      if (s.is_free(u, v) && !have.count(Edge{u, v})) pool.push_back(Edge{u, v});
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t j = i + rng_.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
    taken.push_back(pool[i]);
  }
  return taken;
}

std::vector<Edge> PoolBreaker::endpoint_greedy(const GameState& s, std::uint64_t quota) {
  std::vector<Vertex> ends;
  for (Vertex v = 0; v < s.n(); ++v)
    if (s.deg_M(v) <= 1) ends.push_back(v);
  if (ends.empty()) return random_edges(s, quota, {});
  std::stable_sort(ends.begin(), ends.end(), [&](Vertex a, Vertex b) { return s.deg_B(a) > s.deg_B(b); });
  std::vector<char> is_end(s.n(), 0);
  for (Vertex v : ends) is_end[v] = 1;

  std::vector<Edge> out;
  std::set<Edge> planned;
  auto take = [&](Vertex a, Vertex b) {
    const Edge e = Edge::of(a, b);
    if (a != b && s.is_free(e) && planned.insert(e).second) out.push_back(e);
  };
  for (Vertex v : ends) {
    for (Vertex w : ends) {
      if (out.size() >= quota) break;
      take(v, w);
    }
    for (Vertex w = 0; w < s.n() && out.size() < quota; ++w)
      if (!is_end[w]) take(v, w);
    if (out.size() >= quota) break;
  }
  if (out.size() < quota) return random_edges(s, quota - out.size(), out);
  return out;
}

std::vector<Edge> PoolBreaker::box_emulating(const GameState& s, std::uint64_t quota) {
  std::vector<Vertex> fresh;
  for (Vertex v = 0; v < s.n(); ++v)
    if (s.deg_M(v) == 0) fresh.push_back(v);
  std::stable_sort(fresh.begin(), fresh.end(), [&](Vertex a, Vertex b) { return s.deg_B(a) < s.deg_B(b); });
  std::vector<Edge> out;
  std::vector<char> used(s.n(), 0);
  // each untouched vertex gets at most one edge per move, lowest d_B first
  for (std::size_t i = 0; i < fresh.size() && out.size() < quota; ++i) {
    const Vertex u = fresh[i];
    if (used[u]) continue;
    for (std::size_t j = i + 1; j < fresh.size(); ++j) {
      const Vertex w = fresh[j];
      if (used[w] || !s.is_free(u, w)) continue;
      out.push_back(Edge::of(u, w));
      used[u] = used[w] = 1;
      break;
    }
  }
  if (out.size() < quota) return random_edges(s, quota - out.size(), out);
  return out;
}

std::vector<Edge> PoolBreaker::pair_destroyer(const GameState& s, std::uint64_t quota) {
  std::vector<Edge> out;
  const Vertex n = s.n();
  // pairs before the cursor are claimed or leave End for good
  while (cursor_u_ + 1 < n && out.size() < quota) {
    if (s.deg_M(cursor_u_) > 1 || cursor_v_ >= n) {
      ++cursor_u_;
      cursor_v_ = cursor_u_ + 1;
      continue;
    }
    const Vertex v = cursor_v_++;
    if (s.deg_M(v) <= 1 && s.is_free(cursor_u_, v)) out.push_back(Edge{cursor_u_, v});
  }
  if (out.size() < quota) return random_edges(s, quota - out.size(), out);
  return out;
}

std::vector<Edge> PassiveBreaker::next_move(const GameState& s, Annotations&) {
  const std::uint64_t quota = s.breaker_quota();
  std::vector<Edge> out;
  for (Vertex v = s.n(); v-- > 1 && out.size() < quota;)
    for (Vertex u = v; u-- > 0 && out.size() < quota;)
      if (s.is_free(u, v)) out.push_back(Edge{u, v});
  return out;
}

}  // namespace mbg::breaker
