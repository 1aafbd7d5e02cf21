#include <algorithm>

#include "mbg/maker.hpp"

namespace mbg::maker {

PathSystem::PathSystem(Vertex n, std::span<const Vertex> vertices)
    : path_of_(n, kNoPath), pos_(n, 0) {
  for (Vertex v : vertices) add({v});
}

PathSystem PathSystem::isolated(Vertex n) {
  std::vector<Vertex> all(n);
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  return PathSystem(n, all);
}

std::vector<PathId> PathSystem::ids() const {
  std::vector<PathId> out;
  out.reserve(live_);
  for (PathId id = 0; id < paths_.size(); ++id)
    if (!paths_[id].empty()) out.push_back(id);
  return out;
}

std::uint32_t PathSystem::end_multiplicity(Vertex v) const {
  const PathId id = path_of_[v];
  if (id == kNoPath) return 0;
  const auto& p = paths_[id];
  if (p.size() == 1) return 2;
  return (p.front() == v || p.back() == v) ? 1 : 0;
}

std::vector<Vertex> PathSystem::end_vertices() const {
  std::vector<Vertex> out;
  for (const auto& p : paths_) {
    if (p.empty()) continue;
    out.push_back(p.front());
    if (p.size() > 1) out.push_back(p.back());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Vertex PathSystem::v1(PathId id) const { return std::min(paths_[id].front(), paths_[id].back()); }
Vertex PathSystem::v2(PathId id) const { return std::max(paths_[id].front(), paths_[id].back()); }

Vertex PathSystem::partner(Vertex v) const {
  const auto& p = paths_[path_of_[v]];
  return p.front() == v ? p.back() : p.front();
}

void PathSystem::index(PathId id) {
  const auto& p = paths_[id];
  for (std::size_t i = 0; i < p.size(); ++i) {
    path_of_[p[i]] = id;
    pos_[p[i]] = i;
  }
}

PathId PathSystem::join(Vertex a, Vertex b) {
  const PathId pa = path_of_[a];
  const PathId pb = path_of_[b];
  if (pa == kNoPath || pb == kNoPath || pa == pb || !is_endpoint(a) || !is_endpoint(b))
    throw GameError(ErrorKind::InvalidArgument, "join needs endpoints of two different paths");
  std::vector<Vertex> first = paths_[pa];
  if (first.back() != a) std::reverse(first.begin(), first.end());
  std::vector<Vertex>& second = paths_[pb];
  if (second.front() != b) std::reverse(second.begin(), second.end());
  first.insert(first.end(), second.begin(), second.end());
  second.clear();
  --live_;
  paths_[pa] = std::move(first);
  index(pa);
  return pa;
}

void PathSystem::replace(PathId id, std::vector<Vertex> seq) {
  for (Vertex v : paths_[id]) path_of_[v] = kNoPath;
  for (Vertex v : seq)
    if (path_of_[v] != kNoPath) throw GameError(ErrorKind::InvalidArgument, "vertex already on a path");
  paths_[id] = std::move(seq);
  if (paths_[id].empty()) {
    --live_;
    return;
  }
  index(id);
}

PathId PathSystem::add(std::vector<Vertex> seq) {
  if (seq.empty()) throw GameError(ErrorKind::InvalidArgument, "empty path");
  for (Vertex v : seq)
    if (path_of_[v] != kNoPath) throw GameError(ErrorKind::InvalidArgument, "vertex already on a path");
  paths_.push_back(std::move(seq));
  ++live_;
  const PathId id = static_cast<PathId>(paths_.size() - 1);
  index(id);
  return id;
}

void PathSystem::remove(PathId id) {
  for (Vertex v : paths_[id]) path_of_[v] = kNoPath;
  paths_[id].clear();
  --live_;
}

bool PathSystem::validate(const GameState& s, std::string* why) const {
  auto fail = [&](const std::string& w) {
    if (why) *why = w;
    return false;
  };
  std::vector<char> seen(universe(), 0);
  std::size_t live = 0;
  for (PathId id = 0; id < paths_.size(); ++id) {
    const auto& p = paths_[id];
    if (p.empty()) continue;
    ++live;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Vertex v = p[i];
      if (v >= universe()) return fail("vertex out of range");
      if (seen[v]) return fail("vertex " + std::to_string(v) + " on two paths");
      seen[v] = 1;
      if (path_of_[v] != id || pos_[v] != i) return fail("stale index for vertex " + std::to_string(v));
      if (i > 0) {
        const Edge e = Edge::of(p[i - 1], v);
        if (!s.has(Player::Maker, e.u, e.v)) return fail("path edge " + to_string(e) + " not Maker's");
        if (forgotten_.count(e)) return fail("path edge " + to_string(e) + " is forgotten");
      }
    }
  }
  if (live != live_) return fail("path count mismatch");
  for (Vertex v = 0; v < universe(); ++v)
    if (!seen[v] && path_of_[v] != kNoPath) return fail("dangling index");
  return true;
}

std::uint32_t deg_B_end(const GameState& s, const PathSystem& ps, Vertex v) {
  std::uint32_t d = 0;
  for (Vertex u : s.neighbors(Player::Breaker, v))
    if (u < ps.universe()) d += ps.end_multiplicity(u);
  return d;
}

}  // namespace mbg::maker
