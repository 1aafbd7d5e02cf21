#include <algorithm>

#include "mbg/maker.hpp"

namespace mbg::maker {

MakerMove ConnectivityMaker::next_move(const GameState& s, Annotations& notes) {
  const Vertex n = s.n();
  const Graph g = Graph::of_player(s, Player::Maker);
  const auto label = g.component_labels();
  const std::uint32_t k = g.component_count();
  if (k <= 1) return Forfeit{"connectivity: already connected"};
  std::vector<std::uint64_t> size(k, 0), free_deg(k, 0), breaker_inside(k, 0);
  for (Vertex v = 0; v < n; ++v) {
    ++size[label[v]];
    free_deg[label[v]] += (n - 1) - s.deg_M(v) - s.deg_B(v);
  }
  for (const Edge& e : s.edges(Player::Breaker))
    if (label[e.u] == label[e.v]) ++breaker_inside[label[e.u]];
  // a Maker component is a tree, so it has size-1 internal Maker edges
  std::uint32_t pick = k;
  std::uint64_t pick_cross = 0;
  for (std::uint32_t c = 0; c < k; ++c) {
    const std::uint64_t internal_free = pair_count(size[c]) - (size[c] - 1) - breaker_inside[c];
    const std::uint64_t cross = free_deg[c] - 2 * internal_free;
    if (cross == 0) continue;
    if (pick == k || cross < pick_cross) {
      pick = c;
      pick_cross = cross;
    }
  }
  if (pick == k) return Forfeit{"connectivity: no free edge between components"};
  for (Vertex v = 0; v < n; ++v) {
    if (label[v] != pick) continue;
    for (Vertex u = 0; u < n; ++u)
      if (label[u] != pick && s.is_free(u, v)) {
        notes["components"] = k;
        notes["cross"] = static_cast<double>(pick_cross);
        return Edge::of(u, v);
      }
  }
  return Forfeit{"connectivity: no free cross edge"};
}

std::optional<std::vector<Edge>> ConnectivityMaker::certificate(const GameState& s) {
  if (s.edge_count(Player::Maker) + 1 != s.n()) return std::nullopt;
  const Graph g = Graph::of_player(s, Player::Maker);
  if (!g.is_connected()) return std::nullopt;
  return s.edges(Player::Maker);
}

}  // namespace mbg::maker
