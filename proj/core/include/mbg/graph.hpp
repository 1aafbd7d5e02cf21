#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mbg/board.hpp"

namespace mbg {

/// Simple undirected graph with adjacency lists and a bit-matrix for O(1)
/// adjacency tests. Used for Maker subgraphs, conflict graphs and oracles.
class Graph {
 public:
  Graph() = default;
  explicit Graph(Vertex n);

  static Graph from_edges(Vertex n, std::span<const Edge> edges);
  static Graph of_player(const GameState& s, Player p);

  Vertex order() const { return n_; }
  std::size_t edge_count() const { return m_; }
  bool adjacent(Vertex a, Vertex b) const {
    return (rows_[a * words_ + (b >> 6)] >> (b & 63)) & 1U;
  }
  /// Returns false if the edge already existed.
  bool add_edge(Vertex a, Vertex b);
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  std::uint32_t degree(Vertex v) const { return static_cast<std::uint32_t>(adj_[v].size()); }
  std::uint32_t min_degree() const;
  std::uint32_t max_degree() const;
  std::vector<Edge> edges() const;

  /// Component label per vertex; labels ordered by smallest member.
  std::vector<std::uint32_t> component_labels() const;
  std::uint32_t component_count() const;
  bool is_connected() const { return component_count() <= 1; }
  bool is_forest() const;

  /// Subgraph induced on `vs`; vertex i of the result is vs[i].
  Graph induced(std::span<const Vertex> vs) const;

 private:
  Vertex n_ = 0;
  std::size_t words_ = 0;
  std::size_t m_ = 0;
  std::vector<std::uint64_t> rows_;
  std::vector<std::vector<Vertex>> adj_;
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);
  std::size_t find(std::size_t x);
  bool unite(std::size_t a, std::size_t b);
  std::size_t size_of(std::size_t x) { return size_[find(x)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Exponential exact algorithms for small instances.
namespace exact {

inline constexpr Vertex kMaxHamiltonOrder = 24;
inline constexpr Vertex kMaxMatchingOrder = 20;

/// Held-Karp style subset DP. Throws InstanceTooLarge above 24 vertices.
bool has_hamilton_cycle(const Graph& g);
/// Exact search; empty when no Hamilton path joins p and q.
std::optional<std::vector<Vertex>> hamilton_path(const Graph& g, Vertex p, Vertex q);
/// Hamilton path between every pair (exact). Throws above 24 vertices.
bool hamilton_connected(const Graph& g);
/// Subset DP over perfect matchings. Throws above 20 vertices.
bool has_perfect_matching(const Graph& g);
/// A longest path (by vertex count) via subset DP. Throws above 24 vertices.
std::vector<Vertex> longest_path(const Graph& g);

}  // namespace exact

/// Ore-type sufficient condition for Hamilton-connectedness:
/// d(u) + d(v) >= n + 1 for every nonadjacent pair.
bool ore_hamilton_connected(const Graph& g);

/// Vertex connectivity via unit-capacity max flow (Menger).
std::uint32_t vertex_connectivity(const Graph& g);
/// Exact independence number by branch and bound; limited to 64 vertices.
std::uint32_t independence_number(const Graph& g);
/// Chvatal-Erdos sufficient condition for Hamilton-connectedness: kappa > alpha.
bool chvatal_erdos_hamilton_connected(const Graph& g);

}  // namespace mbg
