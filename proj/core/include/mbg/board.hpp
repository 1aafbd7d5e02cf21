#pragma once

#include <cstdint>
#include <compare>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mbg {

using Vertex = std::uint32_t;

enum class Player : std::uint8_t { Maker, Breaker };
enum class Owner : std::uint8_t { Free, Maker, Breaker };

const char* to_string(Player p);

enum class ErrorKind {
  InvalidArgument,
  EdgeNotFree,
  WrongTurn,
  WrongArity,
  IllegalStrategyMove,
  InstanceTooLarge,
  NoSurvivingBox,
  NoNonadjacentPair,
  PartitionFailed,
  PreconditionViolated,
  NoBooster,
  CorruptTranscript,
  ConfigError,
};

const char* to_string(ErrorKind k);

class GameError : public std::runtime_error {
 public:
  GameError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Unordered vertex pair, always stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  static Edge of(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  Vertex other(Vertex w) const { return w == u ? v : u; }
  bool touches(Vertex w) const { return u == w || v == w; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

std::string to_string(const Edge& e);

inline std::uint64_t pair_count(std::uint64_t n) { return n * (n - 1) / 2; }

/// Position of {u,v} (u < v) in the lower-triangular enumeration.
inline std::uint64_t pair_index(Vertex u, Vertex v) {
  return static_cast<std::uint64_t>(v) * (v - 1) / 2 + u;
}

/// Fixed-size bitmask over the C(n,2) vertex pairs.
class PairBits {
 public:
  PairBits() = default;
  explicit PairBits(std::uint64_t bits) : words_((bits + 63) / 64, 0) {}

  bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::uint64_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  friend bool operator==(const PairBits&, const PairBits&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

/// Membership mask plus member list; iteration order is insertion order.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : mask_(n, 0) {}
  VertexSet(std::size_t n, std::span<const Vertex> members);

  static VertexSet all(std::size_t n);

  bool contains(Vertex v) const { return v < mask_.size() && mask_[v]; }
  void insert(Vertex v);
  void erase(Vertex v);
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::size_t universe() const { return mask_.size(); }
  const std::vector<Vertex>& members() const { return members_; }
  std::vector<Vertex> sorted() const;

 private:
  std::vector<char> mask_;
  std::vector<Vertex> members_;
};

/// The board of a (1:b) Maker-Breaker game on E(K_n).
///
/// Breaker moves first. `claim` enforces turn order and arity; `assign` is
/// the raw ownership change used for pre-claimed forbidden graphs and for
/// monitors that replay non-alternating transcripts.
class GameState {
 public:
  GameState(Vertex n, std::uint32_t b);

  Vertex n() const { return n_; }
  std::uint32_t bias() const { return bias_; }
  Player turn() const { return turn_; }
  std::uint64_t maker_moves() const { return maker_moves_; }
  std::uint64_t breaker_moves() const { return breaker_moves_; }
  std::uint64_t preclaimed() const { return preclaimed_; }

  Owner owner(Vertex a, Vertex b) const;
  Owner owner(const Edge& e) const { return owner(e.u, e.v); }
  bool is_free(Vertex a, Vertex b) const { return a != b && owner(a, b) == Owner::Free; }
  bool is_free(const Edge& e) const { return is_free(e.u, e.v); }
  bool has(Player p, Vertex a, Vertex b) const;

  std::uint64_t free_count() const { return pair_count(n_) - maker_list_.size() - breaker_list_.size(); }
  std::size_t edge_count(Player p) const { return edges(p).size(); }
  /// Edges of `p` in the order they were claimed.
  const std::vector<Edge>& edges(Player p) const {
    return p == Player::Maker ? maker_list_ : breaker_list_;
  }
  const std::vector<Vertex>& neighbors(Player p, Vertex v) const {
    return p == Player::Maker ? maker_adj_[v] : breaker_adj_[v];
  }

  std::uint32_t degree(Player p, Vertex v) const {
    return static_cast<std::uint32_t>(neighbors(p, v).size());
  }
  std::uint32_t degree_into(Player p, Vertex v, const VertexSet& s) const;
  std::uint32_t deg_M(Vertex v) const { return degree(Player::Maker, v); }
  std::uint32_t deg_B(Vertex v) const { return degree(Player::Breaker, v); }

  /// Members u of `s` with u != v and {u,v} free, ascending.
  std::vector<Vertex> free_neighbors(Vertex v, const VertexSet& s) const;
  std::vector<Vertex> free_neighbors(Vertex v) const;

  /// Number of edges Breaker must claim this turn: min(b, free).
  std::uint64_t breaker_quota() const;

  void claim(Player p, std::span<const Edge> edges);
  void claim(Player p, const Edge& e) { claim(p, std::span<const Edge>(&e, 1)); }
  /// Breaker gives up its turn (interactive resignation).
  void pass_breaker();

  void assign(Player p, const Edge& e);
  void preclaim_breaker(std::span<const Edge> edges);

  friend bool operator==(const GameState& a, const GameState& b);

 private:
  void check_vertex(Vertex v) const;
  void set_owner(Player p, const Edge& e);

  Vertex n_;
  std::uint32_t bias_;
  PairBits maker_bits_;
  PairBits breaker_bits_;
  std::vector<std::vector<Vertex>> maker_adj_;
  std::vector<std::vector<Vertex>> breaker_adj_;
  std::vector<Edge> maker_list_;
  std::vector<Edge> breaker_list_;
  std::uint64_t maker_moves_ = 0;
  std::uint64_t breaker_moves_ = 0;
  std::uint64_t preclaimed_ = 0;
  Player turn_ = Player::Breaker;
};

GameState new_game(Vertex n, std::uint32_t b);

inline std::uint32_t deg_B(const GameState& s, Vertex v) { return s.deg_B(v); }
inline std::uint32_t deg_B(const GameState& s, Vertex v, const VertexSet& in) {
  return s.degree_into(Player::Breaker, v, in);
}
inline std::uint32_t deg_M(const GameState& s, Vertex v) { return s.deg_M(v); }
inline std::uint32_t deg_M(const GameState& s, Vertex v, const VertexSet& in) {
  return s.degree_into(Player::Maker, v, in);
}

}  // namespace mbg
