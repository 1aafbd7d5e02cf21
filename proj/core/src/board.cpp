#include "mbg/board.hpp"

#include <algorithm>

namespace mbg {

const char* to_string(Player p) { return p == Player::Maker ? "M" : "B"; }

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::EdgeNotFree: return "EdgeNotFree";
    case ErrorKind::WrongTurn: return "WrongTurn";
    case ErrorKind::WrongArity: return "WrongArity";
    case ErrorKind::IllegalStrategyMove: return "IllegalStrategyMove";
    case ErrorKind::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorKind::NoSurvivingBox: return "NoSurvivingBox";
    case ErrorKind::NoNonadjacentPair: return "NoNonadjacentPair";
    case ErrorKind::PartitionFailed: return "PartitionFailed";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NoBooster: return "NoBooster";
    case ErrorKind::CorruptTranscript: return "CorruptTranscript";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "?";
}

std::string to_string(const Edge& e) {
  return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
}

VertexSet::VertexSet(std::size_t n, std::span<const Vertex> members) : mask_(n, 0) {
  for (Vertex v : members) insert(v);
}

VertexSet VertexSet::all(std::size_t n) {
  VertexSet s(n);
  for (Vertex v = 0; v < n; ++v) s.insert(v);
  return s;
}

void VertexSet::insert(Vertex v) {
  if (mask_[v]) return;
  mask_[v] = 1;
  members_.push_back(v);
}

void VertexSet::erase(Vertex v) {
  if (!mask_[v]) return;
  mask_[v] = 0;
  members_.erase(std::find(members_.begin(), members_.end(), v));
}

std::vector<Vertex> VertexSet::sorted() const {
  std::vector<Vertex> out = members_;
  std::sort(out.begin(), out.end());
  return out;
}

GameState::GameState(Vertex n, std::uint32_t b)
    : n_(n),
      bias_(b),
      maker_bits_(pair_count(n)),
      breaker_bits_(pair_count(n)),
      maker_adj_(n),
      breaker_adj_(n) {
  if (n < 4) throw GameError(ErrorKind::InvalidArgument, "n must be at least 4");
  if (b == 0) throw GameError(ErrorKind::InvalidArgument, "bias must be at least 1");
}

GameState new_game(Vertex n, std::uint32_t b) { return GameState(n, b); }

void GameState::check_vertex(Vertex v) const {
  if (v >= n_)
    throw GameError(ErrorKind::InvalidArgument, "vertex " + std::to_string(v) + " out of range");
}

Owner GameState::owner(Vertex a, Vertex b) const {
  if (a == b) throw GameError(ErrorKind::InvalidArgument, "loop edge");
  check_vertex(a);
  check_vertex(b);
  const auto i = a < b ? pair_index(a, b) : pair_index(b, a);
  if (maker_bits_.test(i)) return Owner::Maker;
  if (breaker_bits_.test(i)) return Owner::Breaker;
  return Owner::Free;
}

bool GameState::has(Player p, Vertex a, Vertex b) const {
  if (a == b) return false;
  const auto i = a < b ? pair_index(a, b) : pair_index(b, a);
  return p == Player::Maker ? maker_bits_.test(i) : breaker_bits_.test(i);
}

std::uint32_t GameState::degree_into(Player p, Vertex v, const VertexSet& s) const {
  std::uint32_t d = 0;
  for (Vertex u : neighbors(p, v))
    if (s.contains(u)) ++d;
  return d;
}

std::vector<Vertex> GameState::free_neighbors(Vertex v, const VertexSet& s) const {
  check_vertex(v);
  std::vector<Vertex> out;
  for (Vertex u : s.members())
    if (u != v && is_free(u, v)) out.push_back(u);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> GameState::free_neighbors(Vertex v) const {
  check_vertex(v);
  std::vector<Vertex> out;
  for (Vertex u = 0; u < n_; ++u)
    if (u != v && is_free(u, v)) out.push_back(u);
  return out;
}

std::uint64_t GameState::breaker_quota() const {
  return std::min<std::uint64_t>(bias_, free_count());
}

void GameState::set_owner(Player p, const Edge& e) {
  const auto i = pair_index(e.u, e.v);
  if (p == Player::Maker) {
    maker_bits_.set(i);
    maker_adj_[e.u].push_back(e.v);
    maker_adj_[e.v].push_back(e.u);
    maker_list_.push_back(e);
  } else {
    breaker_bits_.set(i);
    breaker_adj_[e.u].push_back(e.v);
    breaker_adj_[e.v].push_back(e.u);
    breaker_list_.push_back(e);
  }
}

void GameState::claim(Player p, std::span<const Edge> edges) {
  if (p != turn_)
    throw GameError(ErrorKind::WrongTurn, std::string("not ") + to_string(p) + "'s turn");
  if (p == Player::Maker) {
    if (edges.size() != 1)
      throw GameError(ErrorKind::WrongArity, "Maker claims exactly one edge per move");
  } else if (edges.size() != breaker_quota()) {
    throw GameError(ErrorKind::WrongArity,
                    "Breaker must claim " + std::to_string(breaker_quota()) + " edges, got " +
                        std::to_string(edges.size()));
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge e = Edge::of(edges[i].u, edges[i].v);
    if (e.u == e.v || owner(e) != Owner::Free)
      throw GameError(ErrorKind::EdgeNotFree, "edge " + to_string(e) + " is not free");
    for (std::size_t j = 0; j < i; ++j)
      if (Edge::of(edges[j].u, edges[j].v) == e)
        throw GameError(ErrorKind::EdgeNotFree, "edge " + to_string(e) + " repeated in one move");
  }
  for (const Edge& raw : edges) set_owner(p, Edge::of(raw.u, raw.v));
  if (p == Player::Maker) {
    ++maker_moves_;
    turn_ = Player::Breaker;
  } else {
    ++breaker_moves_;
    turn_ = Player::Maker;
  }
}

void GameState::pass_breaker() {
  if (turn_ != Player::Breaker) throw GameError(ErrorKind::WrongTurn, "not Breaker's turn");
  ++breaker_moves_;
  turn_ = Player::Maker;
}

void GameState::assign(Player p, const Edge& raw) {
  const Edge e = Edge::of(raw.u, raw.v);
  if (e.u == e.v || owner(e) != Owner::Free)
    throw GameError(ErrorKind::EdgeNotFree, "edge " + to_string(e) + " is not free");
  set_owner(p, e);
}

void GameState::preclaim_breaker(std::span<const Edge> edges) {
  for (const Edge& e : edges) {
    assign(Player::Breaker, e);
    ++preclaimed_;
  }
}

bool operator==(const GameState& a, const GameState& b) {
  return a.n_ == b.n_ && a.bias_ == b.bias_ && a.turn_ == b.turn_ &&
         a.maker_moves_ == b.maker_moves_ && a.breaker_moves_ == b.breaker_moves_ &&
         a.preclaimed_ == b.preclaimed_ && a.maker_bits_ == b.maker_bits_ &&
         a.breaker_bits_ == b.breaker_bits_;
}

}  // namespace mbg
