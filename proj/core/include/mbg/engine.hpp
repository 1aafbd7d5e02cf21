#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mbg/board.hpp"
#include "mbg/graph.hpp"
#include "mbg/transcript.hpp"

namespace mbg {

/// Explicit strategic failure: a prescribed move is unavailable.
struct Forfeit {
  std::string reason;
};

using MakerMove = std::variant<Edge, Forfeit>;

class MakerStrategy {
 public:
  virtual ~MakerStrategy() = default;
  virtual std::string name() const = 0;
  /// Called once before Breaker's first move (after pre-claimed edges).
  virtual void start(const GameState&) {}
  /// Called after every applied move, including the strategy's own.
  virtual void observe(const GameState&, Player, std::span<const Edge>) {}
  virtual MakerMove next_move(const GameState& s, Annotations& notes) = 0;
  /// The winning structure once it is complete.
  virtual std::optional<std::vector<Edge>> certificate(const GameState& s) = 0;
};

class BreakerStrategy {
 public:
  virtual ~BreakerStrategy() = default;
  virtual std::string name() const = 0;
  virtual void start(const GameState&) {}
  virtual void observe(const GameState&, Player, std::span<const Edge>) {}
  /// Exactly min(b, free) free edges, or none to pass the turn.
  virtual std::vector<Edge> next_move(const GameState& s, Annotations& notes) = 0;
};

enum class Winner { Maker, Breaker, Forfeit, Undecided };
const char* to_string(Winner w);

struct PlayOptions {
  Goal goal = Goal::Connectivity;
  std::uint32_t target_degree = 0;  // MinDegree goal
  /// Maximum number of Maker moves; 0 means C(n,2).
  std::uint64_t move_cap = 0;
  std::uint64_t seed = 0;
  std::string config_hash;
};

struct GameResult {
  Winner winner = Winner::Undecided;
  std::uint64_t maker_moves_used = 0;
  bool cap_hit = false;
  std::string forfeit_reason;
  std::optional<std::vector<Edge>> certificate;
  Transcript transcript;
  GameState final_state{4, 1};
};

/// Referee loop. Breaker moves first; after each Maker move the Maker strategy
/// is asked for a certificate, which is verified before declaring a win.
/// Throws GameError(IllegalStrategyMove) when a strategy returns an illegal
/// move or an invalid certificate.
GameResult play(GameState state, MakerStrategy& maker, BreakerStrategy& breaker,
                const PlayOptions& opts);

/// Structural check of a claimed winning set on the board's n vertices.
bool verify_certificate(const GameState& s, Goal goal, std::span<const Edge> certificate,
                        std::uint32_t target_degree = 0);
/// Same check without a board; `n` is the vertex count.
bool verify_certificate(Vertex n, Goal goal, std::span<const Edge> certificate,
                        std::uint32_t target_degree = 0);

/// Ground truth: does `g` contain the goal structure? Exponential for PM/HC.
/// Throws InstanceTooLarge beyond 20 (PM), 24 (HC) or 2000 (CONN) vertices.
bool exact_goal_check(const Graph& g, Goal goal, std::uint32_t target_degree = 0);

}  // namespace mbg
