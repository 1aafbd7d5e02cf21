#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mbg/engine.hpp"
#include "mbg/rng.hpp"

namespace mbg::breaker {

/// Largest u >= 0 with C(u+1,2) + (u+1)*clique_size <= b, or 0 if none.
std::uint32_t delay_batch_size(std::uint32_t clique_size, std::uint32_t b);

enum class DelayMode { PM, HC };

/// Clique-construction delay strategy. PM mode keeps a Breaker clique of
/// b/2 vertices that Maker has not touched; HC mode drops a member only at
/// Maker degree 2, grows one vertex per move past b/2, and targets b.
class CliqueDelay final : public BreakerStrategy {
 public:
  explicit CliqueDelay(DelayMode mode) : mode_(mode) {}

  std::string name() const override { return mode_ == DelayMode::PM ? "clique-delay-pm" : "clique-delay-hc"; }
  void start(const GameState& s) override;
  std::vector<Edge> next_move(const GameState& s, Annotations& notes) override;

  DelayMode mode() const { return mode_; }
  std::uint32_t target() const { return target_; }
  const std::vector<Vertex>& clique() const { return clique_; }
  /// Distinct vertices ever added to the clique.
  std::uint64_t vertices_used() const { return used_; }
  /// Value of vertices_used() when the clique first reached b/2; 0 before.
  std::uint64_t used_at_half() const { return used_at_half_; }

 private:
  std::uint32_t removal_degree() const { return mode_ == DelayMode::PM ? 1 : 2; }

  DelayMode mode_;
  std::uint32_t target_ = 0;
  std::uint32_t half_ = 0;
  std::vector<Vertex> clique_;
  std::vector<char> ever_used_;
  std::uint64_t used_ = 0;
  std::uint64_t used_at_half_ = 0;
};

/// True when every pair of `members` is a Breaker edge.
bool is_breaker_clique(const GameState& s, const std::vector<Vertex>& members);

enum class PoolKind { Random, EndpointGreedy, BoxEmulating, PairDestroyer };
const char* to_string(PoolKind k);

/// Baseline adversaries. "Endpoints" are vertices of Maker degree <= 1,
/// i.e. the ends of Maker's paths (isolated vertices included).
class PoolBreaker final : public BreakerStrategy {
 public:
  PoolBreaker(PoolKind kind, std::uint64_t seed) : kind_(kind), rng_(seed) {}

  std::string name() const override;
  std::vector<Edge> next_move(const GameState& s, Annotations& notes) override;

 private:
  std::vector<Edge> random_edges(const GameState& s, std::uint64_t count, std::vector<Edge> taken);
  std::vector<Edge> endpoint_greedy(const GameState& s, std::uint64_t quota);
  std::vector<Edge> box_emulating(const GameState& s, std::uint64_t quota);
  std::vector<Edge> pair_destroyer(const GameState& s, std::uint64_t quota);

  PoolKind kind_;
  Rng rng_;
  Vertex cursor_u_ = 0;
  Vertex cursor_v_ = 1;
};

/// Claims the highest-index free pairs; barely interferes with anything.
class PassiveBreaker final : public BreakerStrategy {
 public:
  std::string name() const override { return "passive"; }
  std::vector<Edge> next_move(const GameState& s, Annotations& notes) override;
};

}  // namespace mbg::breaker
