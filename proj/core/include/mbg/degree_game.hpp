#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mbg/board.hpp"
#include "mbg/engine.hpp"
#include "mbg/rng.hpp"
#include "mbg/transcript.hpp"

namespace mbg::degree {

/// dang(v) = d_B(v) - 2b d_M(v), optionally with degrees counted into `within`.
std::int64_t danger(const GameState& s, Vertex v, std::uint32_t b);
std::int64_t danger(const GameState& s, Vertex v, std::uint32_t b, const VertexSet& within);

/// b(2 ln n + 1) plus a 1e-9 slack.
double danger_threshold(Vertex n, std::uint32_t b);

/// Danger-strategy preconditions on a host graph of minimum degree m:
/// b <= m / (4 ln n) and c(2b+1) <= m / 3.
bool preconditions_hold(Vertex n, std::uint32_t b, std::uint32_t c, std::uint32_t min_deg);

/// Danger-value strategy for minimum degree c, playing on the board
/// restricted to `within` (the whole vertex set by default).
class DangerPlayer {
 public:
  DangerPlayer(std::uint32_t c, std::optional<VertexSet> within = std::nullopt,
               std::optional<std::uint64_t> random_seed = std::nullopt);

  std::uint32_t target() const { return c_; }
  bool restricted() const { return within_.has_value(); }

  /// True when every vertex in scope has Maker degree >= c.
  bool finished(const GameState& s) const;
  /// The dangerous vertex of maximum danger (ties lowest index), if any.
  std::optional<Vertex> most_dangerous(const GameState& s) const;
  /// Free edge at the most dangerous vertex. Annotates "v" and "dang".
  /// Forfeits when that vertex has no free edge in scope; the reason then
  /// starts with "degree_blocked".
  MakerMove next(const GameState& s, Annotations& notes);

 private:
  std::uint32_t degree_in_scope(const GameState& s, Player p, Vertex v) const;

  std::uint32_t c_;
  std::optional<VertexSet> within_;
  std::optional<Rng> rng_;
};

/// Maker strategy for the MinDegree goal on the full board.
class MinDegreeMaker final : public MakerStrategy {
 public:
  explicit MinDegreeMaker(std::uint32_t c, std::optional<std::uint64_t> random_seed = std::nullopt)
      : player_(c, std::nullopt, random_seed), random_(random_seed.has_value()) {}
  std::string name() const override { return random_ ? "mindeg-random" : "mindeg"; }
  MakerMove next_move(const GameState& s, Annotations& notes) override { return player_.next(s, notes); }
  std::optional<std::vector<Edge>> certificate(const GameState& s) override;

 private:
  DangerPlayer player_;
  bool random_;
};

struct DangerViolation {
  std::uint64_t move_index = 0;
  Vertex vertex = 0;
  double dang = 0;
  double threshold = 0;
  std::string kind = "danger";
  std::string to_json() const;
};

/// Replays `t` and, after every move, checks dang(v) <= b(2 ln n + 1) for every
/// dangerous v, i.e. d_M(v) <= c-1 unless max_maker_degree overrides it.
std::vector<DangerViolation> danger_invariant_check(const Transcript& t, std::uint32_t c,
                                                    std::uint32_t b,
                                                    std::optional<std::uint32_t> max_maker_degree = std::nullopt);

/// Round-by-round average-danger monitor along the active-set chain A_i
/// reconstructed from the "v" annotations of Maker records. Reports per-step
/// failures (kind "avg_step") and cumulative drops below -2b sum 1/(j+1)
/// (kind "avg_cumulative").
std::vector<DangerViolation> average_danger_check(const Transcript& t, std::uint32_t b);

}  // namespace mbg::degree
