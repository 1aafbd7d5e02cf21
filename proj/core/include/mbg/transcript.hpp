#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mbg/board.hpp"

namespace mbg {

enum class Goal { PerfectMatching, HamiltonCycle, Connectivity, MinDegree };

/// "PM" | "HC" | "CONN" | "DEG"
const char* goal_code(Goal g);
Goal parse_goal(const std::string& code);

using Annotations = std::map<std::string, double>;

struct MoveRecord {
  std::uint64_t index = 0;
  Player player = Player::Breaker;
  std::vector<Edge> edges;
  Annotations annotations;

  friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

struct TranscriptHeader {
  Vertex n = 0;
  std::uint32_t b = 1;
  std::string maker;
  std::string breaker;
  Goal goal = Goal::Connectivity;
  std::uint32_t target_degree = 0;  // MinDegree goal only
  std::uint64_t seed = 0;
  std::string config_hash;
  std::vector<Edge> preclaimed;

  friend bool operator==(const TranscriptHeader&, const TranscriptHeader&) = default;
};

/// Ordered move log; one JSON object per line on disk, header first.
struct Transcript {
  TranscriptHeader header;
  std::vector<MoveRecord> records;

  void write(std::ostream& out) const;
  std::string to_jsonl() const;
  static Transcript read(std::istream& in);
  static Transcript from_jsonl(const std::string& text);

  /// Board at the start of the game (pre-claimed edges applied).
  GameState initial_state() const;
  /// Re-executes every record through GameState::claim.
  GameState replay() const;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

/// FNV-1a 64-bit, rendered as 16 hex digits.
std::string config_hash(const std::string& text);

}  // namespace mbg
