#include "mbg/degree_game.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"

namespace mbg::degree {

std::int64_t danger(const GameState& s, Vertex v, std::uint32_t b) {
  return static_cast<std::int64_t>(s.deg_B(v)) - 2 * static_cast<std::int64_t>(b) * s.deg_M(v);
}

std::int64_t danger(const GameState& s, Vertex v, std::uint32_t b, const VertexSet& within) {
  return static_cast<std::int64_t>(s.degree_into(Player::Breaker, v, within)) -
         2 * static_cast<std::int64_t>(b) * s.degree_into(Player::Maker, v, within);
}

double danger_threshold(Vertex n, std::uint32_t b) {
  return b * (2.0 * std::log(static_cast<double>(n)) + 1.0) + 1e-9;
}

bool preconditions_hold(Vertex n, std::uint32_t b, std::uint32_t c, std::uint32_t min_deg) {
  const double ln = std::log(static_cast<double>(n));
  return b >= 1 && b <= min_deg / (4.0 * ln) &&
         static_cast<double>(c) * (2.0 * b + 1.0) <= min_deg / 3.0;
}

DangerPlayer::DangerPlayer(std::uint32_t c, std::optional<VertexSet> within,
                           std::optional<std::uint64_t> random_seed)
    : c_(c), within_(std::move(within)) {
  if (random_seed) rng_.emplace(*random_seed);
}

std::uint32_t DangerPlayer::degree_in_scope(const GameState& s, Player p, Vertex v) const {
  return within_ ? s.degree_into(p, v, *within_) : s.degree(p, v);
}

bool DangerPlayer::finished(const GameState& s) const { return !most_dangerous(s).has_value(); }

std::optional<Vertex> DangerPlayer::most_dangerous(const GameState& s) const {
  if (c_ == 0) return std::nullopt;
  std::optional<Vertex> best;
  std::int64_t best_dang = 0;
  auto consider = [&](Vertex v) {
    if (degree_in_scope(s, Player::Maker, v) >= c_) return;
    const std::int64_t d = within_ ? danger(s, v, s.bias(), *within_) : danger(s, v, s.bias());
    if (!best || d > best_dang || (d == best_dang && v < *best)) {
      best = v;
      best_dang = d;
    }
  };
  if (within_) {
    for (Vertex v : within_->members()) consider(v);
  } else {
    for (Vertex v = 0; v < s.n(); ++v) consider(v);
  }
  return best;
}

MakerMove DangerPlayer::next(const GameState& s, Annotations& notes) {
  const auto v = most_dangerous(s);
  if (!v) return Forfeit{"no dangerous vertex: minimum degree reached"};
  const std::int64_t d = within_ ? danger(s, *v, s.bias(), *within_) : danger(s, *v, s.bias());
  notes["v"] = *v;
  notes["dang"] = static_cast<double>(d);
  const std::vector<Vertex> free = within_ ? s.free_neighbors(*v, *within_) : s.free_neighbors(*v);
  if (free.empty())
    return Forfeit{"degree_blocked: vertex " + std::to_string(*v) + " has no free edge"};
  const Vertex u = rng_ ? free[rng_->below(free.size())] : free.front();
  return Edge::of(*v, u);
}

std::optional<std::vector<Edge>> MinDegreeMaker::certificate(const GameState& s) {
  if (!player_.finished(s)) return std::nullopt;
  return s.edges(Player::Maker);
}

std::string DangerViolation::to_json() const {
  nlohmann::ordered_json j;
  j["move_index"] = move_index;
  j["vertex"] = vertex;
  j["dang"] = dang;
  j["threshold"] = threshold;
  if (kind != "danger") j["kind"] = kind;
  return j.dump();
}

std::vector<DangerViolation> danger_invariant_check(const Transcript& t, std::uint32_t c,
                                                    std::uint32_t b,
                                                    std::optional<std::uint32_t> max_maker_degree) {
  std::vector<DangerViolation> out;
  GameState s = t.initial_state();
  const double thr = danger_threshold(s.n(), b);
  // dangerous vertices have Maker degree at most c-1
  const std::int64_t scope = max_maker_degree ? static_cast<std::int64_t>(*max_maker_degree)
                                              : static_cast<std::int64_t>(c) - 1;
  auto check = [&](std::uint64_t idx, std::span<const Vertex> touched) {
    for (Vertex v : touched) {
      if (static_cast<std::int64_t>(s.deg_M(v)) > scope) continue;
      const double d = static_cast<double>(danger(s, v, b));
      if (d > thr) out.push_back({idx, v, d, thr});
    }
  };
  std::vector<Vertex> all(s.n());
  for (Vertex v = 0; v < s.n(); ++v) all[v] = v;
  check(0, all);  // pre-claimed edges count as Breaker's
  for (const MoveRecord& r : t.records) {
    if (r.player == Player::Breaker && r.edges.empty()) {
      s.pass_breaker();
      continue;
    }
    s.claim(r.player, r.edges);
    // only endpoints of the new edges change danger
    std::set<Vertex> touched;
    for (const Edge& e : r.edges) {
      touched.insert(e.u);
      touched.insert(e.v);
    }
    std::vector<Vertex> tv(touched.begin(), touched.end());
    check(r.index, tv);
  }
  return out;
}

std::vector<DangerViolation> average_danger_check(const Transcript& t, std::uint32_t b) {
  std::vector<DangerViolation> out;
  // v_i for each Maker move, and the danger vector before each Breaker move
  std::vector<Vertex> chosen;
  std::vector<std::uint64_t> maker_index;
  std::set<Vertex> active;
  for (const MoveRecord& r : t.records) {
    if (r.player != Player::Maker) continue;
    auto it = r.annotations.find("v");
    if (it == r.annotations.end()) return out;  // not a danger-strategy transcript
    chosen.push_back(static_cast<Vertex>(it->second));
    maker_index.push_back(r.index);
    active.insert(chosen.back());
  }
  const std::size_t s_len = chosen.size();
  if (s_len < 2) return out;
  std::vector<Vertex> members(active.begin(), active.end());
  std::vector<std::size_t> slot(t.header.n, 0);
  for (std::size_t i = 0; i < members.size(); ++i) slot[members[i]] = i;

  // before_breaker[i-1] = danger of each active vertex immediately before Breaker's i-th move
  std::vector<std::vector<std::int64_t>> before_breaker;
  GameState s = t.initial_state();
  auto snapshot = [&] {
    std::vector<std::int64_t> d(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) d[i] = danger(s, members[i], b);
    before_breaker.push_back(std::move(d));
  };
  for (const MoveRecord& r : t.records) {
    if (r.player == Player::Breaker) {
      snapshot();
      if (r.edges.empty())
        s.pass_breaker();
      else
        s.claim(r.player, r.edges);
    } else {
      s.claim(r.player, r.edges);
    }
  }
  if (before_breaker.size() < s_len) return out;

  auto average = [&](std::size_t breaker_move, const std::set<Vertex>& a) {
    double sum = 0;
    for (Vertex v : a) sum += static_cast<double>(before_breaker[breaker_move - 1][slot[v]]);
    return sum / static_cast<double>(a.size());
  };

  // A_0 = {v_s}; A_i = {v_{s-i}, ..., v_s}
  std::set<Vertex> prev{chosen[s_len - 1]};
  const double base = average(s_len, prev);
  double allowance = 0;
  for (std::size_t i = 1; i + 1 <= s_len - 1; ++i) {
    std::set<Vertex> cur = prev;
    cur.insert(chosen[s_len - 1 - i]);
    const bool same = cur.size() == prev.size();
    const double diff = average(s_len - i, cur) - average(s_len - i + 1, prev);
    const double need = same ? 0.0 : -2.0 * b / static_cast<double>(cur.size());
    if (!same) allowance += 2.0 * b / static_cast<double>(cur.size());
    const std::uint64_t idx = maker_index[s_len - 1 - i];
    if (diff < need - 1e-9)
      out.push_back({idx, chosen[s_len - 1 - i], diff, need, "avg_step"});
    const double drop = average(s_len - i, cur) - base;
    if (drop < -allowance - 1e-9)
      out.push_back({idx, chosen[s_len - 1 - i], drop, -allowance, "avg_cumulative"});
    prev = std::move(cur);
  }
  return out;
}

}  // namespace mbg::degree
