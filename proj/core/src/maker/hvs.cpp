#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "mbg/maker.hpp"

namespace mbg::maker {

namespace {

std::map<std::string, double> formula_vars(const GameState& s) {
  return {{"n", static_cast<double>(s.n())}, {"b", static_cast<double>(s.bias())}};
}

// d_B(v, End) for every endpoint, zero elsewhere.
std::vector<std::uint32_t> end_degrees(const GameState& s, const PathSystem& ps) {
  std::vector<std::uint32_t> d(s.n(), 0);
  for (Vertex v : ps.end_vertices()) d[v] = deg_B_end(s, ps, v);
  return d;
}

// Free partner of v on another path maximising d_B(., End); ties lowest index.
std::optional<Vertex> best_partner(const GameState& s, const PathSystem& ps,
                                   const std::vector<Vertex>& ends,
                                   const std::vector<std::uint32_t>& d, Vertex v) {
  std::optional<Vertex> best;
  for (Vertex w : ends) {
    if (ps.path_of(w) == ps.path_of(v) || !s.is_free(v, w)) continue;
    if (!best || d[w] > d[*best]) best = w;
  }
  return best;
}

std::vector<Vertex> reversed(std::vector<Vertex> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

}  // namespace

// ------------------------------------------------------------------ PosaPhase

PosaPhase::PosaPhase(const PathSystem& ps, PathId p1, PathId p2, std::uint32_t saturation, bool closing)
    : p1_(p1), p2_(p2), saturation_(saturation), closing_(closing) {
  a_ = ps.path(p1);
  if (a_.front() != ps.v1(p1)) std::reverse(a_.begin(), a_.end());
  if (closing) {
    b_ = reversed(a_);
  } else {
    b_ = ps.path(p2);
    if (b_.front() != ps.v1(p2)) std::reverse(b_.begin(), b_.end());
  }
  used_a_.assign(a_.size(), 0);
  used_b_.assign(b_.size(), 0);
}

bool PosaPhase::saturated(const GameState& s, const PathSystem& ps, Vertex x) const {
  if (closing_) return false;
  std::unordered_map<PathId, std::uint32_t> toward;
  const PathId own = ps.path_of(x);
  for (Vertex u : s.neighbors(Player::Breaker, x)) {
    const PathId id = ps.path_of(u);
    if (id == kNoPath || id == own) continue;
    if (++toward[id] >= saturation_) return true;
  }
  return false;
}

std::optional<std::pair<std::size_t, std::size_t>> PosaPhase::free_threat(const GameState& s) const {
  std::vector<Vertex> us{a_.front()}, ws{b_.front()};
  for (std::size_t j : xs_) us.push_back(a_[j - 1]);
  for (std::size_t q : ys_) ws.push_back(b_[q - 1]);
  for (std::size_t i = 0; i < us.size(); ++i)
    for (std::size_t k = 0; k < ws.size(); ++k)
      if (us[i] != ws[k] && s.owner(us[i], ws[k]) != Owner::Breaker) return std::pair{i, k};
  return std::nullopt;
}

std::optional<std::size_t> PosaPhase::pick_x(const GameState& s, const PathSystem& ps) const {
  const std::size_t k = a_.size() - 1;
  const std::size_t hi = closing_ ? (k) / 2 : k;  // ceil((k-1)/2) interior positions
  std::optional<std::size_t> best;
  for (std::size_t j = 2; j <= hi && j <= k; ++j) {
    if (used_a_[j]) continue;
    const Vertex x = a_[j - 1];
    if (best && x >= a_[*best - 1]) continue;
    if (!s.is_free(a_.front(), a_[j]) || !s.is_free(b_.front(), x)) continue;
    bool ok = true;
    for (std::size_t q : ys_)
      if (!s.is_free(x, b_[q - 1])) ok = false;
    if (!ok || saturated(s, ps, x)) continue;
    best = j;
  }
  return best;
}

std::optional<std::size_t> PosaPhase::pick_y(const GameState& s, const PathSystem& ps) const {
  const std::size_t k = b_.size() - 1;
  const std::size_t hi = closing_ ? k - (k / 2) - 1 : k;
  std::optional<std::size_t> best;
  for (std::size_t q = 2; q <= hi && q <= k; ++q) {
    if (used_b_[q]) continue;
    const Vertex y = b_[q - 1];
    if (best && y >= b_[*best - 1]) continue;
    if (!s.is_free(b_.front(), b_[q]) || !s.is_free(a_.front(), y)) continue;
    bool ok = true;
    for (std::size_t j : xs_)
      if (!s.is_free(a_[j - 1], y)) ok = false;
    if (!ok || saturated(s, ps, y)) continue;
    best = q;
  }
  return best;
}

MakerMove PosaPhase::next(const GameState& s, const PathSystem& ps, Annotations& notes, bool& done) {
  done = false;
  const std::uint64_t m = moves_ + 1;
  notes["phase_move"] = static_cast<double>(m);
  const char* tag = closing_ ? "hvs closing: " : "hvs phase: ";
  if (m % 2 == 1) {
    if (auto t = free_threat(s)) {
      join_ = t;
      done = true;
      ++moves_;
      const Vertex u = t->first == 0 ? a_.front() : a_[xs_[t->first - 1] - 1];
      const Vertex w = t->second == 0 ? b_.front() : b_[ys_[t->second - 1] - 1];
      return Edge::of(u, w);
    }
    const auto j = pick_x(s, ps);
    if (!j) return Forfeit{std::string(tag) + "no admissible rotation on the first path"};
    used_a_[*j] = 1;
    xs_.push_back(*j);
    ++moves_;
    return Edge::of(a_.front(), a_[*j]);
  }
  const auto q = pick_y(s, ps);
  if (!q) return Forfeit{std::string(tag) + "no admissible rotation on the second path"};
  used_b_[*q] = 1;
  ys_.push_back(*q);
  ++moves_;
  return Edge::of(b_.front(), b_[*q]);
}

std::vector<Vertex> PosaPhase::result() const {
  if (!join_) throw GameError(ErrorKind::InvalidArgument, "phase not complete");
  // the rotation of `p` whose new end is p[j-1]
  auto rotated = [](const std::vector<Vertex>& p, std::size_t j) {
    std::vector<Vertex> out(p.rend() - static_cast<std::ptrdiff_t>(j), p.rend());
    out.insert(out.end(), p.begin() + static_cast<std::ptrdiff_t>(j), p.end());
    return out;
  };
  const auto [ui, wi] = *join_;
  std::vector<Vertex> seq = ui == 0 ? a_ : rotated(a_, xs_[ui - 1]);
  if (!closing_) {
    std::vector<Vertex> out = reversed(seq);
    const std::vector<Vertex> tail = wi == 0 ? b_ : rotated(b_, ys_[wi - 1]);
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
  }
  if (wi > 0) {
    const Vertex pivot = b_[ys_[wi - 1]];
    const auto it = std::find(seq.begin(), seq.end(), pivot);
    std::reverse(it + 1, seq.end());
  }
  return seq;
}

// ------------------------------------------------------------ stage 3 split

std::pair<std::size_t, std::size_t> near_middle_range(std::size_t len, double rho) {
  const double half = static_cast<double>(len) / 2.0;
  const double spread = rho * static_cast<double>(len) / 2.0;
  auto lo = static_cast<std::int64_t>(std::ceil(half - spread));
  auto hi = static_cast<std::int64_t>(std::floor(half + spread));
  lo = std::max<std::int64_t>(lo, 1);
  hi = std::min<std::int64_t>(hi, static_cast<std::int64_t>(len) - 1);
  if (lo > hi) lo = hi = static_cast<std::int64_t>(len / 2);
  return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
}

std::optional<SplitChoice> near_middle_split(const GameState& s, const PathSystem& ps, PathId p,
                                             PathId q, double rho, double y_threshold) {
  const auto& qp = ps.path(q);
  const std::size_t len = qp.size() - 1;
  if (len < 2) return std::nullopt;
  const auto [lo, hi] = near_middle_range(len, rho);
  const Vertex ends[2] = {ps.v1(p), ps.v2(p)};
  for (int e = 0; e < (ends[0] == ends[1] ? 1 : 2); ++e) {
    std::optional<SplitChoice> best;
    for (std::size_t i = lo; i <= hi; ++i) {
      const Vertex x = qp[i];
      if (best && x >= best->x) continue;
      if (!s.is_free(ends[e], x)) continue;
      std::optional<Vertex> y;
      for (std::size_t k : {i - 1, i + 1}) {
        const Vertex cand = qp[k];
        if (s.deg_B(cand) < y_threshold && (!y || cand < *y)) y = cand;
      }
      if (!y) continue;
      best = SplitChoice{Edge::of(ends[e], x), Edge::of(x, *y), ends[e], x, *y};
    }
    if (best) return best;
  }
  return std::nullopt;
}

void apply_split(PathSystem& ps, const SplitChoice& c) {
  const PathId p = ps.path_of(c.endpoint);
  const PathId q = ps.path_of(c.x);
  std::vector<Vertex> head = ps.path(p);
  if (head.back() != c.endpoint) std::reverse(head.begin(), head.end());
  const std::vector<Vertex> qp = ps.path(q);
  const std::size_t i = ps.position(c.x);
  std::vector<Vertex> q1, q2;
  if (ps.position(c.y) == i + 1) {
    q1.assign(qp.rend() - static_cast<std::ptrdiff_t>(i) - 1, qp.rend());  // x first
    q2.assign(qp.begin() + static_cast<std::ptrdiff_t>(i) + 1, qp.end());
  } else {
    q1.assign(qp.begin() + static_cast<std::ptrdiff_t>(i), qp.end());
    q2.assign(qp.begin(), qp.begin() + static_cast<std::ptrdiff_t>(i));
  }
  head.insert(head.end(), q1.begin(), q1.end());
  ps.forgotten().insert(c.forgotten);
  ps.remove(p);
  ps.replace(q, std::move(head));
  ps.add(std::move(q2));
}

// ------------------------------------------------------------------ HvsMaker

void HvsMaker::start(const GameState& s) {
  const Vertex n = s.n();
  const std::uint32_t b = s.bias();
  if (n < 3) throw GameError(ErrorKind::PreconditionViolated, "hvs: n must be at least 3");
  auto vars = formula_vars(s);
  if (cfg_.get_bool("enforce_range", true)) {
    const double limit = eval_formula(cfg_.get_string("b_max", "max(2, ln(n)/ln(ln(n)))"), vars);
    if (b < 2 || static_cast<double>(b) > limit)
      throw GameError(ErrorKind::PreconditionViolated,
                      "hvs: bias " + std::to_string(b) + " outside [2, " + std::to_string(limit) + "]");
  }
  const double coeff = cfg_.get_double("s1_coeff", 30.0);
  const double keep = std::ceil(coeff * b * std::log(static_cast<double>(b)));
  const double ell = static_cast<double>(n) - std::max(keep, 1.0);
  ell_ = ell > 0 ? static_cast<std::uint64_t>(ell) : 0;
  saturation_ = static_cast<std::uint32_t>(
      std::max(1.0, std::ceil(eval_formula(cfg_.get_string("saturation", "sqrt(n)"), vars))));
  rho_ = cfg_.get_double("rho", 0.01);
  delta_ = cfg_.get_double("delta", 0.999);
  y_threshold_ = cfg_.get_double("y_coeff", 18.0) * b * std::log(static_cast<double>(n));
  ps_ = PathSystem::isolated(n);
  stage_ = 1;
  made_ = stage_moves_ = 0;
  snap_d_ = 0;
  phase_.reset();
  phase_stats_.clear();
  cycle_.reset();
}

MakerMove HvsMaker::next_move(const GameState& s, Annotations& notes) {
  std::string why;
  if (!ps_.validate(s, &why)) return Forfeit{"hvs: invariant broken: " + why};
  MakerMove mv = Forfeit{"hvs: no move"};
  if (stage_ == 1 && stage_moves_ >= ell_) {
    stage_ = 2;
    stage_moves_ = 0;
  }
  if (stage_ == 1) {
    mv = stage1(s, notes);
  } else if (stage_ == 2) {
    mv = stage2(s, notes);
  } else if (stage_ == 3) {
    mv = stage3(s, notes);
  } else {
    mv = stage45(s, notes);
  }
  notes["stage"] = stage_;
  if (std::holds_alternative<Edge>(mv)) ++made_;
  return mv;
}

MakerMove HvsMaker::stage1(const GameState& s, Annotations& notes) {
  const bool odd = (stage_moves_ % 2) == 0;
  const auto ends = ps_.end_vertices();
  const auto d = end_degrees(s, ps_);
  Vertex v = ends.front();
  for (Vertex u : ends) {
    const bool better = odd ? d[u] > d[v] : s.deg_B(u) > s.deg_B(v);
    if (better) v = u;
  }
  const auto w = best_partner(s, ps_, ends, d, v);
  if (!w) return Forfeit{"hvs stage 1: no free endpoint partner for " + std::to_string(v)};
  if (!odd) {
    notes["claim2_sum"] = d[v] + d[*w];
    notes["claim2_D"] = snap_d_;
  }
  ps_.join(v, *w);
  ++stage_moves_;
  if (odd) {
    double sum = 0;
    double top = 0;
    for (Vertex u : ps_.end_vertices()) {
      const double du = deg_B_end(s, ps_, u);
      sum += ps_.end_multiplicity(u) * du;
      top = std::max(top, du);
    }
    const double size = static_cast<double>(ps_.end_size());
    snap_d_ = sum / size;
    notes["D"] = snap_d_;
    notes["Delta"] = top;
    notes["End"] = size;
    notes["delta"] = delta_;
  }
  if (stage_moves_ == ell_) end_stage1(s, notes);
  return Edge::of(v, *w);
}

void HvsMaker::end_stage1(const GameState& s, Annotations& notes) {
  double cap_end = 0;
  double cap_total = 0;
  for (Vertex u : ps_.end_vertices()) {
    cap_end = std::max<double>(cap_end, deg_B_end(s, ps_, u));
    cap_total = std::max<double>(cap_total, s.deg_B(u));
  }
  const double b = s.bias();
  notes["cap_end"] = cap_end;
  notes["cap_end_bound"] = delta_ * static_cast<double>(ps_.end_size()) + b;
  notes["cap_total"] = cap_total;
  notes["cap_total_bound"] = 16.0 * b * std::log(static_cast<double>(s.n()));
}

MakerMove HvsMaker::stage2(const GameState& s, Annotations& notes) {
  const auto ends = ps_.end_vertices();
  const auto d = end_degrees(s, ps_);
  std::optional<Edge> best;
  std::uint64_t best_sum = 0;
  for (std::size_t i = 0; i < ends.size(); ++i)
    for (std::size_t k = i + 1; k < ends.size(); ++k) {
      const Vertex v = ends[i], w = ends[k];
      if (ps_.path_of(v) == ps_.path_of(w) || !s.is_free(v, w)) continue;
      const std::uint64_t sum = d[v] + d[w];
      if (!best || sum > best_sum) {
        best = Edge{v, w};
        best_sum = sum;
      }
    }
  if (best) {
    ps_.join(best->u, best->v);
    ++stage_moves_;
    return *best;
  }
  notes["stage2_moves"] = static_cast<double>(stage_moves_);
  stage_moves_ = 0;
  if (ps_.path_count() == 1) {
    stage_ = 5;
    return stage45(s, notes);
  }
  stage_ = 3;
  const double paths = static_cast<double>(ps_.path_count());
  auto vars = formula_vars(s);
  vars["paths"] = paths;
  vars["avg_len"] = (static_cast<double>(s.n()) - paths) / paths;
  min_path_len_ = static_cast<std::uint32_t>(
      std::max(0.0, std::floor(eval_formula(cfg_.get_string("min_path_len", "n^(3/4)"), vars))));
  notes["min_path_len"] = min_path_len_;
  return stage3(s, notes);
}

MakerMove HvsMaker::stage3(const GameState& s, Annotations& notes) {
  const auto ids = ps_.ids();
  PathId q = ids.front();
  for (PathId id : ids)
    if (ps_.length(id) > ps_.length(q)) q = id;
  for (PathId p : ids) {
    if (ps_.length(p) > min_path_len_) continue;
    if (p == q) return Forfeit{"hvs stage 3: every path is short"};
    const auto c = near_middle_split(s, ps_, p, q, rho_, y_threshold_);
    if (!c) return Forfeit{"hvs stage 3: no near-middle vertex reachable from path " + std::to_string(p)};
    const std::size_t i = ps_.position(c->x);
    const std::size_t qlen = ps_.length(q);
    const bool y_after = ps_.position(c->y) == i + 1;
    const std::size_t q1_len = y_after ? i : qlen - i;
    const std::size_t q2_len = qlen - q1_len - 1;
    if (ps_.length(p) + 1 + q1_len <= min_path_len_ || q2_len <= min_path_len_)
      return Forfeit{"hvs stage 3: split of the longest path leaves a short path"};
    apply_split(ps_, *c);
    ++stage_moves_;
    notes["split_x"] = c->x;
    notes["split_y"] = c->y;
    return c->join;
  }
  notes["stage3_moves"] = static_cast<double>(stage_moves_);
  stage_ = ps_.path_count() == 1 ? 5 : 4;
  return stage45(s, notes);
}

MakerMove HvsMaker::stage45(const GameState& s, Annotations& notes) {
  while (true) {
    if (!phase_) {
      const auto ids = ps_.ids();
      if (ids.size() >= 2) {
        stage_ = 4;
        phase_ = std::make_unique<PosaPhase>(ps_, ids[0], ids[1], saturation_, false);
      } else {
        stage_ = 5;
        phase_ = std::make_unique<PosaPhase>(ps_, ids[0], ids[0], 0, true);
      }
    }
    if (cycle_) {
      // the cycle exists already; any free edge keeps the game going
      for (Vertex v = 0; v < s.n(); ++v)
        for (Vertex u : s.free_neighbors(v)) return Edge::of(u, v);
      return Forfeit{"hvs: board exhausted"};
    }
    bool done = false;
    MakerMove mv = phase_->next(s, ps_, notes, done);
    if (!done) return mv;
    const Edge e = std::get<Edge>(mv);
    auto seq = phase_->result();
    phase_stats_.push_back({phase_->moves(), true});
    notes["phase_moves"] = static_cast<double>(phase_->moves());
    if (stage_ == 4) {
      const PathId p1 = phase_->first(), p2 = phase_->second();
      ps_.remove(p2);
      ps_.replace(p1, std::move(seq));
    } else {
      cycle_ = std::move(seq);
    }
    phase_.reset();
    if (!s.has(Player::Maker, e.u, e.v)) return e;
  }
}

std::optional<std::vector<Edge>> HvsMaker::certificate(const GameState& s) {
  if (!cycle_ && ps_.path_count() == 1) {
    const PathId id = ps_.ids().front();
    const auto& p = ps_.path(id);
    if (p.size() == s.n() && s.has(Player::Maker, p.front(), p.back())) cycle_ = p;
  }
  if (!cycle_) return std::nullopt;
  const auto& c = *cycle_;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!s.has(Player::Maker, c[i], c[(i + 1) % c.size()])) return std::nullopt;
  std::vector<Edge> out;
  for (std::size_t i = 0; i < c.size(); ++i) out.push_back(Edge::of(c[i], c[(i + 1) % c.size()]));
  return out;
}

}  // namespace mbg::maker
