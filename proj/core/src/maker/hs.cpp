#include <algorithm>
#include <cmath>

#include "mbg/maker.hpp"

namespace mbg::maker {

namespace {

constexpr std::uint64_t kPathSearchNodes = 2'000'000;

// Backtracking Hamilton path from p to q with a node budget; used above the
// exact limit. Neighbours are tried fewest-onward-options first.
std::optional<std::vector<Vertex>> search_hamilton_path(const Graph& g, Vertex p, Vertex q) {
  const Vertex n = g.order();
  std::vector<Vertex> path{p};
  std::vector<char> used(n, 0);
  used[p] = 1;
  std::uint64_t nodes = 0;
  std::function<bool(Vertex)> extend = [&](Vertex v) -> bool {
    if (++nodes > kPathSearchNodes) return false;
    if (path.size() == n) return v == q;
    std::vector<std::pair<std::uint32_t, Vertex>> next;
    for (Vertex u : g.neighbors(v)) {
      if (used[u] || (u == q && path.size() + 1 != n)) continue;
      std::uint32_t onward = 0;
      for (Vertex w : g.neighbors(u)) onward += used[w] ? 0 : 1;
      next.emplace_back(onward, u);
    }
    std::sort(next.begin(), next.end());
    for (const auto& [deg, u] : next) {
      used[u] = 1;
      path.push_back(u);
      if (extend(u)) return true;
      path.pop_back();
      used[u] = 0;
    }
    return false;
  };
  if (extend(p)) return path;
  return std::nullopt;
}

std::optional<std::vector<Vertex>> hamilton_path_between(const Graph& g, Vertex p, Vertex q) {
  if (g.order() <= exact::kMaxHamiltonOrder) return exact::hamilton_path(g, p, q);
  return search_hamilton_path(g, p, q);
}

Graph maker_graph_on(const GameState& s, const std::vector<Vertex>& vs) {
  std::vector<std::uint32_t> local(s.n(), UINT32_MAX);
  for (std::uint32_t i = 0; i < vs.size(); ++i) local[vs[i]] = i;
  Graph g(static_cast<Vertex>(vs.size()));
  for (Vertex v : vs)
    for (Vertex u : s.neighbors(Player::Maker, v))
      if (u > v && local[u] != UINT32_MAX) g.add_edge(local[v], local[u]);
  return g;
}

double harmonic(std::uint64_t k) {
  double h = 0;
  for (std::uint64_t i = 1; i <= k; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}

}  // namespace

// ------------------------------------------------------------ HamconnBuilder

HamconnBuilder::HamconnBuilder(VertexSet t, std::uint32_t min_deg, std::uint64_t budget,
                               std::optional<std::uint64_t> seed)
    : t_(std::move(t)),
      level_(std::min<std::uint32_t>(min_deg, static_cast<std::uint32_t>(t_.size()) - 1)),
      budget_(budget),
      seed_(seed) {
  level_ = std::max<std::uint32_t>(level_, 1);
  danger_ = std::make_unique<degree::DangerPlayer>(level_, t_, seed_);
}

MakerMove HamconnBuilder::next(const GameState& s, Annotations& notes) {
  if (moves_ >= budget_)
    return Forfeit{"hs expander: budget of " + std::to_string(budget_) + " moves exhausted"};
  const auto top = static_cast<std::uint32_t>(t_.size()) - 1;
  while (danger_->finished(s)) {
    if (level_ >= top) return Forfeit{"hs expander: complete graph on T is not Hamilton-connected"};
    danger_ = std::make_unique<degree::DangerPlayer>(++level_, t_, seed_);
  }
  MakerMove mv = danger_->next(s, notes);
  if (auto* f = std::get_if<Forfeit>(&mv)) {
    f->reason = "hs expander: " + f->reason;
    return mv;
  }
  notes["expander_level"] = level_;
  ++moves_;
  return mv;
}

bool HamconnBuilder::complete(const GameState& s) {
  if (done_) return true;
  if (!danger_->finished(s)) return false;
  const HamconnCertificate c = hamconn_check(maker_graph_on(s, t_.sorted()));
  done_ = c.ok;
  heuristic_ = c.heuristic;
  return done_;
}

// ------------------------------------------------------------------- HsMaker

void HsMaker::start(const GameState& s) {
  const Vertex n = s.n();
  const std::uint32_t b = s.bias();
  std::map<std::string, double> vars{{"n", static_cast<double>(n)}, {"b", static_cast<double>(b)}};
  if (cfg_.get_bool("enforce_range", true)) {
    vars["delta"] = cfg_.get_double("delta", 1.0);
    const double limit = eval_formula(cfg_.get_string("b_max", "delta*sqrt(n/ln(n)^5)"), vars);
    if (static_cast<double>(b) > limit)
      throw GameError(ErrorKind::PreconditionViolated,
                      "hs: bias " + std::to_string(b) + " above configured maximum " + std::to_string(limit));
  }
  l_ = static_cast<std::uint32_t>(std::max(1.0, std::ceil(eval_formula(cfg_.get_string("L", "13*b*ln(n)"), vars))));
  t_ = static_cast<std::uint32_t>(std::floor(eval_formula(cfg_.get_string("t", "0.5*b*ln(n)^2"), vars)));
  if (t_ < 3) throw GameError(ErrorKind::PreconditionViolated, "hs: expander order below 3");
  if (static_cast<std::uint64_t>(l_) * (t_ + 1) > n)
    throw GameError(ErrorKind::PreconditionViolated,
                    "hs: L(t+1) = " + std::to_string(static_cast<std::uint64_t>(l_) * (t_ + 1)) + " exceeds n");
  min_deg_ = static_cast<std::uint32_t>(cfg_.get_int("expander_min_deg", 12));
  vars["t"] = t_;
  budget_ = static_cast<std::uint64_t>(
      std::max(1.0, std::ceil(eval_formula(cfg_.get_string("budget", "t*ln(t)^2"), vars))));
  ps_ = PathSystem::isolated(n);
  stage_ = 1;
  made_ = 0;
  expanders_.clear();
  in_x_.assign(n, 0);
  order_.clear();
  hookups_.clear();
  min_box_ = load_bound_ = 0;
  cycle_.reset();
}

bool HsMaker::select_expander(const GameState& s, Annotations& notes) {
  std::vector<Vertex> candidates;
  for (Vertex v = 0; v < s.n(); ++v)
    if (ps_.contains(v) && ps_.length(ps_.path_of(v)) == 0) candidates.push_back(v);
  if (candidates.size() < t_) return false;
  const Graph conflict = Graph::of_player(s, Player::Breaker);
  const VertexSet in(s.n(), candidates);
  std::uint32_t max_deg = 0;
  for (Vertex v : candidates) max_deg = std::max(max_deg, s.degree_into(Player::Breaker, v, in));
  Partition part;
  try {
    part = equitable_partition(candidates, conflict, static_cast<std::size_t>(max_deg) + 1);
  } catch (const GameError&) {
    return false;
  }
  const std::vector<Vertex>* pick = nullptr;
  for (const auto& c : part.classes)
    if (c.size() >= t_ && (!pick || c.size() > pick->size() || (c.size() == pick->size() && c < *pick)))
      pick = &c;
  if (!pick) return false;
  std::vector<Vertex> chosen(pick->begin(), pick->begin() + t_);
  for (Vertex v : chosen) {
    ps_.remove(ps_.path_of(v));
    in_x_[v] = 1;
  }
  notes["partition_classes"] = static_cast<double>(part.classes.size());
  notes["partition_relaxed"] = part.relaxed ? 1 : 0;
  std::optional<std::uint64_t> seed;
  if (cfg_.get_bool("random_expanders", true)) seed = Rng::splitmix(seed_ ^ (expanders_.size() + 1));
  expanders_.push_back(std::make_unique<HamconnBuilder>(VertexSet(s.n(), chosen), min_deg_, budget_, seed));
  return true;
}

MakerMove HsMaker::expander_move(const GameState& s, Annotations& notes) {
  if (expanders_.empty() || expanders_.back()->complete(s)) {
    if (!select_expander(s, notes))
      return Forfeit{"hs stage 1: no independent set of " + std::to_string(t_) + " isolated vertices"};
  }
  notes["expander"] = static_cast<double>(expanders_.size());
  return expanders_.back()->next(s, notes);
}

MakerMove HsMaker::pairing_move(const GameState& s, Annotations& notes) {
  auto ends = ps_.end_vertices();
  std::stable_sort(ends.begin(), ends.end(), [&](Vertex a, Vertex b) { return s.deg_B(a) > s.deg_B(b); });
  // partners on longer paths first, so isolated vertices stay available for expanders
  auto key = [&](Vertex u) { return std::pair{ps_.length(ps_.path_of(u)) > 0, s.deg_B(u)}; };
  for (std::size_t rank = 0; rank < ends.size(); ++rank) {
    const Vertex v = ends[rank];
    std::optional<Vertex> w;
    for (Vertex u : ends) {
      if (ps_.path_of(u) == ps_.path_of(v) || !s.is_free(u, v)) continue;
      if (!w || key(u) > key(*w) || (key(u) == key(*w) && u < *w)) w = u;
    }
    if (!w) continue;
    // a blocked top endpoint waits for its expander box in stage 3
    if (rank > 0) notes["pairing_fallback"] = static_cast<double>(rank);
    ps_.join(v, *w);
    notes["paths"] = static_cast<double>(ps_.path_count());
    return Edge::of(v, *w);
  }
  // all end pairs blocked: rotate a path so a fresh endpoint appears
  std::optional<Edge> best;
  std::vector<Vertex> best_seq;
  PathId best_id = 0;
  std::size_t best_reach = 0;
  for (PathId id : ps_.ids()) {
    if (ps_.length(id) < 2) continue;
    std::vector<Vertex> p = ps_.path(id);
    for (int side = 0; side < 2; ++side) {
      for (std::size_t j = 2; j < p.size(); ++j) {
        if (!s.is_free(p[0], p[j])) continue;
        const Vertex y = p[j - 1];
        std::size_t reach = 0;
        for (Vertex u : ends)
          if (ps_.path_of(u) != id && s.is_free(y, u)) ++reach;
        if (reach > best_reach) {
          best_reach = reach;
          best = Edge::of(p[0], p[j]);
          best_id = id;
          best_seq.assign(p.rend() - static_cast<std::ptrdiff_t>(j), p.rend());
          best_seq.insert(best_seq.end(), p.begin() + static_cast<std::ptrdiff_t>(j), p.end());
        }
      }
      std::reverse(p.begin(), p.end());
    }
  }
  if (best) {
    ps_.replace(best_id, std::move(best_seq));
    notes["pairing_rotation"] = 1;
    return *best;
  }
  return Forfeit{"hs: no free edge between endpoints of different paths"};
}

void HsMaker::begin_stage3(const GameState& s, Annotations& notes) {
  double cap = 0;
  for (Vertex v : ps_.end_vertices()) cap = std::max<double>(cap, s.deg_B(v));
  const double b = s.bias();
  notes["cap2_max"] = cap;
  notes["cap2_bound"] = 24.0 * b * std::log(static_cast<double>(s.n()));
  order_ = ps_.ids();
  const std::size_t l = order_.size();
  for (std::size_t i = 0; i < l; ++i) {
    const auto x = expanders_[i]->vertices().sorted();
    const auto mid = x.begin() + static_cast<std::ptrdiff_t>(x.size() / 2);
    hookups_.push_back({ps_.v1(order_[i]), i, std::vector<Vertex>(x.begin(), mid), std::nullopt});
    hookups_.push_back({ps_.v2(order_[(i + 1) % l]), i, std::vector<Vertex>(mid, x.end()), std::nullopt});
  }
  min_box_ = std::numeric_limits<double>::infinity();
  for (const auto& h : hookups_) {
    double box = 0;
    for (Vertex x : h.half) box += s.is_free(h.endpoint, x) ? 1 : 0;
    min_box_ = std::min(min_box_, box);
  }
  load_bound_ = b * harmonic(2 * l);
  notes["box_min"] = min_box_;
  notes["box_load"] = load_bound_;
  notes["hookups"] = static_cast<double>(hookups_.size());
}

MakerMove HsMaker::connect_move(const GameState& s, Annotations& notes) {
  Hookup* next = nullptr;
  for (auto& h : hookups_)
    if (!h.target && (!next || s.deg_B(h.endpoint) > s.deg_B(next->endpoint) ||
                      (s.deg_B(h.endpoint) == s.deg_B(next->endpoint) && h.endpoint < next->endpoint)))
      next = &h;
  if (!next) return Forfeit{"hs stage 3: nothing left to connect"};
  std::optional<Vertex> target;
  for (Vertex x : next->half)
    if (s.is_free(next->endpoint, x)) {
      target = x;
      break;
    }
  if (!target)
    return Forfeit{"hs stage 3: box of endpoint " + std::to_string(next->endpoint) + " fully claimed by Breaker"};
  next->target = target;
  const Edge e = Edge::of(next->endpoint, *target);
  notes["hookup_endpoint"] = next->endpoint;
  if (std::all_of(hookups_.begin(), hookups_.end(), [](const Hookup& h) { return h.target.has_value(); })) {
    std::vector<Vertex> cycle;
    for (std::size_t i = 0; i < order_.size(); ++i) {
      std::vector<Vertex> p = ps_.path(order_[i]);
      if (p.front() != ps_.v2(order_[i])) std::reverse(p.begin(), p.end());
      cycle.insert(cycle.end(), p.begin(), p.end());
      const Hookup& in = hookups_[2 * i];
      const Hookup& out = hookups_[2 * i + 1];
      const auto x = expanders_[i]->vertices().sorted();
      const Graph g = maker_graph_on(s, x);
      const auto at = [&](Vertex v) {
        return static_cast<Vertex>(std::lower_bound(x.begin(), x.end(), v) - x.begin());
      };
      const auto local = hamilton_path_between(g, at(*in.target), at(*out.target));
      if (!local) return Forfeit{"hs stage 3: no Hamilton path through expander " + std::to_string(i)};
      for (Vertex v : *local) cycle.push_back(x[v]);
    }
    cycle_ = std::move(cycle);
  }
  return e;
}

MakerMove HsMaker::next_move(const GameState& s, Annotations& notes) {
  std::string why;
  if (!ps_.validate(s, &why)) return Forfeit{"hs: invariant broken: " + why};
  MakerMove mv = Forfeit{"hs: no move"};
  if (stage_ == 1) {
    const bool built = expanders_.size() == l_ && expanders_.back()->complete(s);
    if (built) {
      stage_ = 2;
      double cap = 0;
      for (Vertex v : ps_.end_vertices()) cap = std::max<double>(cap, s.deg_B(v));
      notes["cap1_max"] = cap;
      notes["cap1_bound"] = 16.0 * s.bias() * std::log(static_cast<double>(s.n()));
    } else if (made_ % 2 == 0 || ps_.path_count() <= l_) {
      mv = expander_move(s, notes);
    } else {
      mv = pairing_move(s, notes);
    }
  }
  if (stage_ == 2) {
    if (ps_.path_count() > l_) {
      mv = pairing_move(s, notes);
    } else {
      stage_ = 3;
      begin_stage3(s, notes);
    }
  }
  if (stage_ == 3) mv = connect_move(s, notes);
  notes["stage"] = stage_;
  if (std::holds_alternative<Edge>(mv)) ++made_;
  return mv;
}

std::optional<std::vector<Edge>> HsMaker::certificate(const GameState& s) {
  if (!cycle_) return std::nullopt;
  const auto& c = *cycle_;
  std::vector<Edge> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Edge e = Edge::of(c[i], c[(i + 1) % c.size()]);
    if (!s.has(Player::Maker, e.u, e.v)) return std::nullopt;
    out.push_back(e);
  }
  return out;
}

}  // namespace mbg::maker
