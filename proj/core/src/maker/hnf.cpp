#include <algorithm>
#include <cmath>

#include "mbg/maker.hpp"

namespace mbg::maker {

namespace {

constexpr Vertex kExactCycleOrder = exact::kMaxHamiltonOrder;

std::vector<Edge> cycle_edges(const std::vector<Vertex>& cycle) {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < cycle.size(); ++i)
    out.push_back(Edge::of(cycle[i], cycle[(i + 1) % cycle.size()]));
  return out;
}

}  // namespace

HnfPlayer::HnfPlayer(VertexSet w, const Config& cfg, std::uint64_t seed)
    : w_(std::move(w)),
      order_(w_.sorted()),
      local_(w_.universe(), UINT32_MAX),
      cfg_(cfg),
      seed_(seed),
      delta_(cfg.get_double("delta", 0.25)),
      cap_(static_cast<std::uint64_t>(cfg.get_double("cap_factor", 14.0) * static_cast<double>(w_.size()))) {
  for (std::uint32_t i = 0; i < order_.size(); ++i) local_[order_[i]] = i;
}

void HnfPlayer::check_preconditions(const GameState& s) const {
  const double size = static_cast<double>(w_.size());
  std::uint64_t edges = 0;
  std::uint32_t max_deg = 0;
  for (Vertex v : order_) {
    const std::uint32_t d = s.degree_into(Player::Breaker, v, w_);
    edges += d;
    max_deg = std::max(max_deg, d);
  }
  edges /= 2;
  if (max_deg > delta_ * size)
    throw GameError(ErrorKind::PreconditionViolated,
                    "hnf: forbidden graph max degree " + std::to_string(max_deg) + " exceeds delta*|W|");
  if (static_cast<double>(edges) > size * size / std::log(size))
    throw GameError(ErrorKind::PreconditionViolated,
                    "hnf: forbidden graph has " + std::to_string(edges) + " edges, above |W|^2/ln|W|");
}

void HnfPlayer::init(const GameState& s) {
  const std::string spec = cfg_.get_string("min_deg", "auto");
  if (spec == "auto") {
    std::uint32_t max_h = 0;
    for (Vertex v : order_) max_h = std::max(max_h, s.degree_into(Player::Breaker, v, w_));
    const double room = (static_cast<double>(w_.size()) - 1.0 - max_h) / 3.0;
    const double c = std::floor(room / (2.0 * s.bias() + 1.0));
    // degree 3 leaves one spare edge per vertex for rotations
    min_deg_ = static_cast<std::uint32_t>(std::clamp(c, 3.0, 12.0));
  } else {
    min_deg_ = static_cast<std::uint32_t>(cfg_.get_int("min_deg", 12));
  }
  const bool whole = w_.size() == s.n();
  danger_.emplace(min_deg_, whole ? std::nullopt : std::optional<VertexSet>(w_), seed_);
}

Graph HnfPlayer::local_graph(const GameState& s) const {
  Graph g(static_cast<Vertex>(order_.size()));
  for (Vertex v : order_)
    for (Vertex u : s.neighbors(Player::Maker, v))
      if (u > v && w_.contains(u)) g.add_edge(local_[v], local_[u]);
  return g;
}

MakerMove HnfPlayer::connect_move(const GameState& s, const Graph& g, Annotations& notes) const {
  const auto label = g.component_labels();
  const std::uint32_t k = g.component_count();
  const Vertex m = g.order();
  // free cross edges per component, counted directly
  std::vector<std::uint64_t> cross(k, 0);
  for (Vertex a = 0; a < m; ++a)
    for (Vertex b = a + 1; b < m; ++b)
      if (label[a] != label[b] && s.is_free(order_[a], order_[b])) {
        ++cross[label[a]];
        ++cross[label[b]];
      }
  std::uint32_t pick = k;
  for (std::uint32_t c = 0; c < k; ++c)
    if (cross[c] && (pick == k || cross[c] < cross[pick])) pick = c;
  if (pick == k) return Forfeit{"hnf stage 2: no free edge between Maker components"};
  for (Vertex a = 0; a < m; ++a) {
    if (label[a] != pick) continue;
    for (Vertex b = 0; b < m; ++b)
      if (label[b] != pick && s.is_free(order_[a], order_[b])) {
        notes["components"] = k;
        return Edge::of(order_[a], order_[b]);
      }
  }
  return Forfeit{"hnf stage 2: no free cross edge"};
}

bool HnfPlayer::try_close(const Graph& g) {
  const Vertex m = g.order();
  if (m < 3 || g.min_degree() < 2 || !g.is_connected()) return false;
  std::vector<Vertex> local_cycle;
  if (m <= kExactCycleOrder) {
    if (!exact::has_hamilton_cycle(g)) return false;
    for (Vertex u : g.neighbors(0)) {
      if (auto p = exact::hamilton_path(g, 0, u)) {
        local_cycle = std::move(*p);
        break;
      }
    }
    if (local_cycle.empty()) return false;
  } else {
    const auto path = long_path(g);
    auto closed = close_by_rotations(g, path);
    if (!closed) return false;
    local_cycle = std::move(*closed);
  }
  std::vector<Vertex> out;
  out.reserve(local_cycle.size());
  for (Vertex v : local_cycle) out.push_back(order_[v]);
  cycle_ = std::move(out);
  return true;
}

std::optional<Edge> HnfPlayer::rotation_seed(const GameState& s, const Graph& g) const {
  auto path = long_path(g);
  if (path.size() < 3) return std::nullopt;
  // rotate at the end with the smaller degree first
  if (g.degree(path.back()) < g.degree(path.front())) std::reverse(path.begin(), path.end());
  std::optional<Edge> best;
  std::pair<int, std::uint32_t> best_score{-1, 0};
  for (int side = 0; side < 2; ++side) {
    const Vertex e = path.front();
    const Vertex o = path.back();
    for (std::size_t j = 2; j < path.size(); ++j) {
      const Vertex x = path[j];
      if (g.adjacent(e, x) || !s.is_free(order_[e], order_[x])) continue;
      const Vertex y = path[j - 1];  // new endpoint after the rotation
      std::uint32_t free_deg = 0;
      for (Vertex z : order_) free_deg += s.is_free(order_[y], z) ? 1 : 0;
      const std::pair<int, std::uint32_t> score{s.is_free(order_[y], order_[o]) ? 1 : 0, free_deg};
      if (score > best_score) {
        best_score = score;
        best = Edge::of(order_[e], order_[x]);
      }
    }
    if (best) return best;
    std::reverse(path.begin(), path.end());
  }
  return best;
}

bool HnfPlayer::done(const GameState& s) {
  if (cycle_) return true;
  if (!danger_ || !danger_->finished(s)) return false;
  return try_close(local_graph(s));
}

MakerMove HnfPlayer::next(const GameState& s, Annotations& notes) {
  if (!danger_) init(s);
  if (cycle_) return Forfeit{"hnf: cycle already complete"};
  if (moves_ >= cap_) return Forfeit{"hnf: move cap " + std::to_string(cap_) + " reached"};
  MakerMove mv = Forfeit{"hnf: no move"};
  if (stage_ == 1) {
    if (danger_->finished(s)) {
      stage_ = 2;
    } else {
      mv = danger_->next(s, notes);
      if (auto* f = std::get_if<Forfeit>(&mv)) f->reason = "hnf stage 1: " + f->reason;
    }
  }
  if (stage_ >= 2) {
    const Graph g = local_graph(s);
    if (stage_ == 2 && g.is_connected()) stage_ = 3;
    if (stage_ == 2) {
      mv = connect_move(s, g, notes);
    } else {
      if (try_close(g)) return Forfeit{"hnf: cycle already complete"};
      try {
        const Edge e = find_booster(g, [&](Vertex a, Vertex b) { return s.is_free(order_[a], order_[b]); });
        mv = Edge::of(order_[e.u], order_[e.v]);
      } catch (const GameError& err) {
        mv = Forfeit{std::string("hnf stage 3: ") + err.what()};
        if (err.kind() == ErrorKind::NoBooster) {
          if (auto e = rotation_seed(s, g)) {
            mv = *e;
            notes["hnf_rotation_seed"] = 1;
          }
        }
      }
    }
  }
  notes["hnf_stage"] = stage_;
  if (std::holds_alternative<Edge>(mv)) ++moves_;
  return mv;
}

void HnfMaker::start(const GameState& s) {
  player_ = std::make_unique<HnfPlayer>(VertexSet::all(s.n()), cfg_, seed_);
  player_->check_preconditions(s);
}

MakerMove HnfMaker::next_move(const GameState& s, Annotations& notes) {
  MakerMove mv = player_->next(s, notes);
  notes["stage"] = player_->stage();
  return mv;
}

std::optional<std::vector<Edge>> HnfMaker::certificate(const GameState& s) {
  if (!player_->done(s)) return std::nullopt;
  return cycle_edges(*player_->cycle());
}

}  // namespace mbg::maker
