// Acceptance suite: one line per criterion, exit status 1 if any fails.
// Usage: mbg_acceptance [--only N]...

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mbg/boxgame.hpp"
#include "mbg/degree_game.hpp"
#include "mbg/harness.hpp"
#include "mbg/maker.hpp"

using namespace mbg;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double x, int prec = 4) {
  std::ostringstream ss;
  ss.precision(prec);
  ss << x;
  return ss.str();
}

harness::ExperimentConfig experiment(const std::string& text) {
  return harness::ExperimentConfig::from_config(Config::parse(text));
}

harness::ExperimentConfig preset(const std::string& name) {
  return harness::ExperimentConfig::from_config(Config::load(std::string(MBG_PRESETS_DIR) + "/" + name));
}

std::string cell_name(const harness::CellResult& c) {
  return c.maker + " n=" + std::to_string(c.n) + " b=" + std::to_string(c.b) + " " + c.breaker + " seed=" +
         std::to_string(c.seed);
}

// first few failing cells, for the report line
struct Failures {
  std::size_t count = 0;
  std::vector<std::string> first;
  void add(const std::string& what) {
    if (first.size() < 3) first.push_back(what);
    ++count;
  }
  std::string text() const {
    std::string out = std::to_string(count) + " failing";
    for (const auto& f : first) out += "; " + f;
    return out;
  }
};

// ------------------------------------------------------------ 1: box game

// Exhaustive minimax on multisets of remaining box sizes. BoxBreaker moves
// first and destroys a box; BoxMaker then places `a` units one at a time.
class BoxMinimax {
 public:
  explicit BoxMinimax(int a) : a_(a) {}

  bool maker_wins(std::uint64_t k, std::uint64_t t) {
    std::vector<int> sizes(k, static_cast<int>(t / k));
    for (std::uint64_t i = 0; i < t % k; ++i) ++sizes[i];
    return breaker_turn(sizes);
  }

 private:
  bool breaker_turn(std::vector<int> s) {
    std::sort(s.begin(), s.end());
    auto key = std::make_pair(s, -1);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool maker = true;
    for (std::size_t i = 0; i < s.size() && maker; ++i) {
      if (i && s[i] == s[i - 1]) continue;
      std::vector<int> rest = s;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      if (rest.empty()) {
        maker = false;
      } else if (std::find(rest.begin(), rest.end(), 0) == rest.end()) {
        maker = maker_units(rest, a_);
      }
    }
    return memo_[key] = maker;
  }

  bool maker_units(std::vector<int> s, int left) {
    if (left == 0) return breaker_turn(s);
    std::sort(s.begin(), s.end());
    auto key = std::make_pair(s, left);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool win = false;
    for (std::size_t i = 0; i < s.size() && !win; ++i) {
      if (i && s[i] == s[i - 1]) continue;
      std::vector<int> next = s;
      if (--next[i] == 0) {
        win = true;
      } else {
        win = maker_units(next, left - 1);
      }
    }
    return memo_[key] = win;
  }

  int a_;
  std::map<std::pair<std::vector<int>, int>, bool> memo_;
};

// f < c*k*H with H = H_k, or H_{k-1} when `shifted`; long double with an
// exact rational fallback near the boundary
bool below(std::uint64_t f, std::uint64_t c, std::uint64_t k, long double h, bool shifted) {
  const long double rhs = static_cast<long double>(c) * static_cast<long double>(k) * h;
  const auto lhs = static_cast<long double>(f);
  if (std::fabs(lhs - rhs) > 1e-9L * std::max(1.0L, rhs)) return lhs < rhs;
  const box::Rational hk = shifted ? (k > 1 ? box::harmonic_exact(k - 1) : box::Rational(0)) : box::harmonic_exact(k);
  return box::Rational(static_cast<long long>(f)) < static_cast<long long>(c * k) * hk;
}

bool above(std::uint64_t f, std::uint64_t c, std::uint64_t k, long double h) {
  const long double rhs = static_cast<long double>(c) * static_cast<long double>(k) * h;
  const auto lhs = static_cast<long double>(f);
  if (std::fabs(lhs - rhs) > 1e-9L * std::max(1.0L, rhs)) return lhs > rhs;
  return box::Rational(static_cast<long long>(f)) > static_cast<long long>(c * k) * box::harmonic_exact(k);
}

Outcome criterion1() {
  Outcome o;
  // sandwich (a-1) k H_k <= f(k,a) <= a k H_k
  std::uint64_t checked = 0, low_bad = 0, high_bad = 0, shifted_bad = 0, max_bad_k = 0;
  for (std::uint64_t a = 1; a <= 100; ++a) {
    const auto table = box::f_table(10000, a);
    long double h = 0;
    for (std::uint64_t k = 1; k <= 10000; ++k) {
      const long double prev = h;
      h += 1.0L / static_cast<long double>(k);
      ++checked;
      if (below(table[k], a - 1, k, h, false)) {
        ++low_bad;
        max_bad_k = std::max(max_bad_k, k);
      }
      if (above(table[k], a, k, h)) ++high_bad;
      if (below(table[k], a - 1, k, prev, true)) ++shifted_bad;
    }
  }
  // minimax agreement
  std::uint64_t games = 0, disagree = 0;
  for (int a = 1; a <= 3; ++a) {
    BoxMinimax mm(a);
    for (std::uint64_t k = 1; k <= 4; ++k)
      for (std::uint64_t t = 1; t <= 12; ++t) {
        ++games;
        if (mm.maker_wins(k, t) != box::boxmaker_wins(k, t, static_cast<std::uint64_t>(a))) ++disagree;
      }
  }
  o.pass = low_bad == 0 && high_bad == 0 && disagree == 0;
  o.detail = "sandwich over " + std::to_string(checked) + " (k,a): lower side violated " + std::to_string(low_bad) +
             " times (largest k " + std::to_string(max_bad_k) + "), upper side " + std::to_string(high_bad) +
             "; with H_{k-1} on the lower side " + std::to_string(shifted_bad) + " violations; minimax " +
             std::to_string(games - disagree) + "/" + std::to_string(games) + " agree";
  return o;
}

// ------------------------------------------------------------ 2: connectivity

Outcome criterion2() {
  Outcome o;
  const auto cfg = preset("conn.cfg");
  const auto rows = harness::run_sweep(cfg);
  const auto rep = harness::bound_check(rows, {harness::BoundKind::ConnExact, std::nullopt});
  std::size_t violations = 0;
  for (const auto& r : rows) violations += r.violations.size();
  o.pass = rep.ok() && violations == 0 && rows.size() == 5 * 5 * 7 * 10;
  o.detail = std::to_string(rows.size()) + " games, " + std::to_string(rep.violations.size()) +
             " not won in exactly n-1 moves, " + std::to_string(violations) + " monitor violations";
  return o;
}

// ------------------------------------------------------------ 3: fast matching

Outcome criterion3() {
  Outcome o;
  // the literal range is {1} at every n here since delta*n/(100 ln n) < 1
  const auto literal = harness::run_sweep(preset("pm.cfg"));
  const auto desk = harness::run_sweep(preset("pm_desk.cfg"));
  Failures fails;
  std::size_t stage1_moves = 0;
  std::vector<harness::CellResult> all = literal;
  all.insert(all.end(), desk.begin(), desk.end());
  for (const auto& r : all) {
    if (!r.maker_won()) fails.add(cell_name(r) + " " + r.winner + " " + r.reason);
    if (!r.violations.empty()) fails.add(cell_name(r) + " monitor " + r.violations.front().to_json());
    if (auto p = r.stats.find("s1="); p != std::string::npos) stage1_moves += std::stoul(r.stats.substr(p + 3));
  }
  const auto fit_literal = harness::bound_check(literal, {harness::BoundKind::PmUpper, std::nullopt});
  const auto fit_all = harness::bound_check(all, {harness::BoundKind::PmUpper, std::nullopt});
  o.pass = fails.count == 0 && stage1_moves > 0;
  o.detail = std::to_string(literal.size()) + " games at b=1 plus " + std::to_string(desk.size()) +
             " at b=2..5, " + fails.text() + "; matching-stage moves monitored " + std::to_string(stage1_moves) +
             "; C_fit " + fmt(fit_literal.fitted_C.value_or(0)) + " (b=1), " + fmt(fit_all.fitted_C.value_or(0)) +
             " (all)";
  return o;
}

// ------------------------------------------------------------ 4: delay lower bounds

Outcome criterion4() {
  Outcome o;
  struct Run {
    std::string maker;
    harness::BoundKind bound;
  };
  const std::vector<Run> runs{{"pm", harness::BoundKind::PmLower},
                              {"greedy-pm", harness::BoundKind::PmLower},
                              {"hvs", harness::BoundKind::HcLower},
                              {"hs", harness::BoundKind::HcLower},
                              {"hnf", harness::BoundKind::HcLower}};
  std::size_t checked = 0, games = 0, clique_bad = 0;
  Failures fails;
  std::string wins;
  for (const auto& run : runs) {
    const auto cfg = preset("delay_" + run.maker + ".cfg");
    const auto rows = harness::run_sweep(cfg);
    const auto rep = harness::bound_check(rows, {run.bound, std::nullopt});
    checked += rep.cells_checked;
    games += rows.size();
    for (const auto& v : rep.violations) fails.add(run.maker + " " + v);
    for (const auto& r : rows) {
      clique_bad += r.violations.size();
      if (r.winner == "Error") fails.add(cell_name(r) + " error " + r.reason);
    }
    wins += (wins.empty() ? "" : ", ") + run.maker + " " + std::to_string(rep.cells_checked) + "/" +
            std::to_string(rows.size());
  }
  o.pass = fails.count == 0 && clique_bad == 0;
  o.detail = std::to_string(games) + " games; bound asserted on " + std::to_string(checked) + " Maker wins (" + wins +
             "), " + fails.text() + ", clique invariant violations " + std::to_string(clique_bad);
  return o;
}

// ------------------------------------------------------------ 5: small-bias Hamilton strategy

std::size_t count_annotated(const Transcript& t, const std::string& key) {
  return static_cast<std::size_t>(std::count_if(t.records.begin(), t.records.end(), [&](const MoveRecord& r) {
    return r.annotations.count(key) != 0;
  }));
}

Outcome criterion5() {
  Outcome o;
  const auto cfg = preset("hvs.cfg");
  Failures fails;
  std::map<std::string, std::size_t> seen;
  std::size_t games = 0;
  for (Vertex n : cfg.n)
    for (auto b : cfg.biases(n))
      for (const auto& br : cfg.breakers)
        for (auto seed : cfg.seeds) {
          auto c = harness::run_cell(cfg, n, b, br, seed, true);
          ++games;
          if (!c.maker_won()) fails.add(cell_name(c) + " " + c.winner + " " + c.reason);
          for (const auto& v : c.violations) fails.add(cell_name(c) + " " + v.to_json());
          if (c.transcript) {
            seen["pair"] += count_annotated(*c.transcript, "claim2_sum");
            seen["avg"] += count_annotated(*c.transcript, "D");
            seen["caps"] += count_annotated(*c.transcript, "cap_end");
            seen["phases"] += count_annotated(*c.transcript, "phase_moves");
          }
        }
  const bool exercised = seen["pair"] && seen["avg"] && seen["caps"] && seen["phases"];
  o.pass = fails.count == 0 && exercised;
  o.detail = std::to_string(games) + " games, " + fails.text() + "; checked " + std::to_string(seen["pair"]) +
             " pair moves, " + std::to_string(seen["avg"]) + " average-degree snapshots, " +
             std::to_string(seen["caps"]) + " stage-end caps, " + std::to_string(seen["phases"]) +
             " rotation phases (each <= 2b+1); certificates verified by the referee";
  return o;
}

// ------------------------------------------------------------ 6: expander Hamilton strategy

Outcome criterion6() {
  Outcome o;
  const auto cfg = preset("hs.cfg");
  Failures fails;
  std::size_t games = 0, caps = 0, boxes = 0;
  for (Vertex n : cfg.n)
    for (auto b : cfg.biases(n))
      for (const auto& br : cfg.breakers)
        for (auto seed : cfg.seeds) {
          auto c = harness::run_cell(cfg, n, b, br, seed, true);
          ++games;
          if (!c.maker_won()) fails.add(cell_name(c) + " " + c.winner + " " + c.reason);
          for (const auto& v : c.violations) fails.add(cell_name(c) + " " + v.to_json());
          if (c.transcript) {
            caps += count_annotated(*c.transcript, "cap2_max");
            boxes += count_annotated(*c.transcript, "box_min");
          }
        }
  // exact certificate check on a small instance
  std::size_t smoke_ok = 0, smoke = 0;
  const auto small = experiment(
      "n = [24]\nb = [1]\nmaker = hs\nbreakers = [passive, random]\ngoal = HC\nseeds = [1, 2, 3]\n"
      "[hs]\nenforce_range = false\nL = 2\nt = 4\nexpander_min_deg = 2\n");
  for (const auto& br : small.breakers)
    for (auto seed : small.seeds) {
      ++smoke;
      auto c = harness::run_cell(small, 24, 1, br, seed, true);
      if (!c.maker_won() || !c.transcript) {
        fails.add("smoke " + cell_name(c) + " " + c.winner + " " + c.reason);
        continue;
      }
      const GameState s = c.transcript->replay();
      if (exact_goal_check(Graph::of_player(s, Player::Maker), Goal::HamiltonCycle))
        ++smoke_ok;
      else
        fails.add("smoke " + cell_name(c) + " exact check disagrees");
    }
  o.pass = fails.count == 0 && caps == games && boxes == games;
  o.detail = std::to_string(games) + " games, " + fails.text() + "; endpoint cap checked in " +
             std::to_string(caps) + ", box accounting in " + std::to_string(boxes) + "; n=24 exact check " +
             std::to_string(smoke_ok) + "/" + std::to_string(smoke);
  return o;
}

// ------------------------------------------------------------ 7: booster strategy on K_n minus H

// longest path by vertex count, plain DFS over simple paths
std::size_t dfs_longest(const Graph& g) {
  const Vertex n = g.order();
  std::size_t best = n ? 1 : 0;
  std::vector<char> used(n, 0);
  std::function<void(Vertex, std::size_t)> go = [&](Vertex v, std::size_t len) {
    best = std::max(best, len);
    if (best == n) return;
    for (Vertex u : g.neighbors(v))
      if (!used[u]) {
        used[u] = 1;
        go(u, len + 1);
        used[u] = 0;
      }
  };
  for (Vertex s = 0; s < n && best < n; ++s) {
    used[s] = 1;
    go(s, 1);
    used[s] = 0;
  }
  return best;
}

bool dfs_hamiltonian(const Graph& g) {
  const Vertex n = g.order();
  if (n < 3) return false;
  std::vector<char> used(n, 0);
  used[0] = 1;
  std::function<bool(Vertex, std::size_t)> go = [&](Vertex v, std::size_t len) {
    if (len == n) return g.adjacent(v, 0);
    for (Vertex u : g.neighbors(v))
      if (!used[u]) {
        used[u] = 1;
        if (go(u, len + 1)) return true;
        used[u] = 0;
      }
    return false;
  };
  return go(0, 1);
}

Graph with_edge(const Graph& g, Vertex a, Vertex b) {
  auto es = g.edges();
  es.push_back(Edge::of(a, b));
  return Graph::from_edges(g.order(), es);
}

Outcome criterion7() {
  Outcome o;
  const auto cfg = preset("hnf.cfg");
  const auto rows = harness::run_sweep(cfg);
  const auto rep = harness::bound_check(rows, {harness::BoundKind::KrivCap, std::nullopt});
  Failures fails;
  for (const auto& v : rep.violations) fails.add(v);
  const auto wins = std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.maker_won(); });

  // boosters: library against plain enumeration on sparse connected graphs
  Rng rng(7);
  std::size_t graphs = 0, disagree = 0, pick_bad = 0;
  for (Vertex n = 5; n <= 20; ++n)
    for (int rep_i = 0; rep_i < (n <= 12 ? 30 : 8); ++rep_i) {
      Graph g(n);
      for (Vertex v = 1; v < n; ++v) g.add_edge(v, static_cast<Vertex>(rng.below(v)));
      const auto extra = rng.below(n / 2 + 1);
      for (std::uint64_t i = 0; i < extra; ++i) {
        const auto a = static_cast<Vertex>(rng.below(n)), b = static_cast<Vertex>(rng.below(n));
        if (a != b) g.add_edge(a, b);
      }
      if (dfs_hamiltonian(g)) continue;
      // a few pairs belong to Breaker
      std::set<Edge> blocked;
      for (int i = 0; i < 3; ++i) {
        const auto a = static_cast<Vertex>(rng.below(n)), b = static_cast<Vertex>(rng.below(n));
        if (a != b && !g.adjacent(a, b)) blocked.insert(Edge::of(a, b));
      }
      auto is_free = [&](Vertex a, Vertex b) { return !blocked.count(Edge::of(a, b)); };
      ++graphs;
      const std::size_t base = dfs_longest(g);
      std::set<Edge> truth;
      for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) {
          if (g.adjacent(a, b) || !is_free(a, b)) continue;
          const Graph h = with_edge(g, a, b);
          if (dfs_longest(h) > base || dfs_hamiltonian(h)) truth.insert({a, b});
        }
      const auto lib = maker::all_boosters(g, is_free);
      if (std::set<Edge>(lib.begin(), lib.end()) != truth) ++disagree;
      try {
        const Edge e = maker::find_booster(g, is_free);
        if (!truth.count(e)) ++pick_bad;
      } catch (const GameError&) {
        if (!truth.empty()) ++pick_bad;
      }
    }
  o.pass = fails.count == 0 && disagree == 0 && pick_bad == 0;
  o.detail = std::to_string(rows.size()) + " games, " + std::to_string(wins) + " won within 14n, " + fails.text() + "; boosters on " + std::to_string(graphs) + " graphs: " +
             std::to_string(disagree) + " set disagreements, " + std::to_string(pick_bad) + " bad picks";
  return o;
}

// ------------------------------------------------------------ 8: minimum degree

Outcome criterion8() {
  Outcome o;
  Failures fails;
  std::size_t games = 0;
  std::string skipped;
  for (Vertex n : {100u, 500u})
    for (std::uint32_t c : {1u, 2u, 12u}) {
      std::uint32_t bmax = 0;
      while (degree::preconditions_hold(n, bmax + 1, c, n - 1)) ++bmax;
      if (bmax == 0) {
        skipped += (skipped.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + " c=" + std::to_string(c);
        continue;
      }
      for (const std::string maker : {"mindeg", "mindeg-random"}) {
        const auto cfg = experiment("n = [" + std::to_string(n) + "]\nb = [\"1.." + std::to_string(bmax) +
                                    "\"]\nmaker = " + maker + "\nbreakers = [pool]\ngoal = DEG\nc = " +
                                    std::to_string(c) + "\nseeds = [1, 2]\nmonitors = [danger]\n");
        for (const auto& r : harness::run_sweep(cfg)) {
          ++games;
          if (!r.maker_won()) fails.add(cell_name(r) + " c=" + std::to_string(c) + " " + r.winner + " " + r.reason);
          if (r.maker_moves > static_cast<std::uint64_t>(c) * n)
            fails.add(cell_name(r) + " c=" + std::to_string(c) + " moves " + std::to_string(r.maker_moves));
          for (const auto& v : r.violations) fails.add(cell_name(r) + " " + v.to_json());
        }
      }
    }
  o.pass = fails.count == 0 && games > 0;
  o.detail = std::to_string(games) + " games, " + fails.text() + "; no admissible bias for " +
             (skipped.empty() ? std::string("none") : skipped);
  return o;
}

// ------------------------------------------------------------ 9: oracle equivalence

bool independent_acyclic_spanning(Vertex n, const std::vector<Edge>& es) {
  if (es.size() != n - 1) return false;
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<Vertex(Vertex)> find = [&](Vertex x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const Edge& e : es) {
    const Vertex a = find(e.u), b = find(e.v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

// every perfect matching / Hamilton cycle of g as edge lists
void all_matchings(const Graph& g, std::vector<char>& used, std::vector<Edge>& cur,
                   std::vector<std::vector<Edge>>& out) {
  const Vertex n = g.order();
  Vertex v = 0;
  while (v < n && used[v]) ++v;
  if (v == n) {
    out.push_back(cur);
    return;
  }
  used[v] = 1;
  for (Vertex u : g.neighbors(v))
    if (!used[u]) {
      used[u] = 1;
      cur.push_back(Edge::of(v, u));
      all_matchings(g, used, cur, out);
      cur.pop_back();
      used[u] = 0;
    }
  used[v] = 0;
}

std::vector<std::vector<Edge>> all_cycles(const Graph& g) {
  const Vertex n = g.order();
  std::vector<std::vector<Edge>> out;
  std::vector<Vertex> path{0};
  std::vector<char> used(n, 0);
  used[0] = 1;
  std::function<void()> go = [&] {
    const Vertex v = path.back();
    if (path.size() == n) {
      if (g.adjacent(v, 0) && path[1] < v) {
        std::vector<Edge> es;
        for (std::size_t i = 0; i < n; ++i) es.push_back(Edge::of(path[i], path[(i + 1) % n]));
        out.push_back(es);
      }
      return;
    }
    for (Vertex u : g.neighbors(v))
      if (!used[u]) {
        used[u] = 1;
        path.push_back(u);
        go();
        path.pop_back();
        used[u] = 0;
      }
  };
  if (n >= 3) go();
  return out;
}

Outcome criterion9() {
  Outcome o;
  Rng rng(2024);
  std::size_t graphs = 0, disagree = 0, false_accept = 0;
  for (Vertex n = 4; n <= 8; ++n)
    for (int play = 0; play < 200; ++play) {
      // random playout; the Maker graph after every Maker move is a test board
      GameState s = new_game(n, 1 + static_cast<std::uint32_t>(rng.below(2)));
      while (s.free_count() > 0) {
        std::vector<Edge> free;
        for (Vertex v = 1; v < n; ++v)
          for (Vertex u = 0; u < v; ++u)
            if (s.is_free(u, v)) free.push_back({u, v});
        const Player p = s.turn();
        const std::size_t want = p == Player::Maker ? 1 : s.breaker_quota();
        std::vector<Edge> pick;
        for (std::size_t i = 0; i < want && !free.empty(); ++i) {
          const auto j = rng.below(free.size());
          pick.push_back(free[j]);
          free.erase(free.begin() + static_cast<std::ptrdiff_t>(j));
        }
        s.claim(p, pick);
        if (p != Player::Maker) continue;
        const Graph g = Graph::of_player(s, Player::Maker);
        const auto mine = g.edges();
        ++graphs;
        // PM
        std::vector<char> used(n, 0);
        std::vector<Edge> cur;
        std::vector<std::vector<Edge>> pms;
        if (n % 2 == 0) all_matchings(g, used, cur, pms);
        bool any = false;
        for (const auto& m : pms) any |= verify_certificate(s, Goal::PerfectMatching, m);
        if (any != exact_goal_check(g, Goal::PerfectMatching) || (!pms.empty() && !any)) ++disagree;
        // HC
        const auto cycles = all_cycles(g);
        any = false;
        for (const auto& c : cycles) any |= verify_certificate(s, Goal::HamiltonCycle, c);
        if (any != exact_goal_check(g, Goal::HamiltonCycle) || (!cycles.empty() && !any)) ++disagree;
        // CONN: every (n-1)-subset of Maker's edges, when few enough
        any = false;
        if (mine.size() <= 14 && mine.size() >= n - 1) {
          const std::size_t m = mine.size();
          std::vector<char> sel(m, 0);
          std::fill(sel.begin(), sel.begin() + (n - 1), 1);
          std::sort(sel.begin(), sel.end(), std::greater<>());
          do {
            std::vector<Edge> sub;
            for (std::size_t i = 0; i < m; ++i)
              if (sel[i]) sub.push_back(mine[i]);
            const bool lib = verify_certificate(s, Goal::Connectivity, sub);
            if (lib != independent_acyclic_spanning(n, sub)) ++disagree;
            any |= lib;
          } while (std::prev_permutation(sel.begin(), sel.end()));
          if (any != exact_goal_check(g, Goal::Connectivity)) ++disagree;
        }
        // the whole Maker graph is a certificate only when it is the structure
        if (verify_certificate(s, Goal::HamiltonCycle, mine) &&
            !(mine.size() == n && g.min_degree() == 2 && g.max_degree() == 2 && g.is_connected()))
          ++false_accept;
      }
    }
  // the pair lemma over every graph on at most 6 vertices
  std::size_t lemma_graphs = 0, lemma_bad = 0;
  for (Vertex n = 2; n <= 6; ++n) {
    std::vector<Edge> pairs;
    for (Vertex v = 1; v < n; ++v)
      for (Vertex u = 0; u < v; ++u) pairs.push_back({u, v});
    for (std::uint32_t mask = 0; mask < (1U << pairs.size()); ++mask) {
      std::vector<Edge> es;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask >> i & 1U) es.push_back(pairs[i]);
      const Graph g = Graph::from_edges(n, es);
      const double avg = 2.0 * static_cast<double>(es.size()) / n;
      if (!(avg < n - 1.0)) continue;
      ++lemma_graphs;
      bool exists = false;
      for (const Edge& e : pairs)
        if (!g.adjacent(e.u, e.v) && g.degree(e.u) + g.degree(e.v) >= avg) exists = true;
      try {
        const auto [x, y] = maker::lemma10_pair(g);
        if (!exists || x == y || g.adjacent(x, y) || g.degree(x) + g.degree(y) < avg) ++lemma_bad;
      } catch (const GameError&) {
        ++lemma_bad;
      }
    }
  }
  o.pass = disagree == 0 && false_accept == 0 && lemma_bad == 0;
  o.detail = std::to_string(graphs) + " playout boards, " + std::to_string(disagree) + " disagreements, " +
             std::to_string(false_accept) + " false accepts; pair lemma on " + std::to_string(lemma_graphs) +
             " graphs, " + std::to_string(lemma_bad) + " failures";
  return o;
}

// ------------------------------------------------------------ 10: determinism

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion10() {
  Outcome o;
  const auto root = std::filesystem::temp_directory_path() / "mbg_acceptance_determinism";
  std::filesystem::remove_all(root);
  const std::vector<std::string> sweeps{
      "n = [60, 100]\nb = [1, 2]\nmaker = pm\nbreakers = [pool]\ngoal = PM\nseeds = [3, 4]\n"
      "[pm]\nenforce_range = false\n",
      "n = [100]\nb = [1, 2]\nmaker = hs\nbreakers = [random, box-emulating]\ngoal = HC\nseeds = [5]\n"
      "[hs]\nenforce_range = false\nL = 2\nt = 8\nexpander_min_deg = 3\n",
      "n = [80]\nb = [1, 3]\nmaker = mindeg-random\nbreakers = [pool]\ngoal = DEG\nc = 2\nseeds = [6]\n"};
  std::size_t files = 0, differ = 0;
  for (std::size_t i = 0; i < sweeps.size(); ++i) {
    std::vector<std::map<std::string, std::string>> snapshots;
    for (unsigned workers : {1u, 3u}) {
      const auto dir = root / (std::to_string(i) + "_" + std::to_string(workers));
      std::filesystem::create_directories(dir);
      // output keys first: the sweep text may end inside a strategy section
      auto cfg = experiment("output.csv = \"" + (dir / "out.csv").string() + "\"\noutput.transcripts = \"" +
                            (dir / "t").string() + "\"\n" + sweeps[i]);
      harness::run_sweep(cfg, workers);
      std::map<std::string, std::string> snap;
      for (const auto& e : std::filesystem::recursive_directory_iterator(dir))
        if (e.is_regular_file()) snap[std::filesystem::relative(e.path(), dir).string()] = slurp(e.path());
      snapshots.push_back(std::move(snap));
    }
    files += snapshots[0].size();
    if (snapshots[0] != snapshots[1]) ++differ;
  }
  std::filesystem::remove_all(root);
  o.pass = differ == 0 && files > 0;
  o.detail = std::to_string(sweeps.size()) + " sweeps repeated with 1 and 3 workers, " + std::to_string(files) +
             " files per run, " + std::to_string(differ) + " sweeps with differing bytes";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* title;
    double budget_s;
    Outcome (*run)();
  };
  const std::vector<Criterion> all{
      {1, "box game potential and minimax", 60, criterion1},
      {2, "connectivity in exactly n-1 moves", 60, criterion2},
      {3, "fast perfect matching", 600, criterion3},
      {4, "delay lower bounds", 300, criterion4},
      {5, "small-bias Hamilton strategy", 900, criterion5},
      {6, "expander Hamilton strategy", 900, criterion6},
      {7, "booster strategy on K_n minus H", 600, criterion7},
      {8, "minimum degree game", 300, criterion8},
      {9, "oracle equivalence", 120, criterion9},
      {10, "determinism", 600, criterion10},
  };
  std::set<int> only;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--only") only.insert(std::stoi(argv[++i]));

  int failed = 0, ran = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = out.pass && in_time;
    if (!pass) ++failed;
    std::cout << "criterion " << c.id << " " << (pass ? "PASS" : "FAIL") << " " << c.title << ": " << out.detail
              << " [" << fmt(secs, 3) << " s of " << c.budget_s << " s" << (in_time ? "" : ", over budget") << "]"
              << std::endl;
  }
  std::cout << (ran - failed) << "/" << ran << " criteria pass" << std::endl;
  return failed ? 1 : 0;
}
