#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mbg/config.hpp"
#include "mbg/degree_game.hpp"
#include "mbg/engine.hpp"
#include "mbg/graph.hpp"
#include "mbg/rng.hpp"

namespace mbg::maker {

using PathId = std::uint32_t;
inline constexpr PathId kNoPath = std::numeric_limits<PathId>::max();

/// Vertex-disjoint Maker paths over a vertex subset. An isolated vertex is a
/// path of length 0 and counts twice in the endpoint multiset End.
class PathSystem {
 public:
  PathSystem() = default;
  /// Every vertex of `vertices` as a path of length 0.
  PathSystem(Vertex n, std::span<const Vertex> vertices);
  static PathSystem isolated(Vertex n);

  Vertex universe() const { return static_cast<Vertex>(path_of_.size()); }
  std::size_t path_count() const { return live_; }
  /// Live path ids in ascending order.
  std::vector<PathId> ids() const;
  const std::vector<Vertex>& path(PathId id) const { return paths_[id]; }
  bool alive(PathId id) const { return id < paths_.size() && !paths_[id].empty(); }
  std::size_t length(PathId id) const { return paths_[id].size() - 1; }

  bool contains(Vertex v) const { return path_of_[v] != kNoPath; }
  PathId path_of(Vertex v) const { return path_of_[v]; }
  std::size_t position(Vertex v) const { return pos_[v]; }

  /// Multiplicity of v in End: 2 for an isolated vertex, 1 for the end of a
  /// longer path, 0 otherwise.
  std::uint32_t end_multiplicity(Vertex v) const;
  bool is_endpoint(Vertex v) const { return end_multiplicity(v) > 0; }
  std::size_t end_size() const { return 2 * live_; }
  /// Distinct endpoint vertices, ascending.
  std::vector<Vertex> end_vertices() const;
  /// v1 is the lower-index endpoint, v2 the other (equal for length 0).
  Vertex v1(PathId id) const;
  Vertex v2(PathId id) const;
  /// The other end of v's path.
  Vertex partner(Vertex v) const;

  /// Joins the paths ending at a and b (different paths) by the edge {a,b}.
  PathId join(Vertex a, Vertex b);
  /// Replaces the vertex sequence of a path (same vertex set not required;
  /// vertices must be free of other paths).
  void replace(PathId id, std::vector<Vertex> seq);
  /// Creates a new path from `seq`, whose vertices must be unassigned.
  PathId add(std::vector<Vertex> seq);
  /// Removes a path; its vertices leave the system.
  void remove(PathId id);

  std::set<Edge>& forgotten() { return forgotten_; }
  const std::set<Edge>& forgotten() const { return forgotten_; }

  /// Paths disjoint and simple, every path edge a Maker edge that is not
  /// forgotten. On failure returns false and fills `why`.
  bool validate(const GameState& s, std::string* why = nullptr) const;

 private:
  void index(PathId id);

  std::vector<std::vector<Vertex>> paths_;
  std::vector<PathId> path_of_;
  std::vector<std::size_t> pos_;
  std::size_t live_ = 0;
  std::set<Edge> forgotten_;
};

/// Breaker degree of v into End counted with multiplicity.
std::uint32_t deg_B_end(const GameState& s, const PathSystem& ps, Vertex v);

// ---------------------------------------------------------------- subroutines

/// Nonadjacent x, y with d(x)+d(y) >= average degree. Vertices are scanned by
/// degree descending (ties lowest index). Throws NoNonadjacentPair.
std::pair<Vertex, Vertex> lemma10_pair(const Graph& g);

/// Independent classes of the conflict graph restricted to `vertices` with
/// sizes floor/ceil of |V|/classes. Greedy colouring followed by balancing
/// moves; if balancing stalls the classes are kept independent and `relaxed`
/// is set. Throws PartitionFailed when even a relaxed partition would leave a
/// class below floor(|V|/classes) - 1 or classes < Δ+1.
struct Partition {
  std::vector<std::vector<Vertex>> classes;
  bool relaxed = false;
};
Partition equitable_partition(std::span<const Vertex> vertices, const Graph& conflict,
                              std::size_t num_classes);

/// Every X with |X| <= 3 exhaustively and `samples` random X with
/// 4 <= |X| <= k0: |N(X) \ X| >= 2|X|.
bool expander_spotcheck(const Graph& g, std::size_t k0, std::size_t samples, Rng& rng);

/// A longest path found by depth-first extension plus Posa rotations;
/// exact for graphs with at most 20 vertices.
std::vector<Vertex> long_path(const Graph& g);

/// Pairs {a,x} that close the path into a cycle after rotations fixing a,
/// plus a second level of rotations from each new endpoint, and pairs joining
/// any of these endpoints to a vertex off the path. `path` must be a path of g.
std::vector<Edge> booster_candidates(const Graph& g, const std::vector<Vertex>& path,
                                     std::size_t max_states = 4096);

/// A Hamilton cycle reachable from the Hamilton path `path` by one or two
/// levels of rotations, if any.
std::optional<std::vector<Vertex>> close_by_rotations(const Graph& g, const std::vector<Vertex>& path,
                                                      std::size_t max_states = 4096);

/// A free non-edge of `g` that lengthens the longest path or closes a Hamilton
/// cycle. `is_free` decides which pairs may be claimed. Throws NoBooster, or
/// PreconditionViolated if g is Hamiltonian (checked exactly for n <= 24).
Edge find_booster(const Graph& g, const std::function<bool(Vertex, Vertex)>& is_free);

/// Every booster of g among the pairs allowed by is_free. Exact subset DP;
/// throws InstanceTooLarge above 20 vertices.
std::vector<Edge> all_boosters(const Graph& g, const std::function<bool(Vertex, Vertex)>& is_free);

/// Hamilton-connectivity certificate used for expanders: exact for up to 24
/// vertices, otherwise the kappa > alpha sufficient condition.
struct HamconnCertificate {
  bool ok = false;
  bool heuristic = false;
};
HamconnCertificate hamconn_check(const Graph& g);

// ------------------------------------------------------------ strategies

/// Connectivity: always joins two Maker components, starting from the
/// component with the fewest free cross edges.
class ConnectivityMaker final : public MakerStrategy {
 public:
  std::string name() const override { return "connectivity"; }
  MakerMove next_move(const GameState& s, Annotations& notes) override;
  std::optional<std::vector<Edge>> certificate(const GameState& s) override;
};

/// The pm_stage1_move rule on isolated set U: v maximises d_B(., U), w
/// maximises d_B(., U) among free partners of v; ties lowest index.
MakerMove pm_stage1_move(const GameState& s, const VertexSet& u);

/// Expander/booster Hamilton-cycle player on the vertex set W. Breaker edges
/// inside W play the role of the forbidden graph.
///
/// Config keys: min_deg (integer or "auto": the largest c <= 12 with
/// c(2b+1) <= (|W|-1-Delta(H))/3, at least 1), delta (0.25), cap_factor (14).
class HnfPlayer {
 public:
  HnfPlayer(VertexSet w, const Config& cfg, std::uint64_t seed);

  /// Throws PreconditionViolated unless Delta(H) <= delta|W| and
  /// e(H) <= |W|^2 / ln|W| for H = Breaker's graph on W.
  void check_preconditions(const GameState& s) const;
  MakerMove next(const GameState& s, Annotations& notes);
  /// True once Maker's graph on W contains a Hamilton cycle that the player
  /// has located; the cycle is then available from cycle().
  bool done(const GameState& s);
  /// Hamilton cycle on W (vertex order) once built.
  const std::optional<std::vector<Vertex>>& cycle() const { return cycle_; }
  std::uint64_t moves() const { return moves_; }
  int stage() const { return stage_; }
  std::uint32_t min_degree() const { return min_deg_; }

 private:
  Graph local_graph(const GameState& s) const;
  MakerMove connect_move(const GameState& s, const Graph& g, Annotations& notes) const;
  bool try_close(const Graph& g);
  /// Used when no booster is free: a free pair at an end of a longest path
  /// whose rotation creates an endpoint that can close the path next move.
  std::optional<Edge> rotation_seed(const GameState& s, const Graph& g) const;
  void init(const GameState& s);

  VertexSet w_;
  std::vector<Vertex> order_;         // W ascending
  std::vector<std::uint32_t> local_;  // global -> local index
  Config cfg_;
  std::uint64_t seed_;
  std::uint32_t min_deg_ = 0;
  double delta_;
  std::uint64_t cap_;
  std::optional<degree::DangerPlayer> danger_;
  std::uint64_t moves_ = 0;
  int stage_ = 1;
  std::optional<std::vector<Vertex>> cycle_;
};

/// Hamilton cycle on the whole board with pre-claimed forbidden graph.
class HnfMaker final : public MakerStrategy {
 public:
  HnfMaker(const Config& cfg, std::uint64_t seed) : cfg_(cfg), seed_(seed) {}
  std::string name() const override { return "hnf"; }
  void start(const GameState& s) override;
  MakerMove next_move(const GameState& s, Annotations& notes) override;
  std::optional<std::vector<Edge>> certificate(const GameState& s) override;

 private:
  Config cfg_;
  std::uint64_t seed_;
  std::unique_ptr<HnfPlayer> player_;
};

/// Fast perfect matching: a greedy matching on the isolated set, then a
/// Hamilton cycle (or an exact endgame search) on the residual set.
class PmMaker final : public MakerStrategy {
 public:
  PmMaker(const Config& cfg, std::uint64_t seed) : cfg_(cfg), seed_(seed) {}
  std::string name() const override { return "pm"; }
  void start(const GameState& s) override;
  MakerMove next_move(const GameState& s, Annotations& notes) override;
  std::optional<std::vector<Edge>> certificate(const GameState& s) override;

  std::uint32_t residual() const { return m_; }
  std::uint64_t stage1_moves() const { return ell_; }

 private:
  MakerMove endgame_move(const GameState& s, Annotations& notes);
  /// Grows a maximum matching of Maker's graph on the residual set; used
  /// once the Hamilton cycle there is out of reach.
  MakerMove residual_matching_move(const GameState& s) const;

  Config cfg_;
  std::uint64_t seed_;
  std::uint32_t m_ = 0;
  std::uint64_t ell_ = 0;
  std::uint64_t made_ = 0;
  VertexSet u_;
  std::vector<Edge> matching_;
  std::unique_ptr<HnfPlayer> hnf_;
  bool endgame_ = false;
  bool matching_fallback_ = false;
};

/// Residual-set size for PmMaker: cfg "m" or max(20, 4b ceil(ln(b+1))),
/// adjusted so that n - m is even and m <= n.
std::uint32_t pm_residual(Vertex n, std::uint32_t b, const Config& cfg);

/// Fastest forced perfect matching on a tiny residual set: the smallest r
/// such that Maker (to move) completes a PM inside `u` within r of its moves,
/// and a first move achieving it. Empty when none within `max_moves`.
struct EndgamePlan {
  std::uint32_t moves = 0;
  Edge first;
};
std::optional<EndgamePlan> pm_endgame(const GameState& s, std::span<const Vertex> u,
                                      std::uint32_t max_moves);

/// Maker who keeps a maximum matching and claims an edge between two exposed
/// vertices (most Breaker-threatened first).
class GreedyPmMaker final : public MakerStrategy {
 public:
  std::string name() const override { return "greedy-pm"; }
  MakerMove next_move(const GameState& s, Annotations& notes) override;
  std::optional<std::vector<Edge>> certificate(const GameState& s) override;
};

/// Matching-stage monitor over the Maker records of a PmMaker transcript that
/// carry "D", "Delta" and "U" annotations.
struct MonitorViolation {
  std::uint64_t move_index = 0;
  std::string what;
  double value = 0;
  double bound = 0;
  std::string to_json() const;
};
std::vector<MonitorViolation> claim1_monitor(const Transcript& t, double delta);

/// Recomputes D_i and Delta_i from the board after each stage-1 Maker move
/// (records annotated stage 1), independent of the logged values.
std::vector<MonitorViolation> claim1_recompute(const Transcript& t, double delta);

// ---- small-bias Hamilton strategy ----

struct RotationPhaseStats {
  std::uint64_t moves = 0;
  bool joined = false;
};

/// Pósa-rotation phase state for joining two paths, or closing one path into
/// a cycle when `closing` is set (then p1 == p2 and rotations alternate
/// between the left and right halves).
class PosaPhase {
 public:
  PosaPhase(const PathSystem& ps, PathId p1, PathId p2, std::uint32_t saturation, bool closing);

  /// The next claim of the phase, or a Forfeit. `done` is set when the claim
  /// completes the join/closure.
  MakerMove next(const GameState& s, const PathSystem& ps, Annotations& notes, bool& done);
  /// After the completing claim: the joined path (or the cycle, closing mode).
  std::vector<Vertex> result() const;
  std::uint64_t moves() const { return moves_; }
  PathId first() const { return p1_; }
  PathId second() const { return p2_; }

 private:
  bool saturated(const GameState& s, const PathSystem& ps, Vertex x) const;
  std::optional<std::pair<std::size_t, std::size_t>> free_threat(const GameState& s) const;
  std::optional<std::size_t> pick_x(const GameState& s, const PathSystem& ps) const;
  std::optional<std::size_t> pick_y(const GameState& s, const PathSystem& ps) const;

  PathId p1_, p2_;
  std::uint32_t saturation_;
  bool closing_;
  std::vector<Vertex> a_;  // P1 oriented from v1 (or left end)
  std::vector<Vertex> b_;  // P2 oriented from v1 (or right end, reversed)
  std::vector<std::size_t> xs_;  // positions j in a_ of rotation partners x' (x = a_[j-1])
  std::vector<std::size_t> ys_;
  std::vector<char> used_a_, used_b_;
  std::uint64_t moves_ = 0;
  std::optional<std::pair<std::size_t, std::size_t>> join_;  // indices into threat lists
};

/// Joins a short path P to a near-middle vertex x of the longest path Q and
/// forgets the Q-edge {x,y}. Returns the claimed edge and the forgotten edge.
struct SplitChoice {
  Edge join;
  Edge forgotten;
  Vertex endpoint = 0;  // endpoint of P used
  Vertex x = 0;
  Vertex y = 0;
};
std::optional<SplitChoice> near_middle_split(const GameState& s, const PathSystem& ps, PathId p,
                                             PathId q, double rho, double y_threshold);
/// Positions of near-middle vertices on a path with `len` edges.
std::pair<std::size_t, std::size_t> near_middle_range(std::size_t len, double rho);
/// Applies a split chosen by near_middle_split after the join edge is claimed.
void apply_split(PathSystem& ps, const SplitChoice& c);

class HvsMaker final : public MakerStrategy {
 public:
  HvsMaker(const Config& cfg, std::uint64_t seed) : cfg_(cfg) { (void)seed; }
  std::string name() const override { return "hvs"; }
  void start(const GameState& s) override;
  MakerMove next_move(const GameState& s, Annotations& notes) override;
  std::optional<std::vector<Edge>> certificate(const GameState& s) override;

  const PathSystem& paths() const { return ps_; }
  int stage() const { return stage_; }
  const std::vector<RotationPhaseStats>& phases() const { return phase_stats_; }

 private:
  MakerMove stage1(const GameState& s, Annotations& notes);
  MakerMove stage2(const GameState& s, Annotations& notes);
  MakerMove stage3(const GameState& s, Annotations& notes);
  MakerMove stage45(const GameState& s, Annotations& notes);
  void end_stage1(const GameState& s, Annotations& notes);

  Config cfg_;
  PathSystem ps_;
  int stage_ = 1;
  std::uint64_t made_ = 0;
  std::uint64_t ell_ = 0;
  std::uint64_t stage_moves_ = 0;
  std::uint32_t min_path_len_ = 0;
  std::uint32_t saturation_ = 0;
  double rho_ = 0.01;
  double delta_ = 0.999;
  double y_threshold_ = 0;
  // D after Maker's last odd stage-1 move, before Breaker replies
  double snap_d_ = 0;
  std::unique_ptr<PosaPhase> phase_;
  std::vector<RotationPhaseStats> phase_stats_;
  std::optional<std::vector<Vertex>> cycle_;
};

// ---- medium-bias Hamilton strategy ----

/// Builds a Hamilton-connected Maker graph on T with the danger strategy
/// restricted to T, raising the target degree until hamconn_check passes.
class HamconnBuilder {
 public:
  /// A seed makes the danger strategy pick a random free edge at the most
  /// dangerous vertex instead of the lowest-index one.
  HamconnBuilder(VertexSet t, std::uint32_t min_deg, std::uint64_t budget,
                 std::optional<std::uint64_t> seed = std::nullopt);
  /// Next claim inside T; Forfeit on budget exhaustion or a blocked vertex.
  MakerMove next(const GameState& s, Annotations& notes);
  /// Checks the current Maker graph on T; caches the result.
  bool complete(const GameState& s);
  bool heuristic() const { return heuristic_; }
  const VertexSet& vertices() const { return t_; }
  std::uint64_t moves() const { return moves_; }

 private:
  VertexSet t_;
  std::uint32_t level_;
  std::uint64_t budget_;
  std::optional<std::uint64_t> seed_;
  std::uint64_t moves_ = 0;
  std::unique_ptr<degree::DangerPlayer> danger_;
  bool done_ = false;
  bool heuristic_ = false;
};

class HsMaker final : public MakerStrategy {
 public:
  HsMaker(const Config& cfg, std::uint64_t seed) : cfg_(cfg), seed_(seed) {}
  std::string name() const override { return "hs"; }
  void start(const GameState& s) override;
  MakerMove next_move(const GameState& s, Annotations& notes) override;
  std::optional<std::vector<Edge>> certificate(const GameState& s) override;

  std::uint32_t expander_count() const { return l_; }
  std::uint32_t expander_order() const { return t_; }
  const PathSystem& paths() const { return ps_; }
  /// Smallest box (free edges from an endpoint to its expander half) at the
  /// start of stage 3, and the load bound b*H_{2L}.
  double stage3_min_box() const { return min_box_; }
  double stage3_load_bound() const { return load_bound_; }

 private:
  MakerMove expander_move(const GameState& s, Annotations& notes);
  MakerMove pairing_move(const GameState& s, Annotations& notes);
  MakerMove connect_move(const GameState& s, Annotations& notes);
  bool select_expander(const GameState& s, Annotations& notes);
  void begin_stage3(const GameState& s, Annotations& notes);

  Config cfg_;
  std::uint64_t seed_;
  std::uint32_t l_ = 0, t_ = 0, min_deg_ = 0;
  std::uint64_t budget_ = 0;
  PathSystem ps_;
  int stage_ = 1;
  std::uint64_t made_ = 0;
  std::vector<std::unique_ptr<HamconnBuilder>> expanders_;
  std::vector<char> in_x_;
  // stage 3
  std::vector<PathId> order_;                  // P_1..P_L
  struct Hookup {
    Vertex endpoint;
    std::size_t expander;
    std::vector<Vertex> half;
    std::optional<Vertex> target;
  };
  std::vector<Hookup> hookups_;
  double min_box_ = 0;
  double load_bound_ = 0;
  std::optional<std::vector<Vertex>> cycle_;
};

/// Name -> Maker factory for the CLI and sweeps. Throws ConfigError.
std::unique_ptr<MakerStrategy> make_maker(const std::string& name, const Config& cfg,
                                          std::uint64_t seed, std::uint32_t target_degree = 0);
std::vector<std::string> maker_names();

}  // namespace mbg::maker
