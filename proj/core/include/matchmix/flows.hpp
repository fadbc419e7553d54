#ifndef MATCHMIX_FLOWS_HPP
#define MATCHMIX_FLOWS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "matchmix/mixing.hpp"
#include "matchmix/state_graph.hpp"

namespace matchmix {

/// The three path systems compared in the experiments.
///  canonical_p1   - three-segment routes through nearest perfect matchings
///  one_shortest_p2 - one BFS shortest path per ordered pair
///  all_shortest_p3 - flow split uniformly over all shortest paths
///                    (implicit DAG representation, never materialized)
enum class PathSystemKind { canonical_p1, one_shortest_p2, all_shortest_p3 };

std::string path_system_name(PathSystemKind k);

struct FlowOptions {
  std::int64_t explicit_cap = 20000;  // state cap for p1/p2 path systems
};

/// Routing data for one path system on one state graph. Shortest-path
/// tie-breaks always pick the smallest state index, which makes every path
/// deterministic across runs.
class PathSystem {
 public:
  PathSystemKind kind;
  const StateGraph* sg = nullptr;
  // Non-loop support of the state graph (symmetric by reversibility),
  // sorted adjacency per state.
  std::vector<std::vector<StateId>> support;

  // canonical_p1 data: BFS trees rooted at every perfect state, and for
  // each state the nearest perfect matching (ties by smallest index).
  std::vector<StateId> perfect_states;
  std::vector<std::vector<std::int32_t>> perfect_dist;
  std::vector<std::vector<std::int32_t>> perfect_parent;
  std::vector<std::int32_t> nearest_perfect_slot;

  /// Explicit path for one ordered pair (p1/p2 only), as state ids from x
  /// to y inclusive; simple by construction (p1 concatenations are
  /// de-looped by first-repeat excision).
  std::vector<StateId> path(StateId x, StateId y) const;
};

/// Throws StructureError if the non-loop support is disconnected, and
/// SizeError above the explicit cap for p1/p2.
PathSystem build_paths(const StateGraph& sg, PathSystemKind kind,
                       const FlowOptions& opts = {});

struct CongestionReport {
  PathSystemKind kind = PathSystemKind::one_shortest_p2;
  double rho1 = 0.0;  // max over arcs of f1(a)/Q(a)
  double rho2 = 0.0;  // max over arcs of f2(a)/Q(a), f2 weighted by |p|
  std::pair<StateId, StateId> argmax_arc{0, 0};       // attaining rho2
  std::pair<StateId, StateId> argmax_arc_rho1{0, 0};  // attaining rho1
  double bound_rho2 = -1.0;        // filled by multicommodity_bound
  double lower_bound_rho1 = -1.0;  // filled by lower_bound
  bool lazy_used = false;
};

/// Maximum loadings of both flow functions over all non-loop arcs.
/// f1 routes pi(x)pi(y) per ordered pair, f2 additionally weights each
/// path by its length; with kind all_shortest_p3 the flow of a pair is
/// split uniformly over all of its shortest paths and accumulated by
/// counting sweeps over each root's shortest-path DAG.
CongestionReport congestion(const StateGraph& sg, const PathSystem& ps);

/// tau(eps) <= rho2 (ln(1/eps) + ln(1/pi_min)), valid when lambda_max =
/// |lambda_2|. When |lambda_min| dominates, the report switches to the
/// half-lazy chain (whose congestions are exactly doubled) and flags
/// lazy_used; the stored rho values then refer to the certified chain.
double multicommodity_bound(CongestionReport& report, const StateGraph& sg,
                            double epsilon, const MixingOptions& mix = {});

/// Asymptotic-order witness rho1 ln(2/eps) / ln(1/pi_min); no hidden
/// constant. Defined for single-path systems (p1/p2); 0 for one state.
double lower_bound(CongestionReport& report, const StateGraph& sg,
                   double epsilon);

/// Number of shortest paths from root to every state (forward sweep of the
/// root's BFS DAG); used as |P_{x,y}| in the p3 accumulation.
std::vector<double> shortest_path_counts_from(const PathSystem& ps,
                                              StateId root);

/// Number of DAG paths from every state to target inside root's BFS DAG
/// (counter-topological sweep); the symmetric route to the same counts.
std::vector<double> shortest_path_counts_to(const PathSystem& ps, StateId root,
                                            StateId target);

std::vector<std::int32_t> bfs_distances(const PathSystem& ps, StateId root);

}  // namespace matchmix

#endif
