#ifndef MATCHMIX_STATE_GRAPH_HPP
#define MATCHMIX_STATE_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "matchmix/chain.hpp"

namespace matchmix {

using StateId = std::uint32_t;

struct StateGraphOptions {
  std::int64_t state_cap = 200000;
};

/// Explicit state graph of one chain on one bipartite graph: every state,
/// every arc with its exact transition probability, and the stationary
/// distribution. Immutable after construction and safe to share read-only.
class StateGraph {
 public:
  ChainSpec chain;
  BipartiteGraph graph;

  std::vector<Matching> states;  // discovery order from the scan
  // Per-state outgoing arcs sorted by target id, self-loop included.
  std::vector<std::vector<std::pair<StateId, double>>> rows;
  std::vector<double> pi;
  std::vector<Rat> pi_exact;
  std::vector<StateClass> state_class;
  std::vector<HolePair> state_holes;  // valid where class == near_perfect

  /// |M| and |N_uv| per hole class as counted during the scan; equals the
  /// true counts whenever the chain's state space is connected.
  MatchingCounts scan_counts;

  bool has_self_loop = false;
  bool aperiodic = false;
  double pi_min = 1.0;

  std::int64_t size() const { return static_cast<std::int64_t>(states.size()); }
  std::int64_t edge_count() const { return graph.edge_count(); }

  double prob(StateId x, StateId y) const;
  /// Index of a state by canonical key, or -1 if absent.
  std::int64_t state_index(const std::vector<VertexId>& partner_u) const;

  /// Variant with transitions (P + I)/2; stationary distribution unchanged.
  StateGraph half_lazy() const;

  /// For tests and small experiments: wraps an explicit row-stochastic
  /// matrix (dense, row-major) with its stationary distribution.
  static StateGraph from_matrix(const std::vector<std::vector<double>>& p,
                                const std::vector<double>& pi);

  void index_states();  // rebuilds the lookup table (used by builders)

  struct KeyHash {
    std::size_t operator()(const std::vector<VertexId>& key) const;
  };

 private:
  std::unordered_map<std::vector<VertexId>, StateId, KeyHash> index_;
};

/// Full scan of the chain's state space: BFS over kernel moves from a
/// perfect matching (broder/jsv) or the empty matching (monomer_dimer),
/// then exact transition probabilities and stationary distribution.
///
/// Throws StartError if broder/jsv have no start state, SizeError above the
/// state cap. Row-stochasticity and reversibility are verified exactly on
/// every build.
StateGraph build_state_graph(const BipartiteGraph& g, ChainSpec chain,
                             const StateGraphOptions& opts = {});

/// Spec'd accessor: the hole-class weight map from exact counts.
inline JsvWeights jsv_weights(const MatchingCounts& counts) {
  return JsvWeights(counts);
}

/// DOT rendering for small state graphs (loops omitted, arcs labeled with
/// probabilities). Throws SizeError above max_states.
void export_dot(const StateGraph& sg, std::ostream& out,
                std::size_t max_states = 200);

}  // namespace matchmix

#endif
