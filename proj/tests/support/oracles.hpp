#ifndef MATCHMIX_TESTS_ORACLES_HPP
#define MATCHMIX_TESTS_ORACLES_HPP

// Test-only oracles, kept independent of the library code paths they check.

#include <string>
#include <vector>

#include "matchmix/bipartite_graph.hpp"
#include "matchmix/flows.hpp"
#include "matchmix/rng.hpp"
#include "matchmix/state_graph.hpp"

namespace matchmix::testing {

/// Reference graph6 decoder, written against the published format
/// description with a separate bit-unpacking strategy from the library's
/// streaming reader. Returns (n, flat adjacency matrix row-major).
std::pair<int, std::vector<char>> decode_graph6_reference(
    const std::string& line);

/// Random connected bipartite graph with the given side sizes (edge
/// probability ramps up until connected).
BipartiteGraph random_connected_bipartite(Rng& rng, VertexId n_u, VertexId n_v);

/// Random connected balanced bipartite graph that has a perfect matching.
BipartiteGraph random_balanced_with_pm(Rng& rng, VertexId side);

/// All connected bipartite graphs on exactly n vertices, one per
/// isomorphism class (biadjacency canonicalization over row/column
/// permutations, transposition included for balanced splits). Usable up to
/// n = 8 or so.
std::vector<BipartiteGraph> connected_bipartite_corpus(int n);

/// Exhaustive all-shortest-paths congestion: enumerates every shortest
/// path of every ordered pair explicitly (exponential; |Omega| <= ~60).
struct BruteCongestion {
  double rho1 = 0.0;
  double rho2 = 0.0;
};
BruteCongestion p3_congestion_bruteforce(const StateGraph& sg);

/// Number of shortest x->y paths by explicit DFS enumeration.
std::int64_t count_shortest_paths_dfs(const PathSystem& ps, StateId x,
                                      StateId y);

/// Upper-tail p-value of a chi-square statistic.
double chi_square_p_value(double statistic, int dof);

}  // namespace matchmix::testing

#endif
