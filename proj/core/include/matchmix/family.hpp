#ifndef MATCHMIX_FAMILY_HPP
#define MATCHMIX_FAMILY_HPP

#include <string>
#include <utility>

#include "matchmix/bipartite_graph.hpp"
#include "matchmix/enumerate.hpp"

namespace matchmix {

/// The four scalable graph families with closed-form matching counts.
///
/// hexagon             k >= 1 hexagons chained between end vertices u, v;
///                     2n = 6k+2, unique perfect matching, |N_uv| = 2^k.
/// triangle_threshold  threshold graph of the staircase n x n biadjacency
///                     matrix (row i has n-i+1 ones), odd n; unique perfect
///                     matching, |N_{u_n,v_n}| = 2^{n-2}.
/// regular_chain       3-regular planar graph: u and v joined by three rows
///                     of k eight-vertex blocks; 2n = 24k+2,
///                     |M| = 6^{2k} 3^{k+1}, |N_uv| = 6^{3k}.
/// regular_ladder      3-regular Hamiltonian variant: two of the rows plus a
///                     ladder with k+2 rungs form the upper part; 2n = 26k+6,
///                     |N_uv| = 6^{3k} F_{k+3}; k must be even.
enum class Family { hexagon, triangle_threshold, regular_chain, regular_ladder };

struct FamilySpec {
  Family family;
  int size_parameter;  // k, or the odd matrix size n for triangle_threshold
};

/// Parses "hexagon:3", "regular_ladder:2", ...
FamilySpec parse_family_spec(const std::string& text);
std::string family_name(Family f);

/// Builds the family graph with the canonical labeling: blocks left to
/// right, top to bottom within a block, u = U-index 0 and v = V-index 0
/// (for triangle_threshold the distinguished holes are (n-1, n-1) instead).
/// Throws DomainError on parameter/parity violations.
BipartiteGraph generate_family(const FamilySpec& spec);

/// The hole pair (u, v) whose near-perfect count has a closed form.
std::pair<VertexId, VertexId> family_distinguished_holes(const FamilySpec& spec);

/// Closed-form |M(G)| and |N_{u,v}(G)| at the distinguished holes; other
/// fields stay empty.
MatchingCounts expected_counts(const FamilySpec& spec);

/// Standalone ladder with `rungs` rungs (two rails joined by rungs);
/// |M(L_k)| follows the Fibonacci recurrence.
BipartiteGraph ladder_graph(int rungs);

}  // namespace matchmix

#endif
