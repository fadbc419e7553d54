#ifndef MATCHMIX_GRAPH6_HPP
#define MATCHMIX_GRAPH6_HPP

#include <string>

#include "matchmix/bipartite_graph.hpp"

namespace matchmix {

/// Decodes one graph6 line (nauty's format) and recovers a bipartition by
/// BFS 2-coloring: the color class containing vertex 0 becomes U, and the
/// original vertex order is preserved within each class. In disconnected
/// inputs the smallest unvisited vertex of each component starts with U's
/// color, which keeps the result deterministic.
///
/// Throws ParseError on malformed input and DomainError when an odd cycle
/// makes the graph non-bipartite.
BipartiteGraph parse_graph6(const std::string& line);

/// Encodes with vertex order U_0..U_{nu-1}, V_0..V_{nv-1}; supports up to
/// 258047 vertices (the one- and four-byte size forms).
std::string to_graph6(const BipartiteGraph& g);

}  // namespace matchmix

#endif
