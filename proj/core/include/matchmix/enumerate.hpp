#ifndef MATCHMIX_ENUMERATE_HPP
#define MATCHMIX_ENUMERATE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "matchmix/bigint.hpp"
#include "matchmix/bipartite_graph.hpp"

namespace matchmix {

/// Exact matching counts. Fields are optional because different producers
/// fill different subsets (closed forms vs. full enumeration).
struct MatchingCounts {
  std::optional<Int> perfect;                                  // |M(G)|
  std::optional<std::map<std::pair<VertexId, VertexId>, Int>>  // |N_{u,v}(G)|
      near_by_holes;
  std::optional<Int> near_total;    // |N(G)|
  std::optional<Int> all_matchings;  // all matchings of any size

  /// Count for hole pair (u,v); zero if the class is empty.
  Int near(VertexId u, VertexId v) const;
};

enum class EnumerateMode { perfect, near_perfect, all };

struct EnumerateOptions {
  // Counting uses recursion over U-vertices with memoization on the set of
  // used V-vertices that can still matter, so structured graphs far above
  // the default cap finish quickly; the caps exist to fail loudly instead
  // of hanging on dense inputs.
  int max_vertices = 40;               // cap on n_U + n_V
  std::size_t max_memo = 1u << 23;     // cap on memo entries per count
  std::size_t max_listed = 1'000'000;  // cap for explicit listings
};

/// Exhaustive counts, independent of the state-graph machinery.
/// perfect fills |M|; near_perfect additionally fills the per-hole map and
/// |N|; all fills everything including the total matching count.
MatchingCounts enumerate_matchings(const BipartiteGraph& g, EnumerateMode mode,
                                   const EnumerateOptions& opts = {});

/// |M(G)| by itself.
Int count_perfect(const BipartiteGraph& g, const EnumerateOptions& opts = {});

/// |N_{skip_u, skip_v}(G)| = number of perfect matchings of G minus the two
/// hole vertices.
Int count_near(const BipartiteGraph& g, VertexId skip_u, VertexId skip_v,
               const EnumerateOptions& opts = {});

/// Perfect matchings of g minus the masked vertices (bit i of a mask
/// excludes vertex i of that side). Needs n_U, n_V <= 64.
Int count_perfect_excluding(const BipartiteGraph& g, std::uint64_t skip_u_mask,
                            std::uint64_t skip_v_mask,
                            const EnumerateOptions& opts = {});

/// Total number of matchings of every size.
Int count_all_matchings(const BipartiteGraph& g,
                        const EnumerateOptions& opts = {});

/// Explicit perfect matchings as U-partner vectors, in lexicographic order.
std::vector<std::vector<VertexId>> list_perfect_matchings(
    const BipartiteGraph& g, const EnumerateOptions& opts = {});

}  // namespace matchmix

#endif
