#ifndef MATCHMIX_GADGETS_HPP
#define MATCHMIX_GADGETS_HPP

#include <utility>
#include <vector>

#include "matchmix/bigint.hpp"
#include "matchmix/bipartite_graph.hpp"
#include "matchmix/enumerate.hpp"

namespace matchmix {

/// G' = G plus the pendant paths (u*, v', u'') and (v*, u', v''): four new
/// vertices, four new edges. Count ratios over G' recover the per-pair
/// ratio |N_{u*,v*}|/|M| from hole-row sums, which is what makes those sums
/// as hard as the pair counts.
struct AppendPathsGadget {
  BipartiteGraph graph;  // G'
  VertexId u_star, v_star;
  VertexId u_prime, u_dprime;  // u', u'' (new U indices)
  VertexId v_prime, v_dprime;  // v', v'' (new V indices)
};

AppendPathsGadget gadget_append_paths(const BipartiteGraph& g, VertexId u_star,
                                      VertexId v_star);

/// Both sides of the recorded identity, exact rationals via enumeration:
///   lhs = sum_v |N_{u'',v}(G')| / |M(G')|
///   rhs = sum_v |N_{u*,v}(G)| / |M(G)| + 1 + |N_{u*,v*}(G)| / |M(G)|
/// Throws DomainError when |M(G)| = 0 (the identity needs it).
std::pair<Rat, Rat> append_paths_identity(const BipartiteGraph& g,
                                          const AppendPathsGadget& gadget,
                                          const EnumerateOptions& opts = {});

/// G~ = G plus a pendant path on every vertex except one distinguished
/// u* in U: (v_i, u_i', v_i'') for each v_i, (u_i, v_i', u_i'') for each
/// u_i != u*. Keeps |M| fixed while relating |N(G~)|/|M| to hole-row sums.
struct TildeGadget {
  BipartiteGraph graph;  // G~
  VertexId u_star;
};

TildeGadget gadget_tilde(const BipartiteGraph& g, VertexId u_star);

/// Both sides of the recorded identity, exact rationals via enumeration:
///   lhs = |N(G~)| / |M(G~)|
///   rhs = 4 |N(G)|/|M(G)| + (2n - 1) - 2 sum_v |N_{u*,v}(G)|/|M(G)|
/// Throws DomainError when g is unbalanced or |M(G)| = 0.
std::pair<Rat, Rat> tilde_identity(const BipartiteGraph& g,
                                   const TildeGadget& gadget,
                                   const EnumerateOptions& opts = {});

/// Telescope product over the vertex-deletion sequence of a perfect
/// matching pm (edges ordered by U index):
///   prod_i |M(G_i)| / |N_{u_{i+1},v_{i+1}}(G_i)|  with  G_0 = G,
///   G_{i+1} = G_i minus the matched pair (u_{i+1}, v_{i+1}).
/// Contract: the product equals |M(G)| exactly.
/// Throws DomainError if pm is not a perfect matching of g.
Rat telescope_product(const BipartiteGraph& g,
                      const std::vector<VertexId>& pm_partner,
                      const EnumerateOptions& opts = {});

}  // namespace matchmix

#endif
