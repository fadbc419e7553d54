#include "matchmix/gadgets.hpp"

#include "matchmix/errors.hpp"

namespace matchmix {

AppendPathsGadget gadget_append_paths(const BipartiteGraph& g, VertexId u_star,
                                      VertexId v_star) {
  if (u_star < 0 || u_star >= g.n_u() || v_star < 0 || v_star >= g.n_v())
    throw DomainError("gadget vertex out of range");
  AppendPathsGadget out;
  out.u_star = u_star;
  out.v_star = v_star;
  out.u_prime = g.n_u();
  out.u_dprime = g.n_u() + 1;
  out.v_prime = g.n_v();
  out.v_dprime = g.n_v() + 1;
  std::vector<Edge> edges = g.edges();
  edges.push_back({u_star, out.v_prime});
  edges.push_back({out.u_dprime, out.v_prime});
  edges.push_back({out.u_prime, v_star});
  edges.push_back({out.u_prime, out.v_dprime});
  out.graph = BipartiteGraph(g.n_u() + 2, g.n_v() + 2, std::move(edges),
                             g.label().empty() ? "append_paths"
                                               : g.label() + "+append_paths");
  return out;
}

std::pair<Rat, Rat> append_paths_identity(const BipartiteGraph& g,
                                          const AppendPathsGadget& gadget,
                                          const EnumerateOptions& opts) {
  const Int m_g = count_perfect(g, opts);
  if (m_g == 0) throw DomainError("identity needs |M(G)| > 0");
  const Int m_gp = count_perfect(gadget.graph, opts);

  Int lhs_num = 0;
  for (VertexId v = 0; v < gadget.graph.n_v(); ++v)
    lhs_num += count_near(gadget.graph, gadget.u_dprime, v, opts);
  const Rat lhs = Rat(lhs_num) / Rat(m_gp);

  Int row_sum = 0;
  for (VertexId v = 0; v < g.n_v(); ++v)
    row_sum += count_near(g, gadget.u_star, v, opts);
  const Rat rhs = Rat(row_sum) / Rat(m_g) + 1 +
                  Rat(count_near(g, gadget.u_star, gadget.v_star, opts)) /
                      Rat(m_g);
  return {lhs, rhs};
}

TildeGadget gadget_tilde(const BipartiteGraph& g, VertexId u_star) {
  if (u_star < 0 || u_star >= g.n_u())
    throw DomainError("gadget vertex out of range");
  TildeGadget out;
  out.u_star = u_star;
  std::vector<Edge> edges = g.edges();
  // Path (v_i, u_i', v_i'') for every v_i: u_i' = n_u + i,
  // v_i'' = n_v + (n_u - 1) + i.
  const VertexId u_prime_base = g.n_u();
  const VertexId v_dprime_base = g.n_v() + g.n_u() - 1;
  for (VertexId i = 0; i < g.n_v(); ++i) {
    edges.push_back({u_prime_base + i, i});
    edges.push_back({u_prime_base + i, v_dprime_base + i});
  }
  // Path (u_i, v_i', u_i'') for every u_i != u*: rank r skips u*;
  // v_i' = n_v + r, u_i'' = n_u + n_v + r.
  const VertexId v_prime_base = g.n_v();
  const VertexId u_dprime_base = g.n_u() + g.n_v();
  VertexId rank = 0;
  for (VertexId i = 0; i < g.n_u(); ++i) {
    if (i == u_star) continue;
    edges.push_back({i, v_prime_base + rank});
    edges.push_back({u_dprime_base + rank, v_prime_base + rank});
    ++rank;
  }
  const VertexId new_nu = g.n_u() + g.n_v() + (g.n_u() - 1);
  const VertexId new_nv = g.n_v() + (g.n_u() - 1) + g.n_v();
  out.graph = BipartiteGraph(new_nu, new_nv, std::move(edges),
                             g.label().empty() ? "tilde" : g.label() + "+tilde");
  return out;
}

std::pair<Rat, Rat> tilde_identity(const BipartiteGraph& g,
                                   const TildeGadget& gadget,
                                   const EnumerateOptions& opts) {
  if (!g.balanced()) throw DomainError("identity needs a balanced graph");
  const Int m_g = count_perfect(g, opts);
  if (m_g == 0) throw DomainError("identity needs |M(G)| > 0");

  const MatchingCounts tilde_counts =
      enumerate_matchings(gadget.graph, EnumerateMode::near_perfect, opts);
  const Rat lhs = Rat(*tilde_counts.near_total) / Rat(*tilde_counts.perfect);

  const MatchingCounts g_counts =
      enumerate_matchings(g, EnumerateMode::near_perfect, opts);
  Int row_sum = 0;
  for (VertexId v = 0; v < g.n_v(); ++v) row_sum += g_counts.near(gadget.u_star, v);
  const Rat rhs = Rat(4) * Rat(*g_counts.near_total) / Rat(m_g) +
                  (2 * g.n_u() - 1) - Rat(2) * Rat(row_sum) / Rat(m_g);
  return {lhs, rhs};
}

Rat telescope_product(const BipartiteGraph& g,
                      const std::vector<VertexId>& pm_partner,
                      const EnumerateOptions& opts) {
  if (!g.balanced() || static_cast<VertexId>(pm_partner.size()) != g.n_u())
    throw DomainError("telescope needs a perfect matching of a balanced graph");
  std::vector<char> v_seen(g.n_v(), 0);
  for (VertexId u = 0; u < g.n_u(); ++u) {
    const VertexId v = pm_partner[u];
    if (v < 0 || v >= g.n_v() || v_seen[v] || !g.has_edge(u, v))
      throw DomainError("telescope needs a perfect matching of g");
    v_seen[v] = 1;
  }
  if (g.n_u() > 64) throw SizeError("telescope supports at most 64 vertices per side");

  Rat product = 1;
  std::uint64_t skip_u = 0, skip_v = 0;
  for (VertexId u = 0; u < g.n_u(); ++u) {
    const Int num = count_perfect_excluding(g, skip_u, skip_v, opts);
    skip_u |= 1ull << u;
    skip_v |= 1ull << pm_partner[u];
    const Int den = count_perfect_excluding(g, skip_u, skip_v, opts);
    product *= Rat(num) / Rat(den);
  }
  return product;
}

}  // namespace matchmix
