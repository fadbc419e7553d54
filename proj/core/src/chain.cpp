#include "matchmix/chain.hpp"

#include <algorithm>

#include "matchmix/errors.hpp"

namespace matchmix {

std::string chain_name(ChainKind k) {
  switch (k) {
    case ChainKind::broder: return "broder";
    case ChainKind::jsv: return "jsv";
    case ChainKind::monomer_dimer: return "monomer_dimer";
  }
  return "?";
}

ChainKind parse_chain(const std::string& name) {
  if (name == "broder") return ChainKind::broder;
  if (name == "jsv") return ChainKind::jsv;
  if (name == "monomer_dimer" || name == "monomer-dimer")
    return ChainKind::monomer_dimer;
  throw ParseError("unknown chain: " + name);
}

Matching Matching::empty(const BipartiteGraph& g) {
  Matching m;
  m.partner_u.assign(g.n_u(), -1);
  m.partner_v.assign(g.n_v(), -1);
  m.size = 0;
  return m;
}

Matching Matching::from_partner_u(const BipartiteGraph& g,
                                  std::vector<VertexId> partner_u) {
  if (static_cast<VertexId>(partner_u.size()) != g.n_u())
    throw DomainError("partner vector has wrong length");
  Matching m;
  m.partner_u = std::move(partner_u);
  m.partner_v.assign(g.n_v(), -1);
  m.size = 0;
  for (VertexId u = 0; u < g.n_u(); ++u) {
    const VertexId v = m.partner_u[u];
    if (v < 0) continue;
    if (v >= g.n_v() || m.partner_v[v] != -1 || !g.has_edge(u, v))
      throw DomainError("partner vector is not a matching of g");
    m.partner_v[v] = u;
    ++m.size;
  }
  return m;
}

StateClass Matching::classify(const BipartiteGraph& g) const {
  if (!g.balanced()) return StateClass::general;
  if (size == g.n_u()) return StateClass::perfect;
  if (size == g.n_u() - 1) return StateClass::near_perfect;
  return StateClass::general;
}

HolePair Matching::holes(const BipartiteGraph& g) const {
  HolePair h;
  for (VertexId u = 0; u < g.n_u(); ++u)
    if (partner_u[u] < 0) h.u = u;
  for (VertexId v = 0; v < g.n_v(); ++v)
    if (partner_v[v] < 0) h.v = v;
  return h;
}

Move edge_move(const Matching& m, const BipartiteGraph& g, ChainKind kind,
               std::size_t edge_index) {
  const Edge e = g.edge(edge_index);
  Move mv;
  if (kind == ChainKind::monomer_dimer) {
    const VertexId mu = m.partner_u[e.u], mv_ = m.partner_v[e.v];
    if (mu == e.v) {  // remove
      mv.changes = true;
      mv.drop_u = e.u;
      mv.drop_v = e.v;
    } else if (mu < 0 && mv_ < 0) {  // add
      mv.changes = true;
      mv.add_u = e.u;
      mv.add_v = e.v;
    } else if (mu < 0) {  // exchange around v
      mv.changes = true;
      mv.add_u = e.u;
      mv.add_v = e.v;
      mv.drop_u = mv_;
      mv.drop_v = e.v;
    } else if (mv_ < 0) {  // exchange around u
      mv.changes = true;
      mv.add_u = e.u;
      mv.add_v = e.v;
      mv.drop_u = e.u;
      mv.drop_v = mu;
    }
    return mv;
  }

  // broder / jsv kernel on perfect and near-perfect matchings.
  const StateClass cls = m.classify(g);
  if (cls == StateClass::perfect) {
    if (m.partner_u[e.u] == e.v) {  // remove, opening holes (e.u, e.v)
      mv.changes = true;
      mv.drop_u = e.u;
      mv.drop_v = e.v;
    }
    return mv;
  }
  if (cls != StateClass::near_perfect)
    throw DomainError("state outside the chain's state space");
  const HolePair h = m.holes(g);
  if (e.u == h.u && e.v == h.v) {  // close both holes
    mv.changes = true;
    mv.add_u = e.u;
    mv.add_v = e.v;
  } else if (e.u == h.u && m.partner_v[e.v] >= 0) {
    // Slide the U hole: the V endpoint gives up its partner.
    mv.changes = true;
    mv.add_u = e.u;
    mv.add_v = e.v;
    mv.drop_u = m.partner_v[e.v];
    mv.drop_v = e.v;
  } else if (e.v == h.v && m.partner_u[e.u] >= 0) {
    mv.changes = true;
    mv.add_u = e.u;
    mv.add_v = e.v;
    mv.drop_u = e.u;
    mv.drop_v = m.partner_u[e.u];
  }
  return mv;
}

void apply_move(Matching& m, const Move& mv) {
  if (!mv.changes) return;
  if (mv.drop_u >= 0) {
    m.partner_u[mv.drop_u] = -1;
    m.partner_v[mv.drop_v] = -1;
    --m.size;
  }
  if (mv.add_u >= 0) {
    m.partner_u[mv.add_u] = mv.add_v;
    m.partner_v[mv.add_v] = mv.add_u;
    ++m.size;
  }
}

void undo_move(Matching& m, const Move& mv) {
  if (!mv.changes) return;
  if (mv.add_u >= 0) {
    m.partner_u[mv.add_u] = -1;
    m.partner_v[mv.add_v] = -1;
    --m.size;
  }
  if (mv.drop_u >= 0) {
    m.partner_u[mv.drop_u] = mv.drop_v;
    m.partner_v[mv.drop_v] = mv.drop_u;
    ++m.size;
  }
}

JsvWeights::JsvWeights(const MatchingCounts& counts) {
  if (!counts.perfect || !counts.near_by_holes)
    throw ConfigError("JSV weights need |M| and the per-hole counts");
  if (*counts.perfect == 0)
    throw DomainError("JSV weights need |M(G)| > 0");
  for (const auto& [holes, cnt] : *counts.near_by_holes) {
    if (cnt == 0) continue;
    by_class_.emplace(holes, Rat(*counts.perfect) / Rat(cnt));
  }
}

Rat JsvWeights::weight(StateClass cls, HolePair holes) const {
  if (cls == StateClass::perfect) return 1;
  if (cls != StateClass::near_perfect)
    throw DomainError("JSV weights are defined on perfect and near-perfect states");
  auto it = by_class_.find({holes.u, holes.v});
  if (it == by_class_.end())
    throw DomainError("empty hole class has no weight");
  return it->second;
}

Rat JsvWeights::weight_of(const Matching& m, const BipartiteGraph& g) const {
  const StateClass cls = m.classify(g);
  return weight(cls, cls == StateClass::near_perfect ? m.holes(g) : HolePair{});
}

std::vector<Proposal> neighbors(const Matching& m, const BipartiteGraph& g,
                                const ChainSpec& chain,
                                const JsvWeights* weights) {
  if (chain.kind == ChainKind::jsv && weights == nullptr)
    throw ConfigError("jsv neighbors need weights");
  const std::size_t edge_count = g.edges().size();
  const Rat kappa_unit = Rat(1) / Rat(edge_count);
  const Rat move_scale = Rat(1) - Rat(chain.laziness);

  std::vector<Proposal> out;
  Rat loop_mass = Rat(chain.laziness);
  Matching work = m;
  const Rat w_from = chain.kind == ChainKind::jsv
                         ? weights->weight_of(m, g)
                         : Rat(1);
  for (std::size_t i = 0; i < edge_count; ++i) {
    const Move mv = edge_move(work, g, chain.kind, i);
    if (!mv.changes) {
      loop_mass += move_scale * kappa_unit;
      continue;
    }
    apply_move(work, mv);
    Rat accept = 1;
    if (chain.kind == ChainKind::jsv) {
      const Rat w_to = weights->weight_of(work, g);
      if (w_to < w_from) accept = w_to / w_from;
    }
    const Rat p = move_scale * kappa_unit * accept;
    loop_mass += move_scale * kappa_unit * (Rat(1) - accept);
    auto same = std::find_if(out.begin(), out.end(), [&](const Proposal& pr) {
      return pr.target == work;
    });
    if (same != out.end())
      same->probability += p;
    else
      out.push_back({work, p});
    undo_move(work, mv);
  }
  out.push_back({m, loop_mass});
  return out;
}

}  // namespace matchmix
