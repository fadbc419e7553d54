#include "matchmix/bipartite_graph.hpp"

#include <algorithm>
#include <queue>

#include <nlohmann/json.hpp>

#include "matchmix/errors.hpp"

namespace matchmix {

BipartiteGraph::BipartiteGraph(VertexId n_u, VertexId n_v,
                               std::vector<Edge> edges, std::string label)
    : n_u_(n_u), n_v_(n_v), edges_(std::move(edges)), label_(std::move(label)) {
  if (n_u_ < 0 || n_v_ < 0) throw DomainError("negative side size");
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.u < 0 || e.u >= n_u_ || e.v < 0 || e.v >= n_v_)
      throw DomainError("edge index out of range");
    if (i > 0 && edges_[i - 1] == e) throw DomainError("duplicate edge");
  }
  off_u_.assign(static_cast<std::size_t>(n_u_) + 1, 0);
  off_v_.assign(static_cast<std::size_t>(n_v_) + 1, 0);
  for (const Edge& e : edges_) {
    ++off_u_[static_cast<std::size_t>(e.u) + 1];
    ++off_v_[static_cast<std::size_t>(e.v) + 1];
  }
  for (VertexId u = 0; u < n_u_; ++u) off_u_[u + 1] += off_u_[u];
  for (VertexId v = 0; v < n_v_; ++v) off_v_[v + 1] += off_v_[v];
  nbr_u_.resize(edges_.size());
  nbr_v_.resize(edges_.size());
  std::vector<std::int64_t> pos_u(off_u_.begin(), off_u_.end() - 1);
  std::vector<std::int64_t> pos_v(off_v_.begin(), off_v_.end() - 1);
  for (const Edge& e : edges_) {
    nbr_u_[pos_u[e.u]++] = e.v;
    nbr_v_[pos_v[e.v]++] = e.u;
  }
}

std::span<const VertexId> BipartiteGraph::adj_u(VertexId u) const {
  return {nbr_u_.data() + off_u_[u],
          static_cast<std::size_t>(off_u_[u + 1] - off_u_[u])};
}

std::span<const VertexId> BipartiteGraph::adj_v(VertexId v) const {
  return {nbr_v_.data() + off_v_[v],
          static_cast<std::size_t>(off_v_[v + 1] - off_v_[v])};
}

bool BipartiteGraph::has_edge(VertexId u, VertexId v) const {
  auto nb = adj_u(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

bool BipartiteGraph::connected() const {
  const VertexId n = vertex_count();
  if (n <= 1) return true;
  // Vertices 0..n_u-1 are U, n_u..n-1 are V.
  std::vector<char> seen(n, 0);
  std::queue<VertexId> q;
  q.push(0);
  seen[0] = 1;
  VertexId reached = 1;
  while (!q.empty()) {
    VertexId x = q.front();
    q.pop();
    if (x < n_u_) {
      for (VertexId v : adj_u(x)) {
        if (!seen[n_u_ + v]) {
          seen[n_u_ + v] = 1;
          ++reached;
          q.push(n_u_ + v);
        }
      }
    } else {
      for (VertexId u : adj_v(x - n_u_)) {
        if (!seen[u]) {
          seen[u] = 1;
          ++reached;
          q.push(u);
        }
      }
    }
  }
  return reached == n;
}

BipartiteGraph BipartiteGraph::relabeled(std::string label) const {
  BipartiteGraph g = *this;
  g.label_ = std::move(label);
  return g;
}

namespace {

bool try_kuhn(const BipartiteGraph& g, VertexId u, std::vector<char>& used,
              std::vector<VertexId>& match_v) {
  for (VertexId v : g.adj_u(u)) {
    if (used[v]) continue;
    used[v] = 1;
    if (match_v[v] < 0 || try_kuhn(g, match_v[v], used, match_v)) {
      match_v[v] = u;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<VertexId> find_perfect_matching(const BipartiteGraph& g) {
  if (g.n_u() != g.n_v()) return {};
  std::vector<VertexId> match_v(g.n_v(), -1);
  for (VertexId u = 0; u < g.n_u(); ++u) {
    std::vector<char> used(g.n_v(), 0);
    if (!try_kuhn(g, u, used, match_v)) return {};
  }
  std::vector<VertexId> partner(g.n_u(), -1);
  for (VertexId v = 0; v < g.n_v(); ++v) partner[match_v[v]] = v;
  return partner;
}

bool has_perfect_matching(const BipartiteGraph& g) {
  if (g.n_u() == 0) return g.n_v() == 0;
  return !find_perfect_matching(g).empty();
}

std::string to_json(const BipartiteGraph& g) {
  nlohmann::json j;
  j["n_u"] = g.n_u();
  j["n_v"] = g.n_v();
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  j["label"] = g.label();
  return j.dump();
}

BipartiteGraph from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad graph JSON: ") + e.what());
  }
  if (!j.contains("n_u") || !j.contains("n_v") || !j.contains("edges"))
    throw ParseError("graph JSON needs n_u, n_v and edges");
  std::vector<Edge> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2)
      throw ParseError("graph JSON edge must be a [u,v] pair");
    edges.push_back({e[0].get<VertexId>(), e[1].get<VertexId>()});
  }
  return BipartiteGraph(j["n_u"].get<VertexId>(), j["n_v"].get<VertexId>(),
                        std::move(edges), j.value("label", std::string{}));
}

}  // namespace matchmix
