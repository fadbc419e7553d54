#ifndef MATCHMIX_BIPARTITE_GRAPH_HPP
#define MATCHMIX_BIPARTITE_GRAPH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace matchmix {

using VertexId = std::int32_t;

struct Edge {
  VertexId u;  // index into the U side
  VertexId v;  // index into the V side
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple bipartite graph G = (U ∪ V, E) with fixed vertex bipartition.
///
/// The edge list is kept sorted by (u, v), so edge index i is deterministic
/// across runs; all chain kernels pick edges by this index. Instances are
/// immutable after construction and safe to share between threads.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  /// Validates index ranges, rejects duplicate edges, sorts the edge list
  /// and builds adjacency. Throws DomainError on invalid input.
  BipartiteGraph(VertexId n_u, VertexId n_v, std::vector<Edge> edges,
                 std::string label = {});

  VertexId n_u() const { return n_u_; }
  VertexId n_v() const { return n_v_; }
  VertexId vertex_count() const { return n_u_ + n_v_; }
  std::int64_t edge_count() const {
    return static_cast<std::int64_t>(edges_.size());
  }
  bool balanced() const { return n_u_ == n_v_; }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }
  const std::string& label() const { return label_; }

  /// Neighbors of U-vertex u (V indices, ascending).
  std::span<const VertexId> adj_u(VertexId u) const;
  /// Neighbors of V-vertex v (U indices, ascending).
  std::span<const VertexId> adj_v(VertexId v) const;

  VertexId degree_u(VertexId u) const {
    return static_cast<VertexId>(adj_u(u).size());
  }
  VertexId degree_v(VertexId v) const {
    return static_cast<VertexId>(adj_v(v).size());
  }

  bool has_edge(VertexId u, VertexId v) const;

  /// True if every vertex is reachable from U-vertex 0 (false for the
  /// empty graph only if it has vertices but no edges connecting them).
  bool connected() const;

  /// Returns a copy with a different label.
  BipartiteGraph relabeled(std::string label) const;

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.n_u_ == b.n_u_ && a.n_v_ == b.n_v_ && a.edges_ == b.edges_;
  }

 private:
  VertexId n_u_ = 0;
  VertexId n_v_ = 0;
  std::vector<Edge> edges_;
  std::string label_;
  // CSR adjacency for both sides.
  std::vector<std::int64_t> off_u_, off_v_;
  std::vector<VertexId> nbr_u_, nbr_v_;
};

/// One perfect matching found by augmenting paths, as a U-partner vector
/// (partner[u] = v), or an empty vector if none exists.
std::vector<VertexId> find_perfect_matching(const BipartiteGraph& g);

bool has_perfect_matching(const BipartiteGraph& g);

/// Edge-list JSON: {"n_u":int,"n_v":int,"edges":[[u,v],...],"label":str}.
std::string to_json(const BipartiteGraph& g);
BipartiteGraph from_json(const std::string& text);

}  // namespace matchmix

#endif
