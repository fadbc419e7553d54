#include "matchmix/threshold.hpp"

#include <algorithm>
#include <numeric>

#include "matchmix/errors.hpp"

namespace matchmix {

ThresholdInfo threshold_info(const BipartiteGraph& g) {
  ThresholdInfo info;
  info.row_order.resize(g.n_u());
  info.col_order.resize(g.n_v());
  std::iota(info.row_order.begin(), info.row_order.end(), 0);
  std::iota(info.col_order.begin(), info.col_order.end(), 0);
  std::stable_sort(info.row_order.begin(), info.row_order.end(),
                   [&](VertexId a, VertexId b) {
                     return g.degree_u(a) > g.degree_u(b);
                   });
  std::stable_sort(info.col_order.begin(), info.col_order.end(),
                   [&](VertexId a, VertexId b) {
                     return g.degree_v(a) > g.degree_v(b);
                   });
  std::vector<VertexId> col_rank(g.n_v());
  for (VertexId j = 0; j < g.n_v(); ++j) col_rank[info.col_order[j]] = j;

  info.row_sums.reserve(g.n_u());
  info.is_threshold = true;
  for (VertexId u : info.row_order) {
    const int deg = g.degree_u(u);
    info.row_sums.push_back(deg);
    // The row must cover exactly the first deg columns in sorted order.
    std::uint64_t want_max = deg;
    for (VertexId v : g.adj_u(u)) {
      if (static_cast<std::uint64_t>(col_rank[v]) >= want_max) {
        info.is_threshold = false;
        return info;
      }
    }
  }
  return info;
}

BrualdiRyserResult brualdi_ryser_count(const BipartiteGraph& g) {
  if (g.n_u() != g.n_v())
    throw DomainError("Brualdi-Ryser needs a balanced graph");
  ThresholdInfo info = threshold_info(g);
  if (!info.is_threshold)
    throw DomainError("graph is not a bipartite threshold graph");
  const int n = g.n_u();
  BrualdiRyserResult r{1, 0};
  // Row i (1-based, sums descending) contributes r_i - (n - i).
  for (int i = 1; i <= n; ++i)
    r.raw *= Int(info.row_sums[static_cast<std::size_t>(i) - 1]) - (n - i);
  r.count = r.raw > 0 ? r.raw : Int(0);
  return r;
}

BipartiteGraph ferrers_graph(const std::vector<int>& rows) {
  const VertexId n = static_cast<VertexId>(rows.size());
  std::vector<Edge> edges;
  for (VertexId i = 0; i < n; ++i) {
    if (rows[i] < 0 || rows[i] > n)
      throw DomainError("row sum out of range for a square Ferrers matrix");
    for (VertexId j = 0; j < rows[i]; ++j) edges.push_back({i, j});
  }
  return BipartiteGraph(n, n, std::move(edges));
}

}  // namespace matchmix
