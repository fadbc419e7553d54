#ifndef MATCHMIX_THRESHOLD_HPP
#define MATCHMIX_THRESHOLD_HPP

#include <vector>

#include "matchmix/bigint.hpp"
#include "matchmix/bipartite_graph.hpp"

namespace matchmix {

/// Canonical Ferrers ordering of a bipartite threshold graph: rows and
/// columns sorted by degree (descending, ties by original index).
struct ThresholdInfo {
  bool is_threshold = false;
  std::vector<VertexId> row_order;  // U indices, degree-descending
  std::vector<VertexId> col_order;  // V indices, degree-descending
  std::vector<int> row_sums;        // degrees in row_order
};

/// Checks whether the biadjacency matrix becomes a staircase of ones
/// (a Ferrers matrix) after sorting rows and columns by degree.
ThresholdInfo threshold_info(const BipartiteGraph& g);

struct BrualdiRyserResult {
  Int raw;    // r_n (r_{n-1} - 1) ... (r_1 - (n-1)); zero or below means no
              // perfect matching
  Int count;  // max(raw, 0)
};

/// Product formula for |M(G)| on square threshold graphs.
/// Throws DomainError if g is not threshold or not balanced.
BrualdiRyserResult brualdi_ryser_count(const BipartiteGraph& g);

/// Builds the threshold graph of a row-sum vector (values in [0, n],
/// any order); row i is joined to the first rows[i] columns.
BipartiteGraph ferrers_graph(const std::vector<int>& rows);

}  // namespace matchmix

#endif
