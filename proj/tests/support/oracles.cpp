#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <boost/math/distributions/chi_squared.hpp>

#include "matchmix/errors.hpp"

namespace matchmix::testing {

std::pair<int, std::vector<char>> decode_graph6_reference(
    const std::string& raw) {
  std::string line = raw;
  if (line.rfind(">>graph6<<", 0) == 0) line = line.substr(10);
  if (line.empty()) throw ParseError("empty");
  std::size_t pos = 0;
  long n;
  if (line[0] == '~') {
    if (line.size() < 4) throw ParseError("short");
    n = ((line[1] - 63L) << 12) | ((line[2] - 63L) << 6) | (line[3] - 63L);
    pos = 4;
  } else {
    n = line[0] - 63;
    pos = 1;
  }
  // Expand every remaining byte to bits first, then consume.
  std::vector<int> bits;
  for (; pos < line.size(); ++pos) {
    const int c = static_cast<unsigned char>(line[pos]) - 63;
    if (c < 0 || c > 63) throw ParseError("byte");
    for (int b = 5; b >= 0; --b) bits.push_back((c >> b) & 1);
  }
  const long need = n * (n - 1) / 2;
  if (static_cast<long>(bits.size()) < need) throw ParseError("bits");
  std::vector<char> adj(n * n, 0);
  long idx = 0;
  for (long y = 1; y < n; ++y)
    for (long x = 0; x < y; ++x)
      if (bits[idx++]) adj[x * n + y] = adj[y * n + x] = 1;
  return {static_cast<int>(n), adj};
}

namespace {

bool bip_connected(VertexId n_u, VertexId n_v, const std::vector<Edge>& edges) {
  const int n = n_u + n_v;
  if (n == 0) return true;
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : edges) {
    adj[e.u].push_back(n_u + e.v);
    adj[n_u + e.v].push_back(e.u);
  }
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int cnt = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++cnt;
        stack.push_back(y);
      }
  }
  return cnt == n;
}

}  // namespace

BipartiteGraph random_connected_bipartite(Rng& rng, VertexId n_u, VertexId n_v) {
  for (int density = 30;; density = std::min(95, density + 5)) {
    std::vector<Edge> edges;
    for (VertexId u = 0; u < n_u; ++u)
      for (VertexId v = 0; v < n_v; ++v)
        if (rng.below(100) < static_cast<std::uint64_t>(density))
          edges.push_back({u, v});
    if (bip_connected(n_u, n_v, edges))
      return BipartiteGraph(n_u, n_v, std::move(edges));
  }
}

BipartiteGraph random_balanced_with_pm(Rng& rng, VertexId side) {
  while (true) {
    BipartiteGraph g = random_connected_bipartite(rng, side, side);
    if (has_perfect_matching(g)) return g;
  }
}

namespace {

/// Canonical form of one biadjacency bit matrix: the minimum row-word
/// vector over all row and column permutations (and the transpose when the
/// sides have equal size).
std::vector<std::uint32_t> canonical_biadjacency(int a, int b,
                                                 std::uint64_t mask) {
  std::vector<int> rows(a), cols(b);
  std::vector<std::uint32_t> best;
  auto consider = [&](bool transpose) {
    const int ra = transpose ? b : a;
    const int rb = transpose ? a : b;
    std::vector<int> rp(ra), cp(rb);
    std::iota(rp.begin(), rp.end(), 0);
    do {
      std::iota(cp.begin(), cp.end(), 0);
      do {
        std::vector<std::uint32_t> words(ra, 0);
        for (int i = 0; i < ra; ++i) {
          for (int j = 0; j < rb; ++j) {
            const int oi = transpose ? cp[j] : rp[i];
            const int oj = transpose ? rp[i] : cp[j];
            if (mask >> (oi * (transpose ? rb : b) + oj) & 1)
              words[i] |= 1u << j;
          }
        }
        if (best.empty() || words < best) best = std::move(words);
      } while (std::next_permutation(cp.begin(), cp.end()));
    } while (std::next_permutation(rp.begin(), rp.end()));
  };
  consider(false);
  if (a == b) consider(true);
  (void)rows;
  (void)cols;
  return best;
}

}  // namespace

std::vector<BipartiteGraph> connected_bipartite_corpus(int n) {
  if (n < 1 || n > 9) throw SizeError("corpus generator handles 1..9 vertices");
  std::vector<BipartiteGraph> out;
  if (n == 1) {
    out.push_back(BipartiteGraph(1, 0, {}));
    return out;
  }
  for (int a = 1; a <= n / 2; ++a) {
    const int b = n - a;
    const int bits = a * b;
    std::set<std::pair<int, std::vector<std::uint32_t>>> seen;
    for (std::uint64_t mask = 0; mask < (1ull << bits); ++mask) {
      std::vector<Edge> edges;
      for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j)
          if (mask >> (i * b + j) & 1)
            edges.push_back({VertexId(i), VertexId(j)});
      if (static_cast<int>(edges.size()) < n - 1) continue;
      if (!bip_connected(a, b, edges)) continue;
      auto canon = canonical_biadjacency(a, b, mask);
      if (seen.emplace(a, std::move(canon)).second)
        out.push_back(BipartiteGraph(a, b, std::move(edges)));
    }
  }
  return out;
}

namespace {

void enumerate_shortest_paths(
    const PathSystem& ps, const std::vector<std::int32_t>& dist, StateId y,
    std::vector<StateId>& cur, std::vector<std::vector<StateId>>& out) {
  const StateId v = cur.back();
  if (v == y) {
    out.push_back(cur);
    return;
  }
  for (StateId w : ps.support[v]) {
    if (dist[w] == dist[v] + 1 && dist[w] <= dist[y]) {
      cur.push_back(w);
      enumerate_shortest_paths(ps, dist, y, cur, out);
      cur.pop_back();
    }
  }
}

}  // namespace

std::int64_t count_shortest_paths_dfs(const PathSystem& ps, StateId x,
                                      StateId y) {
  const auto dist = bfs_distances(ps, x);
  std::vector<std::vector<StateId>> paths;
  std::vector<StateId> cur{x};
  enumerate_shortest_paths(ps, dist, y, cur, paths);
  std::int64_t cnt = 0;
  for (const auto& p : paths)
    if (p.back() == y && static_cast<std::int32_t>(p.size()) == dist[y] + 1)
      ++cnt;
  return cnt;
}

BruteCongestion p3_congestion_bruteforce(const StateGraph& sg) {
  PathSystem ps = build_paths(sg, PathSystemKind::all_shortest_p3);
  const std::int64_t n = sg.size();
  // arc loadings keyed densely
  std::vector<std::vector<double>> f1(n, std::vector<double>(n, 0.0));
  auto f2 = f1;
  for (StateId x = 0; x < static_cast<StateId>(n); ++x) {
    const auto dist = bfs_distances(ps, x);
    for (StateId y = 0; y < static_cast<StateId>(n); ++y) {
      if (x == y) continue;
      std::vector<std::vector<StateId>> paths;
      std::vector<StateId> cur{x};
      enumerate_shortest_paths(ps, dist, y, cur, paths);
      std::vector<std::vector<StateId>> keep;
      for (auto& p : paths)
        if (p.back() == y && static_cast<std::int32_t>(p.size()) == dist[y] + 1)
          keep.push_back(std::move(p));
      const double delta1 = sg.pi[x] * sg.pi[y] / static_cast<double>(keep.size());
      const double delta2 = delta1 * dist[y];
      for (const auto& p : keep) {
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
          f1[p[i]][p[i + 1]] += delta1;
          f2[p[i]][p[i + 1]] += delta2;
        }
      }
    }
  }
  BruteCongestion bc;
  for (StateId x = 0; x < static_cast<StateId>(n); ++x) {
    for (StateId y : ps.support[x]) {
      const double q = sg.pi[x] * sg.prob(x, y);
      bc.rho1 = std::max(bc.rho1, f1[x][y] / q);
      bc.rho2 = std::max(bc.rho2, f2[x][y] / q);
    }
  }
  return bc;
}

double chi_square_p_value(double statistic, int dof) {
  if (dof <= 0) return 1.0;
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

}  // namespace matchmix::testing
