#include "matchmix/family.hpp"

#include <charconv>

#include "matchmix/errors.hpp"

namespace matchmix {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw DomainError(msg);
}

BipartiteGraph make_hexagon(int k) {
  require(k >= 1, "hexagon family needs k >= 1");
  // Hexagon i occupies U indices 3(i-1)+1..3(i-1)+3 (cycle positions
  // 1, 3, 5) and the same V indices (cycle positions 0, 2, 4).
  const VertexId side = 3 * k + 1;
  std::vector<Edge> edges;
  auto hex_u = [](int i, int slot) { return VertexId(3 * (i - 1) + slot); };
  for (int i = 1; i <= k; ++i) {
    const VertexId u1 = hex_u(i, 1), u3 = hex_u(i, 2), u5 = hex_u(i, 3);
    const VertexId v0 = hex_u(i, 1), v2 = hex_u(i, 2), v4 = hex_u(i, 3);
    edges.push_back({u1, v0});
    edges.push_back({u1, v2});
    edges.push_back({u3, v2});
    edges.push_back({u3, v4});
    edges.push_back({u5, v4});
    edges.push_back({u5, v0});
  }
  edges.push_back({0, 1});  // u to the west pole of hexagon 1
  for (int i = 1; i < k; ++i)
    edges.push_back({hex_u(i, 2), hex_u(i + 1, 1)});  // east pole to west pole
  edges.push_back({hex_u(k, 2), 0});                  // east pole of hexagon k to v
  return BipartiteGraph(side, side, std::move(edges),
                        "hexagon:" + std::to_string(k));
}

BipartiteGraph make_triangle_threshold(int n) {
  require(n >= 3 && n % 2 == 1, "triangle_threshold family needs odd n >= 3");
  std::vector<Edge> edges;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = 0; i + j <= n - 1; ++j) edges.push_back({i, j});
  return BipartiteGraph(n, n, std::move(edges),
                        "triangle_threshold:" + std::to_string(n));
}

// Eight-vertex block shared by the regular families. Terminals: L (V side)
// takes the incoming chain edge, R (U side) the outgoing one. The block has
// 6 internal perfect matchings, and 3 once both terminals are matched
// externally.
struct BlockLayout {
  VertexId u1, u2, u3, r;  // U side
  VertexId l, v1, v2, v3;  // V side
};

void add_block_edges(std::vector<Edge>& edges, const BlockLayout& b) {
  edges.push_back({b.u1, b.l});
  edges.push_back({b.u2, b.l});
  edges.push_back({b.r, b.v1});
  edges.push_back({b.r, b.v2});
  edges.push_back({b.u1, b.v2});
  edges.push_back({b.u1, b.v3});
  edges.push_back({b.u2, b.v1});
  edges.push_back({b.u2, b.v3});
  edges.push_back({b.u3, b.v1});
  edges.push_back({b.u3, b.v2});
  edges.push_back({b.u3, b.v3});
}

BlockLayout block_at(VertexId base) {
  return {base, base + 1, base + 2, base + 3, base, base + 1, base + 2,
          base + 3};
}

// Three rows of k blocks between u and v; returns the row blocks.
std::vector<std::vector<BlockLayout>> lay_out_rows(int k, int rows,
                                                   std::vector<Edge>& edges) {
  std::vector<std::vector<BlockLayout>> out(rows);
  for (int r = 0; r < rows; ++r) {
    for (int j = 0; j < k; ++j) {
      BlockLayout b = block_at(VertexId(1 + (r * k + j) * 4));
      add_block_edges(edges, b);
      if (j > 0) edges.push_back({out[r].back().r, b.l});
      out[r].push_back(b);
    }
  }
  return out;
}

BipartiteGraph make_regular_chain(int k) {
  require(k >= 1, "regular_chain family needs k >= 1");
  std::vector<Edge> edges;
  auto rows = lay_out_rows(k, 3, edges);
  for (int r = 0; r < 3; ++r) {
    edges.push_back({0, rows[r].front().l});
    edges.push_back({rows[r].back().r, 0});
  }
  const VertexId side = VertexId(1 + 12 * k);
  return BipartiteGraph(side, side, std::move(edges),
                        "regular_chain:" + std::to_string(k));
}

BipartiteGraph make_regular_ladder(int k) {
  require(k >= 2 && k % 2 == 0, "regular_ladder family needs even k >= 2");
  std::vector<Edge> edges;
  auto rows = lay_out_rows(k, 3, edges);

  // Ladder with k+2 rungs. Rung i uses U-ladder index 12k+i and V-ladder
  // index 12k+i: the top rail vertex t_i is on the V side for odd i, the
  // bottom rail vertex w_i for even i.
  const int rungs = k + 2;
  const VertexId lad = VertexId(12 * k);
  auto lad_idx = [lad](int i) { return lad + VertexId(i); };
  for (int i = 1; i <= rungs; ++i)
    edges.push_back({lad_idx(i), lad_idx(i)});  // rung t_i - w_i
  for (int i = 1; i < rungs; ++i) {
    // Both rails: between columns i and i+1 exactly one endpoint of each
    // rail edge is on the U side, alternating with i.
    if (i % 2 == 1) {
      edges.push_back({lad_idx(i + 1), lad_idx(i)});      // t_{i+1}(U) - t_i(V)
      edges.push_back({lad_idx(i), lad_idx(i + 1)});      // w_i(U) - w_{i+1}(V)
    } else {
      edges.push_back({lad_idx(i), lad_idx(i + 1)});      // t_i(U) - t_{i+1}(V)
      edges.push_back({lad_idx(i + 1), lad_idx(i)});      // w_{i+1}(U) - w_i(V)
    }
  }

  // Row 0 (blocks b): u -> blocks -> east ladder corner w_{k+2} (V side).
  edges.push_back({0, rows[0].front().l});
  edges.push_back({rows[0].back().r, lad_idx(rungs)});
  // Ladder west corners: u - t_1 (V side), w_1 (U side) - row 1 entry.
  edges.push_back({0, lad_idx(1)});
  edges.push_back({lad_idx(1), rows[1].front().l});
  // Row 1 (blocks b') exits to v; east top corner t_{k+2} (U side) - v.
  edges.push_back({rows[1].back().r, 0});
  edges.push_back({lad_idx(rungs), 0});
  // Row 2 (blocks b''): u -> blocks -> v.
  edges.push_back({0, rows[2].front().l});
  edges.push_back({rows[2].back().r, 0});

  const VertexId side = VertexId(1 + 12 * k + rungs);
  return BipartiteGraph(side, side, std::move(edges),
                        "regular_ladder:" + std::to_string(k));
}

}  // namespace

BipartiteGraph ladder_graph(int rungs) {
  require(rungs >= 1, "ladder needs at least one rung");
  // Rung i pairs U index i-1 with V index i-1; rail vertices alternate
  // sides, as in the regular_ladder family.
  std::vector<Edge> edges;
  for (int i = 1; i <= rungs; ++i)
    edges.push_back({VertexId(i - 1), VertexId(i - 1)});
  for (int i = 1; i < rungs; ++i) {
    if (i % 2 == 1) {
      edges.push_back({VertexId(i), VertexId(i - 1)});
      edges.push_back({VertexId(i - 1), VertexId(i)});
    } else {
      edges.push_back({VertexId(i - 1), VertexId(i)});
      edges.push_back({VertexId(i), VertexId(i - 1)});
    }
  }
  return BipartiteGraph(rungs, rungs, std::move(edges),
                        "ladder:" + std::to_string(rungs));
}

std::string family_name(Family f) {
  switch (f) {
    case Family::hexagon: return "hexagon";
    case Family::triangle_threshold: return "triangle_threshold";
    case Family::regular_chain: return "regular_chain";
    case Family::regular_ladder: return "regular_ladder";
  }
  return "?";
}

FamilySpec parse_family_spec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ParseError("family spec must look like name:k");
  const std::string name = text.substr(0, colon);
  const std::string num = text.substr(colon + 1);
  int param = 0;
  auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), param);
  if (ec != std::errc{} || p != num.data() + num.size())
    throw ParseError("bad family size parameter: " + num);
  Family fam;
  if (name == "hexagon") fam = Family::hexagon;
  else if (name == "triangle_threshold") fam = Family::triangle_threshold;
  else if (name == "regular_chain") fam = Family::regular_chain;
  else if (name == "regular_ladder") fam = Family::regular_ladder;
  else throw ParseError("unknown family: " + name);
  return {fam, param};
}

BipartiteGraph generate_family(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::hexagon: return make_hexagon(spec.size_parameter);
    case Family::triangle_threshold:
      return make_triangle_threshold(spec.size_parameter);
    case Family::regular_chain: return make_regular_chain(spec.size_parameter);
    case Family::regular_ladder:
      return make_regular_ladder(spec.size_parameter);
  }
  throw DomainError("unknown family");
}

std::pair<VertexId, VertexId> family_distinguished_holes(const FamilySpec& spec) {
  if (spec.family == Family::triangle_threshold) {
    const VertexId n = spec.size_parameter;
    return {n - 1, n - 1};
  }
  return {0, 0};
}

MatchingCounts expected_counts(const FamilySpec& spec) {
  MatchingCounts c;
  const int k = spec.size_parameter;
  std::map<std::pair<VertexId, VertexId>, Int> near;
  const auto holes = family_distinguished_holes(spec);
  switch (spec.family) {
    case Family::hexagon:
      require(k >= 1, "hexagon family needs k >= 1");
      c.perfect = 1;
      near[holes] = int_pow(2, k);
      break;
    case Family::triangle_threshold:
      require(k >= 3 && k % 2 == 1, "triangle_threshold family needs odd n >= 3");
      c.perfect = 1;
      near[holes] = int_pow(2, k - 2);
      break;
    case Family::regular_chain:
      require(k >= 1, "regular_chain family needs k >= 1");
      c.perfect = int_pow(6, 2 * k) * int_pow(3, k + 1);
      near[holes] = int_pow(6, 3 * k);
      break;
    case Family::regular_ladder: {
      require(k >= 2 && k % 2 == 0, "regular_ladder family needs even k >= 2");
      // |M| = |N_uv(G1)||M(G2)| + |M(G1)||N_uv(G2)| with
      // |M(G1)| = 3^{2k} + 2 F_{k+2} 3^k 6^k + 6^{2k}.
      const Int m_g1 = int_pow(3, 2 * k) +
                       2 * fibonacci(k + 2) * int_pow(3, k) * int_pow(6, k) +
                       int_pow(6, 2 * k);
      c.perfect = int_pow(6, 2 * k) * fibonacci(k + 3) * int_pow(3, k) +
                  m_g1 * int_pow(6, k);
      near[holes] = int_pow(6, 3 * k) * fibonacci(k + 3);
      break;
    }
  }
  c.near_by_holes = std::move(near);
  return c;
}

}  // namespace matchmix
