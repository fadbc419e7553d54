#include "matchmix/graph6.hpp"

#include <queue>
#include <vector>

#include "matchmix/errors.hpp"

namespace matchmix {

namespace {

constexpr char kBias = 63;

class BitReader {
 public:
  BitReader(const std::string& s, std::size_t pos) : s_(s), pos_(pos) {}

  int next() {
    if (bit_ == 0) {
      if (pos_ >= s_.size()) throw ParseError("graph6 line too short");
      const int c = static_cast<unsigned char>(s_[pos_++]) - kBias;
      if (c < 0 || c > 63) throw ParseError("graph6 byte out of range");
      cur_ = c;
      bit_ = 6;
    }
    --bit_;
    return (cur_ >> bit_) & 1;
  }

  bool trailing_bits_zero() {
    while (bit_ > 0)
      if (next() != 0) return false;
    return pos_ == s_.size();
  }

 private:
  const std::string& s_;
  std::size_t pos_;
  int cur_ = 0;
  int bit_ = 0;
};

}  // namespace

BipartiteGraph parse_graph6(const std::string& raw) {
  std::string line = raw;
  if (line.starts_with(">>graph6<<")) line = line.substr(10);
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r'))
    line.pop_back();
  if (line.empty()) throw ParseError("empty graph6 line");

  std::size_t pos = 0;
  auto byte = [&]() -> long {
    if (pos >= line.size()) throw ParseError("graph6 line too short");
    const long c = static_cast<unsigned char>(line[pos++]) - kBias;
    if (c < 0 || c > 63) throw ParseError("graph6 byte out of range");
    return c;
  };

  long n;
  long b0 = byte();
  if (b0 < 63) {
    n = b0;
  } else {
    long b1 = byte();
    if (b1 < 63) {
      n = (b1 << 12) | (byte() << 6) | byte();
    } else {
      throw ParseError("graph6 size form >258047 not supported");
    }
  }
  if (n > 100000) throw ParseError("graph6 vertex count too large");

  BitReader bits(line, pos);
  std::vector<std::vector<VertexId>> adj(n);
  for (long y = 1; y < n; ++y) {
    for (long x = 0; x < y; ++x) {
      if (bits.next()) {
        adj[x].push_back(static_cast<VertexId>(y));
        adj[y].push_back(static_cast<VertexId>(x));
      }
    }
  }
  if (!bits.trailing_bits_zero())
    throw ParseError("graph6 has nonzero padding or trailing bytes");

  // 2-coloring; color 0 is the class of vertex 0.
  std::vector<int> color(n, -1);
  for (long s = 0; s < n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::queue<long> q;
    q.push(s);
    while (!q.empty()) {
      long x = q.front();
      q.pop();
      for (VertexId y : adj[x]) {
        if (color[y] == -1) {
          color[y] = 1 - color[x];
          q.push(y);
        } else if (color[y] == color[x]) {
          throw DomainError("graph is not bipartite (odd cycle)");
        }
      }
    }
  }

  std::vector<VertexId> side_index(n);
  VertexId n_u = 0, n_v = 0;
  for (long x = 0; x < n; ++x)
    side_index[x] = (color[x] == 0) ? n_u++ : n_v++;

  std::vector<Edge> edges;
  for (long x = 0; x < n; ++x) {
    for (VertexId y : adj[x]) {
      if (x < y) {
        if (color[x] == 0)
          edges.push_back({side_index[x], side_index[y]});
        else
          edges.push_back({side_index[y], side_index[x]});
      }
    }
  }
  return BipartiteGraph(n_u, n_v, std::move(edges));
}

std::string to_graph6(const BipartiteGraph& g) {
  const long n = g.vertex_count();
  if (n > 258047) throw SizeError("graph too large for graph6 encoder");
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kBias));
  } else {
    out.push_back('~');
    out.push_back(static_cast<char>(((n >> 12) & 63) + kBias));
    out.push_back(static_cast<char>(((n >> 6) & 63) + kBias));
    out.push_back(static_cast<char>((n & 63) + kBias));
  }

  std::vector<std::vector<char>> mat(n, std::vector<char>(n, 0));
  for (const Edge& e : g.edges()) {
    const long a = e.u;
    const long b = g.n_u() + e.v;
    mat[a][b] = mat[b][a] = 1;
  }

  int cur = 0, nbits = 0;
  for (long y = 1; y < n; ++y) {
    for (long x = 0; x < y; ++x) {
      cur = (cur << 1) | mat[x][y];
      if (++nbits == 6) {
        out.push_back(static_cast<char>(cur + kBias));
        cur = 0;
        nbits = 0;
      }
    }
  }
  if (nbits > 0)
    out.push_back(static_cast<char>((cur << (6 - nbits)) + kBias));
  return out;
}

}  // namespace matchmix
