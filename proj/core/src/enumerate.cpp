#include "matchmix/enumerate.hpp"

#include <cstdint>
#include <unordered_map>

#include "matchmix/errors.hpp"

namespace matchmix {

Int MatchingCounts::near(VertexId u, VertexId v) const {
  if (!near_by_holes) return 0;
  auto it = near_by_holes->find({u, v});
  return it == near_by_holes->end() ? Int(0) : it->second;
}

namespace {

struct MemoKey {
  std::int32_t i;
  std::uint64_t mask;
  bool operator==(const MemoKey&) const = default;
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const {
    std::uint64_t h = k.mask * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<std::uint64_t>(k.i) + (h >> 29);
    return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ull);
  }
};

/// Memoized match-or-skip recursion over U-vertices. The memo key projects
/// the used-V mask onto the V-vertices still adjacent to unprocessed
/// U-vertices, which keeps the state count small on banded graphs.
class MatchCounter {
 public:
  MatchCounter(const BipartiteGraph& g, std::uint64_t skip_u_mask,
               std::uint64_t skip_v_mask, bool allow_skip,
               const EnumerateOptions& opts)
      : g_(g), skip_u_(skip_u_mask), allow_skip_(allow_skip), opts_(opts) {
    if (g.vertex_count() > opts.max_vertices)
      throw SizeError("graph exceeds the enumeration vertex cap (" +
                      std::to_string(opts.max_vertices) + ")");
    if (g.n_v() > 64) throw SizeError("enumeration supports at most 64 V-vertices");
    adj_mask_.resize(g.n_u(), 0);
    for (VertexId u = 0; u < g.n_u(); ++u) {
      if (skip_u_ >> u & 1) continue;
      for (VertexId v : g.adj_u(u))
        if (!(skip_v_mask >> v & 1)) adj_mask_[u] |= 1ull << v;
    }
    relevant_.resize(g.n_u() + 1, 0);
    for (VertexId u = g.n_u() - 1; u >= 0; --u)
      relevant_[u] = relevant_[u + 1] | adj_mask_[u];
  }

  Int count() { return rec(0, 0); }

 private:
  Int rec(VertexId i, std::uint64_t used) {
    if (i == g_.n_u()) return 1;
    if (skip_u_ >> i & 1) return rec(i + 1, used);
    const MemoKey key{i, used & relevant_[i]};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Int total = 0;
    std::uint64_t options = adj_mask_[i] & ~used;
    while (options) {
      const std::uint64_t bit = options & (~options + 1);
      options ^= bit;
      total += rec(i + 1, used | bit);
    }
    if (allow_skip_) total += rec(i + 1, used);
    if (memo_.size() >= opts_.max_memo)
      throw SizeError("enumeration memo cap exceeded");
    memo_.emplace(key, total);
    return total;
  }

  const BipartiteGraph& g_;
  std::uint64_t skip_u_;
  bool allow_skip_;
  const EnumerateOptions& opts_;
  std::vector<std::uint64_t> adj_mask_;
  std::vector<std::uint64_t> relevant_;
  std::unordered_map<MemoKey, Int, MemoKeyHash> memo_;
};

Int count_with_skips(const BipartiteGraph& g, std::uint64_t skip_u,
                     std::uint64_t skip_v, const EnumerateOptions& opts) {
  const int eff_u = g.n_u() - __builtin_popcountll(skip_u);
  const int eff_v = g.n_v() - __builtin_popcountll(skip_v);
  if (eff_u != eff_v) return 0;
  if (eff_u == 0) return 1;
  return MatchCounter(g, skip_u, skip_v, /*allow_skip=*/false, opts).count();
}

}  // namespace

Int count_perfect(const BipartiteGraph& g, const EnumerateOptions& opts) {
  return count_with_skips(g, 0, 0, opts);
}

Int count_perfect_excluding(const BipartiteGraph& g, std::uint64_t skip_u_mask,
                            std::uint64_t skip_v_mask,
                            const EnumerateOptions& opts) {
  if (g.n_u() > 64 || g.n_v() > 64)
    throw SizeError("mask-based exclusion supports at most 64 vertices per side");
  return count_with_skips(g, skip_u_mask, skip_v_mask, opts);
}

Int count_near(const BipartiteGraph& g, VertexId skip_u, VertexId skip_v,
               const EnumerateOptions& opts) {
  if (skip_u < 0 || skip_u >= g.n_u() || skip_v < 0 || skip_v >= g.n_v())
    throw DomainError("hole vertex out of range");
  return count_with_skips(g, 1ull << skip_u, 1ull << skip_v, opts);
}

Int count_all_matchings(const BipartiteGraph& g, const EnumerateOptions& opts) {
  if (g.n_u() == 0) return 1;
  return MatchCounter(g, 0, 0, /*allow_skip=*/true, opts).count();
}

MatchingCounts enumerate_matchings(const BipartiteGraph& g, EnumerateMode mode,
                                   const EnumerateOptions& opts) {
  MatchingCounts c;
  c.perfect = count_perfect(g, opts);
  if (mode == EnumerateMode::perfect) return c;
  std::map<std::pair<VertexId, VertexId>, Int> near;
  Int near_total = 0;
  for (VertexId u = 0; u < g.n_u(); ++u) {
    for (VertexId v = 0; v < g.n_v(); ++v) {
      Int k = count_near(g, u, v, opts);
      if (k != 0) {
        near_total += k;
        near.emplace(std::make_pair(u, v), std::move(k));
      }
    }
  }
  c.near_by_holes = std::move(near);
  c.near_total = std::move(near_total);
  if (mode == EnumerateMode::all) c.all_matchings = count_all_matchings(g, opts);
  return c;
}

std::vector<std::vector<VertexId>> list_perfect_matchings(
    const BipartiteGraph& g, const EnumerateOptions& opts) {
  if (g.n_u() != g.n_v()) return {};
  if (g.vertex_count() > opts.max_vertices)
    throw SizeError("graph exceeds the enumeration vertex cap");
  std::vector<std::vector<VertexId>> out;
  std::vector<VertexId> partner(g.n_u(), -1);
  std::vector<char> used(g.n_v(), 0);
  auto rec = [&](auto&& self, VertexId u) -> void {
    if (u == g.n_u()) {
      if (out.size() >= opts.max_listed)
        throw SizeError("matching listing cap exceeded");
      out.push_back(partner);
      return;
    }
    for (VertexId v : g.adj_u(u)) {
      if (used[v]) continue;
      used[v] = 1;
      partner[u] = v;
      self(self, u + 1);
      partner[u] = -1;
      used[v] = 0;
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace matchmix
