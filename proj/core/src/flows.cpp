#include "matchmix/flows.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "matchmix/errors.hpp"

namespace matchmix {

std::string path_system_name(PathSystemKind k) {
  switch (k) {
    case PathSystemKind::canonical_p1: return "p1";
    case PathSystemKind::one_shortest_p2: return "p2";
    case PathSystemKind::all_shortest_p3: return "p3";
  }
  return "?";
}

namespace {

std::vector<std::vector<StateId>> build_support(const StateGraph& sg) {
  std::vector<std::vector<StateId>> support(sg.rows.size());
  for (StateId x = 0; x < sg.rows.size(); ++x)
    for (const auto& [y, p] : sg.rows[x])
      if (y != x) support[x].push_back(y);
  return support;  // rows are sorted by target already
}

void bfs(const std::vector<std::vector<StateId>>& support, StateId root,
         std::vector<std::int32_t>& dist) {
  dist.assign(support.size(), -1);
  dist[root] = 0;
  std::queue<StateId> q;
  q.push(root);
  while (!q.empty()) {
    const StateId x = q.front();
    q.pop();
    for (StateId y : support[x]) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push(y);
      }
    }
  }
}

/// parent[y] = smallest-index neighbor one BFS level closer to the root.
void min_index_parents(const std::vector<std::vector<StateId>>& support,
                       const std::vector<std::int32_t>& dist,
                       std::vector<std::int32_t>& parent) {
  parent.assign(support.size(), -1);
  for (StateId y = 0; y < support.size(); ++y) {
    if (dist[y] <= 0) continue;
    for (StateId z : support[y]) {  // ascending, so the first hit is minimal
      if (dist[z] == dist[y] - 1) {
        parent[y] = static_cast<std::int32_t>(z);
        break;
      }
    }
  }
}

/// States ordered by (distance, id): the deterministic topological order of
/// the root's shortest-path DAG.
std::vector<StateId> states_by_level(const std::vector<std::int32_t>& dist) {
  std::vector<StateId> order;
  order.reserve(dist.size());
  for (StateId i = 0; i < dist.size(); ++i)
    if (dist[i] >= 0) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](StateId a, StateId b) {
    return dist[a] < dist[b];
  });
  return order;
}

}  // namespace

PathSystem build_paths(const StateGraph& sg, PathSystemKind kind,
                       const FlowOptions& opts) {
  PathSystem ps;
  ps.kind = kind;
  ps.sg = &sg;
  ps.support = build_support(sg);

  std::vector<std::int32_t> dist;
  bfs(ps.support, 0, dist);
  for (StateId i = 0; i < ps.support.size(); ++i) {
    if (dist[i] < 0) {
      throw StructureError("state graph support is disconnected (state " +
                           std::to_string(i) + " unreachable from state 0)");
    }
  }

  if (kind != PathSystemKind::all_shortest_p3 &&
      sg.size() > opts.explicit_cap)
    throw SizeError("state graph exceeds the explicit path-system cap");

  if (kind == PathSystemKind::canonical_p1) {
    for (StateId i = 0; i < sg.state_class.size(); ++i)
      if (sg.state_class[i] == StateClass::perfect) ps.perfect_states.push_back(i);
    if (ps.perfect_states.empty())
      throw StructureError("canonical paths need at least one perfect state");
    ps.perfect_dist.resize(ps.perfect_states.size());
    ps.perfect_parent.resize(ps.perfect_states.size());
    for (std::size_t s = 0; s < ps.perfect_states.size(); ++s) {
      bfs(ps.support, ps.perfect_states[s], ps.perfect_dist[s]);
      min_index_parents(ps.support, ps.perfect_dist[s], ps.perfect_parent[s]);
    }
    ps.nearest_perfect_slot.assign(sg.size(), 0);
    for (StateId x = 0; x < static_cast<StateId>(sg.size()); ++x) {
      std::int32_t best_slot = 0;
      for (std::size_t s = 1; s < ps.perfect_states.size(); ++s) {
        // Perfect states are listed in ascending id order, so strict
        // improvement implements the smallest-index tie-break.
        if (ps.perfect_dist[s][x] < ps.perfect_dist[best_slot][x])
          best_slot = static_cast<std::int32_t>(s);
      }
      ps.nearest_perfect_slot[x] = best_slot;
    }
  }
  return ps;
}

namespace {

/// Walk from `leaf` to the root of the BFS tree `parent`, appending states.
void climb(const std::vector<std::int32_t>& parent, StateId leaf,
           std::vector<StateId>& out) {
  std::int32_t z = static_cast<std::int32_t>(leaf);
  while (z >= 0) {
    out.push_back(static_cast<StateId>(z));
    z = parent[z];
  }
}

/// First-repeat excision, left to right: revisiting a state cuts the loop
/// between the two visits.
std::vector<StateId> deloop(const std::vector<StateId>& walk,
                            std::size_t n_states) {
  std::vector<std::int32_t> pos(n_states, -1);
  std::vector<StateId> out;
  for (StateId s : walk) {
    if (pos[s] >= 0) {
      while (static_cast<std::int32_t>(out.size()) > pos[s] + 1) {
        pos[out.back()] = -1;
        out.pop_back();
      }
    } else {
      pos[s] = static_cast<std::int32_t>(out.size());
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace

std::vector<StateId> PathSystem::path(StateId x, StateId y) const {
  if (kind == PathSystemKind::all_shortest_p3)
    throw DomainError("p3 has no single explicit path per pair");
  if (x == y) return {x};
  if (kind == PathSystemKind::one_shortest_p2) {
    std::vector<std::int32_t> dist, parent;
    bfs(support, x, dist);
    min_index_parents(support, dist, parent);
    std::vector<StateId> rev;
    climb(parent, y, rev);
    std::reverse(rev.begin(), rev.end());
    return rev;  // runs x..y because the tree is rooted at x
  }
  // canonical_p1: segment to the nearest perfect state, segment between
  // perfect states, segment to the target; then de-loop.
  const std::int32_t sx = nearest_perfect_slot[x];
  const std::int32_t sy = nearest_perfect_slot[y];
  std::vector<StateId> walk;
  climb(perfect_parent[sx], x, walk);  // x .. M(x)
  {
    std::vector<StateId> mid;
    climb(perfect_parent[sy], perfect_states[sx], mid);  // M(x) .. M(y)
    walk.insert(walk.end(), mid.begin() + 1, mid.end());
  }
  {
    std::vector<StateId> tail;
    climb(perfect_parent[sy], y, tail);  // y .. M(y)
    std::reverse(tail.begin(), tail.end());
    walk.insert(walk.end(), tail.begin() + 1, tail.end());
  }
  return deloop(walk, support.size());
}

namespace {

struct ArcIndex {
  std::vector<std::int64_t> offset;
  const std::vector<std::vector<StateId>>* support;

  explicit ArcIndex(const std::vector<std::vector<StateId>>& s) : support(&s) {
    offset.assign(s.size() + 1, 0);
    for (std::size_t x = 0; x < s.size(); ++x)
      offset[x + 1] = offset[x] + static_cast<std::int64_t>(s[x].size());
  }

  std::int64_t total() const { return offset.back(); }

  std::int64_t id(StateId x, StateId y) const {
    const auto& nb = (*support)[x];
    const auto it = std::lower_bound(nb.begin(), nb.end(), y);
    return offset[x] + (it - nb.begin());
  }

  std::pair<StateId, StateId> arc_of(std::int64_t id_) const {
    const auto row = std::upper_bound(offset.begin(), offset.end(), id_) -
                     offset.begin() - 1;
    const StateId x = static_cast<StateId>(row);
    return {x, (*support)[x][static_cast<std::size_t>(id_ - offset[row])]};
  }
};

}  // namespace

CongestionReport congestion(const StateGraph& sg, const PathSystem& ps) {
  if (ps.sg != &sg) throw DomainError("path system built on a different state graph");
  const std::int64_t n = sg.size();
  const ArcIndex arcs(ps.support);
  std::vector<double> q(arcs.total());
  for (StateId x = 0; x < ps.support.size(); ++x)
    for (StateId y : ps.support[x]) {
      const double p = sg.prob(x, y);
      if (p <= 0.0)
        throw StructureError("support arc with zero transition probability");
      q[arcs.id(x, y)] = sg.pi[x] * p;
    }
  std::vector<double> f1(arcs.total(), 0.0), f2(arcs.total(), 0.0);

  if (ps.kind == PathSystemKind::all_shortest_p3) {
    // Per root: forward path counts on the BFS DAG, then one backward
    // sweep that aggregates every target's uniformly split flow.
    std::vector<std::int32_t> dist;
    std::vector<double> cnt(n), b1(n), b2(n);
    for (StateId x = 0; x < static_cast<StateId>(n); ++x) {
      bfs(ps.support, x, dist);
      const auto order = states_by_level(dist);
      std::fill(cnt.begin(), cnt.end(), 0.0);
      cnt[x] = 1.0;
      for (StateId y : order) {
        if (y == x) continue;
        double c = 0;
        for (StateId z : ps.support[y])
          if (dist[z] == dist[y] - 1) c += cnt[z];
        cnt[y] = c;
      }
      for (StateId y : order) {
        if (y == x) {
          b1[y] = b2[y] = 0.0;
          continue;
        }
        const double flow = sg.pi[x] * sg.pi[y] / cnt[y];
        b1[y] = flow;                  // f1 split over |P_xy| paths
        b2[y] = flow * dist[y];        // f2 carries the path length
      }
      // Counter-topological accumulation: b[v] += sum of b over DAG
      // successors, so cnt[z] * b[w] is the loading of arc (z, w).
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const StateId v = *it;
        for (StateId w : ps.support[v]) {
          if (dist[w] == dist[v] + 1) {
            b1[v] += b1[w];
            b2[v] += b2[w];
          }
        }
      }
      for (StateId z : order) {
        for (StateId w : ps.support[z]) {
          if (dist[w] != dist[z] + 1) continue;
          const std::int64_t a = arcs.id(z, w);
          f1[a] += cnt[z] * b1[w];
          f2[a] += cnt[z] * b2[w];
        }
      }
    }
  } else if (ps.kind == PathSystemKind::one_shortest_p2) {
    std::vector<std::int32_t> dist, parent;
    for (StateId x = 0; x < static_cast<StateId>(n); ++x) {
      bfs(ps.support, x, dist);
      min_index_parents(ps.support, dist, parent);
      for (StateId y = 0; y < static_cast<StateId>(n); ++y) {
        if (y == x) continue;
        const double fl1 = sg.pi[x] * sg.pi[y];
        const double fl2 = fl1 * dist[y];
        // The tree is rooted at x; arcs run parent -> child along x..y.
        std::int32_t z = static_cast<std::int32_t>(y);
        while (z != static_cast<std::int32_t>(x)) {
          const std::int64_t a = arcs.id(static_cast<StateId>(parent[z]),
                                         static_cast<StateId>(z));
          f1[a] += fl1;
          f2[a] += fl2;
          z = parent[z];
        }
      }
    }
  } else {
    for (StateId x = 0; x < static_cast<StateId>(n); ++x) {
      for (StateId y = 0; y < static_cast<StateId>(n); ++y) {
        if (y == x) continue;
        const auto p = ps.path(x, y);
        const double fl1 = sg.pi[x] * sg.pi[y];
        const double fl2 = fl1 * static_cast<double>(p.size() - 1);
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
          const std::int64_t a = arcs.id(p[i], p[i + 1]);
          f1[a] += fl1;
          f2[a] += fl2;
        }
      }
    }
  }

  CongestionReport rep;
  rep.kind = ps.kind;
  std::int64_t best1 = 0, best2 = 0;
  double r1 = 0, r2 = 0;
  for (std::int64_t a = 0; a < arcs.total(); ++a) {
    const double l1 = f1[a] / q[a];
    const double l2 = f2[a] / q[a];
    if (l1 > r1) {
      r1 = l1;
      best1 = a;
    }
    if (l2 > r2) {
      r2 = l2;
      best2 = a;
    }
  }
  rep.rho1 = r1;
  rep.rho2 = r2;
  rep.argmax_arc_rho1 = arcs.arc_of(best1);
  rep.argmax_arc = arcs.arc_of(best2);
  return rep;
}

double multicommodity_bound(CongestionReport& report, const StateGraph& sg,
                            double epsilon, const MixingOptions& mix) {
  if (epsilon <= 0 || epsilon >= 1) throw DomainError("epsilon must lie in (0,1)");
  const auto [l2, lmin] = extreme_eigenvalues(sg, mix);
  if (std::abs(lmin) > std::abs(l2) + 1e-12) {
    // lambda_max = |lambda_min|: certify the half-lazy chain instead, whose
    // halved arc capacities double every loading.
    report.lazy_used = true;
    report.rho1 *= 2.0;
    report.rho2 *= 2.0;
  }
  const double scale = std::log(1.0 / epsilon) + std::log(1.0 / sg.pi_min);
  report.bound_rho2 = report.rho2 * scale;
  return report.bound_rho2;
}

double lower_bound(CongestionReport& report, const StateGraph& sg,
                   double epsilon) {
  if (report.kind == PathSystemKind::all_shortest_p3)
    throw DomainError("the lower bound needs a single-path system (p1 or p2)");
  if (epsilon <= 0 || epsilon >= 1) throw DomainError("epsilon must lie in (0,1)");
  if (sg.pi_min >= 1.0) {
    report.lower_bound_rho1 = 0.0;
    return 0.0;
  }
  report.lower_bound_rho1 =
      report.rho1 * std::log(2.0 / epsilon) / std::log(1.0 / sg.pi_min);
  return report.lower_bound_rho1;
}

std::vector<double> shortest_path_counts_from(const PathSystem& ps,
                                              StateId root) {
  std::vector<std::int32_t> dist;
  bfs(ps.support, root, dist);
  std::vector<double> cnt(ps.support.size(), 0.0);
  cnt[root] = 1.0;
  for (StateId y : states_by_level(dist)) {
    if (y == root) continue;
    double c = 0;
    for (StateId z : ps.support[y])
      if (dist[z] == dist[y] - 1) c += cnt[z];
    cnt[y] = c;
  }
  return cnt;
}

std::vector<double> shortest_path_counts_to(const PathSystem& ps, StateId root,
                                            StateId target) {
  std::vector<std::int32_t> dist;
  bfs(ps.support, root, dist);
  std::vector<double> cnt(ps.support.size(), 0.0);
  cnt[target] = 1.0;
  const auto order = states_by_level(dist);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const StateId v = *it;
    if (v == target) continue;
    double c = 0;
    for (StateId w : ps.support[v])
      if (dist[w] == dist[v] + 1) c += cnt[w];
    cnt[v] = c;
  }
  // States below or beside the target's level carry no v->target DAG path.
  for (StateId v = 0; v < ps.support.size(); ++v)
    if (dist[v] < 0 || dist[v] > dist[target]) cnt[v] = 0.0;
  return cnt;
}

std::vector<std::int32_t> bfs_distances(const PathSystem& ps, StateId root) {
  std::vector<std::int32_t> dist;
  bfs(ps.support, root, dist);
  return dist;
}

}  // namespace matchmix
