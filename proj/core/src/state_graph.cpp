#include "matchmix/state_graph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <queue>

#include "matchmix/errors.hpp"

namespace matchmix {

std::size_t StateGraph::KeyHash::operator()(
    const std::vector<VertexId>& key) const {
  std::size_t h = 0xcbf29ce484222325ull;
  for (VertexId v : key) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v));
    h *= 0x100000001b3ull;
  }
  return h;
}

void StateGraph::index_states() {
  index_.clear();
  index_.reserve(states.size());
  for (StateId i = 0; i < states.size(); ++i)
    index_.emplace(states[i].partner_u, i);
}

std::int64_t StateGraph::state_index(
    const std::vector<VertexId>& partner_u) const {
  auto it = index_.find(partner_u);
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

double StateGraph::prob(StateId x, StateId y) const {
  const auto& row = rows[x];
  auto it = std::lower_bound(
      row.begin(), row.end(), y,
      [](const std::pair<StateId, double>& a, StateId b) { return a.first < b; });
  return (it != row.end() && it->first == y) ? it->second : 0.0;
}

StateGraph StateGraph::half_lazy() const {
  StateGraph out = *this;
  out.chain.laziness = 0.5 + 0.5 * chain.laziness;
  for (StateId x = 0; x < out.rows.size(); ++x) {
    bool saw_loop = false;
    for (auto& [y, p] : out.rows[x]) {
      p *= 0.5;
      if (y == x) {
        p += 0.5;
        saw_loop = true;
      }
    }
    if (!saw_loop) {
      out.rows[x].push_back({x, 0.5});
      std::sort(out.rows[x].begin(), out.rows[x].end());
    }
  }
  out.has_self_loop = true;
  out.aperiodic = true;
  return out;
}

StateGraph StateGraph::from_matrix(const std::vector<std::vector<double>>& p,
                                   const std::vector<double>& pi) {
  const std::size_t n = p.size();
  if (pi.size() != n) throw DomainError("pi length must match the matrix");
  StateGraph sg;
  sg.chain = {ChainKind::broder, 0.0};
  sg.rows.resize(n);
  sg.pi = pi;
  sg.pi_exact.reserve(n);
  sg.pi_min = 1.0;
  double pi_sum = 0;
  for (std::size_t x = 0; x < n; ++x) {
    double row_sum = 0;
    for (std::size_t y = 0; y < n; ++y) {
      if (p[x][y] < 0) throw DomainError("negative transition probability");
      if (p[x][y] > 0) {
        sg.rows[x].push_back({static_cast<StateId>(y), p[x][y]});
        if (x == y) sg.has_self_loop = true;
      }
      row_sum += p[x][y];
    }
    if (std::abs(row_sum - 1.0) > 1e-12)
      throw DomainError("matrix row does not sum to 1");
    sg.pi_exact.emplace_back(pi[x]);
    sg.pi_min = std::min(sg.pi_min, pi[x]);
    pi_sum += pi[x];
  }
  if (std::abs(pi_sum - 1.0) > 1e-12) throw DomainError("pi does not sum to 1");
  // Dummy states so size() and classify-style consumers stay coherent.
  sg.states.resize(n);
  sg.state_class.assign(n, StateClass::general);
  sg.state_holes.assign(n, HolePair{});
  sg.index_states();
  // Aperiodicity via 2-coloring of the non-loop support.
  std::vector<int> color(n, -1);
  bool bip = true;
  for (std::size_t s = 0; s < n && bip; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::queue<std::size_t> q;
    q.push(s);
    while (!q.empty() && bip) {
      std::size_t x = q.front();
      q.pop();
      for (const auto& [y, prob] : sg.rows[x]) {
        if (y == x) continue;
        if (color[y] == -1) {
          color[y] = 1 - color[x];
          q.push(y);
        } else if (color[y] == color[x]) {
          bip = false;
          break;
        }
      }
    }
  }
  sg.aperiodic = sg.has_self_loop || !bip;
  return sg;
}

namespace {

struct ScanRow {
  std::vector<std::pair<StateId, std::uint32_t>> targets;  // multiplicity
  std::uint32_t loop_multiplicity = 0;
};

}  // namespace

StateGraph build_state_graph(const BipartiteGraph& g, ChainSpec chain,
                             const StateGraphOptions& opts) {
  if (chain.laziness < 0.0 || chain.laziness >= 1.0)
    throw DomainError("laziness must lie in [0, 1)");
  StateGraph sg;
  sg.chain = chain;
  sg.graph = g;

  Matching start;
  if (chain.kind == ChainKind::monomer_dimer) {
    start = Matching::empty(g);
  } else {
    auto pm = find_perfect_matching(g);
    if (pm.empty() && g.n_u() > 0)
      throw StartError("no perfect matching: the chain has no start state");
    if (g.n_u() == 0) throw StartError("empty graph has no chain states");
    start = Matching::from_partner_u(g, std::move(pm));
  }

  // Phase 1: BFS closure over kernel moves; arc structure is independent of
  // the Metropolis weights because acceptance probabilities are positive.
  std::vector<ScanRow> scan;
  {
    std::unordered_map<std::vector<VertexId>, StateId, StateGraph::KeyHash>
        seen;
    std::queue<StateId> todo;
    auto intern = [&](const Matching& m) -> StateId {
      auto it = seen.find(m.partner_u);
      if (it != seen.end()) return it->second;
      const StateId id = static_cast<StateId>(sg.states.size());
      if (static_cast<std::int64_t>(id) >= opts.state_cap)
        throw SizeError("state graph exceeds the state cap (" +
                        std::to_string(opts.state_cap) + ")");
      seen.emplace(m.partner_u, id);
      sg.states.push_back(m);
      todo.push(id);
      return id;
    };
    intern(start);
    const std::size_t m_edges = g.edges().size();
    while (!todo.empty()) {
      const StateId x = todo.front();
      todo.pop();
      ScanRow row;
      Matching work = sg.states[x];
      for (std::size_t e = 0; e < m_edges; ++e) {
        const Move mv = edge_move(work, g, chain.kind, e);
        if (!mv.changes) {
          ++row.loop_multiplicity;
          continue;
        }
        apply_move(work, mv);
        const StateId y = intern(work);
        undo_move(work, mv);
        auto it = std::find_if(row.targets.begin(), row.targets.end(),
                               [&](const auto& t) { return t.first == y; });
        if (it != row.targets.end())
          ++it->second;
        else
          row.targets.push_back({y, 1});
      }
      if (static_cast<std::size_t>(x) >= scan.size()) scan.resize(x + 1);
      scan[x] = std::move(row);
    }
  }

  const std::size_t n_states = sg.states.size();
  sg.state_class.resize(n_states);
  sg.state_holes.resize(n_states);
  std::map<std::pair<VertexId, VertexId>, Int> near_counts;
  Int perfect_count = 0;
  for (StateId i = 0; i < n_states; ++i) {
    sg.state_class[i] = sg.states[i].classify(g);
    if (sg.state_class[i] == StateClass::perfect) {
      ++perfect_count;
      sg.state_holes[i] = HolePair{};
    } else if (sg.state_class[i] == StateClass::near_perfect) {
      sg.state_holes[i] = sg.states[i].holes(g);
      ++near_counts[{sg.state_holes[i].u, sg.state_holes[i].v}];
    } else {
      sg.state_holes[i] = HolePair{};
    }
  }
  sg.scan_counts.perfect = perfect_count;
  Int near_total = 0;
  for (const auto& [h, c] : near_counts) near_total += c;
  sg.scan_counts.near_total = near_total;
  sg.scan_counts.near_by_holes = std::move(near_counts);

  // Phase 2: weights. Uniform for broder/monomer_dimer; Eq.-style
  // hole-class weights for jsv, from the scan counts.
  std::vector<Rat> weight(n_states, Rat(1));
  if (chain.kind == ChainKind::jsv) {
    const JsvWeights w(sg.scan_counts);
    for (StateId i = 0; i < n_states; ++i)
      weight[i] = w.weight(sg.state_class[i], sg.state_holes[i]);
  }
  Rat total_weight = 0;
  for (const Rat& w : weight) total_weight += w;

  // Phase 3: exact transition probabilities, then doubles.
  const Rat lazy(chain.laziness);
  const Rat move_scale = Rat(1) - lazy;
  const Rat kappa_unit =
      g.edge_count() == 0 ? Rat(0) : Rat(1) / Rat(g.edge_count());
  std::vector<std::vector<std::pair<StateId, Rat>>> exact_rows(n_states);
  for (StateId x = 0; x < n_states; ++x) {
    Rat non_loop = 0;
    auto& row = exact_rows[x];
    for (const auto& [y, mult] : scan[x].targets) {
      Rat accept = 1;
      if (weight[y] < weight[x]) accept = weight[y] / weight[x];
      const Rat p = move_scale * kappa_unit * Rat(mult) * accept;
      if (p == 0) continue;
      row.push_back({y, p});
      non_loop += p;
    }
    const Rat loop = Rat(1) - non_loop;
    if (loop > 0) row.push_back({x, loop});
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Rat sum = 0;
    for (const auto& [y, p] : row) sum += p;
    if (sum != 1)
      throw NumericError("state-graph row does not sum to 1 exactly");
  }
  // Exact reversibility: w(x) P(x,y) == w(y) P(y,x) on every arc.
  for (StateId x = 0; x < n_states; ++x) {
    for (const auto& [y, p] : exact_rows[x]) {
      if (y <= x) continue;
      const auto& back = exact_rows[y];
      auto it = std::lower_bound(
          back.begin(), back.end(), x,
          [](const std::pair<StateId, Rat>& a, StateId b) { return a.first < b; });
      const Rat q = (it != back.end() && it->first == x) ? it->second : Rat(0);
      if (weight[x] * p != weight[y] * q)
        throw NumericError("detailed balance violated on an arc");
    }
  }

  sg.rows.resize(n_states);
  sg.pi.resize(n_states);
  sg.pi_exact.resize(n_states);
  sg.pi_min = 1.0;
  for (StateId x = 0; x < n_states; ++x) {
    sg.pi_exact[x] = weight[x] / total_weight;
    sg.pi[x] = static_cast<double>(sg.pi_exact[x]);
    sg.pi_min = std::min(sg.pi_min, sg.pi[x]);
    sg.rows[x].reserve(exact_rows[x].size());
    for (const auto& [y, p] : exact_rows[x]) {
      sg.rows[x].push_back({y, static_cast<double>(p)});
      if (y == x) sg.has_self_loop = true;
    }
  }

  // Aperiodicity: a self-loop, or an odd cycle in the non-loop support.
  if (sg.has_self_loop) {
    sg.aperiodic = true;
  } else {
    std::vector<int> color(n_states, -1);
    bool bip = true;
    color[0] = 0;
    std::queue<StateId> q;
    q.push(0);
    while (!q.empty() && bip) {
      const StateId x = q.front();
      q.pop();
      for (const auto& [y, p] : sg.rows[x]) {
        if (y == x) continue;
        if (color[y] == -1) {
          color[y] = 1 - color[x];
          q.push(y);
        } else if (color[y] == color[x]) {
          bip = false;
          break;
        }
      }
    }
    sg.aperiodic = !bip;
  }
  sg.index_states();
  return sg;
}

void export_dot(const StateGraph& sg, std::ostream& out,
                std::size_t max_states) {
  if (sg.states.size() > max_states)
    throw SizeError("state graph too large for DOT export");
  out << "digraph state_graph {\n";
  for (StateId i = 0; i < sg.states.size(); ++i) {
    out << "  s" << i << " [label=\"";
    if (sg.state_class[i] == StateClass::perfect)
      out << "P" << i << "\" shape=box";
    else if (sg.state_class[i] == StateClass::near_perfect)
      out << "(" << sg.state_holes[i].u << "," << sg.state_holes[i].v << ")#"
          << i << "\" shape=ellipse";
    else
      out << "M" << i << "\" shape=ellipse";
    out << "];\n";
  }
  out.precision(6);
  for (StateId x = 0; x < sg.rows.size(); ++x)
    for (const auto& [y, p] : sg.rows[x])
      if (y != x) out << "  s" << x << " -> s" << y << " [label=\"" << p << "\"];\n";
  out << "}\n";
}

}  // namespace matchmix
