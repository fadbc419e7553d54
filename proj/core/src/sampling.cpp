#include "matchmix/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "matchmix/errors.hpp"

namespace matchmix {

namespace {

void step(Matching& m, const BipartiteGraph& g, const ChainSpec& chain,
          const JsvWeights* weights, Rng& rng) {
  if (chain.laziness > 0 && rng.chance(chain.laziness)) return;
  const std::size_t e = static_cast<std::size_t>(
      rng.below(static_cast<std::uint64_t>(g.edge_count())));
  const Move mv = edge_move(m, g, chain.kind, e);
  if (!mv.changes) return;
  if (chain.kind == ChainKind::jsv) {
    const Rat w_from = weights->weight_of(m, g);
    apply_move(m, mv);
    const Rat w_to = weights->weight_of(m, g);
    if (w_to < w_from) {
      const double accept = static_cast<double>(Rat(w_to / w_from));
      if (!rng.chance(accept)) undo_move(m, mv);
    }
    return;
  }
  apply_move(m, mv);
}

}  // namespace

Matching metropolis_run(const BipartiteGraph& g, const ChainSpec& chain,
                        const Matching& start, std::int64_t t,
                        std::uint64_t seed, const JsvWeights* weights) {
  if (chain.kind == ChainKind::jsv && weights == nullptr)
    throw ConfigError("jsv simulation needs exact weights");
  if (chain.kind != ChainKind::monomer_dimer) {
    const StateClass cls = start.classify(g);
    if (cls == StateClass::general)
      throw DomainError("start state outside the chain's state space");
  }
  if (g.edge_count() == 0) return start;
  Matching m = start;
  Rng rng(seed);
  for (std::int64_t i = 0; i < t; ++i) step(m, g, chain, weights, rng);
  return m;
}

SampleRun run_trajectories(const BipartiteGraph& g, const ChainSpec& chain,
                           const Matching& start, std::int64_t t,
                           std::int64_t trials, std::uint64_t seed,
                           const JsvWeights* weights, int threads) {
  if (chain.kind == ChainKind::jsv && weights == nullptr)
    throw ConfigError("jsv simulation needs exact weights");
  SampleRun run;
  run.chain = chain;
  run.steps = t;
  run.trials = trials;
  run.seed = seed;

  threads = std::max(1, threads);
  std::vector<std::map<std::vector<VertexId>, std::int64_t>> partial(threads);
  auto worker = [&](int w) {
    Matching m = start;
    for (std::int64_t i = w; i < trials; i += threads) {
      m = start;
      Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
      for (std::int64_t s = 0; s < t; ++s)
        if (g.edge_count() > 0) step(m, g, chain, weights, rng);
      ++partial[w][m.partner_u];
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  for (const auto& p : partial)
    for (const auto& [key, cnt] : p) run.empirical[key] += cnt;
  return run;
}

Matching threshold_exact_sample(const BipartiteGraph& g, std::uint64_t seed) {
  Rng rng(seed);
  return threshold_exact_sample(g, rng);
}

Matching threshold_exact_sample(const BipartiteGraph& g, Rng& rng) {
  const ThresholdInfo info = threshold_info(g);
  if (!info.is_threshold || !g.balanced())
    throw DomainError("exact sampling needs a balanced threshold graph");
  const VertexId n = g.n_u();
  // Smallest row first: row j (1-based from the bottom of the staircase)
  // has exactly r_j - (j-1) free columns, all inside its prefix.
  std::vector<VertexId> partner(n, -1);
  std::vector<char> used(n, 0);
  for (VertexId j = 1; j <= n; ++j) {
    const VertexId row = info.row_order[n - j];
    const int prefix = info.row_sums[n - j];
    const std::int64_t avail = prefix - (j - 1);
    if (avail <= 0)
      throw StartError("threshold graph has no perfect matching");
    std::int64_t pick = static_cast<std::int64_t>(
        rng.below(static_cast<std::uint64_t>(avail)));
    for (int c = 0; c < prefix; ++c) {
      if (used[c]) continue;
      if (pick-- == 0) {
        used[c] = 1;
        partner[row] = info.col_order[c];
        break;
      }
    }
  }
  return Matching::from_partner_u(g, std::move(partner));
}

PerfectSearchResult sample_perfect_via_monomer_dimer(const BipartiteGraph& g,
                                                     std::int64_t l,
                                                     std::int64_t t,
                                                     std::uint64_t seed,
                                                     double laziness) {
  if (l < 1 || t < 1) throw DomainError("need l, t >= 1");
  const ChainSpec chain{ChainKind::monomer_dimer, laziness};
  PerfectSearchResult res;
  const Matching start = Matching::empty(g);
  for (std::int64_t trial = 0; trial < l; ++trial) {
    Matching m = start;
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
    for (std::int64_t s = 0; s < t; ++s)
      if (g.edge_count() > 0) step(m, g, chain, nullptr, rng);
    if (m.classify(g) == StateClass::perfect) {
      res.found = std::move(m);
      res.trials_used = trial + 1;
      return res;
    }
  }
  res.trials_used = l;
  return res;
}

EmpiricalTvd empirical_tvd(const SampleRun& run, const StateGraph& sg) {
  std::vector<double> freq(sg.size(), 0.0);
  for (const auto& [key, cnt] : run.empirical) {
    const std::int64_t idx = sg.state_index(key);
    if (idx < 0)
      throw DomainError("sampled state is not a state of the chain");
    freq[idx] += static_cast<double>(cnt);
  }
  EmpiricalTvd out;
  const double trials = static_cast<double>(run.trials);
  double acc = 0;
  for (std::int64_t i = 0; i < sg.size(); ++i)
    acc += std::abs(freq[i] / trials - sg.pi[i]);
  out.tvd = 0.5 * acc;
  out.noise_floor = std::sqrt(static_cast<double>(sg.size()) / trials);
  out.within_noise = out.tvd <= out.noise_floor;
  return out;
}

}  // namespace matchmix
