#ifndef MATCHMIX_SAMPLING_HPP
#define MATCHMIX_SAMPLING_HPP

#include <cstdint>
#include <map>
#include <optional>

#include "matchmix/chain.hpp"
#include "matchmix/rng.hpp"
#include "matchmix/state_graph.hpp"
#include "matchmix/threshold.hpp"

namespace matchmix {

/// Aggregated outcome of repeated chain simulations. The seed fully
/// determines every trajectory: trial i draws from Rng::stream(seed, i).
struct SampleRun {
  ChainSpec chain;
  std::int64_t steps = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  // Final-state frequencies keyed by the canonical U-partner vector.
  std::map<std::vector<VertexId>, std::int64_t> empirical;
};

/// Simulates t kernel steps from `start` without materializing the state
/// graph. jsv needs exact hole-class weights (enumeration-scale inputs);
/// passing none throws ConfigError.
Matching metropolis_run(const BipartiteGraph& g, const ChainSpec& chain,
                        const Matching& start, std::int64_t t,
                        std::uint64_t seed,
                        const JsvWeights* weights = nullptr);

/// Runs `trials` independent trajectories of t steps each and collects the
/// final-state frequencies.
SampleRun run_trajectories(const BipartiteGraph& g, const ChainSpec& chain,
                           const Matching& start, std::int64_t t,
                           std::int64_t trials, std::uint64_t seed,
                           const JsvWeights* weights = nullptr,
                           int threads = 1);

/// Exactly uniform perfect matching of a threshold graph: choose a free
/// column uniformly per row, smallest row sum first. Throws DomainError for
/// non-threshold inputs and StartError when the product formula is zero.
Matching threshold_exact_sample(const BipartiteGraph& g, std::uint64_t seed);
Matching threshold_exact_sample(const BipartiteGraph& g, Rng& rng);

struct PerfectSearchResult {
  std::optional<Matching> found;
  std::int64_t trials_used = 0;  // l' when found, l otherwise
};

/// Up to l independent monomer-dimer runs of t steps from the empty
/// matching; returns the first run whose final state is perfect.
PerfectSearchResult sample_perfect_via_monomer_dimer(const BipartiteGraph& g,
                                                     std::int64_t l,
                                                     std::int64_t t,
                                                     std::uint64_t seed,
                                                     double laziness = 0.0);

struct EmpiricalTvd {
  double tvd = 0.0;
  double noise_floor = 0.0;  // sqrt(|Omega| / trials)
  bool within_noise = false;
};

/// 1/2 sum over Omega of |freq/trials - pi|; throws DomainError when a
/// sampled state is not a state of sg.
EmpiricalTvd empirical_tvd(const SampleRun& run, const StateGraph& sg);

}  // namespace matchmix

#endif
