#ifndef MATCHMIX_PIPELINE_HPP
#define MATCHMIX_PIPELINE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "matchmix/family.hpp"
#include "matchmix/flows.hpp"
#include "matchmix/mixing.hpp"
#include "matchmix/state_graph.hpp"

namespace matchmix {

enum AnalysisBits : unsigned {
  kAnalyzeMixing = 1u,
  kAnalyzeSpectral = 2u,
  kAnalyzeFlowP1 = 4u,
  kAnalyzeFlowP2 = 8u,
  kAnalyzeFlowP3 = 16u,
  kAnalyzeAll = 31u,
};

struct AnalyzeOptions {
  ChainKind chain = ChainKind::broder;
  double laziness = 0.0;
  double epsilon = 0.18393972058572117;  // 1/(2e)
  unsigned analyses = kAnalyzeAll;
  std::int64_t state_cap = 200000;
  std::int64_t dense_cap = 6000;
  std::int64_t flow_cap = 20000;
  // On a periodic chain, or when |lambda_min| > |lambda_2| while flow
  // bounds are requested, redo the whole row on the half-lazy chain so all
  // reported quantities certify the same chain.
  bool auto_lazy = true;
};

/// One row of the experiment output; -1 marks quantities not computed.
struct BoundReport {
  std::string graph_id;
  std::string status = "ok";  // or "skipped: ...", "error: ..."
  VertexId n_u = 0, n_v = 0;
  std::int64_t m = 0;
  std::int64_t omega = -1;
  ChainKind chain = ChainKind::broder;
  double epsilon = 0.0;
  bool lazy_used = false;

  std::int64_t tau_exact = -1;
  double spectral = -1.0;
  double b_p1 = -1.0, b_p2 = -1.0, b_p3 = -1.0;
  double rho1_p1 = -1.0, rho1_p2 = -1.0, rho1_p3 = -1.0;
  double rho2_p1 = -1.0, rho2_p2 = -1.0, rho2_p3 = -1.0;
  double lower_p2 = -1.0;
  double lambda2 = 0.0, lambda_min = 0.0;
  double pi_min = -1.0;

  double t_build = 0.0, t_mixing = 0.0, t_spectral = 0.0, t_flows = 0.0;
};

/// Full per-graph pipeline: state graph, mixing time, spectral bound, flow
/// bounds. Size, periodicity and start errors become the row status; the
/// caller's batch continues.
BoundReport analyze(const BipartiteGraph& g, const AnalyzeOptions& opts,
                    std::string graph_id = {});

std::string bound_report_csv_header();
std::string bound_report_csv_row(const BoundReport& r);

struct BatchSummary {
  std::int64_t lines = 0;
  std::int64_t parse_failures = 0;
  std::int64_t with_perfect_matching = 0;
  std::int64_t analyzed_ok = 0;
  std::int64_t skipped_or_failed = 0;
  std::int64_t omega_min = 0, omega_max = 0;
  double omega_mean = 0.0, omega_median = 0.0;
  std::int64_t tau_max = -1;
  std::string tau_max_graph;
  std::int64_t ranking_violations = 0;  // spectral <= b3 <= b2 <= b1 breaks
};

/// Streams graph6 / edge-list-JSON lines through analyze with a worker
/// pool; rows are emitted in input order, so output is byte-identical for
/// every parallelism level. The summary is appended as '#' comment lines.
BatchSummary batch(std::istream& in, std::ostream& out,
                   const AnalyzeOptions& opts, int parallelism,
                   std::ostream* log = nullptr);

struct CountsRow {
  FamilySpec spec;
  std::string quantity;  // "perfect" or "near_uv"
  Int formula;
  Int enumerated;
  std::optional<Int> scan;  // |M| / |N_uv| seen by the state-graph scan
  bool match = false;
};

/// Formula vs. enumeration (vs. scan when requested) for family instances.
std::vector<CountsRow> verify_counts(const std::vector<FamilySpec>& specs,
                                     bool with_scan = false,
                                     const EnumerateOptions& enum_opts = {},
                                     std::int64_t state_cap = 200000);

}  // namespace matchmix

#endif
