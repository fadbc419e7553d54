#ifndef MATCHMIX_MIXING_HPP
#define MATCHMIX_MIXING_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "matchmix/state_graph.hpp"

namespace matchmix {

struct MixingOptions {
  std::int64_t dense_cap = 6000;      // max |Omega| for dense powering
  std::int64_t lanczos_threshold = 2000;  // dense eigensolver below this
  std::int64_t t_max = std::int64_t(1) << 40;
  bool keep_trace = false;
};

struct MixingResult {
  double epsilon = 0.0;
  std::int64_t tau_exact = -1;
  // Set when d(pi, t) sat within 1e-9 of epsilon at the decision boundary:
  // the neighboring candidate value for tau.
  std::optional<std::int64_t> tau_boundary_alternate;
  std::vector<std::pair<std::int64_t, double>> d_trace;

  double lambda2 = 0.0;
  double lambda_min = 0.0;
  double lambda_max_abs = 0.0;
  double spectral_bound = 0.0;
  double pi_min = 0.0;
  bool drift_renormalized = false;  // some P^t row needed renormalization
};

/// Cached binary squarings of the dense transition matrix; powers are
/// assembled from the set bits of t.
class TransitionPowers {
 public:
  TransitionPowers(const StateGraph& sg, std::int64_t dense_cap = 6000);

  /// d(pi, t): worst-start total variation distance after t steps.
  double total_variation(std::int64_t t);

  Eigen::MatrixXd power(std::int64_t t);
  double tvd_of(const Eigen::MatrixXd& pt) const;
  bool drift_renormalized() const { return drift_renormalized_; }
  const Eigen::MatrixXd& squaring(int j);
  std::int64_t size() const { return n_; }

 private:
  void guard_rows(Eigen::MatrixXd& m);

  std::int64_t n_;
  Eigen::RowVectorXd pi_;
  double pi_min_;
  std::vector<Eigen::MatrixXd> squarings_;  // squarings_[j] = P^(2^j)
  bool drift_renormalized_ = false;
};

/// d(pi, t) for one t.
double total_variation(const StateGraph& sg, std::int64_t t,
                       const MixingOptions& opts = {});

/// Exact total mixing time: doubling to bracket, then descending binary
/// refinement, reusing cached squarings. Requires an aperiodic chain;
/// throws PeriodicityError otherwise (the half-lazy variant is the remedy).
MixingResult total_mixing_time(const StateGraph& sg, double epsilon,
                               const MixingOptions& opts = {});

/// Same value by stepping t = 1, 2, 3, ... (cross-validation oracle).
MixingResult total_mixing_time_linear(const StateGraph& sg, double epsilon,
                                      const MixingOptions& opts = {});

/// Extreme eigenvalues of the symmetrized transition matrix and the bound
///   (1 - lambda_max)^{-1} (ln(1/epsilon) + ln(1/pi_min)),
/// with lambda_max = max(|lambda_2|, |lambda_min|).
MixingResult spectral_bound(const StateGraph& sg, double epsilon,
                            const MixingOptions& opts = {});

/// Extreme eigenvalues (lambda2, lambda_min) of the symmetrized matrix.
std::pair<double, double> extreme_eigenvalues(const StateGraph& sg,
                                              const MixingOptions& opts = {});

}  // namespace matchmix

#endif
