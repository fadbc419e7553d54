#include "matchmix/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "matchmix/errors.hpp"

namespace matchmix {

namespace {

Eigen::MatrixXd dense_transition(const StateGraph& sg) {
  const std::int64_t n = sg.size();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (StateId x = 0; x < sg.rows.size(); ++x)
    for (const auto& [y, prob] : sg.rows[x]) p(x, y) = prob;
  return p;
}

void require_dense(const StateGraph& sg, std::int64_t cap) {
  if (sg.size() > cap)
    throw SizeError("state graph exceeds the dense matrix cap (" +
                    std::to_string(cap) + ")");
}

void require_aperiodic(const StateGraph& sg) {
  if (sg.size() <= 1) return;
  if (!sg.aperiodic)
    throw PeriodicityError(
        "chain is periodic (bipartite state graph, no self-loop); use the "
        "laziness 1/2 variant");
}

struct ProbeLog {
  std::vector<std::pair<std::int64_t, double>> probes;

  void add(std::int64_t t, double d) {
    probes.push_back({t, d});
    auto sorted = probes;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (sorted[i].second > sorted[i - 1].second + 1e-12)
        throw NumericError("total variation distance is not monotone in t");
    }
  }
};

}  // namespace

TransitionPowers::TransitionPowers(const StateGraph& sg, std::int64_t dense_cap)
    : n_(sg.size()), pi_min_(sg.pi_min) {
  require_dense(sg, dense_cap);
  pi_ = Eigen::Map<const Eigen::RowVectorXd>(sg.pi.data(), n_);
  squarings_.push_back(dense_transition(sg));
}

void TransitionPowers::guard_rows(Eigen::MatrixXd& m) {
  Eigen::VectorXd sums = m.rowwise().sum();
  if ((sums.array() - 1.0).abs().maxCoeff() > 1e-9) {
    drift_renormalized_ = true;
    m.array().colwise() /= sums.array();
  }
}

const Eigen::MatrixXd& TransitionPowers::squaring(int j) {
  while (static_cast<int>(squarings_.size()) <= j) {
    Eigen::MatrixXd next = squarings_.back() * squarings_.back();
    guard_rows(next);
    squarings_.push_back(std::move(next));
  }
  return squarings_[j];
}

Eigen::MatrixXd TransitionPowers::power(std::int64_t t) {
  if (t < 0) throw DomainError("negative time");
  if (t == 0) return Eigen::MatrixXd::Identity(n_, n_);
  Eigen::MatrixXd result;
  bool have = false;
  for (int j = 0; t != 0; ++j, t >>= 1) {
    if (t & 1) {
      if (!have) {
        result = squaring(j);
        have = true;
      } else {
        result = result * squaring(j);
        guard_rows(result);
      }
    }
  }
  return result;
}

double TransitionPowers::tvd_of(const Eigen::MatrixXd& pt) const {
  return 0.5 * (pt.rowwise() - pi_).cwiseAbs().rowwise().sum().maxCoeff();
}

double TransitionPowers::total_variation(std::int64_t t) {
  if (t == 0) return n_ > 1 ? 1.0 - pi_min_ : 0.0;
  return tvd_of(power(t));
}

double total_variation(const StateGraph& sg, std::int64_t t,
                       const MixingOptions& opts) {
  if (t < 0) throw DomainError("negative time");
  if (t == 0) return sg.size() > 1 ? 1.0 - sg.pi_min : 0.0;
  TransitionPowers powers(sg, opts.dense_cap);
  return powers.total_variation(t);
}

MixingResult total_mixing_time(const StateGraph& sg, double epsilon,
                               const MixingOptions& opts) {
  if (epsilon <= 0 || epsilon >= 1) throw DomainError("epsilon must lie in (0,1)");
  require_aperiodic(sg);
  MixingResult res;
  res.epsilon = epsilon;
  res.pi_min = sg.pi_min;

  const double d0 = sg.size() > 1 ? 1.0 - sg.pi_min : 0.0;
  ProbeLog log;
  log.add(0, d0);
  if (d0 <= epsilon) {
    res.tau_exact = 0;
    if (opts.keep_trace) res.d_trace = log.probes;
    return res;
  }

  TransitionPowers powers(sg, opts.dense_cap);

  // Doubling phase: find the first power of two with d <= epsilon.
  int j = 0;
  double d_hi;
  while (true) {
    const std::int64_t t = std::int64_t(1) << j;
    if (t > opts.t_max)
      throw NumericError("mixing time exceeds the search limit");
    d_hi = powers.tvd_of(powers.squaring(j));
    log.add(t, d_hi);
    if (d_hi <= epsilon) break;
    ++j;
  }

  std::int64_t tau;
  if (j == 0) {
    tau = 1;
  } else {
    // Largest t in [2^{j-1}, 2^j) with d(t) > epsilon; tau is one past it.
    // The rejected candidates always include tau itself, so the probe log
    // ends up holding d at both sides of the boundary.
    std::int64_t t_cur = std::int64_t(1) << (j - 1);
    Eigen::MatrixXd cur = powers.squaring(j - 1);
    for (int s = j - 2; s >= 0; --s) {
      Eigen::MatrixXd cand = cur * powers.squaring(s);
      const std::int64_t t_cand = t_cur + (std::int64_t(1) << s);
      const double d = powers.tvd_of(cand);
      log.add(t_cand, d);
      if (d > epsilon) {
        cur = std::move(cand);
        t_cur = t_cand;
      }
    }
    tau = t_cur + 1;
  }
  res.tau_exact = tau;

  // Boundary ties: when d sits within 1e-9 of epsilon at the decision
  // point, the neighboring value is an equally defensible answer.
  auto probed = [&](std::int64_t t) {
    for (const auto& [pt, pd] : log.probes)
      if (pt == t) return pd;
    return powers.total_variation(t);
  };
  if (std::abs(probed(tau) - epsilon) < 1e-9)
    res.tau_boundary_alternate = tau + 1;
  if (std::abs(probed(tau - 1) - epsilon) < 1e-9)
    res.tau_boundary_alternate = tau - 1;
  res.drift_renormalized = powers.drift_renormalized();
  if (opts.keep_trace) {
    std::sort(log.probes.begin(), log.probes.end());
    res.d_trace = log.probes;
  }
  return res;
}

MixingResult total_mixing_time_linear(const StateGraph& sg, double epsilon,
                                      const MixingOptions& opts) {
  if (epsilon <= 0 || epsilon >= 1) throw DomainError("epsilon must lie in (0,1)");
  require_aperiodic(sg);
  require_dense(sg, opts.dense_cap);
  MixingResult res;
  res.epsilon = epsilon;
  res.pi_min = sg.pi_min;

  const double d0 = sg.size() > 1 ? 1.0 - sg.pi_min : 0.0;
  if (opts.keep_trace) res.d_trace.push_back({0, d0});
  if (d0 <= epsilon) {
    res.tau_exact = 0;
    return res;
  }
  const Eigen::MatrixXd p = dense_transition(sg);
  Eigen::RowVectorXd pi = Eigen::Map<const Eigen::RowVectorXd>(sg.pi.data(), sg.size());
  Eigen::MatrixXd pt = p;
  double prev = d0;
  for (std::int64_t t = 1;; ++t) {
    if (t > opts.t_max) throw NumericError("mixing time exceeds the search limit");
    const double d = 0.5 * (pt.rowwise() - pi).cwiseAbs().rowwise().sum().maxCoeff();
    if (d > prev + 1e-12)
      throw NumericError("total variation distance is not monotone in t");
    prev = d;
    if (opts.keep_trace) res.d_trace.push_back({t, d});
    if (d <= epsilon) {
      res.tau_exact = t;
      if (std::abs(d - epsilon) < 1e-9) res.tau_boundary_alternate = t + 1;
      return res;
    }
    pt = pt * p;
  }
}

namespace {

Eigen::MatrixXd symmetrized(const StateGraph& sg) {
  const std::int64_t n = sg.size();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (StateId x = 0; x < sg.rows.size(); ++x) {
    const double sx = std::sqrt(sg.pi[x]);
    for (const auto& [y, prob] : sg.rows[x])
      s(x, y) = sx * prob / std::sqrt(sg.pi[y]);
  }
  const double asym = (s - s.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9)
    throw NumericError("symmetrized transition matrix asymmetry " +
                       std::to_string(asym));
  s = 0.5 * (s + s.transpose().eval());
  return s;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Lanczos with full reorthogonalization on S deflated by its known top
/// eigenvector sqrt(pi); returns (lambda2, lambda_min) with residuals
/// certified <= 1e-9.
std::pair<double, double> lanczos_extremes(const StateGraph& sg) {
  const std::int64_t n = sg.size();
  Eigen::VectorXd phi(n);
  for (std::int64_t i = 0; i < n; ++i) phi[i] = std::sqrt(sg.pi[i]);
  phi.normalize();

  // Sparse arc list of the symmetrized operator.
  struct Arc {
    StateId x, y;
    double w;
  };
  std::vector<Arc> arcs;
  for (StateId x = 0; x < sg.rows.size(); ++x) {
    const double sx = std::sqrt(sg.pi[x]);
    for (const auto& [y, prob] : sg.rows[x])
      arcs.push_back({x, y, sx * prob / std::sqrt(sg.pi[y])});
  }
  auto matvec = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (const Arc& a : arcs) out[a.x] += a.w * v[a.y];
    out -= phi * phi.dot(out);  // deflate the unit eigenvalue
    return out;
  };

  const int max_iter = static_cast<int>(std::min<std::int64_t>(n, 700));
  std::vector<Eigen::VectorXd> basis;
  std::vector<double> alpha, beta;

  std::uint64_t rs = 0x5DEECE66Dull;
  Eigen::VectorXd v(n);
  for (std::int64_t i = 0; i < n; ++i)
    v[i] = static_cast<double>(splitmix64(rs) >> 11) * 0x1.0p-53 - 0.5;
  v -= phi * phi.dot(v);
  v.normalize();
  basis.push_back(v);

  double lambda2 = 0, lambda_min = 0;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd w = matvec(basis.back());
    const double a = basis.back().dot(w);
    alpha.push_back(a);
    w -= a * basis.back();
    if (basis.size() > 1) w -= beta.back() * basis[basis.size() - 2];
    // Full reorthogonalization keeps the basis clean.
    for (const auto& q : basis) w -= q.dot(w) * q;
    w -= phi * phi.dot(w);
    const double b = w.norm();

    const int j = static_cast<int>(alpha.size());
    if (j >= 2 || b < 1e-13) {
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(j, j);
      for (int i = 0; i < j; ++i) {
        t(i, i) = alpha[i];
        if (i + 1 < j) t(i, i + 1) = t(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      const auto& ev = es.eigenvalues();
      const auto& vecs = es.eigenvectors();
      const double res_top = std::abs(b * vecs(j - 1, j - 1));
      const double res_bot = std::abs(b * vecs(j - 1, 0));
      if ((res_top <= 1e-9 && res_bot <= 1e-9) || b < 1e-13 ||
          j == static_cast<int>(n)) {
        lambda2 = ev(j - 1);
        lambda_min = ev(0);
        return {lambda2, lambda_min};
      }
      if (it == max_iter - 1)
        throw NumericError("eigensolver did not converge; residuals " +
                           std::to_string(res_top) + ", " +
                           std::to_string(res_bot));
    }
    if (b < 1e-13) break;
    beta.push_back(b);
    basis.push_back(w / b);
  }
  throw NumericError("eigensolver did not converge");
}

}  // namespace

std::pair<double, double> extreme_eigenvalues(const StateGraph& sg,
                                              const MixingOptions& opts) {
  const std::int64_t n = sg.size();
  if (n == 1) return {0.0, 0.0};
  if (n < opts.lanczos_threshold) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrized(sg));
    if (es.info() != Eigen::Success)
      throw NumericError("dense eigensolver failed");
    const auto& ev = es.eigenvalues();  // ascending
    return {ev(n - 2), ev(0)};
  }
  return lanczos_extremes(sg);
}

MixingResult spectral_bound(const StateGraph& sg, double epsilon,
                            const MixingOptions& opts) {
  if (epsilon <= 0 || epsilon >= 1) throw DomainError("epsilon must lie in (0,1)");
  MixingResult res;
  res.epsilon = epsilon;
  res.pi_min = sg.pi_min;
  auto [l2, lmin] = extreme_eigenvalues(sg, opts);
  res.lambda2 = l2;
  res.lambda_min = lmin;
  res.lambda_max_abs = std::max(std::abs(l2), std::abs(lmin));
  const double gap = 1.0 - res.lambda_max_abs;
  const double scale = std::log(1.0 / epsilon) + std::log(1.0 / sg.pi_min);
  res.spectral_bound =
      gap <= 0 ? std::numeric_limits<double>::infinity() : scale / gap;
  return res;
}

}  // namespace matchmix
