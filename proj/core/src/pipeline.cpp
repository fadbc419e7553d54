#include "matchmix/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <thread>
#include <tuple>

#include "matchmix/errors.hpp"
#include "matchmix/graph6.hpp"

namespace matchmix {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

BoundReport analyze(const BipartiteGraph& g, const AnalyzeOptions& opts,
                    std::string graph_id) {
  BoundReport rep;
  rep.graph_id = std::move(graph_id);
  rep.chain = opts.chain;
  rep.epsilon = opts.epsilon;
  rep.n_u = g.n_u();
  rep.n_v = g.n_v();
  rep.m = g.edge_count();

  if (opts.chain != ChainKind::monomer_dimer && !has_perfect_matching(g)) {
    rep.status = "skipped: no perfect matching";
    return rep;
  }

  try {
    auto t0 = std::chrono::steady_clock::now();
    StateGraph sg =
        build_state_graph(g, {opts.chain, opts.laziness}, {opts.state_cap});
    rep.t_build = seconds_since(t0);
    rep.omega = sg.size();
    rep.pi_min = sg.pi_min;

    if (opts.auto_lazy && !sg.aperiodic) {
      sg = sg.half_lazy();
      rep.lazy_used = true;
    }

    const MixingOptions mix_opts{.dense_cap = opts.dense_cap};
    const bool wants_flows =
        opts.analyses & (kAnalyzeFlowP1 | kAnalyzeFlowP2 | kAnalyzeFlowP3);
    const bool wants_eigs =
        (opts.analyses & kAnalyzeSpectral) || wants_flows;

    if (wants_eigs) {
      t0 = std::chrono::steady_clock::now();
      auto [l2, lmin] = extreme_eigenvalues(sg, mix_opts);
      if (opts.auto_lazy && wants_flows && std::abs(lmin) > std::abs(l2) + 1e-12) {
        sg = sg.half_lazy();
        rep.lazy_used = true;
        std::tie(l2, lmin) = extreme_eigenvalues(sg, mix_opts);
      }
      rep.lambda2 = l2;
      rep.lambda_min = lmin;
      const double lmax = std::max(std::abs(l2), std::abs(lmin));
      const double scale =
          std::log(1.0 / opts.epsilon) + std::log(1.0 / sg.pi_min);
      rep.spectral = lmax >= 1.0 ? std::numeric_limits<double>::infinity()
                                 : scale / (1.0 - lmax);
      rep.t_spectral = seconds_since(t0);
    }

    if (opts.analyses & kAnalyzeMixing) {
      t0 = std::chrono::steady_clock::now();
      const MixingResult mr = total_mixing_time(sg, opts.epsilon, mix_opts);
      rep.tau_exact = mr.tau_exact;
      rep.t_mixing = seconds_since(t0);
    }

    if (wants_flows) {
      t0 = std::chrono::steady_clock::now();
      const FlowOptions fopts{.explicit_cap = opts.flow_cap};
      auto run = [&](PathSystemKind kind, double& rho1, double& rho2,
                     double& bound) {
        PathSystem ps = build_paths(sg, kind, fopts);
        CongestionReport cr = congestion(sg, ps);
        multicommodity_bound(cr, sg, opts.epsilon, mix_opts);
        rep.lazy_used = rep.lazy_used || cr.lazy_used;
        rho1 = cr.rho1;
        rho2 = cr.rho2;
        bound = cr.bound_rho2;
        if (kind == PathSystemKind::one_shortest_p2)
          rep.lower_p2 = lower_bound(cr, sg, opts.epsilon);
      };
      if (opts.analyses & kAnalyzeFlowP1)
        run(PathSystemKind::canonical_p1, rep.rho1_p1, rep.rho2_p1, rep.b_p1);
      if (opts.analyses & kAnalyzeFlowP2)
        run(PathSystemKind::one_shortest_p2, rep.rho1_p2, rep.rho2_p2, rep.b_p2);
      if (opts.analyses & kAnalyzeFlowP3)
        run(PathSystemKind::all_shortest_p3, rep.rho1_p3, rep.rho2_p3, rep.b_p3);
      rep.t_flows = seconds_since(t0);
    }

    if (rep.tau_exact >= 0 && rep.spectral >= 0 &&
        static_cast<double>(rep.tau_exact) > rep.spectral + 1e-9) {
      rep.status = "violation: tau exceeds the spectral bound";
      return rep;
    }
  } catch (const Error& e) {
    rep.status = std::string("error: ") + e.what();
  }
  return rep;
}

std::string bound_report_csv_header() {
  return "# matchmix bound-report csv v1\n"
         "graph_id,status,n_u,n_v,m,omega,chain,epsilon,lazy_used,tau_exact,"
         "spectral,b_p1,b_p2,b_p3,rho1_p1,rho1_p2,rho1_p3,rho2_p1,rho2_p2,"
         "rho2_p3,lower_p2,lambda2,lambda_min,pi_min,t_build,t_mixing,"
         "t_spectral,t_flows";
}

std::string bound_report_csv_row(const BoundReport& r) {
  std::string s;
  s += r.graph_id;
  s += ',';
  std::string status = r.status;
  std::replace(status.begin(), status.end(), ',', ';');
  s += status;
  for (const auto v :
       {static_cast<double>(r.n_u), static_cast<double>(r.n_v),
        static_cast<double>(r.m), static_cast<double>(r.omega)})
    s += ',' + fmt(v);
  s += ',' + chain_name(r.chain);
  s += ',' + fmt(r.epsilon);
  s += r.lazy_used ? ",1" : ",0";
  s += ',' + std::to_string(r.tau_exact);
  for (const double v : {r.spectral, r.b_p1, r.b_p2, r.b_p3, r.rho1_p1,
                         r.rho1_p2, r.rho1_p3, r.rho2_p1, r.rho2_p2, r.rho2_p3,
                         r.lower_p2, r.lambda2, r.lambda_min, r.pi_min,
                         r.t_build, r.t_mixing, r.t_spectral, r.t_flows})
    s += ',' + fmt(v);
  return s;
}

BatchSummary batch(std::istream& in, std::ostream& out,
                   const AnalyzeOptions& opts, int parallelism,
                   std::ostream* log) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }

  BatchSummary sum;
  sum.lines = static_cast<std::int64_t>(lines.size());
  std::vector<BoundReport> reports(lines.size());
  std::vector<char> parsed(lines.size(), 0);

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= lines.size()) return;
      char idbuf[24];
      std::snprintf(idbuf, sizeof idbuf, "L%06zu", i + 1);
      try {
        BipartiteGraph g = lines[i][0] == '{' ? from_json(lines[i])
                                              : parse_graph6(lines[i]);
        std::string id = idbuf;
        if (!g.label().empty()) id += ":" + g.label();
        parsed[i] = 1;
        reports[i] = analyze(g, opts, id);
      } catch (const Error& e) {
        reports[i].graph_id = idbuf;
        reports[i].status = std::string("parse error: ") + e.what();
      }
    }
  };
  parallelism = std::max(1, parallelism);
  if (parallelism == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < parallelism; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  out << bound_report_csv_header() << '\n';
  std::vector<std::int64_t> omegas;
  double omega_sum = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const BoundReport& r = reports[i];
    if (!parsed[i]) {
      ++sum.parse_failures;
      if (log) *log << r.graph_id << ": " << r.status << " (line " << i + 1
                    << ")\n";
      out << bound_report_csv_row(r) << '\n';
      continue;
    }
    if (r.status.rfind("skipped: no perfect", 0) != 0)
      ++sum.with_perfect_matching;
    if (r.status == "ok") {
      ++sum.analyzed_ok;
      if (r.omega >= 0) {
        omegas.push_back(r.omega);
        omega_sum += static_cast<double>(r.omega);
      }
      if (r.tau_exact > sum.tau_max) {
        sum.tau_max = r.tau_exact;
        sum.tau_max_graph = r.graph_id;
      }
      const bool ranked = r.spectral >= 0 && r.b_p3 >= 0 && r.b_p2 >= 0 &&
                          r.b_p1 >= 0;
      if (ranked && !(r.spectral <= r.b_p3 + 1e-9 && r.b_p3 <= r.b_p2 + 1e-9 &&
                      r.b_p2 <= r.b_p1 + 1e-9)) {
        ++sum.ranking_violations;
        if (log) *log << r.graph_id << ": bound ranking violated\n";
      }
    } else {
      ++sum.skipped_or_failed;
      if (log) *log << r.graph_id << ": " << r.status << '\n';
    }
    out << bound_report_csv_row(r) << '\n';
  }
  if (!omegas.empty()) {
    std::sort(omegas.begin(), omegas.end());
    sum.omega_min = omegas.front();
    sum.omega_max = omegas.back();
    sum.omega_mean = omega_sum / static_cast<double>(omegas.size());
    const std::size_t h = omegas.size() / 2;
    sum.omega_median = omegas.size() % 2 ? static_cast<double>(omegas[h])
                                         : 0.5 * static_cast<double>(
                                                     omegas[h - 1] + omegas[h]);
  }
  out << "# lines=" << sum.lines << " parse_failures=" << sum.parse_failures
      << " with_perfect_matching=" << sum.with_perfect_matching
      << " analyzed_ok=" << sum.analyzed_ok
      << " skipped_or_failed=" << sum.skipped_or_failed << '\n';
  out << "# omega_min=" << sum.omega_min << " omega_max=" << sum.omega_max
      << " omega_mean=" << fmt(sum.omega_mean)
      << " omega_median=" << fmt(sum.omega_median) << '\n';
  out << "# tau_max=" << sum.tau_max << " tau_max_graph=" << sum.tau_max_graph
      << " ranking_violations=" << sum.ranking_violations << '\n';
  return sum;
}

std::vector<CountsRow> verify_counts(const std::vector<FamilySpec>& specs,
                                     bool with_scan,
                                     const EnumerateOptions& enum_opts,
                                     std::int64_t state_cap) {
  std::vector<CountsRow> rows;
  for (const FamilySpec& spec : specs) {
    const BipartiteGraph g = generate_family(spec);
    const auto holes = family_distinguished_holes(spec);
    const MatchingCounts formula = expected_counts(spec);

    std::optional<MatchingCounts> scanned;
    if (with_scan) {
      try {
        StateGraph sg = build_state_graph(g, {ChainKind::broder, 0.0},
                                          {state_cap});
        scanned = sg.scan_counts;
      } catch (const Error&) {
        scanned.reset();  // above the cap: scan column stays empty
      }
    }

    CountsRow perfect_row{spec, "perfect", *formula.perfect,
                          count_perfect(g, enum_opts), std::nullopt, false};
    if (scanned) perfect_row.scan = *scanned->perfect;
    perfect_row.match =
        perfect_row.formula == perfect_row.enumerated &&
        (!perfect_row.scan || *perfect_row.scan == perfect_row.formula);
    rows.push_back(std::move(perfect_row));

    CountsRow near_row{spec, "near_uv", formula.near(holes.first, holes.second),
                       count_near(g, holes.first, holes.second, enum_opts),
                       std::nullopt, false};
    if (scanned) near_row.scan = scanned->near(holes.first, holes.second);
    near_row.match = near_row.formula == near_row.enumerated &&
                     (!near_row.scan || *near_row.scan == near_row.formula);
    rows.push_back(std::move(near_row));
  }
  return rows;
}

}  // namespace matchmix
