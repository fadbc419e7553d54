// matchmix: state graphs, exact mixing times and mixing-time bounds for
// matching chains on bipartite graphs.
//
// Subcommands:
//   gen      emit one family graph (edge-list JSON or graph6)
//   counts   closed-form vs enumerated matching counts for family sweeps
//   analyze  per-graph pipeline: state graph, tau(eps), spectral and
//            multicommodity bounds (CSV)
//   batch    analyze a stream of graphs with a worker pool + summary
//   sample   run a chain as a sampler and print matchings
//   verify   family count self-check with optional state-graph scan
//
// Graph inputs are one graph per line: graph6, or edge-list JSON
// {"n_u":..,"n_v":..,"edges":[[u,v],...]}. Use "-" for stdin.
// Size caps honor MATCHMIX_STATE_CAP, MATCHMIX_DENSE_CAP and
// MATCHMIX_ENUM_CAP when set.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "matchmix/errors.hpp"
#include "matchmix/graph6.hpp"
#include "matchmix/pipeline.hpp"
#include "matchmix/sampling.hpp"

namespace mm = matchmix;

namespace {

std::int64_t env_cap(const char* name, std::int64_t fallback) {
  const char* v = std::getenv(name);
  if (!v) return fallback;
  return std::strtoll(v, nullptr, 10);
}

std::vector<mm::BipartiteGraph> read_graphs(const std::string& path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file) throw mm::ParseError("cannot open " + path);
    in = &file;
  }
  std::vector<mm::BipartiteGraph> graphs;
  std::string line;
  while (std::getline(*in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    if (line.empty()) continue;
    graphs.push_back(line[0] == '{' ? mm::from_json(line)
                                    : mm::parse_graph6(line));
  }
  return graphs;
}

/// "hexagon:2" or "hexagon:1..5" -> list of specs.
std::vector<mm::FamilySpec> parse_family_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return {mm::parse_family_spec(text)};
  const auto colon = text.find(':');
  if (colon == std::string::npos || colon > dots)
    throw mm::ParseError("family range must look like name:a..b");
  const std::string name = text.substr(0, colon);
  const int lo = std::stoi(text.substr(colon + 1, dots - colon - 1));
  const int hi = std::stoi(text.substr(dots + 2));
  std::vector<mm::FamilySpec> specs;
  for (int k = lo; k <= hi; ++k) {
    try {
      mm::FamilySpec spec = mm::parse_family_spec(name + ":" + std::to_string(k));
      mm::generate_family(spec);  // parity filter
      specs.push_back(spec);
    } catch (const mm::DomainError&) {
      // skip parameters outside the family's parity constraint
    }
  }
  return specs;
}

unsigned parse_analyses(const std::string& list) {
  if (list == "all") return mm::kAnalyzeAll;
  unsigned bits = 0;
  std::stringstream ss(list);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok == "mixing") bits |= mm::kAnalyzeMixing;
    else if (tok == "spectral") bits |= mm::kAnalyzeSpectral;
    else if (tok == "p1") bits |= mm::kAnalyzeFlowP1;
    else if (tok == "p2") bits |= mm::kAnalyzeFlowP2;
    else if (tok == "p3") bits |= mm::kAnalyzeFlowP3;
    else if (tok == "flows") bits |= mm::kAnalyzeFlowP1 | mm::kAnalyzeFlowP2 |
                                     mm::kAnalyzeFlowP3;
    else if (tok == "build") ;  // always on
    else throw mm::ParseError("unknown analysis: " + tok);
  }
  return bits;
}

std::string counts_row_str(const mm::CountsRow& r) {
  std::string s = mm::family_name(r.spec.family) + "," +
                  std::to_string(r.spec.size_parameter) + "," + r.quantity +
                  "," + r.formula.str() + "," + r.enumerated.str() + ",";
  s += r.scan ? r.scan->str() : "-";
  s += r.match ? ",ok" : ",MISMATCH";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matching chains: exact mixing times and bounds"};
  app.require_subcommand(1);

  std::string family_arg, input_path = "-", chain_arg = "broder";
  std::string format = "json", analyses_arg = "all";
  double epsilon = 0.18393972058572117;  // 1/(2e)
  bool eps_appendix = false;              // 1e-9 preset
  double laziness = 0.0;
  bool no_auto_lazy = false, with_scan = false;
  int jobs = 1;
  std::int64_t t_steps = 100, trials = 1;
  std::uint64_t seed = 1;
  std::string start_arg = "auto";

  auto* gen = app.add_subcommand("gen", "emit one family graph");
  gen->add_option("family", family_arg, "family spec, e.g. hexagon:3")->required();
  gen->add_option("--format", format, "json or graph6")
      ->check(CLI::IsMember({"json", "graph6"}));

  auto* counts = app.add_subcommand("counts", "family count table");
  counts->add_option("family", family_arg, "family spec or range, e.g. hexagon:1..5")
      ->required();
  counts->add_flag("--scan", with_scan, "also compare the state-graph scan");

  auto* analyze_cmd = app.add_subcommand("analyze", "bounds for each input graph");
  analyze_cmd->add_option("input", input_path, "graph file or -");
  analyze_cmd->add_option("--chain", chain_arg, "broder | jsv | monomer_dimer");
  analyze_cmd->add_option("--epsilon", epsilon, "total variation target");
  analyze_cmd->add_flag("--epsilon-appendix", eps_appendix, "use 1e-9");
  analyze_cmd->add_option("--analyses", analyses_arg,
                          "comma list of mixing,spectral,p1,p2,p3,flows or all");
  analyze_cmd->add_option("--laziness", laziness, "self-loop mass in [0,1)");
  analyze_cmd->add_flag("--no-auto-lazy", no_auto_lazy,
                        "fail instead of switching to the half-lazy chain");

  auto* batch_cmd = app.add_subcommand("batch", "analyze a stream with summary");
  batch_cmd->add_option("input", input_path, "graph file or -");
  batch_cmd->add_option("--chain", chain_arg, "broder | jsv | monomer_dimer");
  batch_cmd->add_option("--epsilon", epsilon, "total variation target");
  batch_cmd->add_flag("--epsilon-appendix", eps_appendix, "use 1e-9");
  batch_cmd->add_option("--analyses", analyses_arg, "analysis selection");
  batch_cmd->add_option("-j,--jobs", jobs, "worker threads");
  batch_cmd->add_flag("--no-auto-lazy", no_auto_lazy);

  auto* sample_cmd = app.add_subcommand("sample", "run a chain as a sampler");
  sample_cmd->add_option("input", input_path, "graph file or -");
  sample_cmd->add_option("--chain", chain_arg, "broder | jsv | monomer_dimer");
  sample_cmd->add_option("--t", t_steps, "steps per trajectory");
  sample_cmd->add_option("--trials", trials, "number of trajectories");
  sample_cmd->add_option("--seed", seed, "base seed; trial i uses seed^i");
  sample_cmd->add_option("--start", start_arg, "auto | perfect | empty");
  sample_cmd->add_option("--laziness", laziness, "self-loop mass in [0,1)");

  auto* verify_cmd = app.add_subcommand("verify", "family count self-check");
  verify_cmd->add_option("--families", family_arg,
                         "comma list of specs/ranges (default: standard sweep)");
  verify_cmd->add_flag("--scan", with_scan, "also compare the state-graph scan");

  CLI11_PARSE(app, argc, argv);

  const std::int64_t state_cap = env_cap("MATCHMIX_STATE_CAP", 200000);
  const std::int64_t dense_cap = env_cap("MATCHMIX_DENSE_CAP", 6000);
  mm::EnumerateOptions enum_opts;
  enum_opts.max_vertices =
      static_cast<int>(env_cap("MATCHMIX_ENUM_CAP", enum_opts.max_vertices));
  if (eps_appendix) epsilon = 1e-9;

  try {
    if (*gen) {
      const mm::BipartiteGraph g =
          mm::generate_family(mm::parse_family_spec(family_arg));
      std::cout << (format == "json" ? mm::to_json(g) : mm::to_graph6(g))
                << '\n';
      return 0;
    }

    if (*counts || *verify_cmd) {
      std::vector<mm::FamilySpec> specs;
      if (*counts) {
        specs = parse_family_range(family_arg);
      } else if (!family_arg.empty()) {
        std::stringstream ss(family_arg);
        for (std::string tok; std::getline(ss, tok, ',');)
          for (const auto& s : parse_family_range(tok)) specs.push_back(s);
      } else {
        specs = parse_family_range("hexagon:1..5");
        for (const auto& s : parse_family_range("triangle_threshold:3..7"))
          specs.push_back(s);
        specs.push_back({mm::Family::regular_chain, 1});
        specs.push_back({mm::Family::regular_ladder, 2});
        enum_opts.max_vertices = std::max(enum_opts.max_vertices, 64);
      }
      const auto rows = mm::verify_counts(specs, with_scan, enum_opts, state_cap);
      std::cout << "family,param,quantity,formula,enumerated,scan,match\n";
      bool all_ok = true;
      for (const auto& r : rows) {
        std::cout << counts_row_str(r) << '\n';
        all_ok = all_ok && r.match;
      }
      if (!all_ok) {
        std::cerr << "count verification FAILED\n";
        return 1;
      }
      return 0;
    }

    if (*analyze_cmd || *batch_cmd) {
      mm::AnalyzeOptions opts;
      opts.chain = mm::parse_chain(chain_arg);
      opts.epsilon = epsilon;
      opts.laziness = laziness;
      opts.analyses = parse_analyses(analyses_arg);
      opts.state_cap = state_cap;
      opts.dense_cap = dense_cap;
      opts.auto_lazy = !no_auto_lazy;

      if (*batch_cmd) {
        std::ifstream file;
        std::istream* in = &std::cin;
        if (input_path != "-") {
          file.open(input_path);
          if (!file) throw mm::ParseError("cannot open " + input_path);
          in = &file;
        }
        mm::batch(*in, std::cout, opts, jobs, &std::cerr);
        return 0;
      }
      const auto graphs = read_graphs(input_path);
      std::cout << mm::bound_report_csv_header() << '\n';
      int i = 0;
      for (const auto& g : graphs) {
        const std::string id =
            g.label().empty() ? "G" + std::to_string(++i) : g.label();
        std::cout << mm::bound_report_csv_row(mm::analyze(g, opts, id)) << '\n';
      }
      return 0;
    }

    if (*sample_cmd) {
      const auto graphs = read_graphs(input_path);
      if (graphs.empty()) throw mm::ParseError("no input graph");
      const mm::BipartiteGraph& g = graphs.front();
      const mm::ChainSpec chain{mm::parse_chain(chain_arg), laziness};

      // Default start: a perfect matching for broder/jsv, the empty
      // matching for monomer_dimer.
      mm::Matching start = mm::Matching::empty(g);
      const bool want_perfect =
          start_arg == "perfect" || (start_arg == "auto" &&
                                     chain.kind != mm::ChainKind::monomer_dimer);
      if (want_perfect) {
        auto pm = mm::find_perfect_matching(g);
        if (pm.empty())
          throw mm::StartError("no perfect matching to start from");
        start = mm::Matching::from_partner_u(g, std::move(pm));
      }
      std::optional<mm::JsvWeights> weights;
      if (chain.kind == mm::ChainKind::jsv)
        weights.emplace(
            mm::enumerate_matchings(g, mm::EnumerateMode::near_perfect, enum_opts));

      std::cout << "{\"chain\":\"" << mm::chain_name(chain.kind)
                << "\",\"t\":" << t_steps << ",\"trials\":" << trials
                << ",\"seed\":" << seed << ",\"laziness\":" << laziness
                << "}\n";
      for (std::int64_t i = 0; i < trials; ++i) {
        const mm::Matching m = mm::metropolis_run(
            g, chain, start, t_steps, seed ^ static_cast<std::uint64_t>(i),
            weights ? &*weights : nullptr);
        bool first = true;
        for (mm::VertexId u = 0; u < g.n_u(); ++u) {
          if (m.partner_u[u] < 0) continue;
          if (!first) std::cout << ' ';
          std::cout << u << '-' << m.partner_u[u];
          first = false;
        }
        std::cout << '\n';
      }
      return 0;
    }
  } catch (const mm::Error& e) {
    std::cerr << "matchmix: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
