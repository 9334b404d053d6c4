#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gts/distance.hpp"
#include "gts/errors.hpp"
#include "gts/graph.hpp"
#include "gts/inference.hpp"
#include "gts/io.hpp"
#include "gts/report.hpp"
#include "gts/simulate.hpp"
#include "gts/stats.hpp"

namespace {

using nlohmann::ordered_json;

struct GlobalOpts {
  int threads = 0;      // 0 = available parallelism
  std::string x_label;  // empty = lexicographically smaller token is sample X
};

int resolved_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::optional<std::string> opt_str(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

void echo_config(const ordered_json& j) { std::cerr << "config " << j.dump() << "\n"; }

// Reports go to stdout unless --out names a file; either way nothing is
// written until the computation has fully succeeded.
void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    gts::write_text_file(out_path, content);
  }
}

int usage(const std::string& msg) {
  std::cerr << "usage error: " << msg << "\n";
  return 2;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t end = csv.find(',', start);
    if (end == std::string::npos) {
      items.push_back(csv.substr(start));
      break;
    }
    items.push_back(csv.substr(start, end - start));
    start = end + 1;
  }
  return items;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw gts::ParseError("bad " + what + ": \"" + s + "\"");
  }
}

std::vector<int> parse_int_list(const std::string& csv, const std::string& what) {
  std::vector<int> out;
  for (const auto& item : split_list(csv)) out.push_back(parse_int(item, what));
  return out;
}

// "150:150,100:200" -> {(150,150), (100,200)}
std::vector<std::pair<int, int>> parse_size_list(const std::string& csv) {
  std::vector<std::pair<int, int>> out;
  for (const auto& item : split_list(csv)) {
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos) {
      throw gts::ParseError("bad size pair \"" + item + "\", expected n:m");
    }
    out.emplace_back(parse_int(item.substr(0, colon), "sample size"),
                     parse_int(item.substr(colon + 1), "sample size"));
  }
  return out;
}

// "5-mst" or "mst" (k defaults to 1)
gts::GraphSpec parse_graph_spec(const std::string& token) {
  const std::size_t dash = token.find('-');
  gts::GraphSpec spec;
  if (dash == std::string::npos) {
    spec.kind = gts::graph_kind_from_string(token);
    spec.k = 1;
  } else {
    spec.k = parse_int(token.substr(0, dash), "graph density");
    spec.kind = gts::graph_kind_from_string(token.substr(dash + 1));
  }
  if (spec.k < 1) throw gts::ParseError("graph density must be at least 1 in \"" + token + "\"");
  return spec;
}

std::vector<gts::GraphSpec> parse_graph_specs(const std::string& csv) {
  std::vector<gts::GraphSpec> out;
  for (const auto& item : split_list(csv)) out.push_back(parse_graph_spec(item));
  return out;
}

std::vector<gts::StatName> parse_stat_list(const std::string& csv) {
  std::vector<gts::StatName> out;
  for (const auto& item : split_list(csv)) out.push_back(gts::stat_from_string(item));
  return out;
}

bool is_graph_kind(const std::string& s) {
  try {
    (void)gts::graph_kind_from_string(s);
    return true;
  } catch (const gts::Error&) {
    return false;
  }
}

// Inputs shared by test and diagnose: a graph either loaded from a JSON file
// (--graph path) or built from points/distances (--graph kind, --k).
struct GraphSourceOpts {
  std::string points_path;
  std::string distances_path;
  std::string metric = "euclidean";
  std::string graph_arg = "kmst";
  int k = 1;
};

struct ResolvedInputs {
  std::optional<gts::PointSet> points;
  gts::SimilarityGraph graph;
};

ResolvedInputs resolve_graph(const GraphSourceOpts& src) {
  ResolvedInputs in;
  if (!src.points_path.empty()) in.points = gts::load_points(src.points_path);
  if (is_graph_kind(src.graph_arg)) {
    gts::DistanceMatrix dist;
    if (in.points) {
      dist = gts::pairwise_distances(*in.points, gts::metric_from_string(src.metric));
    } else if (!src.distances_path.empty()) {
      dist = gts::load_distance_matrix(src.distances_path);
    } else {
      throw gts::CalibrationError("building a graph needs --points or --distances");
    }
    switch (gts::graph_kind_from_string(src.graph_arg)) {
      case gts::GraphKind::kMst: in.graph = gts::build_kmst(dist, src.k); break;
      case gts::GraphKind::kMdp: in.graph = gts::build_kmdp(dist, src.k); break;
      case gts::GraphKind::kNn: in.graph = gts::build_knn(dist, src.k); break;
    }
  } else {
    in.graph = gts::load_graph(src.graph_arg);
  }
  return in;
}

struct BuildGraphOpts {
  std::string input_path;
  std::string distances_path;
  std::string metric = "euclidean";
  std::string kind = "kmst";
  int k = 1;
  std::string out;
};

int cmd_build_graph(const BuildGraphOpts& o, const GlobalOpts& g) {
  echo_config(ordered_json{{"command", "build-graph"},
                           {"input", o.input_path},
                           {"distances", o.distances_path},
                           {"metric", o.metric},
                           {"graph", o.kind},
                           {"k", o.k},
                           {"out", o.out},
                           {"threads", resolved_threads(g.threads)}});
  if (o.input_path.empty() && o.distances_path.empty()) {
    return usage("build-graph needs --input or --distances");
  }
  gts::DistanceMatrix dist;
  if (!o.input_path.empty()) {
    dist = gts::pairwise_distances(gts::load_points(o.input_path),
                                   gts::metric_from_string(o.metric));
  } else {
    dist = gts::load_distance_matrix(o.distances_path);
  }
  gts::SimilarityGraph graph;
  switch (gts::graph_kind_from_string(o.kind)) {
    case gts::GraphKind::kMst: graph = gts::build_kmst(dist, o.k); break;
    case gts::GraphKind::kMdp: graph = gts::build_kmdp(dist, o.k); break;
    case gts::GraphKind::kNn: graph = gts::build_knn(dist, o.k); break;
  }
  emit(gts::graph_to_json(graph), o.out);
  return 0;
}

struct TestOpts {
  GraphSourceOpts src;
  std::string labels_path;
  std::string stat = "S";
  std::string pvalue = "all";
  long long perms = 10000;
  long long exact_threshold = 20000;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_test(const TestOpts& o, const GlobalOpts& g) {
  echo_config(ordered_json{{"command", "test"},
                           {"graph", o.src.graph_arg},
                           {"points", o.src.points_path},
                           {"distances", o.src.distances_path},
                           {"metric", o.src.metric},
                           {"k", o.src.k},
                           {"labels", o.labels_path},
                           {"stat", o.stat},
                           {"pvalue", o.pvalue},
                           {"perms", o.perms},
                           {"exact_threshold", o.exact_threshold},
                           {"seed", o.seed},
                           {"x_label", g.x_label},
                           {"out", o.out},
                           {"threads", resolved_threads(g.threads)}});

  gts::PValueSelection sel;
  if (o.pvalue == "asymptotic") {
    sel = {true, false, false};
  } else if (o.pvalue == "perm") {
    sel = {false, true, false};
  } else if (o.pvalue == "exact") {
    sel = {false, true, true};
  } else if (o.pvalue == "all") {
    sel = {true, true, false};
  } else {
    return usage("--pvalue must be one of exact, perm, asymptotic, all");
  }

  const ResolvedInputs in = resolve_graph(o.src);
  const gts::Labeling labeling = gts::load_labels(o.labels_path, opt_str(g.x_label));

  gts::PermutationConfig pc;
  pc.n_permutations = o.perms;
  pc.seed = o.seed;
  pc.exact_threshold = o.exact_threshold;
  pc.threads = g.threads;

  const gts::PointSet* points = in.points ? &*in.points : nullptr;
  std::string output;
  if (o.stat == "all") {
    const auto stats = gts::applicable_statistics(points != nullptr);
    output = "[\n";
    for (std::size_t i = 0; i < stats.size(); ++i) {
      std::string rep =
          gts::report_to_json(gts::run_test(in.graph, labeling, stats[i], sel, pc, points));
      while (!rep.empty() && rep.back() == '\n') rep.pop_back();
      output += rep;
      output += i + 1 < stats.size() ? ",\n" : "\n";
    }
    output += "]\n";
  } else {
    const gts::StatName name = gts::stat_from_string(o.stat);
    output = gts::report_to_json(gts::run_test(in.graph, labeling, name, sel, pc, points));
  }
  emit(output, o.out);
  return 0;
}

struct DiagnoseOpts {
  GraphSourceOpts src;
  std::string out;
};

int cmd_diagnose(const DiagnoseOpts& o, const GlobalOpts& g) {
  echo_config(ordered_json{{"command", "diagnose"},
                           {"graph", o.src.graph_arg},
                           {"points", o.src.points_path},
                           {"distances", o.src.distances_path},
                           {"metric", o.src.metric},
                           {"k", o.src.k},
                           {"out", o.out},
                           {"threads", resolved_threads(g.threads)}});

  const ResolvedInputs in = resolve_graph(o.src);
  const gts::GraphStats stats = gts::graph_stats(in.graph);
  const gts::ApplicabilityDiagnostics diag = gts::applicability_diagnostics(stats);
  ordered_json j{{"n_nodes", stats.n_nodes},
                 {"n_edges", stats.n_edges},
                 {"edge_ratio", diag.edge_ratio},
                 {"deg_sq_ratio", diag.deg_sq_ratio},
                 {"aebe_ratio", diag.aebe_ratio},
                 {"max_degree", diag.max_degree},
                 {"asymptotics_questionable", diag.asymptotics_questionable}};
  emit(j.dump(2) + "\n", o.out);
  return 0;
}

struct PackingOpts {
  int d = 0;
  std::string out;
};

int cmd_packing(const PackingOpts& o) {
  echo_config(ordered_json{{"command", "packing"}, {"d", o.d}, {"out", o.out}});
  ordered_json j{{"d", o.d}, {"log10_count", gts::packing_count_log10(o.d)}};
  emit(j.dump() + "\n", o.out);
  return 0;
}

struct SimCommonOpts {
  std::string family = "normal_location";
  int d = 100;
  int n = 50;
  int m = 50;
  double delta = 0.0;
  double sigma = 1.0;
  std::uint64_t seed = 0;
};

gts::SimScenario scenario_from(const SimCommonOpts& o) {
  gts::SimScenario sc;
  sc.family = gts::family_from_string(o.family);
  sc.d = o.d;
  sc.n = o.n;
  sc.m = o.m;
  sc.delta = o.delta;
  sc.sigma = o.sigma;
  return sc;
}

struct SimPowerOpts {
  std::string table = "custom";
  SimCommonOpts common;
  std::string graphs = "1-mst,3-mst,5-mst";
  std::string stats = "S,R0,degree";
  bool graphs_given = false;
  bool stats_given = false;
  int trials = 100;
  double alpha = 0.05;
  long long perms = 1000;
  std::string out;
};

int cmd_sim_power(const SimPowerOpts& o, const GlobalOpts& g) {
  echo_config(ordered_json{{"command", "simulate power"},
                           {"table", o.table},
                           {"family", o.common.family},
                           {"d", o.common.d},
                           {"n", o.common.n},
                           {"m", o.common.m},
                           {"delta", o.common.delta},
                           {"sigma", o.common.sigma},
                           {"graphs", o.graphs},
                           {"stats", o.stats},
                           {"trials", o.trials},
                           {"alpha", o.alpha},
                           {"perms", o.perms},
                           {"seed", o.common.seed},
                           {"out", o.out},
                           {"threads", resolved_threads(g.threads)}});

  std::vector<gts::SimScenario> scenarios;
  gts::StudyConfig config;
  if (o.table == "custom") {
    scenarios.push_back(scenario_from(o.common));
    config.graphs = parse_graph_specs(o.graphs);
    config.statistics = parse_stat_list(o.stats);
  } else {
    const gts::PowerPreset preset = gts::power_preset(parse_int(o.table, "table number"));
    scenarios = preset.scenarios;
    config.graphs = o.graphs_given ? parse_graph_specs(o.graphs) : preset.graphs;
    config.statistics = o.stats_given ? parse_stat_list(o.stats) : preset.statistics;
  }
  config.trials = o.trials;
  config.alpha = o.alpha;
  config.n_permutations = o.perms;
  config.seed = o.common.seed;
  config.threads = g.threads;

  const gts::PowerTable table = gts::power_study(scenarios, config);
  emit(gts::power_table_csv(table), o.out);
  return 0;
}

struct SimAccuracyOpts {
  std::string sizes = "150:150";
  std::string dims = "10";
  std::string ks = "1,5";
  int runs = 100;
  long long perms = 10000;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_sim_accuracy(const SimAccuracyOpts& o, const GlobalOpts& g) {
  echo_config(ordered_json{{"command", "simulate pval-accuracy"},
                           {"sizes", o.sizes},
                           {"dims", o.dims},
                           {"ks", o.ks},
                           {"runs", o.runs},
                           {"perms", o.perms},
                           {"seed", o.seed},
                           {"out", o.out},
                           {"threads", resolved_threads(g.threads)}});
  gts::AccuracyConfig config;
  config.sizes = parse_size_list(o.sizes);
  config.dims = parse_int_list(o.dims, "dimension");
  config.ks = parse_int_list(o.ks, "graph density");
  config.runs = o.runs;
  config.n_permutations = o.perms;
  config.seed = o.seed;
  config.threads = g.threads;
  emit(gts::accuracy_csv(gts::pvalue_accuracy_study(config)), o.out);
  return 0;
}

struct SimPackingOpts {
  int dmin = 1;
  int dmax = 100;
  int step = 1;
  std::string out;
};

int cmd_sim_packing(const SimPackingOpts& o) {
  echo_config(ordered_json{{"command", "simulate packing"},
                           {"dmin", o.dmin},
                           {"dmax", o.dmax},
                           {"step", o.step},
                           {"out", o.out}});
  if (o.dmin < 1 || o.dmax < o.dmin || o.step < 1) {
    return usage("need 1 <= dmin <= dmax and step >= 1");
  }
  std::string csv = "d,log10_count\n";
  for (int d = o.dmin; d <= o.dmax; d += o.step) {
    csv += std::to_string(d) + ',' + gts::format_double(gts::packing_count_log10(d)) + '\n';
  }
  emit(csv, o.out);
  return 0;
}

struct SimLayeringOpts {
  SimCommonOpts common;
  std::uint64_t trial = 0;
  std::string out;
};

ordered_json five_number_json(const gts::FiveNumber& f) {
  return ordered_json{
      {"min", f.min}, {"q1", f.q1}, {"median", f.median}, {"q3", f.q3}, {"max", f.max}};
}

int cmd_sim_layering(const SimLayeringOpts& o) {
  echo_config(ordered_json{{"command", "simulate layering"},
                           {"family", o.common.family},
                           {"d", o.common.d},
                           {"n", o.common.n},
                           {"m", o.common.m},
                           {"delta", o.common.delta},
                           {"sigma", o.common.sigma},
                           {"seed", o.common.seed},
                           {"trial", o.trial},
                           {"out", o.out}});
  const auto [points, labeling] = gts::gen_samples(scenario_from(o.common), o.common.seed, o.trial);
  const gts::LayerDiagnostic diag = gts::layer_diagnostic(points, labeling);
  ordered_json j{{"distance_to_centroid",
                  ordered_json{{"x", five_number_json(diag.x)}, {"y", five_number_json(diag.y)}}}};
  emit(j.dump(2) + "\n", o.out);
  return 0;
}

struct SimPhenomenonOpts {
  SimCommonOpts common;
  int trials = 20;
  std::string out;
};

int cmd_sim_phenomenon(const SimPhenomenonOpts& o) {
  echo_config(ordered_json{{"command", "simulate phenomenon"},
                           {"family", o.common.family},
                           {"d", o.common.d},
                           {"n", o.common.n},
                           {"m", o.common.m},
                           {"delta", o.common.delta},
                           {"sigma", o.common.sigma},
                           {"seed", o.common.seed},
                           {"trials", o.trials},
                           {"out", o.out}});
  if (o.trials < 1) return usage("--trials must be at least 1");
  std::string csv = "trial,r0,r1,r2,mu0,mu1,mu2,dev0,dev1,dev2\n";
  const gts::SimScenario sc = scenario_from(o.common);
  for (int t = 0; t < o.trials; ++t) {
    const gts::PhenomenonResult r =
        gts::edge_count_phenomenon(sc, o.common.seed, static_cast<std::uint64_t>(t));
    csv += std::to_string(t);
    csv += ',' + std::to_string(r.counts.r0);
    csv += ',' + std::to_string(r.counts.r1);
    csv += ',' + std::to_string(r.counts.r2);
    csv += ',' + gts::format_double(r.moments.mu0);
    csv += ',' + gts::format_double(r.moments.mu1);
    csv += ',' + gts::format_double(r.moments.mu2);
    csv += ',' + gts::format_double(r.dev0);
    csv += ',' + gts::format_double(r.dev1);
    csv += ',' + gts::format_double(r.dev2);
    csv += '\n';
  }
  emit(csv, o.out);
  return 0;
}

void add_source_options(CLI::App* cmd, GraphSourceOpts& src, bool graph_is_kind_only) {
  auto* points = cmd->add_option("--points", src.points_path, "CSV of coordinates, one row per observation");
  auto* distances = cmd->add_option("--distances", src.distances_path, "CSV of a pairwise distance matrix");
  points->excludes(distances);
  cmd->add_option("--metric", src.metric, "euclidean, manhattan, mahalanobis, or rank-mahalanobis")
      ->capture_default_str()
      ->check(CLI::IsMember(
          {"euclidean", "manhattan", "mahalanobis", "rank-mahalanobis", "rank_mahalanobis"}));
  const char* graph_help = graph_is_kind_only
                               ? "graph builder: kmst, kmdp, or knn"
                               : "graph builder (kmst, kmdp, knn) or path to a graph JSON file";
  cmd->add_option("--graph", src.graph_arg, graph_help)->capture_default_str();
  cmd->add_option("--k", src.k, "graph density: rounds (trees/matchings) or neighbor count")
      ->capture_default_str();
}

void add_scenario_options(CLI::App* cmd, SimCommonOpts& o) {
  cmd->add_option("--family", o.family, "normal_location, normal_scale, or lognormal_location")
      ->capture_default_str()
      ->check(CLI::IsMember(
          {"normal_location", "normal_scale", "lognormal_location", "lognormal"}));
  cmd->add_option("--d", o.d, "dimension")->capture_default_str();
  cmd->add_option("--n", o.n, "size of sample X")->capture_default_str();
  cmd->add_option("--m", o.m, "size of sample Y")->capture_default_str();
  cmd->add_option("--delta", o.delta, "L2 distance between the location vectors")
      ->capture_default_str();
  cmd->add_option("--sigma", o.sigma, "scale factor applied to sample Y")->capture_default_str();
  cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph-based two-sample testing"};
  app.require_subcommand(1);

  GlobalOpts global;
  app.add_option("--threads", global.threads, "worker thread cap, 0 = available parallelism")
      ->capture_default_str();
  app.add_option("--x-label", global.x_label,
                 "label token treated as sample X (default: lexicographically smaller)");

  BuildGraphOpts build_opts;
  auto* build = app.add_subcommand("build-graph", "construct a similarity graph");
  {
    auto* input = build->add_option("--input", build_opts.input_path,
                                    "CSV of coordinates, one row per observation");
    auto* distances =
        build->add_option("--distances", build_opts.distances_path, "CSV of a distance matrix");
    input->excludes(distances);
    build->add_option("--metric", build_opts.metric,
                      "euclidean, manhattan, mahalanobis, or rank-mahalanobis")
        ->capture_default_str()
        ->check(CLI::IsMember(
            {"euclidean", "manhattan", "mahalanobis", "rank-mahalanobis", "rank_mahalanobis"}));
    build->add_option("--graph", build_opts.kind, "kmst, kmdp, or knn")
        ->capture_default_str()
        ->check(CLI::IsMember({"kmst", "kmdp", "knn", "mst", "mdp", "nn"}));
    build->add_option("--k", build_opts.k, "graph density")->capture_default_str();
    build->add_option("--out", build_opts.out, "output path for the graph JSON");
  }

  TestOpts test_opts;
  auto* test = app.add_subcommand("test", "run a two-sample test");
  {
    add_source_options(test, test_opts.src, false);
    test->add_option("--labels", test_opts.labels_path, "label file, one token per line")
        ->required();
    test->add_option("--stat", test_opts.stat,
                     "S, R0, Z0, T1, T2, T3, T4, degree, hotelling, glr, or all")
        ->capture_default_str()
        ->check(CLI::IsMember(
            {"S", "R0", "Z0", "T1", "T2", "T3", "T4", "degree", "hotelling", "glr", "all"}));
    test->add_option("--pvalue", test_opts.pvalue, "exact, perm, asymptotic, or all")
        ->capture_default_str()
        ->check(CLI::IsMember({"exact", "perm", "asymptotic", "all"}));
    test->add_option("--perms", test_opts.perms, "Monte Carlo permutation replicates")
        ->capture_default_str();
    test->add_option("--exact-threshold", test_opts.exact_threshold,
                     "enumerate all labelings when their count is at most this")
        ->capture_default_str();
    test->add_option("--seed", test_opts.seed, "random seed")->capture_default_str();
    test->add_option("--out", test_opts.out, "output path for the report JSON");
  }

  DiagnoseOpts diag_opts;
  auto* diagnose = app.add_subcommand("diagnose", "graph ratios behind the approximation");
  {
    add_source_options(diagnose, diag_opts.src, false);
    diagnose->add_option("--out", diag_opts.out, "output path for the diagnostics JSON");
  }

  PackingOpts packing_opts;
  auto* packing = app.add_subcommand("packing", "log10 packing count for one dimension");
  {
    packing->add_option("--d", packing_opts.d, "dimension")->required();
    packing->add_option("--out", packing_opts.out, "output path");
  }

  auto* sim = app.add_subcommand("simulate", "benchmark harness");
  sim->require_subcommand(1);

  SimPowerOpts power_opts;
  auto* sim_power = sim->add_subcommand("power", "rejection-rate study");
  CLI::Option* power_graphs_opt = nullptr;
  CLI::Option* power_stats_opt = nullptr;
  {
    sim_power->add_option("--table", power_opts.table, "1, 2, 3, or custom")
        ->capture_default_str()
        ->check(CLI::IsMember({"1", "2", "3", "custom"}));
    add_scenario_options(sim_power, power_opts.common);
    power_graphs_opt = sim_power->add_option("--graphs", power_opts.graphs,
                                             "comma list of k-kind specs, e.g. 1-mst,5-mdp,3-nn")
                           ->capture_default_str();
    power_stats_opt =
        sim_power->add_option("--stats", power_opts.stats, "comma list of statistic names")
            ->capture_default_str();
    sim_power->add_option("--trials", power_opts.trials, "trials per scenario")
        ->capture_default_str();
    sim_power->add_option("--alpha", power_opts.alpha, "rejection level")->capture_default_str();
    sim_power->add_option("--perms", power_opts.perms,
                          "permutation replicates per test, 0 = closed-form calibration")
        ->capture_default_str();
    sim_power->add_option("--out", power_opts.out, "output path for the CSV");
  }

  SimAccuracyOpts acc_opts;
  auto* sim_acc = sim->add_subcommand("pval-accuracy",
                                      "approximate vs permutation p-values on null data");
  {
    sim_acc->add_option("--sizes", acc_opts.sizes, "comma list of n:m pairs")
        ->capture_default_str();
    sim_acc->add_option("--dims", acc_opts.dims, "comma list of dimensions")
        ->capture_default_str();
    sim_acc->add_option("--ks", acc_opts.ks, "comma list of MST densities")
        ->capture_default_str();
    sim_acc->add_option("--runs", acc_opts.runs, "runs per configuration")->capture_default_str();
    sim_acc->add_option("--perms", acc_opts.perms, "permutation replicates per run")
        ->capture_default_str();
    sim_acc->add_option("--seed", acc_opts.seed, "random seed")->capture_default_str();
    sim_acc->add_option("--out", acc_opts.out, "output path for the CSV");
  }

  SimPackingOpts sim_packing_opts;
  auto* sim_packing = sim->add_subcommand("packing", "log10 packing curve over dimensions");
  {
    sim_packing->add_option("--dmin", sim_packing_opts.dmin, "first dimension")
        ->capture_default_str();
    sim_packing->add_option("--dmax", sim_packing_opts.dmax, "last dimension")
        ->capture_default_str();
    sim_packing->add_option("--step", sim_packing_opts.step, "dimension step")
        ->capture_default_str();
    sim_packing->add_option("--out", sim_packing_opts.out, "output path for the CSV");
  }

  SimLayeringOpts layering_opts;
  layering_opts.common.family = "normal_scale";
  layering_opts.common.d = 100;
  layering_opts.common.n = 200;
  layering_opts.common.m = 200;
  layering_opts.common.delta = 1.0;
  layering_opts.common.sigma = 1.1;
  auto* sim_layering = sim->add_subcommand("layering", "distance-to-centroid summaries by sample");
  {
    add_scenario_options(sim_layering, layering_opts.common);
    sim_layering->add_option("--trial", layering_opts.trial, "trial index")->capture_default_str();
    sim_layering->add_option("--out", layering_opts.out, "output path");
  }

  SimPhenomenonOpts phen_opts;
  phen_opts.common.family = "normal_scale";
  phen_opts.common.d = 100;
  phen_opts.common.n = 1000;
  phen_opts.common.m = 1000;
  phen_opts.common.delta = 1.0;
  phen_opts.common.sigma = 1.1;
  auto* sim_phen = sim->add_subcommand("phenomenon",
                                       "within-sample edge counts against their null means");
  {
    add_scenario_options(sim_phen, phen_opts.common);
    sim_phen->add_option("--trials", phen_opts.trials, "seeded trials")->capture_default_str();
    sim_phen->add_option("--out", phen_opts.out, "output path for the CSV");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  power_opts.graphs_given = power_graphs_opt->count() > 0;
  power_opts.stats_given = power_stats_opt->count() > 0;

  try {
    if (build->parsed()) return cmd_build_graph(build_opts, global);
    if (test->parsed()) return cmd_test(test_opts, global);
    if (diagnose->parsed()) return cmd_diagnose(diag_opts, global);
    if (packing->parsed()) return cmd_packing(packing_opts);
    if (sim->parsed()) {
      if (sim_power->parsed()) return cmd_sim_power(power_opts, global);
      if (sim_acc->parsed()) return cmd_sim_accuracy(acc_opts, global);
      if (sim_packing->parsed()) return cmd_sim_packing(sim_packing_opts);
      if (sim_layering->parsed()) return cmd_sim_layering(layering_opts);
      if (sim_phen->parsed()) return cmd_sim_phenomenon(phen_opts);
    }
  } catch (const gts::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "usage error: no subcommand\n";
  return 2;
}
