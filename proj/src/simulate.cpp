#include "gts/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <numbers>
#include <thread>

#include "gts/distance.hpp"
#include "gts/errors.hpp"
#include "gts/inference.hpp"
#include "gts/io.hpp"
#include "gts/rng.hpp"

namespace gts {

Family family_from_string(const std::string& name) {
  if (name == "normal_location") return Family::kNormalLocation;
  if (name == "normal_scale") return Family::kNormalScale;
  if (name == "lognormal_location" || name == "lognormal") return Family::kLognormalLocation;
  throw ParseError("unknown family: " + name);
}

std::string to_string(Family family) {
  switch (family) {
    case Family::kNormalLocation: return "normal_location";
    case Family::kNormalScale: return "normal_scale";
    case Family::kLognormalLocation: return "lognormal_location";
  }
  throw InternalError("unhandled family");
}

std::string to_string(const GraphSpec& spec) {
  const char* kind = "";
  switch (spec.kind) {
    case GraphKind::kMst: kind = "mst"; break;
    case GraphKind::kMdp: kind = "mdp"; break;
    case GraphKind::kNn: kind = "nn"; break;
  }
  return std::to_string(spec.k) + "-" + kind;
}

std::pair<PointSet, Labeling> gen_samples(const SimScenario& scenario, std::uint64_t seed,
                                          std::uint64_t trial_index) {
  if (scenario.d < 1) throw ShapeError("dimension must be at least 1");
  if (scenario.n < 1 || scenario.m < 1) {
    throw TooFewObservations("both samples need at least one observation");
  }
  RandomStream rng(seed, StreamTag::kTrial, trial_index);
  const int total = scenario.n + scenario.m;
  const bool lognormal = scenario.family == Family::kLognormalLocation;
  const double log_shift = scenario.delta / std::sqrt(static_cast<double>(scenario.d));

  Matrix data(static_cast<std::size_t>(total), static_cast<std::size_t>(scenario.d));
  for (int i = 0; i < scenario.n; ++i) {
    for (int j = 0; j < scenario.d; ++j) {
      const double z = rng.normal();
      data(i, j) = lognormal ? std::exp(z) : z;
    }
  }
  for (int i = scenario.n; i < total; ++i) {
    for (int j = 0; j < scenario.d; ++j) {
      const double z = rng.normal();
      if (lognormal) {
        data(i, j) = std::exp(z + log_shift);
      } else {
        data(i, j) = scenario.sigma * z + (j == 0 ? scenario.delta : 0.0);
      }
    }
  }

  std::vector<std::uint8_t> labels(static_cast<std::size_t>(total), 1);
  for (int i = 0; i < scenario.n; ++i) labels[static_cast<std::size_t>(i)] = 0;
  return {make_point_set(std::move(data)), make_labeling(std::move(labels))};
}

namespace {

bool is_graph_stat(StatName name) {
  switch (name) {
    case StatName::kS:
    case StatName::kR0:
    case StatName::kZ0:
    case StatName::kT1:
    case StatName::kT2:
    case StatName::kT3:
    case StatName::kT4:
    case StatName::kDegree:
      return true;
    case StatName::kHotelling:
    case StatName::kGlr:
      return false;
  }
  throw InternalError("unhandled statistic");
}

StatisticValue graph_stat_value(StatName name, const SimilarityGraph& graph, const Labeling& lab,
                                const EdgeCounts& counts, const NullMoments& moments) {
  switch (name) {
    case StatName::kS: return statistic_s(counts, moments);
    case StatName::kR0: return statistic_r0(counts);
    case StatName::kZ0: return statistic_z0(counts, moments);
    case StatName::kT1: return statistic_t(counts, moments, 1);
    case StatName::kT2: return statistic_t(counts, moments, 2);
    case StatName::kT3: return statistic_t(counts, moments, 3);
    case StatName::kT4: return statistic_t(counts, moments, 4);
    case StatName::kDegree: return degree_test(graph, lab).stat;
    default: throw InternalError("not a graph statistic");
  }
}

bool more_extreme(Tail tail, double value, double observed) {
  return tail == Tail::kUpper ? value >= observed : value <= observed;
}

SimilarityGraph union_of_rounds(int n_nodes, const std::vector<std::vector<Edge>>& rounds, int k) {
  std::vector<Edge> all;
  for (int r = 0; r < k; ++r) {
    all.insert(all.end(), rounds[static_cast<std::size_t>(r)].begin(),
               rounds[static_cast<std::size_t>(r)].end());
  }
  return make_graph(n_nodes, std::move(all));
}

int resolved_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// One statistic bound to one graph (or to the raw points) within a trial.
struct CellEval {
  bool available = false;
  double observed = 0.0;
  Tail tail = Tail::kUpper;
  long long extreme = 0;
};

struct GraphCtx {
  SimilarityGraph graph;
  NullMoments moments;
  std::vector<std::size_t> cell_index;  // parallel to the graph-stat list
};

}  // namespace

PowerTable power_study(const std::vector<SimScenario>& scenarios, const StudyConfig& config) {
  if (scenarios.empty()) throw CalibrationError("no scenarios to run");
  if (config.trials < 1) throw CalibrationError("trials must be at least 1");
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw CalibrationError("alpha must lie strictly between 0 and 1");
  }
  if (config.n_permutations < 0) throw CalibrationError("permutation count cannot be negative");
  if (config.statistics.empty()) throw CalibrationError("no statistics requested");
  const bool any_graph_stat =
      std::any_of(config.statistics.begin(), config.statistics.end(), is_graph_stat);
  if (any_graph_stat && config.graphs.empty()) {
    throw CalibrationError("graph statistics need at least one graph specification");
  }
  for (const auto& spec : config.graphs) {
    if (spec.k < 1) throw CalibrationError("graph density k must be at least 1");
  }

  PowerTable table;
  table.scenarios = scenarios;
  table.config = config;

  // Cell layout: per scenario, statistics in request order, graph statistics
  // fanned out over the graph list.
  std::vector<std::size_t> scenario_base(scenarios.size(), 0);
  for (std::size_t si = 0; si < scenarios.size(); ++si) {
    scenario_base[si] = table.cells.size();
    for (StatName stat : config.statistics) {
      if (is_graph_stat(stat)) {
        for (const auto& spec : config.graphs) {
          table.cells.push_back(PowerCell{si, stat, spec, std::nullopt});
        }
      } else {
        table.cells.push_back(PowerCell{si, stat, std::nullopt, std::nullopt});
      }
    }
  }

  std::vector<long long> rejections(table.cells.size(), 0);
  std::vector<char> available(table.cells.size(), 1);

  int max_mst_k = 0;
  int max_mdp_k = 0;
  for (const auto& spec : config.graphs) {
    if (spec.kind == GraphKind::kMst) max_mst_k = std::max(max_mst_k, spec.k);
    if (spec.kind == GraphKind::kMdp) max_mdp_k = std::max(max_mdp_k, spec.k);
  }

  const long long B = config.n_permutations;

  for (std::size_t si = 0; si < scenarios.size(); ++si) {
    const SimScenario& sc = scenarios[si];
    const std::size_t base = scenario_base[si];
    const std::size_t n_scenario_cells =
        (si + 1 < scenarios.size() ? scenario_base[si + 1] : table.cells.size()) - base;

    auto run_trials = [&](int t_begin, int t_end, std::vector<long long>& local_rej,
                          std::vector<char>& local_avail) {
      std::vector<std::uint8_t> rep_labels;
      std::vector<int> scratch;
      for (int t = t_begin; t < t_end; ++t) {
        auto [points, labeling] = gen_samples(sc, config.seed, static_cast<std::uint64_t>(t));
        const int n_nodes = points.n_points();

        std::vector<GraphCtx> graph_ctx;
        if (any_graph_stat && !config.graphs.empty()) {
          const DistanceMatrix dist = pairwise_distances(points, Metric::kEuclidean);
          std::vector<std::vector<Edge>> mst_rounds;
          std::vector<std::vector<Edge>> mdp_rounds;
          if (max_mst_k > 0) mst_rounds = kmst_rounds(dist, max_mst_k);
          if (max_mdp_k > 0) mdp_rounds = kmdp_rounds(dist, max_mdp_k);
          graph_ctx.reserve(config.graphs.size());
          for (const auto& spec : config.graphs) {
            GraphCtx ctx;
            switch (spec.kind) {
              case GraphKind::kMst: ctx.graph = union_of_rounds(n_nodes, mst_rounds, spec.k); break;
              case GraphKind::kMdp: ctx.graph = union_of_rounds(n_nodes, mdp_rounds, spec.k); break;
              case GraphKind::kNn: ctx.graph = build_knn(dist, spec.k); break;
            }
            ctx.moments = permutation_moments(graph_stats(ctx.graph), labeling.n, labeling.m);
            graph_ctx.push_back(std::move(ctx));
          }
        }

        // Observed values, availability, and (for the point statistics)
        // permutation evaluators.
        std::vector<CellEval> evals(n_scenario_cells);
        std::vector<std::unique_ptr<PermutationStatistic>> point_eval(n_scenario_cells);
        {
          std::size_t cell = 0;
          std::vector<EdgeCounts> observed_counts(graph_ctx.size());
          for (std::size_t g = 0; g < graph_ctx.size(); ++g) {
            observed_counts[g] = edge_counts(graph_ctx[g].graph, labeling);
          }
          for (StatName stat : config.statistics) {
            if (is_graph_stat(stat)) {
              for (std::size_t g = 0; g < graph_ctx.size(); ++g, ++cell) {
                try {
                  const StatisticValue v = graph_stat_value(stat, graph_ctx[g].graph, labeling,
                                                            observed_counts[g],
                                                            graph_ctx[g].moments);
                  evals[cell] = CellEval{true, v.value, v.tail, 0};
                } catch (const SingularCovariance&) {
                  evals[cell].available = false;
                } catch (const DegenerateGraph&) {
                  evals[cell].available = false;
                }
                graph_ctx[g].cell_index.push_back(cell);
              }
            } else {
              const auto v = stat == StatName::kHotelling ? hotelling_t2(points, labeling)
                                                          : glr_stat(points, labeling);
              if (v) {
                evals[cell] = CellEval{true, v->value, v->tail, 0};
                if (B > 0) {
                  point_eval[cell] = make_permutation_statistic(stat, nullptr, nullptr, &points,
                                                                labeling);
                }
              }
              ++cell;
            }
          }
        }

        if (B > 0) {
          const std::uint64_t perm_seed =
              RandomStream(config.seed, StreamTag::kInstance, static_cast<std::uint64_t>(t)).next();
          Labeling rep = labeling;
          for (long long b = 1; b <= B; ++b) {
            RandomStream rs(perm_seed, StreamTag::kPermutation, static_cast<std::uint64_t>(b));
            rs.sample_labeling(n_nodes, labeling.n, rep.labels, scratch);
            for (auto& ctx : graph_ctx) {
              const EdgeCounts c = edge_counts(ctx.graph, rep);
              std::size_t stat_pos = 0;
              for (StatName stat : config.statistics) {
                if (!is_graph_stat(stat)) continue;
                const std::size_t cell = ctx.cell_index[stat_pos++];
                CellEval& ev = evals[cell];
                if (!ev.available) continue;
                const StatisticValue v = graph_stat_value(stat, ctx.graph, rep, c, ctx.moments);
                if (more_extreme(ev.tail, v.value, ev.observed)) ++ev.extreme;
              }
            }
            for (std::size_t cell = 0; cell < n_scenario_cells; ++cell) {
              if (!point_eval[cell]) continue;
              CellEval& ev = evals[cell];
              const double v = point_eval[cell]->eval(rep.labels);
              if (more_extreme(ev.tail, v, ev.observed)) ++ev.extreme;
            }
          }
          for (std::size_t cell = 0; cell < n_scenario_cells; ++cell) {
            CellEval& ev = evals[cell];
            if (!ev.available) {
              local_avail[cell] = 0;
              continue;
            }
            const double p = static_cast<double>(1 + ev.extreme) / static_cast<double>(1 + B);
            if (p <= config.alpha) ++local_rej[cell];
          }
        } else {
          // Closed-form calibration: statistics without an approximate
          // p-value come back unavailable.
          std::size_t cell = 0;
          for (StatName stat : config.statistics) {
            if (is_graph_stat(stat)) {
              for (std::size_t g = 0; g < graph_ctx.size(); ++g, ++cell) {
                CellEval& ev = evals[cell];
                if (!ev.available) {
                  local_avail[cell] = 0;
                  continue;
                }
                const StatisticValue v{stat, ev.observed, ev.tail};
                const auto p = asymptotic_pvalue(v, graph_ctx[g].moments);
                if (!p) {
                  local_avail[cell] = 0;
                } else if (*p <= config.alpha) {
                  ++local_rej[cell];
                }
              }
            } else {
              local_avail[cell] = 0;
              ++cell;
            }
          }
        }
      }
    };

    const int n_workers = std::min(resolved_threads(config.threads), config.trials);
    if (n_workers <= 1) {
      std::vector<long long> local_rej(n_scenario_cells, 0);
      std::vector<char> local_avail(n_scenario_cells, 1);
      run_trials(0, config.trials, local_rej, local_avail);
      for (std::size_t c = 0; c < n_scenario_cells; ++c) {
        rejections[base + c] += local_rej[c];
        if (!local_avail[c]) available[base + c] = 0;
      }
    } else {
      std::vector<std::vector<long long>> worker_rej(
          static_cast<std::size_t>(n_workers), std::vector<long long>(n_scenario_cells, 0));
      std::vector<std::vector<char>> worker_avail(static_cast<std::size_t>(n_workers),
                                                  std::vector<char>(n_scenario_cells, 1));
      std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_workers));
      std::vector<std::thread> workers;
      workers.reserve(static_cast<std::size_t>(n_workers));
      for (int w = 0; w < n_workers; ++w) {
        const int t_begin = static_cast<int>(static_cast<long long>(config.trials) * w / n_workers);
        const int t_end =
            static_cast<int>(static_cast<long long>(config.trials) * (w + 1) / n_workers);
        workers.emplace_back([&, w, t_begin, t_end] {
          try {
            run_trials(t_begin, t_end, worker_rej[static_cast<std::size_t>(w)],
                       worker_avail[static_cast<std::size_t>(w)]);
          } catch (...) {
            errors[static_cast<std::size_t>(w)] = std::current_exception();
          }
        });
      }
      for (auto& th : workers) th.join();
      for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
      }
      for (int w = 0; w < n_workers; ++w) {
        for (std::size_t c = 0; c < n_scenario_cells; ++c) {
          rejections[base + c] += worker_rej[static_cast<std::size_t>(w)][c];
          if (!worker_avail[static_cast<std::size_t>(w)][c]) available[base + c] = 0;
        }
      }
    }
  }

  for (std::size_t i = 0; i < table.cells.size(); ++i) {
    if (available[i]) table.cells[i].rejections = static_cast<int>(rejections[i]);
  }
  return table;
}

std::string power_table_csv(const PowerTable& table) {
  std::string out = "family,d,n,m,delta,sigma,graph,statistic,trials,alpha,rejections,power\n";
  for (const auto& cell : table.cells) {
    const SimScenario& sc = table.scenarios[cell.scenario_index];
    out += to_string(sc.family);
    out += ',' + std::to_string(sc.d);
    out += ',' + std::to_string(sc.n);
    out += ',' + std::to_string(sc.m);
    out += ',' + format_double(sc.delta);
    out += ',' + format_double(sc.sigma);
    out += ',';
    out += cell.graph ? to_string(*cell.graph) : "-";
    out += ',' + to_string(cell.stat);
    out += ',' + std::to_string(table.config.trials);
    out += ',' + format_double(table.config.alpha);
    if (cell.rejections) {
      out += ',' + std::to_string(*cell.rejections);
      out += ',' + format_double(static_cast<double>(*cell.rejections) /
                                 static_cast<double>(table.config.trials));
    } else {
      out += ",-,-";
    }
    out += '\n';
  }
  return out;
}

PowerPreset power_preset(int which) {
  PowerPreset preset;
  preset.graphs = {GraphSpec{GraphKind::kMst, 1}, GraphSpec{GraphKind::kMst, 3},
                   GraphSpec{GraphKind::kMst, 5}, GraphSpec{GraphKind::kMdp, 1},
                   GraphSpec{GraphKind::kMdp, 3}, GraphSpec{GraphKind::kMdp, 5}};
  preset.statistics = {StatName::kHotelling, StatName::kGlr, StatName::kR0, StatName::kDegree,
                       StatName::kS};
  auto add = [&preset](Family family, int d, double delta, double sigma) {
    SimScenario sc;
    sc.family = family;
    sc.d = d;
    sc.n = 50;
    sc.m = 50;
    sc.delta = delta;
    sc.sigma = sigma;
    preset.scenarios.push_back(sc);
  };
  switch (which) {
    case 1: {
      const int dims[] = {2, 10, 30, 50, 70, 90, 100};
      const double deltas[] = {0.6, 0.8, 1.1, 1.4, 1.7, 2.0, 2.0};
      for (int i = 0; i < 7; ++i) add(Family::kNormalLocation, dims[i], deltas[i], 1.0);
      break;
    }
    case 2: {
      const int dims[] = {2, 5, 10, 20};
      const double sigmas[] = {1.4, 1.25, 1.2, 1.15};
      for (int i = 0; i < 4; ++i) add(Family::kNormalScale, dims[i], 0.0, sigmas[i]);
      break;
    }
    case 3: {
      const int dims[] = {2, 10, 30, 50, 70, 90};
      const double deltas[] = {0.8, 1.0, 1.3, 1.3, 1.5, 1.7};
      for (int i = 0; i < 6; ++i) add(Family::kLognormalLocation, dims[i], deltas[i], 1.0);
      break;
    }
    default:
      throw ParseError("unknown preset " + std::to_string(which) + ", expected 1, 2, or 3");
  }
  return preset;
}

std::vector<DiffSummary> pvalue_accuracy_study(const AccuracyConfig& config) {
  if (config.runs < 1) throw CalibrationError("runs must be at least 1");
  if (config.n_permutations < 1) throw CalibrationError("permutation count must be at least 1");
  if (config.sizes.empty() || config.dims.empty() || config.ks.empty()) {
    throw CalibrationError("sizes, dims, and ks must all be non-empty");
  }
  int max_k = 0;
  for (int k : config.ks) {
    if (k < 1) throw CalibrationError("graph density k must be at least 1");
    max_k = std::max(max_k, k);
  }

  std::vector<DiffSummary> rows;
  for (const auto& [n, m] : config.sizes) {
    for (int d : config.dims) {
      std::vector<std::vector<double>> diffs(config.ks.size());
      for (int run = 0; run < config.runs; ++run) {
        SimScenario sc;
        sc.family = Family::kNormalLocation;
        sc.d = d;
        sc.n = n;
        sc.m = m;
        auto [points, labeling] = gen_samples(sc, config.seed, static_cast<std::uint64_t>(run));
        const DistanceMatrix dist = pairwise_distances(points, Metric::kEuclidean);
        const auto rounds = kmst_rounds(dist, max_k);
        PermutationConfig pc;
        pc.n_permutations = config.n_permutations;
        pc.seed = RandomStream(config.seed, StreamTag::kInstance, static_cast<std::uint64_t>(run))
                      .next();
        pc.threads = config.threads;
        for (std::size_t ki = 0; ki < config.ks.size(); ++ki) {
          const SimilarityGraph graph =
              union_of_rounds(points.n_points(), rounds, config.ks[ki]);
          const NullMoments moments =
              permutation_moments(graph_stats(graph), labeling.n, labeling.m);
          const StatisticValue observed = statistic_s(edge_counts(graph, labeling), moments);
          const auto p_asym = asymptotic_pvalue(observed, moments);
          if (!p_asym) throw InternalError("no approximate p-value for the quadratic statistic");
          const auto stat = make_permutation_statistic(StatName::kS, &graph, &moments, nullptr,
                                                       labeling);
          const PermPValue p_perm = permutation_pvalue(*stat, labeling, pc);
          diffs[ki].push_back(*p_asym - p_perm.p);
        }
      }
      for (std::size_t ki = 0; ki < config.ks.size(); ++ki) {
        auto& sample = diffs[ki];
        std::sort(sample.begin(), sample.end());
        DiffSummary s;
        s.n = n;
        s.m = m;
        s.d = d;
        s.k = config.ks[ki];
        s.runs = config.runs;
        double sum = 0.0, sum_abs = 0.0;
        for (double v : sample) {
          sum += v;
          sum_abs += std::abs(v);
        }
        s.mean = sum / static_cast<double>(sample.size());
        s.mean_abs = sum_abs / static_cast<double>(sample.size());
        s.q1 = quantile_sorted(sample, 0.25);
        s.median = quantile_sorted(sample, 0.5);
        s.q3 = quantile_sorted(sample, 0.75);
        s.min = sample.front();
        s.max = sample.back();
        rows.push_back(s);
      }
    }
  }
  return rows;
}

std::string accuracy_csv(const std::vector<DiffSummary>& rows) {
  std::string out = "n,m,d,k,runs,mean,mean_abs,q1,median,q3,min,max\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n);
    out += ',' + std::to_string(r.m);
    out += ',' + std::to_string(r.d);
    out += ',' + std::to_string(r.k);
    out += ',' + std::to_string(r.runs);
    out += ',' + format_double(r.mean);
    out += ',' + format_double(r.mean_abs);
    out += ',' + format_double(r.q1);
    out += ',' + format_double(r.median);
    out += ',' + format_double(r.q3);
    out += ',' + format_double(r.min);
    out += ',' + format_double(r.max);
    out += '\n';
  }
  return out;
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw TooFewObservations("quantile of an empty sample");
  if (q <= 0.0) return sorted.front();
  if (q >= 1.0) return sorted.back();
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(lo);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

namespace {

FiveNumber five_number(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  FiveNumber f;
  f.min = values.front();
  f.q1 = quantile_sorted(values, 0.25);
  f.median = quantile_sorted(values, 0.5);
  f.q3 = quantile_sorted(values, 0.75);
  f.max = values.back();
  return f;
}

}  // namespace

LayerDiagnostic layer_diagnostic(const PointSet& points, const Labeling& labeling) {
  require_same_length(points.n_points(), labeling);
  const int total = points.n_points();
  const int d = points.dim();
  std::vector<double> centroid(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < total; ++i) {
    for (int j = 0; j < d; ++j) centroid[static_cast<std::size_t>(j)] += points.data(i, j);
  }
  for (double& c : centroid) c /= static_cast<double>(total);

  std::vector<double> dist_x, dist_y;
  for (int i = 0; i < total; ++i) {
    double sq = 0.0;
    for (int j = 0; j < d; ++j) {
      const double diff = points.data(i, j) - centroid[static_cast<std::size_t>(j)];
      sq += diff * diff;
    }
    (labeling.labels[static_cast<std::size_t>(i)] == 0 ? dist_x : dist_y)
        .push_back(std::sqrt(sq));
  }
  return LayerDiagnostic{five_number(dist_x), five_number(dist_y)};
}

PhenomenonResult edge_count_phenomenon(const SimScenario& scenario, std::uint64_t seed,
                                       std::uint64_t trial_index) {
  auto [points, labeling] = gen_samples(scenario, seed, trial_index);
  const DistanceMatrix dist = pairwise_distances(points, Metric::kEuclidean);
  const SimilarityGraph graph = build_kmst(dist, 1);
  PhenomenonResult result;
  result.moments = permutation_moments(graph_stats(graph), labeling.n, labeling.m);
  result.counts = edge_counts(graph, labeling);
  result.dev0 = static_cast<double>(result.counts.r0) - result.moments.mu0;
  result.dev1 = static_cast<double>(result.counts.r1) - result.moments.mu1;
  result.dev2 = static_cast<double>(result.counts.r2) - result.moments.mu2;
  return result;
}

double packing_count_log10(int d) {
  if (d < 1) throw ShapeError("dimension must be at least 1");
  const double dd = static_cast<double>(d);
  const double log_count = 0.5 * std::log(std::numbers::pi) + std::log(dd) +
                           std::lgamma(dd / 2.0 + 0.5) - std::lgamma(dd / 2.0 + 1.0) +
                           (dd - 1.0) * std::log(2.0);
  return log_count / std::log(10.0);
}

}  // namespace gts
