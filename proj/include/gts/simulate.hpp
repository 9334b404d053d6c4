#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gts/graph.hpp"
#include "gts/nulldist.hpp"
#include "gts/stats.hpp"
#include "gts/types.hpp"

namespace gts {

// Distribution families for synthetic two-sample benchmarks. Normal families
// draw X ~ N(0, I_d) and Y ~ N(mu, sigma^2 I_d) with ||mu||_2 = delta placed
// on the first coordinate. The lognormal family exponentiates shifted
// normals coordinatewise, with a per-coordinate log-location shift of
// delta / sqrt(d).
enum class Family {
  kNormalLocation,
  kNormalScale,
  kLognormalLocation,
};

Family family_from_string(const std::string& name);
std::string to_string(Family family);

struct GraphSpec {
  GraphKind kind = GraphKind::kMst;
  int k = 1;

  bool operator==(const GraphSpec&) const = default;
};

std::string to_string(const GraphSpec& spec);  // e.g. "5-mst"

struct SimScenario {
  Family family = Family::kNormalLocation;
  int d = 1;
  int n = 50;
  int m = 50;
  double delta = 0.0;  // L2 distance between the location vectors
  double sigma = 1.0;  // scale factor applied to sample Y (normal families)
};

// Deterministic samples for one trial: the n X rows come first, then the m Y
// rows, with the labeling marking them 0 and 1 in that order. The draw is a
// pure function of (seed, trial_index).
std::pair<PointSet, Labeling> gen_samples(const SimScenario& scenario, std::uint64_t seed,
                                          std::uint64_t trial_index);

// Shared harness settings. n_permutations > 0 calibrates every statistic by
// Monte Carlo permutation with that many replicates; n_permutations == 0
// uses the closed-form approximate p-value instead, and statistics without
// one come back unavailable.
struct StudyConfig {
  int trials = 100;
  double alpha = 0.05;
  long long n_permutations = 1000;
  std::uint64_t seed = 0;
  int threads = 1;  // 0 = hardware concurrency
  std::vector<GraphSpec> graphs;
  std::vector<StatName> statistics;
};

// One cell of a power table: a scenario crossed with a statistic and, for
// graph statistics, a graph. Point statistics carry no graph. rejections is
// empty when the statistic was unavailable for the scenario's shape.
struct PowerCell {
  std::size_t scenario_index = 0;
  StatName stat = StatName::kS;
  std::optional<GraphSpec> graph;
  std::optional<int> rejections;
};

struct PowerTable {
  std::vector<SimScenario> scenarios;
  StudyConfig config;
  std::vector<PowerCell> cells;
};

// Runs every scenario for config.trials trials: per trial the samples are
// generated, each requested graph is built on euclidean distances, and each
// statistic's p-value is compared against alpha (reject when p <= alpha).
// All statistics within a trial share the same permutation replicates. The
// result is a pure function of (scenarios, config).
PowerTable power_study(const std::vector<SimScenario>& scenarios, const StudyConfig& config);

std::string power_table_csv(const PowerTable& table);

// Bundled benchmark grids: 1 = normal location alternatives, 2 = normal
// scale alternatives, 3 = lognormal location alternatives, each over a
// dimension ladder with n = m = 50.
struct PowerPreset {
  std::vector<SimScenario> scenarios;
  std::vector<GraphSpec> graphs;
  std::vector<StatName> statistics;
};

PowerPreset power_preset(int which);

// Null-data comparison of the approximate p-value against the permutation
// p-value for the chi-squared-form statistic on k-MST graphs.
struct AccuracyConfig {
  std::vector<std::pair<int, int>> sizes = {{150, 150}};
  std::vector<int> dims = {10};
  std::vector<int> ks = {1, 5};
  int runs = 100;
  long long n_permutations = 10000;
  std::uint64_t seed = 0;
  int threads = 1;
};

// Summary of the signed difference (approximate minus permutation) over the
// runs of one configuration. Quartiles use linear interpolation between
// order statistics.
struct DiffSummary {
  int n = 0;
  int m = 0;
  int d = 0;
  int k = 1;
  int runs = 0;
  double mean = 0.0;
  double mean_abs = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double min = 0.0;
  double max = 0.0;
};

std::vector<DiffSummary> pvalue_accuracy_study(const AccuracyConfig& config);

std::string accuracy_csv(const std::vector<DiffSummary>& rows);

// Quantile of a nonempty ascending-sorted sample, linearly interpolated
// between order statistics; q in [0, 1].
double quantile_sorted(const std::vector<double>& sorted, double q);

struct FiveNumber {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

// Five-number summaries of the distances from each observation to the pooled
// centroid, split by sample. Exhibits the inner/outer shell layering that a
// scale difference produces in moderate to high dimension.
struct LayerDiagnostic {
  FiveNumber x;
  FiveNumber y;
};

LayerDiagnostic layer_diagnostic(const PointSet& points, const Labeling& labeling);

// One seeded trial of the within/between edge-count pattern: builds a 1-MST
// on euclidean distances and reports each count next to its null mean. Under
// a scale increase in sample Y the within-X count sits above its mean while
// the within-Y count sits below.
struct PhenomenonResult {
  EdgeCounts counts;
  NullMoments moments;
  double dev0 = 0.0;  // r0 - mu0
  double dev1 = 0.0;  // r1 - mu1
  double dev2 = 0.0;  // r2 - mu2
};

PhenomenonResult edge_count_phenomenon(const SimScenario& scenario, std::uint64_t seed,
                                       std::uint64_t trial_index);

// log10 of sqrt(pi) d Gamma(d/2 + 1/2) / Gamma(d/2 + 1) * 2^(d-1), a
// sphere-packing count that grows exponentially with the dimension d.
// Evaluated in log space via lgamma so it stays finite for d up to 1e5 and
// beyond.
double packing_count_log10(int d);

}  // namespace gts
