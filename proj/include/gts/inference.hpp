#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "gts/report.hpp"
#include "gts/stats.hpp"

namespace gts {

double normal_cdf(double z);
double chi_squared_tail(double x, int df);  // df 1 or 2

// Asymptotic p-value for statistics with an implemented limiting law: the
// quadratic-form statistic (chi-squared, 2 df), the standardized or raw
// between-sample count (normal, lower tail), and the degree test
// (chi-squared, 1 df). Nullopt for the rest.
std::optional<double> asymptotic_pvalue(const StatisticValue& stat, const NullMoments& moments);

struct PermutationConfig {
  long long n_permutations = 10000;  // Monte Carlo replicates B
  std::uint64_t seed = 0;
  long long exact_threshold = 20000;  // enumerate when C(N, n) is at most this
  int threads = 1;                    // 0 = hardware concurrency
};

struct PermPValue {
  double p = 1.0;
  bool exact = false;
  long long n_used = 0;  // labelings enumerated, or Monte Carlo replicates
};

// A statistic viewed as a function of the labeling, for permutation
// calibration. eval must be safe to call concurrently. Throws
// CalibrationError when a replicate labeling cannot be scored.
class PermutationStatistic {
public:
  virtual ~PermutationStatistic() = default;
  virtual double eval(const std::vector<std::uint8_t>& labels) const = 0;
  virtual Tail tail() const = 0;
};

// Builds the permutation view of a statistic. Graph statistics need `graph`
// and `moments`; the point statistics need `points`. Throws Error when a
// required input is missing or the observed statistic is unavailable.
std::unique_ptr<PermutationStatistic> make_permutation_statistic(StatName name,
                                                                 const SimilarityGraph* graph,
                                                                 const NullMoments* moments,
                                                                 const PointSet* points,
                                                                 const Labeling& labeling);

// Exact enumeration of all C(N, n) labelings when that count is within the
// threshold, Monte Carlo otherwise with p = (1 + b) / (1 + B); replicate
// values tied with the observed one count as extreme. Each replicate draws
// from its own counter-keyed stream, so the result is independent of the
// thread count.
PermPValue permutation_pvalue(const PermutationStatistic& stat, const Labeling& labeling,
                              const PermutationConfig& config);

struct PValueSelection {
  bool asymptotic = true;
  bool permutation = true;
  bool force_exact = false;  // fail instead of falling back to Monte Carlo
};

// Runs one statistic against one graph (plus raw points for the statistics
// that need them) and assembles the full report. Unavailable statistics and
// singular null covariances are surfaced in the report rather than thrown.
TestReport run_test(const SimilarityGraph& graph, const Labeling& labeling, StatName stat,
                    const PValueSelection& selection, const PermutationConfig& config,
                    const PointSet* points = nullptr);

// The statistics run_test can compute given the available inputs, in report
// order: graph statistics always, point statistics only with coordinates.
std::vector<StatName> applicable_statistics(bool have_points);

}  // namespace gts
