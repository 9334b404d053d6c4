#pragma once

#include <optional>
#include <string>

#include "gts/nulldist.hpp"
#include "gts/types.hpp"

namespace gts {

// Counts of edges by the labels of their endpoints: r0 between the samples,
// r1 within X, r2 within Y. Always r0 + r1 + r2 = number of edges.
struct EdgeCounts {
  long long r0 = 0;
  long long r1 = 0;
  long long r2 = 0;
};

EdgeCounts edge_counts(const SimilarityGraph& graph, const Labeling& labeling);

enum class Tail { kUpper, kLower };

enum class StatName {
  kS,         // chi-squared-form statistic on (R1, R2)
  kR0,        // raw between-sample edge count, small values extreme
  kZ0,        // standardized between-sample edge count
  kT1,        // |R1-mu1| + |R2-mu2|
  kT2,        // |R1-mu1|/sd1 + |R2-mu2|/sd2
  kT3,        // (R1-mu1)^2 + (R2-mu2)^2
  kT4,        // (R1-mu1)^2/var1 + (R2-mu2)^2/var2
  kDegree,    // 2x2 chi-squared on sample vs degree-one status
  kHotelling, // two-sample mean comparison on raw coordinates
  kGlr,       // Gaussian likelihood ratio for mean and covariance changes
};

StatName stat_from_string(const std::string& name);
std::string to_string(StatName name);

struct StatisticValue {
  StatName name;
  double value = 0.0;
  Tail tail = Tail::kUpper;
};

// Quadratic form of the centered within-sample counts against the inverse
// null covariance. Throws SingularCovariance when the 2x2 covariance cannot
// be inverted (relative determinant below 1e-12).
StatisticValue statistic_s(const EdgeCounts& counts, const NullMoments& moments);

StatisticValue statistic_r0(const EdgeCounts& counts);

// (r0 - mu0) / sd0; small values indicate separated samples, so the lower
// tail is extreme. Throws DegenerateGraph when var0 is zero.
StatisticValue statistic_z0(const EdgeCounts& counts, const NullMoments& moments);

// The four deviation combinations; variant is 1..4. Variants 2 and 4 throw
// DegenerateGraph when a marginal variance is zero.
StatisticValue statistic_t(const EdgeCounts& counts, const NullMoments& moments, int variant);

// Pearson chi-squared (1 df, no continuity correction) on the 2x2 table of
// sample membership against degree-equals-one status. A zero marginal makes
// the table degenerate; the statistic is reported as 0 with the flag set and
// its p-value as 1.
struct DegreeTestResult {
  StatisticValue stat;
  long long table[2][2] = {{0, 0}, {0, 0}};  // rows X/Y, columns deg==1 / deg!=1
  bool degenerate = false;
};

DegreeTestResult degree_test(const SimilarityGraph& graph, const Labeling& labeling);

// Classical two-sample mean test on the raw coordinates. Unavailable
// (nullopt) when the pooled within-group scatter is singular or d > N - 2,
// mirroring how such entries are reported in comparison tables.
std::optional<StatisticValue> hotelling_t2(const PointSet& points, const Labeling& labeling);

// Gaussian log likelihood ratio against a change in mean or covariance,
// using maximum-likelihood covariance estimates (group-size denominators).
// Unavailable when min(n, m) <= d or any required covariance is singular.
std::optional<StatisticValue> glr_stat(const PointSet& points, const Labeling& labeling);

}  // namespace gts
