#include "gts/inference.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include "gts/rng.hpp"

namespace gts {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double chi_squared_tail(double x, int df) {
  if (x < 0.0) return 1.0;
  switch (df) {
    case 1:
      return std::erfc(std::sqrt(x / 2.0));
    case 2:
      return std::exp(-x / 2.0);
    default:
      throw InternalError("chi-squared tail implemented for 1 and 2 degrees of freedom");
  }
}

std::optional<double> asymptotic_pvalue(const StatisticValue& stat, const NullMoments& moments) {
  switch (stat.name) {
    case StatName::kS:
      if (stat.value < 0.0 || !std::isfinite(stat.value)) {
        throw InternalError("quadratic-form statistic must be nonnegative");
      }
      return chi_squared_tail(stat.value, 2);
    case StatName::kZ0:
      return normal_cdf(stat.value);
    case StatName::kR0: {
      if (!(moments.var0 > 0.0)) {
        throw DegenerateGraph("between-sample edge count has zero variance");
      }
      const double z = (stat.value - moments.mu0) / std::sqrt(moments.var0);
      return normal_cdf(z);
    }
    case StatName::kDegree:
      return chi_squared_tail(stat.value, 1);
    default:
      return std::nullopt;
  }
}

namespace {

// Graph statistics depend on the labeling only through the edge counts, so a
// replicate costs one scan of the edge list.
class CountStatistic : public PermutationStatistic {
public:
  CountStatistic(StatName name, const SimilarityGraph& graph, const NullMoments& moments)
      : name_(name), graph_(graph), moments_(moments) {
    if (name_ == StatName::kS) {
      det_ = moments.s11 * moments.s22 - moments.s12 * moments.s12;
      if (!(det_ > 1e-12 * std::abs(moments.s11 * moments.s22)) || !std::isfinite(det_)) {
        throw SingularCovariance("null covariance of the within-sample counts is singular");
      }
    }
    if ((name_ == StatName::kT2 || name_ == StatName::kT4) &&
        (!(moments.s11 > 0.0) || !(moments.s22 > 0.0))) {
      throw DegenerateGraph("within-sample edge count has zero variance");
    }
    if (name_ == StatName::kZ0 && !(moments.var0 > 0.0)) {
      throw DegenerateGraph("between-sample edge count has zero variance");
    }
  }

  double eval(const std::vector<std::uint8_t>& labels) const override {
    long long r1 = 0, r2 = 0;
    for (const Edge& e : graph_.edges) {
      const std::uint8_t la = labels[static_cast<std::size_t>(e.a)];
      if (la == labels[static_cast<std::size_t>(e.b)]) {
        if (la == 0)
          ++r1;
        else
          ++r2;
      }
    }
    const double d1 = static_cast<double>(r1) - moments_.mu1;
    const double d2 = static_cast<double>(r2) - moments_.mu2;
    switch (name_) {
      case StatName::kS:
        return (d1 * d1 * moments_.s22 - 2.0 * d1 * d2 * moments_.s12 + d2 * d2 * moments_.s11) /
               det_;
      case StatName::kR0:
        return static_cast<double>(graph_.n_edges() - r1 - r2);
      case StatName::kZ0:
        return (static_cast<double>(graph_.n_edges() - r1 - r2) - moments_.mu0) /
               std::sqrt(moments_.var0);
      case StatName::kT1:
        return std::abs(d1) + std::abs(d2);
      case StatName::kT2:
        return std::abs(d1) / std::sqrt(moments_.s11) + std::abs(d2) / std::sqrt(moments_.s22);
      case StatName::kT3:
        return d1 * d1 + d2 * d2;
      case StatName::kT4:
        return d1 * d1 / moments_.s11 + d2 * d2 / moments_.s22;
      default:
        throw InternalError("not a count statistic");
    }
  }

  Tail tail() const override {
    return (name_ == StatName::kR0 || name_ == StatName::kZ0) ? Tail::kLower : Tail::kUpper;
  }

private:
  StatName name_;
  const SimilarityGraph& graph_;
  NullMoments moments_;
  double det_ = 0.0;
};

// All four margins of the degree table are fixed under permutation (degrees
// do not move, sample sizes do not move), so the replicate value only needs
// the count of degree-one nodes labeled X.
class DegreeStatistic : public PermutationStatistic {
public:
  DegreeStatistic(const SimilarityGraph& graph, int n, int m) : n_(n), m_(m) {
    std::vector<int> degree(static_cast<std::size_t>(graph.n_nodes), 0);
    for (const Edge& e : graph.edges) {
      ++degree[static_cast<std::size_t>(e.a)];
      ++degree[static_cast<std::size_t>(e.b)];
    }
    for (int i = 0; i < graph.n_nodes; ++i)
      if (degree[static_cast<std::size_t>(i)] == 1) deg_one_.push_back(i);
    const long long n1 = static_cast<long long>(deg_one_.size());
    const long long total = n + m;
    if (n1 == 0 || n1 == total) {
      throw CalibrationError("degree table is degenerate: every p-value is 1 by convention");
    }
  }

  double eval(const std::vector<std::uint8_t>& labels) const override {
    long long a = 0;
    for (int i : deg_one_)
      if (labels[static_cast<std::size_t>(i)] == 0) ++a;
    const double n1 = static_cast<double>(deg_one_.size());
    const double total = static_cast<double>(n_ + m_);
    const double b = static_cast<double>(n_) - static_cast<double>(a);
    const double c = n1 - static_cast<double>(a);
    const double d = static_cast<double>(m_) - c;
    const double num = static_cast<double>(a) * d - b * c;
    return total * num * num /
           (static_cast<double>(n_) * static_cast<double>(m_) * n1 * (total - n1));
  }

  Tail tail() const override { return Tail::kUpper; }

private:
  int n_;
  int m_;
  std::vector<int> deg_one_;
};

// The pooled scatter about the pooled mean does not depend on the labeling,
// so each replicate reduces to a group-mean difference and a rank-one update
// of that fixed factorization.
class HotellingStatistic : public PermutationStatistic {
public:
  HotellingStatistic(const PointSet& points, const Labeling& labeling)
      : points_(points), n_(labeling.n), m_(labeling.m) {
    const int total = points.n_points();
    const std::size_t d = points.data.cols();
    if (points.dim() > total - 2) {
      throw CalibrationError("mean test needs at least d + 2 pooled observations");
    }
    col_sum_.assign(d, 0.0);
    for (int i = 0; i < total; ++i) {
      const double* row = points.data.row(static_cast<std::size_t>(i));
      for (std::size_t j = 0; j < d; ++j) col_sum_[j] += row[j];
    }
    Matrix scatter(d, d, 0.0);
    std::vector<double> c(d);
    for (int i = 0; i < total; ++i) {
      const double* row = points.data.row(static_cast<std::size_t>(i));
      for (std::size_t j = 0; j < d; ++j) c[j] = row[j] - col_sum_[j] / total;
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a; b < d; ++b) scatter(a, b) += c[a] * c[b];
    }
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = a; b < d; ++b) scatter(b, a) = scatter(a, b);
    auto factor = cholesky(scatter);
    if (!factor) {
      throw CalibrationError("pooled scatter is singular; the mean test is unavailable");
    }
    factor_ = std::move(*factor);
  }

  double eval(const std::vector<std::uint8_t>& labels) const override {
    const std::size_t d = points_.data.cols();
    const int total = n_ + m_;
    std::vector<double> sum_x(d, 0.0);
    for (int i = 0; i < total; ++i) {
      if (labels[static_cast<std::size_t>(i)] != 0) continue;
      const double* row = points_.data.row(static_cast<std::size_t>(i));
      for (std::size_t j = 0; j < d; ++j) sum_x[j] += row[j];
    }
    std::vector<double> diff(d);
    for (std::size_t j = 0; j < d; ++j) {
      diff[j] = sum_x[j] / n_ - (col_sum_[j] - sum_x[j]) / m_;
    }
    std::vector<double> solved = diff;
    factor_.solve(solved);
    double quad = 0.0;
    for (std::size_t j = 0; j < d; ++j) quad += diff[j] * solved[j];
    const double c = static_cast<double>(n_) * static_cast<double>(m_) / total;
    const double denom = 1.0 - c * quad;
    if (!(denom > 0.0)) {
      throw CalibrationError("within-group scatter became singular for a replicate labeling");
    }
    return c * quad / denom;
  }

  Tail tail() const override { return Tail::kUpper; }

private:
  const PointSet& points_;
  int n_;
  int m_;
  std::vector<double> col_sum_;
  Cholesky factor_;
};

class GlrStatistic : public PermutationStatistic {
public:
  GlrStatistic(const PointSet& points, const Labeling& labeling)
      : points_(points), n_(labeling.n), m_(labeling.m) {
    const int total = points.n_points();
    const std::size_t d = points.data.cols();
    if (std::min(n_, m_) <= points.dim()) {
      throw CalibrationError("likelihood ratio needs more than d observations per sample");
    }
    col_sum_.assign(d, 0.0);
    cross_ = Matrix(d, d, 0.0);
    for (int i = 0; i < total; ++i) {
      const double* row = points.data.row(static_cast<std::size_t>(i));
      for (std::size_t j = 0; j < d; ++j) col_sum_[j] += row[j];
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a; b < d; ++b) cross_(a, b) += row[a] * row[b];
    }
    Matrix s0(d, d, 0.0);
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = a; b < d; ++b) {
        const double v = cross_(a, b) / total - (col_sum_[a] / total) * (col_sum_[b] / total);
        s0(a, b) = v;
        s0(b, a) = v;
      }
    }
    const auto f0 = cholesky(s0);
    if (!f0) {
      throw CalibrationError("pooled covariance is singular; the likelihood ratio is unavailable");
    }
    pooled_log_det_ = f0->log_det;
  }

  double eval(const std::vector<std::uint8_t>& labels) const override {
    const std::size_t d = points_.data.cols();
    const int total = n_ + m_;
    std::vector<double> sum_x(d, 0.0);
    Matrix cross_x(d, d, 0.0);
    for (int i = 0; i < total; ++i) {
      if (labels[static_cast<std::size_t>(i)] != 0) continue;
      const double* row = points_.data.row(static_cast<std::size_t>(i));
      for (std::size_t j = 0; j < d; ++j) sum_x[j] += row[j];
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a; b < d; ++b) cross_x(a, b) += row[a] * row[b];
    }
    Matrix sx(d, d, 0.0), sy(d, d, 0.0);
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = a; b < d; ++b) {
        const double mxa = sum_x[a] / n_, mxb = sum_x[b] / n_;
        const double mya = (col_sum_[a] - sum_x[a]) / m_, myb = (col_sum_[b] - sum_x[b]) / m_;
        sx(a, b) = cross_x(a, b) / n_ - mxa * mxb;
        sx(b, a) = sx(a, b);
        sy(a, b) = (cross_(a, b) - cross_x(a, b)) / m_ - mya * myb;
        sy(b, a) = sy(a, b);
      }
    }
    const auto fx = cholesky(sx);
    const auto fy = cholesky(sy);
    if (!fx || !fy) {
      throw CalibrationError("a group covariance became singular for a replicate labeling");
    }
    return static_cast<double>(total) * pooled_log_det_ - static_cast<double>(n_) * fx->log_det -
           static_cast<double>(m_) * fy->log_det;
  }

  Tail tail() const override { return Tail::kUpper; }

private:
  const PointSet& points_;
  int n_;
  int m_;
  std::vector<double> col_sum_;
  Matrix cross_;
  double pooled_log_det_ = 0.0;
};

// C(total, k), capped: returns cap + 1 as soon as the running value exceeds
// cap. The partial products are themselves binomial coefficients, so the
// early exit is monotone-safe.
long long binomial_capped(int total, int k, long long cap) {
  k = std::min(k, total - k);
  long double acc = 1.0L;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<long double>(total - k + i) / static_cast<long double>(i);
    if (acc > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<long long>(acc + 0.5L);
}

bool is_extreme(double value, double observed, Tail tail) {
  return tail == Tail::kUpper ? value >= observed : value <= observed;
}

}  // namespace

std::unique_ptr<PermutationStatistic> make_permutation_statistic(StatName name,
                                                                 const SimilarityGraph* graph,
                                                                 const NullMoments* moments,
                                                                 const PointSet* points,
                                                                 const Labeling& labeling) {
  switch (name) {
    case StatName::kHotelling:
      if (!points) throw Error("the mean test needs point coordinates");
      return std::make_unique<HotellingStatistic>(*points, labeling);
    case StatName::kGlr:
      if (!points) throw Error("the likelihood ratio needs point coordinates");
      return std::make_unique<GlrStatistic>(*points, labeling);
    case StatName::kDegree:
      if (!graph) throw Error("the degree test needs a graph");
      return std::make_unique<DegreeStatistic>(*graph, labeling.n, labeling.m);
    default:
      if (!graph || !moments) throw Error("graph statistics need a graph and null moments");
      return std::make_unique<CountStatistic>(name, *graph, *moments);
  }
}

PermPValue permutation_pvalue(const PermutationStatistic& stat, const Labeling& labeling,
                              const PermutationConfig& config) {
  if (config.n_permutations < 1) throw Error("need at least one permutation replicate");
  const double observed = stat.eval(labeling.labels);
  const Tail tail = stat.tail();
  const int total = labeling.size();
  const int n = labeling.n;

  const long long exact_count = binomial_capped(total, n, config.exact_threshold);
  PermPValue out;
  if (exact_count <= config.exact_threshold) {
    long long extreme = 0;
    std::vector<int> comb(static_cast<std::size_t>(n));
    std::iota(comb.begin(), comb.end(), 0);
    std::vector<std::uint8_t> labels(static_cast<std::size_t>(total));
    for (;;) {
      std::fill(labels.begin(), labels.end(), 1);
      for (int idx : comb) labels[static_cast<std::size_t>(idx)] = 0;
      if (is_extreme(stat.eval(labels), observed, tail)) ++extreme;
      int i = n - 1;
      while (i >= 0 && comb[static_cast<std::size_t>(i)] == total - n + i) --i;
      if (i < 0) break;
      ++comb[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < n; ++j)
        comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
    out.p = static_cast<double>(extreme) / static_cast<double>(exact_count);
    out.exact = true;
    out.n_used = exact_count;
    return out;
  }

  const long long replicates = config.n_permutations;
  int threads = config.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<int>(std::min<long long>(threads, replicates));
  threads = std::max(threads, 1);

  std::vector<long long> partial(static_cast<std::size_t>(threads), 0);
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(threads));
  auto worker = [&](int t, long long lo, long long hi) {
    try {
      std::vector<std::uint8_t> labels;
      std::vector<int> scratch;
      long long count = 0;
      for (long long r = lo; r < hi; ++r) {
        RandomStream stream(config.seed, StreamTag::kPermutation, static_cast<std::uint64_t>(r));
        stream.sample_labeling(total, n, labels, scratch);
        if (is_extreme(stat.eval(labels), observed, tail)) ++count;
      }
      partial[static_cast<std::size_t>(t)] = count;
    } catch (...) {
      failures[static_cast<std::size_t>(t)] = std::current_exception();
    }
  };

  if (threads == 1) {
    worker(0, 0, replicates);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    const long long chunk = (replicates + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const long long lo = t * chunk;
      const long long hi = std::min(replicates, lo + chunk);
      pool.emplace_back(worker, t, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);

  const long long extreme = std::accumulate(partial.begin(), partial.end(), 0LL);
  out.p = static_cast<double>(1 + extreme) / static_cast<double>(1 + replicates);
  out.exact = false;
  out.n_used = replicates;
  return out;
}

std::vector<StatName> applicable_statistics(bool have_points) {
  std::vector<StatName> names = {StatName::kS,  StatName::kR0, StatName::kT1, StatName::kT2,
                                 StatName::kT3, StatName::kT4, StatName::kDegree};
  if (have_points) {
    names.push_back(StatName::kHotelling);
    names.push_back(StatName::kGlr);
  }
  return names;
}

TestReport run_test(const SimilarityGraph& graph, const Labeling& labeling, StatName stat,
                    const PValueSelection& selection, const PermutationConfig& config,
                    const PointSet* points) {
  require_same_length(graph.n_nodes, labeling);
  if (points) require_same_length(points->n_points(), labeling);

  const GraphStats gstats = graph_stats(graph);
  const NullMoments moments = permutation_moments(gstats, labeling.n, labeling.m);
  const EdgeCounts counts = edge_counts(graph, labeling);

  TestReport rep;
  rep.n = labeling.n;
  rep.m = labeling.m;
  rep.n_nodes = graph.n_nodes;
  rep.n_edges = graph.n_edges();
  rep.r0 = counts.r0;
  rep.r1 = counts.r1;
  rep.r2 = counts.r2;
  rep.mu0 = moments.mu0;
  rep.mu1 = moments.mu1;
  rep.mu2 = moments.mu2;
  rep.sigma[0][0] = moments.s11;
  rep.sigma[0][1] = moments.s12;
  rep.sigma[1][0] = moments.s12;
  rep.sigma[1][1] = moments.s22;
  rep.seed = config.seed;
  rep.diagnostics = applicability_diagnostics(gstats);
  if (std::isfinite(moments.corr12)) rep.corr12 = moments.corr12;
  if (moments.var0 > 0.0) {
    rep.z0 = (static_cast<double>(counts.r0) - moments.mu0) / std::sqrt(moments.var0);
  }
  rep.statistic_name = to_string(stat);

  std::optional<StatisticValue> value;
  bool degree_degenerate = false;
  try {
    switch (stat) {
      case StatName::kS:
        value = statistic_s(counts, moments);
        break;
      case StatName::kR0:
        value = statistic_r0(counts);
        break;
      case StatName::kZ0:
        value = statistic_z0(counts, moments);
        break;
      case StatName::kT1:
      case StatName::kT2:
      case StatName::kT3:
      case StatName::kT4:
        value = statistic_t(counts, moments,
                            1 + static_cast<int>(stat) - static_cast<int>(StatName::kT1));
        break;
      case StatName::kDegree: {
        const DegreeTestResult r = degree_test(graph, labeling);
        degree_degenerate = r.degenerate;
        value = r.stat;
        break;
      }
      case StatName::kHotelling:
        if (!points) throw Error("the mean test needs point coordinates");
        value = hotelling_t2(*points, labeling);
        break;
      case StatName::kGlr:
        if (!points) throw Error("the likelihood ratio needs point coordinates");
        value = glr_stat(*points, labeling);
        break;
    }
  } catch (const SingularCovariance& e) {
    rep.error = e.what();
  } catch (const DegenerateGraph& e) {
    rep.error = e.what();
  }

  if (!value) {
    if (!rep.error) rep.error = "statistic unavailable for this input";
    return rep;
  }
  rep.statistic_value = value->value;

  if (degree_degenerate) {
    // Fixed margins make every labeling degenerate too; both calibrations
    // report 1 by convention.
    if (selection.asymptotic) rep.p_asymptotic = 1.0;
    if (selection.permutation || selection.force_exact) {
      rep.p_permutation = 1.0;
      rep.exact = true;
    }
    return rep;
  }

  if (selection.asymptotic) rep.p_asymptotic = asymptotic_pvalue(*value, moments);

  if (selection.permutation || selection.force_exact) {
    if (selection.force_exact &&
        binomial_capped(labeling.size(), labeling.n, config.exact_threshold) >
            config.exact_threshold) {
      throw CalibrationError("exact enumeration requested but the labeling count exceeds " +
                             std::to_string(config.exact_threshold));
    }
    const auto view = make_permutation_statistic(stat, &graph, &moments, points, labeling);
    const PermPValue pp = permutation_pvalue(*view, labeling, config);
    rep.p_permutation = pp.p;
    rep.exact = pp.exact;
    rep.n_permutations = pp.n_used;
  }
  return rep;
}

}  // namespace gts
