#include "gts/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace gts {

EdgeCounts edge_counts(const SimilarityGraph& graph, const Labeling& labeling) {
  require_same_length(graph.n_nodes, labeling);
  EdgeCounts c;
  for (const Edge& e : graph.edges) {
    const int la = labeling.labels[static_cast<std::size_t>(e.a)];
    const int lb = labeling.labels[static_cast<std::size_t>(e.b)];
    if (la != lb) {
      ++c.r0;
    } else if (la == 0) {
      ++c.r1;
    } else {
      ++c.r2;
    }
  }
  return c;
}

StatName stat_from_string(const std::string& name) {
  if (name == "S") return StatName::kS;
  if (name == "R0") return StatName::kR0;
  if (name == "Z0") return StatName::kZ0;
  if (name == "T1") return StatName::kT1;
  if (name == "T2") return StatName::kT2;
  if (name == "T3") return StatName::kT3;
  if (name == "T4") return StatName::kT4;
  if (name == "degree") return StatName::kDegree;
  if (name == "hotelling") return StatName::kHotelling;
  if (name == "glr") return StatName::kGlr;
  throw ParseError("unknown statistic: " + name);
}

std::string to_string(StatName name) {
  switch (name) {
    case StatName::kS: return "S";
    case StatName::kR0: return "R0";
    case StatName::kZ0: return "Z0";
    case StatName::kT1: return "T1";
    case StatName::kT2: return "T2";
    case StatName::kT3: return "T3";
    case StatName::kT4: return "T4";
    case StatName::kDegree: return "degree";
    case StatName::kHotelling: return "hotelling";
    case StatName::kGlr: return "glr";
  }
  throw InternalError("unhandled statistic name");
}

StatisticValue statistic_s(const EdgeCounts& counts, const NullMoments& moments) {
  const double d1 = static_cast<double>(counts.r1) - moments.mu1;
  const double d2 = static_cast<double>(counts.r2) - moments.mu2;
  const double det = moments.s11 * moments.s22 - moments.s12 * moments.s12;
  if (!(det > 1e-12 * std::abs(moments.s11 * moments.s22)) || !std::isfinite(det)) {
    throw SingularCovariance("null covariance of the within-sample counts is singular");
  }
  const double value =
      (d1 * d1 * moments.s22 - 2.0 * d1 * d2 * moments.s12 + d2 * d2 * moments.s11) / det;
  return StatisticValue{StatName::kS, value, Tail::kUpper};
}

StatisticValue statistic_r0(const EdgeCounts& counts) {
  return StatisticValue{StatName::kR0, static_cast<double>(counts.r0), Tail::kLower};
}

StatisticValue statistic_z0(const EdgeCounts& counts, const NullMoments& moments) {
  if (!(moments.var0 > 0.0)) {
    throw DegenerateGraph("between-sample edge count has zero variance");
  }
  const double z = (static_cast<double>(counts.r0) - moments.mu0) / std::sqrt(moments.var0);
  return StatisticValue{StatName::kZ0, z, Tail::kLower};
}

StatisticValue statistic_t(const EdgeCounts& counts, const NullMoments& moments, int variant) {
  const double d1 = static_cast<double>(counts.r1) - moments.mu1;
  const double d2 = static_cast<double>(counts.r2) - moments.mu2;
  double value = 0.0;
  StatName name;
  switch (variant) {
    case 1:
      name = StatName::kT1;
      value = std::abs(d1) + std::abs(d2);
      break;
    case 2:
      name = StatName::kT2;
      if (!(moments.s11 > 0.0) || !(moments.s22 > 0.0)) {
        throw DegenerateGraph("within-sample edge count has zero variance");
      }
      value = std::abs(d1) / std::sqrt(moments.s11) + std::abs(d2) / std::sqrt(moments.s22);
      break;
    case 3:
      name = StatName::kT3;
      value = d1 * d1 + d2 * d2;
      break;
    case 4:
      name = StatName::kT4;
      if (!(moments.s11 > 0.0) || !(moments.s22 > 0.0)) {
        throw DegenerateGraph("within-sample edge count has zero variance");
      }
      value = d1 * d1 / moments.s11 + d2 * d2 / moments.s22;
      break;
    default:
      throw InternalError("deviation statistic variant must be 1..4");
  }
  return StatisticValue{name, value, Tail::kUpper};
}

DegreeTestResult degree_test(const SimilarityGraph& graph, const Labeling& labeling) {
  require_same_length(graph.n_nodes, labeling);
  std::vector<int> degree(static_cast<std::size_t>(graph.n_nodes), 0);
  for (const Edge& e : graph.edges) {
    ++degree[static_cast<std::size_t>(e.a)];
    ++degree[static_cast<std::size_t>(e.b)];
  }
  DegreeTestResult res;
  for (int i = 0; i < graph.n_nodes; ++i) {
    const int row = labeling.labels[static_cast<std::size_t>(i)] == 0 ? 0 : 1;
    const int col = degree[static_cast<std::size_t>(i)] == 1 ? 0 : 1;
    ++res.table[row][col];
  }
  const double a = static_cast<double>(res.table[0][0]);
  const double b = static_cast<double>(res.table[0][1]);
  const double c = static_cast<double>(res.table[1][0]);
  const double d = static_cast<double>(res.table[1][1]);
  const double r1 = a + b, r2 = c + d, c1 = a + c, c2 = b + d;
  if (r1 == 0.0 || r2 == 0.0 || c1 == 0.0 || c2 == 0.0) {
    res.degenerate = true;
    res.stat = StatisticValue{StatName::kDegree, 0.0, Tail::kUpper};
    return res;
  }
  const double total = r1 + r2;
  const double num = a * d - b * c;
  res.stat = StatisticValue{StatName::kDegree, total * num * num / (r1 * r2 * c1 * c2),
                            Tail::kUpper};
  return res;
}

namespace {

void group_means(const PointSet& points, const Labeling& labeling, std::vector<double>& mean_x,
                 std::vector<double>& mean_y) {
  const std::size_t d = points.data.cols();
  mean_x.assign(d, 0.0);
  mean_y.assign(d, 0.0);
  for (int i = 0; i < points.n_points(); ++i) {
    const double* row = points.data.row(static_cast<std::size_t>(i));
    auto& m = labeling.labels[static_cast<std::size_t>(i)] == 0 ? mean_x : mean_y;
    for (std::size_t j = 0; j < d; ++j) m[j] += row[j];
  }
  for (std::size_t j = 0; j < d; ++j) {
    mean_x[j] /= static_cast<double>(labeling.n);
    mean_y[j] /= static_cast<double>(labeling.m);
  }
}

// Scatter of the rows with label `which` about `center`, accumulated into a
// d x d matrix (upper triangle mirrored).
Matrix scatter_about(const PointSet& points, const Labeling& labeling, int which,
                     const std::vector<double>& center) {
  const std::size_t d = points.data.cols();
  Matrix s(d, d, 0.0);
  std::vector<double> c(d);
  for (int i = 0; i < points.n_points(); ++i) {
    if (which >= 0 && labeling.labels[static_cast<std::size_t>(i)] != which) continue;
    const double* row = points.data.row(static_cast<std::size_t>(i));
    for (std::size_t j = 0; j < d; ++j) c[j] = row[j] - center[j];
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = a; b < d; ++b) s(a, b) += c[a] * c[b];
  }
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a; b < d; ++b) s(b, a) = s(a, b);
  return s;
}

}  // namespace

std::optional<StatisticValue> hotelling_t2(const PointSet& points, const Labeling& labeling) {
  require_same_length(points.n_points(), labeling);
  const int total = points.n_points();
  const int d = points.dim();
  if (d > total - 2) return std::nullopt;

  std::vector<double> mean_x, mean_y;
  group_means(points, labeling, mean_x, mean_y);
  Matrix w = scatter_about(points, labeling, 0, mean_x);
  const Matrix wy = scatter_about(points, labeling, 1, mean_y);
  for (std::size_t i = 0; i < w.data().size(); ++i) w.data()[i] += wy.data()[i];

  const auto factor = cholesky(w);
  if (!factor) return std::nullopt;

  std::vector<double> diff(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j)
    diff[static_cast<std::size_t>(j)] =
        mean_x[static_cast<std::size_t>(j)] - mean_y[static_cast<std::size_t>(j)];
  std::vector<double> solved = diff;
  factor->solve(solved);
  double quad = 0.0;
  for (int j = 0; j < d; ++j) quad += diff[static_cast<std::size_t>(j)] * solved[static_cast<std::size_t>(j)];
  const double value = quad * static_cast<double>(labeling.n) * static_cast<double>(labeling.m) /
                       static_cast<double>(total);
  return StatisticValue{StatName::kHotelling, value, Tail::kUpper};
}

std::optional<StatisticValue> glr_stat(const PointSet& points, const Labeling& labeling) {
  require_same_length(points.n_points(), labeling);
  const int total = points.n_points();
  const int d = points.dim();
  if (std::min(labeling.n, labeling.m) <= d) return std::nullopt;

  std::vector<double> mean_x, mean_y, mean_all(static_cast<std::size_t>(d), 0.0);
  group_means(points, labeling, mean_x, mean_y);
  for (int j = 0; j < d; ++j) {
    mean_all[static_cast<std::size_t>(j)] =
        (mean_x[static_cast<std::size_t>(j)] * labeling.n +
         mean_y[static_cast<std::size_t>(j)] * labeling.m) /
        static_cast<double>(total);
  }

  Matrix s0 = scatter_about(points, labeling, -1, mean_all);
  Matrix sx = scatter_about(points, labeling, 0, mean_x);
  Matrix sy = scatter_about(points, labeling, 1, mean_y);
  for (double& v : s0.data()) v /= static_cast<double>(total);
  for (double& v : sx.data()) v /= static_cast<double>(labeling.n);
  for (double& v : sy.data()) v /= static_cast<double>(labeling.m);

  const auto f0 = cholesky(s0);
  const auto fx = cholesky(sx);
  const auto fy = cholesky(sy);
  if (!f0 || !fx || !fy) return std::nullopt;

  const double value = static_cast<double>(total) * f0->log_det -
                       static_cast<double>(labeling.n) * fx->log_det -
                       static_cast<double>(labeling.m) * fy->log_det;
  return StatisticValue{StatName::kGlr, value, Tail::kUpper};
}

}  // namespace gts
