#include "gts/distance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace gts {

Metric metric_from_string(const std::string& name) {
  if (name == "euclidean") return Metric::kEuclidean;
  if (name == "manhattan") return Metric::kManhattan;
  if (name == "mahalanobis") return Metric::kMahalanobis;
  if (name == "rank-mahalanobis" || name == "rank_mahalanobis") return Metric::kRankMahalanobis;
  throw ParseError("unknown metric: " + name);
}

std::string to_string(Metric metric) {
  switch (metric) {
    case Metric::kEuclidean: return "euclidean";
    case Metric::kManhattan: return "manhattan";
    case Metric::kMahalanobis: return "mahalanobis";
    case Metric::kRankMahalanobis: return "rank-mahalanobis";
  }
  throw InternalError("unhandled metric");
}

namespace {

// Column-wise mid-rank transform: ties share the average of the ranks they
// occupy; ranks run 1..N.
Matrix mid_rank_columns(const Matrix& data) {
  const std::size_t n = data.rows(), d = data.cols();
  Matrix out(n, d, 0.0);
  std::vector<std::size_t> order(n);
  for (std::size_t j = 0; j < d; ++j) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return data(a, j) < data(b, j); });
    std::size_t i = 0;
    while (i < n) {
      std::size_t k = i;
      while (k + 1 < n && data(order[k + 1], j) == data(order[i], j)) ++k;
      const double rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(k + 1));
      for (std::size_t t = i; t <= k; ++t) out(order[t], j) = rank;
      i = k + 1;
    }
  }
  return out;
}

Matrix sample_covariance(const Matrix& data) {
  const std::size_t n = data.rows(), d = data.cols();
  std::vector<double> mean(d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) mean[j] += data(i, j);
  for (double& v : mean) v /= static_cast<double>(n);
  Matrix cov(d, d, 0.0);
  std::vector<double> c(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) c[j] = data(i, j) - mean[j];
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = a; b < d; ++b) cov(a, b) += c[a] * c[b];
  }
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a; b < d; ++b) {
      cov(a, b) /= static_cast<double>(n - 1);
      cov(b, a) = cov(a, b);
    }
  return cov;
}

Matrix distances_from_rows(const Matrix& rows, bool manhattan) {
  const std::size_t n = rows.rows(), d = rows.cols();
  Matrix out(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* ri = rows.row(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double* rj = rows.row(j);
      double acc = 0.0;
      if (manhattan) {
        for (std::size_t k = 0; k < d; ++k) acc += std::abs(ri[k] - rj[k]);
      } else {
        for (std::size_t k = 0; k < d; ++k) {
          const double diff = ri[k] - rj[k];
          acc += diff * diff;
        }
        acc = std::sqrt(acc);
      }
      out(i, j) = acc;
      out(j, i) = acc;
    }
  }
  return out;
}

// Whitens rows with the inverse Cholesky factor of their covariance, so that
// plain Euclidean distance on the result equals Mahalanobis distance on the
// input.
Matrix whiten_rows(const Matrix& data) {
  const auto cov = sample_covariance(data);
  const auto factor = cholesky(cov);
  if (!factor) throw SingularCovariance("pooled covariance is singular");
  const std::size_t n = data.rows(), d = data.cols();
  Matrix out(n, d, 0.0);
  std::vector<double> buf(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) buf[j] = data(i, j);
    factor->whiten(buf);
    for (std::size_t j = 0; j < d; ++j) out(i, j) = buf[j];
  }
  return out;
}

}  // namespace

DistanceMatrix pairwise_distances(const PointSet& points, Metric metric) {
  switch (metric) {
    case Metric::kEuclidean:
      return make_distance_matrix(distances_from_rows(points.data, false), 0.0);
    case Metric::kManhattan:
      return make_distance_matrix(distances_from_rows(points.data, true), 0.0);
    case Metric::kMahalanobis:
      return make_distance_matrix(distances_from_rows(whiten_rows(points.data), false), 0.0);
    case Metric::kRankMahalanobis:
      return make_distance_matrix(
          distances_from_rows(whiten_rows(mid_rank_columns(points.data)), false), 0.0);
  }
  throw InternalError("unhandled metric");
}

DirectedGraphSample make_directed_graph_sample(int n_actors,
                                               std::vector<std::pair<int, int>> edges) {
  if (n_actors < 1) throw ShapeError("network sample needs at least one actor");
  for (auto& [from, to] : edges) {
    if (from < 0 || from >= n_actors || to < 0 || to >= n_actors) {
      throw ShapeError("network edge endpoint out of range: (" + std::to_string(from) + "," +
                       std::to_string(to) + ")");
    }
    if (from == to) throw ShapeError("network self loop at actor " + std::to_string(from));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return DirectedGraphSample{n_actors, std::move(edges)};
}

DistanceMatrix network_distance(const std::vector<DirectedGraphSample>& samples) {
  const std::size_t n = samples.size();
  if (n < 2) throw TooFewObservations("need at least 2 network observations");
  for (std::size_t i = 1; i < n; ++i) {
    if (samples[i].n_actors != samples[0].n_actors) {
      throw ShapeError("network observations must share one actor set");
    }
  }
  Matrix out(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& a = samples[i].edges;
      const auto& b = samples[j].edges;
      std::size_t ia = 0, ib = 0, common = 0;
      while (ia < a.size() && ib < b.size()) {
        if (a[ia] == b[ib]) {
          ++common;
          ++ia;
          ++ib;
        } else if (a[ia] < b[ib]) {
          ++ia;
        } else {
          ++ib;
        }
      }
      const double d = static_cast<double>(a.size() + b.size() - 2 * common);
      out(i, j) = d;
      out(j, i) = d;
    }
  }
  return make_distance_matrix(std::move(out), 0.0);
}

}  // namespace gts
