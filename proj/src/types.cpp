#include "gts/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gts {

PointSet make_point_set(Matrix data) {
  if (data.rows() < 2) {
    throw TooFewObservations("need at least 2 observations, got " + std::to_string(data.rows()));
  }
  if (data.cols() < 1) {
    throw ShapeError("points must have at least one coordinate");
  }
  for (double v : data.data()) {
    if (!std::isfinite(v)) throw ParseError("non-finite coordinate in point set");
  }
  return PointSet{std::move(data)};
}

Labeling make_labeling(std::vector<std::uint8_t> labels) {
  int n = 0, m = 0;
  for (std::uint8_t v : labels) {
    if (v == 0) {
      ++n;
    } else if (v == 1) {
      ++m;
    } else {
      throw LabelCardinalityError("labels must be 0 or 1");
    }
  }
  if (n == 0 || m == 0) {
    throw LabelCardinalityError("both samples must be non-empty (n=" + std::to_string(n) +
                                ", m=" + std::to_string(m) + ")");
  }
  return Labeling{std::move(labels), n, m};
}

DistanceMatrix make_distance_matrix(Matrix values, double asym_tol) {
  const std::size_t n = values.rows();
  if (values.cols() != n) {
    throw ShapeError("distance matrix must be square, got " + std::to_string(values.rows()) +
                     "x" + std::to_string(values.cols()));
  }
  if (n < 2) throw TooFewObservations("distance matrix needs at least 2 observations");
  for (std::size_t i = 0; i < n; ++i) {
    const double d = values(i, i);
    if (!std::isfinite(d) || std::abs(d) > asym_tol) {
      throw ShapeError("nonzero diagonal entry at (" + std::to_string(i) + "," +
                       std::to_string(i) + ")");
    }
    values(i, i) = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = values(i, j);
      const double b = values(j, i);
      if (!std::isfinite(a) || !std::isfinite(b)) {
        throw ParseError("non-finite distance at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
      }
      if (std::abs(a - b) > asym_tol) {
        throw AsymmetryError("asymmetric entries at (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")",
                             static_cast<int>(i), static_cast<int>(j));
      }
      const double v = 0.5 * (a + b);
      if (v < 0.0) {
        throw NegativeDistance("negative distance at (" + std::to_string(i) + "," +
                                   std::to_string(j) + ")",
                               static_cast<int>(i), static_cast<int>(j));
      }
      values(i, j) = v;
      values(j, i) = v;
    }
  }
  return DistanceMatrix{std::move(values)};
}

SimilarityGraph make_graph(int n_nodes, std::vector<Edge> edges) {
  if (n_nodes < 0) throw ShapeError("negative node count");
  for (Edge& e : edges) {
    if (e.a > e.b) std::swap(e.a, e.b);
    if (e.a < 0 || e.b >= n_nodes) {
      throw ShapeError("edge endpoint out of range: (" + std::to_string(e.a) + "," +
                       std::to_string(e.b) + ")");
    }
    if (e.a == e.b) {
      throw ShapeError("self loop at node " + std::to_string(e.a));
    }
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw ShapeError("duplicate edge");
  }
  return SimilarityGraph{n_nodes, std::move(edges)};
}

void require_same_length(int observations, const Labeling& labeling) {
  if (observations != labeling.size()) {
    throw LengthMismatch("labeling has " + std::to_string(labeling.size()) +
                         " entries for " + std::to_string(observations) + " observations");
  }
}

}  // namespace gts
