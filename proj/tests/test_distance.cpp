#include "doctest.h"

#include <cmath>
#include <random>

#include "gts/distance.hpp"

#include "helpers.hpp"

using namespace gts;
using namespace gts::test;

TEST_CASE("euclidean distances on a 3-4-5 triangle") {
  const PointSet pts = points_from({{0, 0}, {3, 0}, {0, 4}});
  const DistanceMatrix d = pairwise_distances(pts, Metric::kEuclidean);
  CHECK(d.values(0, 1) == doctest::Approx(3.0));
  CHECK(d.values(0, 2) == doctest::Approx(4.0));
  CHECK(d.values(1, 2) == doctest::Approx(5.0));
  CHECK(d.values(1, 0) == d.values(0, 1));
  CHECK(d.values(0, 0) == 0.0);
}

TEST_CASE("manhattan distances on the same triangle") {
  const PointSet pts = points_from({{0, 0}, {3, 0}, {0, 4}});
  const DistanceMatrix d = pairwise_distances(pts, Metric::kManhattan);
  CHECK(d.values(0, 1) == doctest::Approx(3.0));
  CHECK(d.values(0, 2) == doctest::Approx(4.0));
  CHECK(d.values(1, 2) == doctest::Approx(7.0));
}

TEST_CASE("euclidean distances are translation invariant") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  std::vector<std::vector<double>> rows(6, std::vector<double>(3));
  for (auto& r : rows)
    for (auto& v : r) v = unif(rng);
  auto shifted = rows;
  for (auto& r : shifted) {
    r[0] += 11.5;
    r[1] -= 3.25;
    r[2] += 0.75;
  }
  const DistanceMatrix a = pairwise_distances(points_from(rows), Metric::kEuclidean);
  const DistanceMatrix b = pairwise_distances(points_from(shifted), Metric::kEuclidean);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      CHECK(a.values(i, j) == doctest::Approx(b.values(i, j)).epsilon(1e-9));
}

TEST_CASE("mahalanobis distances are invariant under invertible linear maps") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<std::vector<double>> rows(8, std::vector<double>(2));
  for (auto& r : rows)
    for (auto& v : r) v = unif(rng);
  // x -> A x with A = [[2, 1], [0.5, 3]], det 5.5
  auto mapped = rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    mapped[i][0] = 2.0 * rows[i][0] + 1.0 * rows[i][1];
    mapped[i][1] = 0.5 * rows[i][0] + 3.0 * rows[i][1];
  }
  const DistanceMatrix a = pairwise_distances(points_from(rows), Metric::kMahalanobis);
  const DistanceMatrix b = pairwise_distances(points_from(mapped), Metric::kMahalanobis);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      CHECK(a.values(i, j) == doctest::Approx(b.values(i, j)).epsilon(1e-8));
}

TEST_CASE("mahalanobis rejects a singular pooled covariance") {
  // All points on a line: the second coordinate carries no variance.
  const PointSet pts = points_from({{0, 1}, {1, 1}, {2, 1}, {3, 1}});
  CHECK_THROWS_AS(pairwise_distances(pts, Metric::kMahalanobis), SingularCovariance);
}

TEST_CASE("rank mahalanobis matches mahalanobis on the mid-rank matrix") {
  const PointSet pts = points_from({{10, 3}, {20, 1}, {20, 4}, {40, 2}});
  // Column mid-ranks: [1, 2.5, 2.5, 4] and [3, 1, 4, 2].
  const PointSet ranks = points_from({{1, 3}, {2.5, 1}, {2.5, 4}, {4, 2}});
  const DistanceMatrix a = pairwise_distances(pts, Metric::kRankMahalanobis);
  const DistanceMatrix b = pairwise_distances(ranks, Metric::kMahalanobis);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(a.values(i, j) == doctest::Approx(b.values(i, j)).epsilon(1e-10));
}

TEST_CASE("rank mahalanobis is invariant under monotone coordinate maps") {
  const PointSet pts = points_from({{0.1, -2}, {0.7, 0}, {0.3, 5}, {0.9, 1}, {0.5, -1}});
  auto cubed = std::vector<std::vector<double>>(5, std::vector<double>(2));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 2; ++j) {
      const double v = pts.data(i, j);
      cubed[i][j] = v * v * v;
    }
  const DistanceMatrix a = pairwise_distances(pts, Metric::kRankMahalanobis);
  const DistanceMatrix b = pairwise_distances(points_from(cubed), Metric::kRankMahalanobis);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      CHECK(a.values(i, j) == doctest::Approx(b.values(i, j)).epsilon(1e-10));
}

TEST_CASE("metric names round trip") {
  CHECK(metric_from_string("euclidean") == Metric::kEuclidean);
  CHECK(metric_from_string("manhattan") == Metric::kManhattan);
  CHECK(metric_from_string("mahalanobis") == Metric::kMahalanobis);
  CHECK(metric_from_string("rank-mahalanobis") == Metric::kRankMahalanobis);
  CHECK(metric_from_string("rank_mahalanobis") == Metric::kRankMahalanobis);
  CHECK(to_string(Metric::kManhattan) == "manhattan");
  CHECK_THROWS_AS(metric_from_string("cosine"), ParseError);
}

TEST_CASE("network distance counts directed disagreements") {
  const auto a = make_directed_graph_sample(3, {{0, 1}, {1, 2}});
  const auto b = make_directed_graph_sample(3, {{0, 1}, {2, 1}});
  const auto c = make_directed_graph_sample(3, {});
  const DistanceMatrix d = network_distance({a, b, c});
  CHECK(d.values(0, 1) == 2.0);  // {1->2} vs {2->1}
  CHECK(d.values(0, 2) == 2.0);
  CHECK(d.values(1, 2) == 2.0);
  CHECK(d.values(1, 0) == d.values(0, 1));
  CHECK(d.values(0, 0) == 0.0);
}

TEST_CASE("directed samples validate their edges") {
  CHECK_THROWS_AS(make_directed_graph_sample(3, {{1, 1}}), ShapeError);
  CHECK_THROWS_AS(make_directed_graph_sample(3, {{0, 3}}), ShapeError);
  // Repeated pairs collapse to one; both orientations may coexist.
  CHECK(make_directed_graph_sample(2, {{0, 1}, {0, 1}}).edges.size() == 1);
  CHECK(make_directed_graph_sample(2, {{0, 1}, {1, 0}}).edges.size() == 2);
}

TEST_CASE("network distance requires a common actor set") {
  const auto a = make_directed_graph_sample(3, {{0, 1}});
  const auto b = make_directed_graph_sample(4, {{0, 1}});
  CHECK_THROWS_AS(network_distance({a, b}), ShapeError);
}
