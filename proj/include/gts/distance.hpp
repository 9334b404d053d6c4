#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gts/types.hpp"

namespace gts {

enum class Metric {
  kEuclidean,
  kManhattan,
  kMahalanobis,
  kRankMahalanobis,
};

Metric metric_from_string(const std::string& name);
std::string to_string(Metric metric);

// Pairwise distances between all rows of `points`. The Mahalanobis variants
// use the covariance of the pooled sample; the rank variant first replaces
// each column by its mid-ranks. Throws SingularCovariance when the pooled
// covariance cannot be inverted.
DistanceMatrix pairwise_distances(const PointSet& points, Metric metric);

// One observed directed network on a fixed actor set 0..n_actors-1.
// Edges are ordered pairs (from, to); direction matters.
struct DirectedGraphSample {
  int n_actors = 0;
  std::vector<std::pair<int, int>> edges;  // sorted, unique, no self loops
};

DirectedGraphSample make_directed_graph_sample(int n_actors, std::vector<std::pair<int, int>> edges);

// Distance between two network observations: the number of directed pairs
// present in exactly one of the two edge sets (symmetric set difference).
DistanceMatrix network_distance(const std::vector<DirectedGraphSample>& samples);

}  // namespace gts
