#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "gts/errors.hpp"
#include "gts/linalg.hpp"

namespace gts {

// N observations in d dimensions, one row per observation. Rows are indexed
// consistently with Labeling and DistanceMatrix throughout the library.
struct PointSet {
  Matrix data;

  int n_points() const { return static_cast<int>(data.rows()); }
  int dim() const { return static_cast<int>(data.cols()); }
};

PointSet make_point_set(Matrix data);

// Pooled-sample labeling: label 0 marks sample X (n observations), label 1
// marks sample Y (m observations).
struct Labeling {
  std::vector<std::uint8_t> labels;
  int n = 0;
  int m = 0;

  int size() const { return static_cast<int>(labels.size()); }
};

Labeling make_labeling(std::vector<std::uint8_t> labels);

// Symmetric nonnegative N x N matrix with zero diagonal.
struct DistanceMatrix {
  Matrix values;

  int size() const { return static_cast<int>(values.rows()); }
};

// Validates symmetry (absolute tolerance asym_tol, symmetrized by averaging),
// nonnegativity, squareness, and the diagonal (forced to exact zero when
// within asym_tol, rejected otherwise).
DistanceMatrix make_distance_matrix(Matrix values, double asym_tol = 1e-9);

struct Edge {
  int a = 0;  // smaller endpoint
  int b = 0;  // larger endpoint

  auto operator<=>(const Edge&) const = default;
};

// Undirected simple graph on nodes 0..n_nodes-1. Edges are stored with a < b,
// sorted lexicographically, without duplicates.
struct SimilarityGraph {
  int n_nodes = 0;
  std::vector<Edge> edges;

  long long n_edges() const { return static_cast<long long>(edges.size()); }
};

// Normalizes endpoint order, sorts, and validates (no self loops, no
// duplicates, endpoints in range).
SimilarityGraph make_graph(int n_nodes, std::vector<Edge> edges);

// Every operation pairing observations with a labeling checks lengths first.
void require_same_length(int observations, const Labeling& labeling);

}  // namespace gts
