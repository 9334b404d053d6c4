#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gts/distance.hpp"
#include "gts/types.hpp"

namespace gts {

// CSV of coordinates, one observation per row, '.' decimal separator, LF or
// CRLF endings. A single leading header row is skipped when its fields are
// not all numeric. Ragged or malformed rows raise ParseError with the
// 1-based line number.
PointSet load_points(const std::string& path);

// One label token per line. Exactly two distinct tokens are required; the
// lexicographically smaller one becomes sample X (label 0) unless x_label
// overrides the choice.
Labeling load_labels(const std::string& path, const std::optional<std::string>& x_label = {});

// Square CSV matrix, validated for symmetry (absolute tolerance 1e-9),
// nonnegativity, and a zero diagonal.
DistanceMatrix load_distance_matrix(const std::string& path);

// Graph JSON: {"n_nodes": N, "edges": [[i, j], ...]} with 0-based endpoints.
SimilarityGraph load_graph(const std::string& path);

std::string graph_to_json(const SimilarityGraph& graph);

// One JSON object per line: {"n_actors": V, "edges": [[from, to], ...]}.
std::vector<DirectedGraphSample> load_network_samples(const std::string& path);

// Serializers are the normalization pass: loading a file they wrote and
// saving it again reproduces the bytes exactly.
void save_points(const PointSet& points, const std::string& path);
void save_labels(const Labeling& labeling, const std::string& path);
void save_distance_matrix(const DistanceMatrix& dist, const std::string& path);
void save_graph(const SimilarityGraph& graph, const std::string& path);

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace gts
