#pragma once

#include <string>
#include <vector>

#include "gts/types.hpp"

namespace gts {

enum class GraphKind {
  kMst,   // union of k successive minimum spanning trees
  kMdp,   // union of k successive minimum-weight perfect matchings
  kNn,    // symmetrized k-nearest-neighbor graph
};

GraphKind graph_kind_from_string(const std::string& name);
std::string to_string(GraphKind kind);

// Union of k edge-disjoint spanning trees: round j is a minimum spanning
// tree over the edges not used in rounds 1..j-1. Ties in edge weight are
// broken by endpoint pair (smaller (i,j) first), so the result is fully
// deterministic. Throws InfeasibleK naming the first round that cannot be
// completed.
SimilarityGraph build_kmst(const DistanceMatrix& dist, int k);

// Per-round edge lists for build_kmst; round j's tree is rounds[j-1].
// Useful when several densities of the same instance are needed, since the
// k-round graph is the union of the first k rounds.
std::vector<std::vector<Edge>> kmst_rounds(const DistanceMatrix& dist, int k);

// Union of k edge-disjoint minimum-weight perfect matchings ("divide into
// pairs"). Round j is a minimum-weight perfect matching avoiding all edges
// used in earlier rounds. For odd N each round solves an augmented problem
// with one extra point at distance zero to everything and drops the pair
// containing it, so one observation sits out per round. Among equal-weight
// optimal matchings the lexicographically smallest sorted edge list is
// returned for instances up to the certification size limit (64 nodes);
// larger instances return the solver's deterministic optimum.
SimilarityGraph build_kmdp(const DistanceMatrix& dist, int k);

std::vector<std::vector<Edge>> kmdp_rounds(const DistanceMatrix& dist, int k);

// Symmetrized k-nearest-neighbor graph: {i,j} is an edge when j is among the
// k nearest neighbors of i or vice versa. Neighbor ties at equal distance are
// resolved toward the smaller index. Throws InfeasibleK when k >= N.
SimilarityGraph build_knn(const DistanceMatrix& dist, int k);

// Degree profile and the edge-pair counts entering the null moments:
// c_pairs counts unordered pairs of distinct edges sharing an endpoint, and
// sum_ae_be accumulates |A_e| * |B_e| over edges e, where A_e is e plus all
// edges sharing an endpoint with e, and B_e is the set of edges sharing an
// endpoint with some edge of A_e.
struct GraphStats {
  int n_nodes = 0;
  long long n_edges = 0;
  std::vector<int> degrees;
  long long sum_deg_sq = 0;
  long long c_pairs = 0;
  long long sum_ae_be = 0;
  int max_degree = 0;
};

GraphStats graph_stats(const SimilarityGraph& graph);

// Scaled quantities behind the limiting chi-squared approximation: the
// approximation is trustworthy when edge_ratio and deg_sq_ratio stay O(1)
// and aebe_ratio (sum |A_e||B_e| / N^1.5) stays o(1). The flag turns on when
// aebe_ratio exceeds 1 or the maximum degree exceeds sqrt(N).
struct ApplicabilityDiagnostics {
  double edge_ratio = 0.0;
  double deg_sq_ratio = 0.0;
  double aebe_ratio = 0.0;
  int max_degree = 0;
  bool asymptotics_questionable = false;

  bool operator==(const ApplicabilityDiagnostics&) const = default;
};

ApplicabilityDiagnostics applicability_diagnostics(const GraphStats& stats);

}  // namespace gts
