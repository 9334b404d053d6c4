#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gts/graph.hpp"

namespace gts {

// Everything one test run reports: sample sizes, graph size, edge counts,
// null moments, the statistic, p-values, and the applicability diagnostics.
// Serialized as JSON with a fixed key order so identical runs produce
// identical bytes. Null stands for "not computed" or "not available",
// mirroring dash entries in comparison tables.
struct TestReport {
  int n = 0;
  int m = 0;
  int n_nodes = 0;
  long long n_edges = 0;
  long long r0 = 0;
  long long r1 = 0;
  long long r2 = 0;
  double mu0 = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
  double sigma[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  std::string statistic_name;
  std::optional<double> statistic_value;
  std::optional<double> p_asymptotic;
  std::optional<double> p_permutation;
  std::optional<long long> n_permutations;
  bool exact = false;
  std::uint64_t seed = 0;
  ApplicabilityDiagnostics diagnostics;
  std::optional<double> corr12;
  std::optional<double> z0;
  std::optional<std::string> error;

  bool operator==(const TestReport&) const = default;
};

std::string report_to_json(const TestReport& report);
TestReport report_from_json(const std::string& text);

}  // namespace gts
