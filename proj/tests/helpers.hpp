#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "gts/graph.hpp"
#include "gts/nulldist.hpp"
#include "gts/stats.hpp"
#include "gts/types.hpp"

namespace gts::test {

inline Matrix matrix_from(const std::vector<std::vector<double>>& rows) {
  Matrix out(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) out(i, j) = rows[i][j];
  return out;
}

inline PointSet points_from(const std::vector<std::vector<double>>& rows) {
  return make_point_set(matrix_from(rows));
}

inline SimilarityGraph path_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return make_graph(n, std::move(edges));
}

inline SimilarityGraph star_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) edges.push_back({0, i});
  return make_graph(n, std::move(edges));
}

inline SimilarityGraph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) edges.push_back({a, b});
  return make_graph(n, std::move(edges));
}

inline Labeling labeling_from(std::vector<int> raw) {
  std::vector<std::uint8_t> labels(raw.begin(), raw.end());
  return make_labeling(std::move(labels));
}

// All C(N, n) labelings with exactly n zeros, in lexicographic order of the
// zero-position sets. Used by the enumeration oracles.
inline std::vector<std::vector<std::uint8_t>> all_labelings(int total, int n_zero) {
  std::vector<std::vector<std::uint8_t>> out;
  std::vector<int> pick(n_zero);
  for (int i = 0; i < n_zero; ++i) pick[i] = i;
  while (true) {
    std::vector<std::uint8_t> labels(total, 1);
    for (int p : pick) labels[p] = 0;
    out.push_back(std::move(labels));
    int i = n_zero - 1;
    while (i >= 0 && pick[i] == total - n_zero + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n_zero; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

// Moments of (R0, R1, R2) obtained by averaging over every labeling; the
// independent check for the closed forms.
struct EnumeratedMoments {
  double mu0 = 0, mu1 = 0, mu2 = 0;
  double s11 = 0, s22 = 0, s12 = 0, var0 = 0;
};

inline EnumeratedMoments enumerate_moments(const SimilarityGraph& graph, int n, int m) {
  const auto labelings = all_labelings(n + m, n);
  double sum0 = 0, sum1 = 0, sum2 = 0, sq0 = 0, sq1 = 0, sq2 = 0, cross = 0;
  for (const auto& raw : labelings) {
    long long r0 = 0, r1 = 0, r2 = 0;
    for (const Edge& e : graph.edges) {
      int s = raw[e.a] + raw[e.b];
      if (s == 0)
        ++r1;
      else if (s == 2)
        ++r2;
      else
        ++r0;
    }
    sum0 += r0; sum1 += r1; sum2 += r2;
    sq0 += double(r0) * r0; sq1 += double(r1) * r1; sq2 += double(r2) * r2;
    cross += double(r1) * r2;
  }
  const double k = double(labelings.size());
  EnumeratedMoments out;
  out.mu0 = sum0 / k; out.mu1 = sum1 / k; out.mu2 = sum2 / k;
  out.s11 = sq1 / k - out.mu1 * out.mu1;
  out.s22 = sq2 / k - out.mu2 * out.mu2;
  out.s12 = cross / k - out.mu1 * out.mu2;
  out.var0 = sq0 / k - out.mu0 * out.mu0;
  return out;
}

// Random simple graph on n nodes where each possible edge appears with
// probability p; resamples until at least one edge is present.
inline SimilarityGraph random_graph(std::mt19937& rng, int n, double p) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  while (true) {
    std::vector<Edge> edges;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (unif(rng) < p) edges.push_back({a, b});
    if (!edges.empty()) return make_graph(n, std::move(edges));
  }
}

// Minimum total weight over all perfect matchings of the allowed pairs,
// by exhaustive recursion; nullopt when no perfect matching exists.
// Feasible for n up to about 12.
inline std::optional<double> brute_force_matching(const Matrix& weight,
                                                  const std::vector<std::uint8_t>& allowed) {
  const int n = static_cast<int>(weight.rows());
  if (n % 2 != 0) return std::nullopt;
  std::vector<int> unmatched(n);
  for (int i = 0; i < n; ++i) unmatched[i] = i;
  std::optional<double> best;
  auto rec = [&](auto&& self, std::vector<int>& rest, double acc) -> void {
    if (rest.empty()) {
      if (!best || acc < *best) best = acc;
      return;
    }
    const int a = rest[0];
    for (std::size_t j = 1; j < rest.size(); ++j) {
      const int b = rest[j];
      if (!allowed[static_cast<std::size_t>(a) * n + b]) continue;
      std::vector<int> next;
      for (std::size_t k = 1; k < rest.size(); ++k)
        if (k != j) next.push_back(rest[k]);
      self(self, next, acc + weight(a, b));
    }
  };
  rec(rec, unmatched, 0.0);
  return best;
}

// Minimum spanning tree weight by enumerating every labeled tree through its
// Prufer sequence. Feasible for n up to 7.
inline double brute_force_mst(const Matrix& weight) {
  const int n = static_cast<int>(weight.rows());
  if (n == 2) return weight(0, 1);
  const int len = n - 2;
  std::vector<int> seq(len, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::vector<int> degree(n, 1);
    for (int v : seq) ++degree[v];
    std::vector<int> deg = degree;
    double total = 0.0;
    std::vector<bool> used(n, false);
    for (int v : seq) {
      int leaf = -1;
      for (int u = 0; u < n; ++u)
        if (deg[u] == 1 && !used[u]) { leaf = u; break; }
      used[leaf] = true;
      --deg[leaf];
      --deg[v];
      total += weight(leaf, v);
    }
    int u1 = -1, u2 = -1;
    for (int u = 0; u < n; ++u)
      if (!used[u] && deg[u] == 1) (u1 < 0 ? u1 : u2) = u;
    total += weight(u1, u2);
    best = std::min(best, total);
    int i = len - 1;
    while (i >= 0 && seq[i] == n - 1) { seq[i] = 0; --i; }
    if (i < 0) break;
    ++seq[i];
  }
  return best;
}

inline double graph_weight(const SimilarityGraph& graph, const Matrix& dist) {
  double total = 0.0;
  for (const Edge& e : graph.edges) total += dist(e.a, e.b);
  return total;
}

// Scratch directory for file round-trip tests; unique per process.
class TempDir {
public:
  TempDir() {
    auto base = std::filesystem::temp_directory_path();
    path_ = base / ("gts_test_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter_++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace gts::test
