// Acceptance runner: eleven end-to-end checks against frozen quantitative
// bands. Each prints one [PASS]/[FAIL] line with the measured numbers; the
// exit code is the number of failures. Run a single check with
// --criterion N.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gts/distance.hpp"
#include "gts/graph.hpp"
#include "gts/inference.hpp"
#include "gts/matching.hpp"
#include "gts/nulldist.hpp"
#include "gts/rng.hpp"
#include "gts/simulate.hpp"
#include "gts/stats.hpp"

#include "helpers.hpp"

using namespace gts;
using namespace gts::test;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

double rel_gap(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

double power_of(const PowerTable& table, StatName stat, const GraphSpec& graph) {
  for (const auto& cell : table.cells) {
    if (cell.stat == stat && cell.graph && *cell.graph == graph && cell.rejections)
      return double(*cell.rejections) / table.config.trials;
  }
  return -1.0;
}

// 1. Closed-form null moments against exhaustive enumeration: 200 random
// graphs, every valid split.
Outcome criterion1() {
  std::mt19937 rng(101);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int nodes = 4 + static_cast<int>(rng() % 5);  // 4..8
    const double density = 0.25 + 0.55 * (rng() % 100) / 100.0;
    const SimilarityGraph g = random_graph(rng, nodes, density);
    const GraphStats stats = graph_stats(g);
    for (int n = 1; n < nodes; ++n) {
      const NullMoments mom = permutation_moments(stats, n, nodes - n);
      const EnumeratedMoments ref = enumerate_moments(g, n, nodes - n);
      const std::pair<double, double> checks[] = {
          {mom.mu1, ref.mu1}, {mom.mu2, ref.mu2}, {mom.mu0, ref.mu0}, {mom.s11, ref.s11},
          {mom.s22, ref.s22}, {mom.s12, ref.s12}, {mom.var0, ref.var0}};
      for (const auto& [got, want] : checks) worst = std::max(worst, rel_gap(got, want));
    }
  }
  Outcome out;
  out.pass = worst <= 1e-12;
  out.detail = "max relative error " + fmt(worst * 1e15, 3) + "e-15 over 200 graphs";
  return out;
}

// 2. Null means for a 987-edge graph on 330 nodes with n = 236.
Outcome criterion2() {
  GraphStats stats;
  stats.n_nodes = 330;
  stats.n_edges = 987;
  stats.sum_deg_sq = 2 * 987;
  stats.c_pairs = 0;
  const NullMoments mom = permutation_moments(stats, 236, 94);
  Outcome out;
  out.pass = std::abs(mom.mu0 - 403.3) <= 0.05 && std::abs(mom.mu1 - 504.2) <= 0.05 &&
             std::abs(mom.mu2 - 79.5) <= 0.05;
  out.detail = "mu0 " + fmt(mom.mu0) + ", mu1 " + fmt(mom.mu1) + ", mu2 " + fmt(mom.mu2) +
               " vs 403.3 / 504.2 / 79.5 within 0.05";
  return out;
}

// 3. Single-round tree and pairing builders against brute-force optima.
Outcome criterion3() {
  std::mt19937 rng(303);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double worst = 0.0;
  auto random_points_metric = [&](int nodes) {
    std::vector<std::vector<double>> rows(nodes, std::vector<double>(3));
    for (auto& r : rows)
      for (auto& v : r) v = unif(rng);
    return pairwise_distances(points_from(rows), Metric::kEuclidean);
  };
  for (int trial = 0; trial < 100; ++trial) {
    const int nodes = 4 + static_cast<int>(rng() % 4);  // 4..7
    const DistanceMatrix d = random_points_metric(nodes);
    const double got = graph_weight(build_kmst(d, 1), d.values);
    worst = std::max(worst, rel_gap(got, brute_force_mst(d.values)));
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int nodes = 2 * (2 + static_cast<int>(rng() % 4));  // 4..10
    const DistanceMatrix d = random_points_metric(nodes);
    const double got = graph_weight(build_kmdp(d, 1), d.values);
    std::vector<std::uint8_t> allowed(static_cast<std::size_t>(nodes) * nodes, 1);
    const auto oracle = brute_force_matching(d.values, allowed);
    worst = std::max(worst, rel_gap(got, *oracle));
  }
  Outcome out;
  out.pass = worst <= 1e-9;
  out.detail = "max relative weight gap " + fmt(worst * 1e12, 3) + "e-12 over 200 instances";
  return out;
}

// 4. Size of the closed-form quadratic test on null data.
Outcome criterion4() {
  SimScenario scenario;
  scenario.family = Family::kNormalLocation;
  scenario.d = 10;
  scenario.n = 100;
  scenario.m = 100;
  scenario.delta = 0.0;
  StudyConfig config;
  config.trials = 1000;
  config.alpha = 0.05;
  config.n_permutations = 0;
  config.seed = 404;
  config.graphs = {GraphSpec{GraphKind::kMst, 5}};
  config.statistics = {StatName::kS};
  const PowerTable table = power_study({scenario}, config);
  const double size = power_of(table, StatName::kS, config.graphs[0]);
  Outcome out;
  out.pass = size >= 0.03 && size <= 0.07;
  out.detail = "empirical size " + fmt(size, 3) + " over 1000 null trials, band [0.03, 0.07]";
  return out;
}

// 5. Approximate vs permutation p-values on null data, 100 runs, B = 10000.
Outcome criterion5() {
  AccuracyConfig config;
  config.sizes = {{150, 150}};
  config.dims = {10};
  config.ks = {1, 5};
  config.runs = 100;
  config.n_permutations = 10000;
  config.seed = 505;
  const auto rows = pvalue_accuracy_study(config);
  const DiffSummary* k1 = nullptr;
  const DiffSummary* k5 = nullptr;
  for (const auto& row : rows) {
    if (row.k == 1) k1 = &row;
    if (row.k == 5) k5 = &row;
  }
  Outcome out;
  if (!k1 || !k5) {
    out.detail = "missing summary rows";
    return out;
  }
  const double iqr1 = k1->q3 - k1->q1;
  const double iqr5 = k5->q3 - k5->q1;
  out.pass = k5->mean_abs <= 0.03 && k5->median >= -0.01 && iqr5 <= iqr1;
  out.detail = "mean |diff| " + fmt(k5->mean_abs) + " (<= 0.03), median " + fmt(k5->median) +
               " (>= -0.01), IQR dense " + fmt(iqr5) + " vs sparse " + fmt(iqr1);
  return out;
}

// 6. Scale alternative: the quadratic statistic succeeds where the plain
// between count stays blind.
Outcome criterion6() {
  SimScenario scenario;
  scenario.family = Family::kNormalScale;
  scenario.d = 20;
  scenario.n = 50;
  scenario.m = 50;
  scenario.sigma = 1.15;
  StudyConfig config;
  config.trials = 100;
  config.n_permutations = 1000;
  config.seed = 606;
  config.graphs = {GraphSpec{GraphKind::kMst, 5}};
  config.statistics = {StatName::kS, StatName::kR0};
  const PowerTable table = power_study({scenario}, config);
  const double pow_s = power_of(table, StatName::kS, config.graphs[0]);
  const double pow_r0 = power_of(table, StatName::kR0, config.graphs[0]);
  Outcome out;
  out.pass = pow_s >= 0.60 && pow_s - pow_r0 >= 0.30;
  out.detail = "power S " + fmt(pow_s, 2) + " (>= 0.60), R0 " + fmt(pow_r0, 2) +
               ", margin >= 0.30";
  return out;
}

// 7. High-dimensional location alternative: the between count leads.
Outcome criterion7() {
  SimScenario scenario;
  scenario.family = Family::kNormalLocation;
  scenario.d = 100;
  scenario.n = 50;
  scenario.m = 50;
  scenario.delta = 2.0;
  StudyConfig config;
  config.trials = 100;
  config.n_permutations = 1000;
  config.seed = 707;
  config.graphs = {GraphSpec{GraphKind::kMst, 5}};
  config.statistics = {StatName::kS, StatName::kR0};
  const PowerTable table = power_study({scenario}, config);
  const double pow_s = power_of(table, StatName::kS, config.graphs[0]);
  const double pow_r0 = power_of(table, StatName::kR0, config.graphs[0]);
  Outcome out;
  out.pass = pow_r0 >= 0.75 && pow_s >= 0.65 && pow_r0 >= pow_s;
  out.detail = "power R0 " + fmt(pow_r0, 2) + " (>= 0.75), S " + fmt(pow_s, 2) +
               " (>= 0.65), R0 >= S";
  return out;
}

// 8. Within-count deviation signs when one sample is wider.
Outcome criterion8() {
  SimScenario scenario;
  scenario.family = Family::kNormalScale;
  scenario.d = 100;
  scenario.n = 200;
  scenario.m = 200;
  scenario.delta = 1.0;
  scenario.sigma = 1.1;
  int sign_ok = 0;
  bool totals_ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    const PhenomenonResult res = edge_count_phenomenon(scenario, 808, trial);
    if (res.dev1 > 0.0 && res.dev2 < 0.0) ++sign_ok;
    totals_ok = totals_ok && res.counts.r0 + res.counts.r1 + res.counts.r2 == 399;
  }
  Outcome out;
  out.pass = sign_ok >= 19 && totals_ok;
  out.detail = "sign pattern in " + std::to_string(sign_ok) + "/20 trials (>= 19), totals " +
               (totals_ok ? "all N-1" : "BROKEN");
  return out;
}

// 9. Packing curve reference points.
Outcome criterion9() {
  const double at30 = packing_count_log10(30);
  const double at65 = packing_count_log10(65);
  const double at1 = packing_count_log10(1);
  const bool ok30 = std::abs(at30 - 10.0) <= 0.5;
  const bool ok65 = std::abs(at65 - 20.0) <= 0.5;
  const bool ok1 = std::abs(at1 - std::log10(2.0)) <= 1e-15;
  Outcome out;
  out.pass = ok30 && ok65 && ok1;
  out.detail = "d=30 -> " + fmt(at30) + " (10 +- 0.5 " + (ok30 ? "ok" : "FAIL") + "), d=65 -> " +
               fmt(at65) + " (20 +- 0.5 " + (ok65 ? "ok" : "FAIL") + "), d=1 -> log10(2) " +
               (ok1 ? "ok" : "FAIL");
  return out;
}

// 10. Statistic orderings at d = 100 on the single spanning tree.
Outcome criterion10() {
  StudyConfig config;
  config.trials = 100;
  config.n_permutations = 1000;
  config.seed = 1010;
  config.graphs = {GraphSpec{GraphKind::kMst, 1}};
  config.statistics = {StatName::kS, StatName::kT1, StatName::kT2, StatName::kT3, StatName::kT4};

  SimScenario location;
  location.family = Family::kNormalLocation;
  location.d = 100;
  location.n = 100;
  location.m = 100;
  location.delta = 2.0;
  const PowerTable loc = power_study({location}, config);
  const double loc_s = power_of(loc, StatName::kS, config.graphs[0]);
  double worst_t = -1.0;
  for (const StatName t : {StatName::kT1, StatName::kT2, StatName::kT3, StatName::kT4})
    worst_t = std::max(worst_t, power_of(loc, t, config.graphs[0]));

  SimScenario scale;
  scale.family = Family::kNormalScale;
  scale.d = 100;
  scale.n = 100;
  scale.m = 100;
  scale.sigma = 1.05;
  const PowerTable sc = power_study({scale}, config);
  const double sc_s = power_of(sc, StatName::kS, config.graphs[0]);
  const double sc_t1 = power_of(sc, StatName::kT1, config.graphs[0]);
  const double sc_t2 = power_of(sc, StatName::kT2, config.graphs[0]);

  Outcome out;
  const bool loc_ok = loc_s - worst_t >= 0.2;
  const bool sc_ok = sc_t1 - sc_s >= 0.05 && sc_t2 - sc_s >= 0.05;
  out.pass = loc_ok && sc_ok;
  out.detail = "location: S " + fmt(loc_s, 2) + " vs best T " + fmt(worst_t, 2) +
               " (margin >= 0.2); scale: T1 " + fmt(sc_t1, 2) + ", T2 " + fmt(sc_t2, 2) +
               " vs S " + fmt(sc_s, 2) + " (margins >= 0.05)";
  return out;
}

// 11. Bootstrap and permutation nulls agree on a large uniform instance.
Outcome criterion11() {
  const int total = 1000, d = 5;
  RandomStream stream(1111, StreamTag::kInstance, 0);
  Matrix data(total, d);
  for (int i = 0; i < total; ++i)
    for (int j = 0; j < d; ++j) data(i, j) = stream.uniform01();
  const PointSet pts = make_point_set(std::move(data));
  const DistanceMatrix dist = pairwise_distances(pts, Metric::kEuclidean);
  const SimilarityGraph g = build_kmst(dist, 1);
  const GraphStats stats = graph_stats(g);
  const NullMoments mom = permutation_moments(stats, 500, 500);
  const BootstrapMoments boot = bootstrap_moments(stats, 500, 500);
  const AgreementRatios agree = asymptotic_agreement(mom, boot);
  Outcome out;
  const bool ratios_ok = agree.sd_ratio1 >= 0.95 && agree.sd_ratio1 <= 1.05 &&
                         agree.sd_ratio2 >= 0.95 && agree.sd_ratio2 <= 1.05;
  const bool gaps_ok = std::abs(agree.mean_gap1) <= 0.05 && std::abs(agree.mean_gap2) <= 0.05;
  const bool corr_ok = mom.corr12 > -1.0 && mom.corr12 < 0.0;
  out.pass = ratios_ok && gaps_ok && corr_ok;
  out.detail = "sd ratios " + fmt(agree.sd_ratio1, 3) + "/" + fmt(agree.sd_ratio2, 3) +
               " in [0.95, 1.05], mean gaps " + fmt(agree.mean_gap1, 3) + "/" +
               fmt(agree.mean_gap2, 3) + " within 0.05, corr12 " + fmt(mom.corr12, 3) +
               " in (-1, 0)";
  return out;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[i + 1]);
      ++i;
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
      return 2;
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "closed-form null moments match exhaustive enumeration", criterion1},
      {2, "null means of the 987-edge reference graph", criterion2},
      {3, "tree and pairing builders are exactly optimal", criterion3},
      {4, "closed-form calibration holds its size on null data", criterion4},
      {5, "approximate p-values track permutation p-values", criterion5},
      {6, "quadratic statistic dominates the between count on scale shifts", criterion6},
      {7, "between count leads on high-dimensional location shifts", criterion7},
      {8, "within-count deviations split by sign under widening", criterion8},
      {9, "packing curve reference points", criterion9},
      {10, "statistic power orderings at d = 100", criterion10},
      {11, "bootstrap null moments track permutation moments at scale", criterion11},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    if (only != 0 && criterion.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d: %s (%s) [%.1fs]\n", outcome.pass ? "PASS" : "FAIL",
                criterion.id, criterion.name, outcome.detail.c_str(), secs);
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  if (only == 0 || failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
  }
  return failures;
}
