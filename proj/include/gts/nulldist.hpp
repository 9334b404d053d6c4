#pragma once

#include "gts/graph.hpp"

namespace gts {

// Exact moments of the within-sample edge counts (R1, R2) and the between-
// sample count R0 under the permutation null: all assignments of n labels
// "X" and m labels "Y" to the pooled observations equally likely. Closed
// forms in the graph's edge count and degree profile; evaluated as chained
// ratios so they stay finite for graphs with millions of nodes.
struct NullMoments {
  double mu0 = 0.0;    // mean of R0
  double mu1 = 0.0;    // mean of R1
  double mu2 = 0.0;    // mean of R2
  double s11 = 0.0;    // var R1
  double s22 = 0.0;    // var R2
  double s12 = 0.0;    // cov(R1, R2)
  double var0 = 0.0;   // var R0 = s11 + s22 + 2 s12
  double corr12 = 0.0; // correlation of (R1, R2); NaN for edgeless graphs
};

NullMoments permutation_moments(const GraphStats& stats, int n, int m);

// Means and variances of (R1, R2) under the bootstrap null, where each
// observation is assigned to X independently with probability n/N. The
// counts are independent under this null, so no covariance term appears.
struct BootstrapMoments {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double var1 = 0.0;
  double var2 = 0.0;
  double r = 0.0;  // n / N
};

BootstrapMoments bootstrap_moments(const GraphStats& stats, int n, int m);

// How far the two nulls are apart for a given graph: standard deviation
// ratios (bootstrap over permutation) and mean gaps in bootstrap standard
// deviation units. Ratios near 1 and gaps near 0 mean the cheap bootstrap
// moments are a faithful stand-in. Throws DegenerateGraph when either null
// has a zero variance.
struct AgreementRatios {
  double sd_ratio1 = 0.0;
  double sd_ratio2 = 0.0;
  double mean_gap1 = 0.0;
  double mean_gap2 = 0.0;
};

AgreementRatios asymptotic_agreement(const NullMoments& perm, const BootstrapMoments& boot);

}  // namespace gts
