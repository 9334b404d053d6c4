#include "gts/nulldist.hpp"

#include <cmath>
#include <string>

namespace gts {

namespace {

// Product of (a - t) / (N - t) for t = 0..k-1: the probability that k
// distinct uniformly chosen labels all land in a class of size a.
double falling_ratio(int a, int total, int k) {
  double r = 1.0;
  for (int t = 0; t < k; ++t) {
    r *= static_cast<double>(a - t) / static_cast<double>(total - t);
  }
  return r;
}

}  // namespace

NullMoments permutation_moments(const GraphStats& stats, int n, int m) {
  if (n < 1 || m < 1) {
    throw TooFewObservations("both samples must be non-empty (n=" + std::to_string(n) +
                             ", m=" + std::to_string(m) + ")");
  }
  const int total = n + m;
  if (total != stats.n_nodes) {
    throw LengthMismatch("sample sizes sum to " + std::to_string(total) + " but the graph has " +
                         std::to_string(stats.n_nodes) + " nodes");
  }
  if (total < 4) {
    throw TooFewObservations("covariances require at least 4 pooled observations");
  }

  const double g = static_cast<double>(stats.n_edges);
  const double c = static_cast<double>(stats.c_pairs);
  // Unordered pairs of distinct edges sharing no endpoint, times 2 (ordered).
  const double disjoint2 = g * (g - 1.0) - 2.0 * c;

  NullMoments out;
  out.mu1 = g * falling_ratio(n, total, 2);
  out.mu2 = g * falling_ratio(m, total, 2);
  out.mu0 = g - out.mu1 - out.mu2;

  out.s11 = out.mu1 * (1.0 - out.mu1) + 2.0 * c * falling_ratio(n, total, 3) +
            disjoint2 * falling_ratio(n, total, 4);
  out.s22 = out.mu2 * (1.0 - out.mu2) + 2.0 * c * falling_ratio(m, total, 3) +
            disjoint2 * falling_ratio(m, total, 4);
  out.s12 = disjoint2 * falling_ratio(n, total, 2) *
                (static_cast<double>(m) / (total - 2)) *
                (static_cast<double>(m - 1) / (total - 3)) -
            out.mu1 * out.mu2;
  out.var0 = out.s11 + out.s22 + 2.0 * out.s12;
  out.corr12 = out.s12 / std::sqrt(out.s11 * out.s22);
  return out;
}

BootstrapMoments bootstrap_moments(const GraphStats& stats, int n, int m) {
  if (n < 1 || m < 1) {
    throw TooFewObservations("both samples must be non-empty (n=" + std::to_string(n) +
                             ", m=" + std::to_string(m) + ")");
  }
  const int total = n + m;
  if (total != stats.n_nodes) {
    throw LengthMismatch("sample sizes sum to " + std::to_string(total) + " but the graph has " +
                         std::to_string(stats.n_nodes) + " nodes");
  }
  const double g = static_cast<double>(stats.n_edges);
  const double sds = static_cast<double>(stats.sum_deg_sq);
  const double r = static_cast<double>(n) / static_cast<double>(total);
  const double q = 1.0 - r;

  BootstrapMoments out;
  out.r = r;
  out.mu1 = g * r * r;
  out.mu2 = g * q * q;
  out.var1 = g * r * r * q * q + sds * r * r * r * q;
  out.var2 = g * q * q * r * r + sds * q * q * q * r;
  return out;
}

AgreementRatios asymptotic_agreement(const NullMoments& perm, const BootstrapMoments& boot) {
  if (!(perm.s11 > 0.0) || !(perm.s22 > 0.0) || !(boot.var1 > 0.0) || !(boot.var2 > 0.0)) {
    throw DegenerateGraph("within-sample edge counts have zero variance");
  }
  AgreementRatios out;
  out.sd_ratio1 = std::sqrt(boot.var1) / std::sqrt(perm.s11);
  out.sd_ratio2 = std::sqrt(boot.var2) / std::sqrt(perm.s22);
  out.mean_gap1 = (boot.mu1 - perm.mu1) / std::sqrt(boot.var1);
  out.mean_gap2 = (boot.mu2 - perm.mu2) / std::sqrt(boot.var2);
  return out;
}

}  // namespace gts
