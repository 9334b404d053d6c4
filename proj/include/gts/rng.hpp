#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace gts {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stream tags keep the independent uses of a single user seed from colliding:
// permutation replicate r draws from (seed, kPermutation, r), simulation trial
// t from (seed, kTrial, t), and so on. Results are therefore reproducible for
// a given seed no matter how work is split across threads.
enum class StreamTag : std::uint64_t {
  kPermutation = 1,
  kTrial = 2,
  kInstance = 3,
};

// Counter-keyed deterministic random stream built on the splitmix64 generator.
class RandomStream {
public:
  RandomStream(std::uint64_t seed, StreamTag tag, std::uint64_t index) {
    std::uint64_t s = mix64(seed + 0x9e3779b97f4a7c15ULL);
    s = mix64(s ^ (static_cast<std::uint64_t>(tag) * 0xff51afd7ed558ccdULL + 1));
    state_ = mix64(s ^ (index * 0xc4ceb9fe1a85ec53ULL + 1));
  }

  std::uint64_t next() { return splitmix64_next(state_); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Unbiased integer in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % n;
  }

  // Standard normal via Box-Muller, one value cached.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  // Writes a uniformly random n-subset of {0,...,total-1} as a 0/1 labeling:
  // chosen indices get label 0, the rest label 1. Partial Fisher-Yates on a
  // scratch index buffer; cost O(total).
  void sample_labeling(int total, int n_zero, std::vector<std::uint8_t>& labels,
                       std::vector<int>& scratch) {
    scratch.resize(static_cast<std::size_t>(total));
    for (int i = 0; i < total; ++i) scratch[static_cast<std::size_t>(i)] = i;
    labels.assign(static_cast<std::size_t>(total), 1);
    for (int i = 0; i < n_zero; ++i) {
      const int j = i + static_cast<int>(below(static_cast<std::uint64_t>(total - i)));
      std::swap(scratch[static_cast<std::size_t>(i)], scratch[static_cast<std::size_t>(j)]);
      labels[static_cast<std::size_t>(scratch[static_cast<std::size_t>(i)])] = 0;
    }
  }

private:
  std::uint64_t state_ = 0;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace gts
