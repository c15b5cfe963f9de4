#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "boss/normal.hpp"
#include "boss/types.hpp"

namespace boss {

// Counter-based stream derivation: every (seed, stream) pair yields an
// independent deterministic generator, so replications can be scheduled on
// any number of threads without changing a single drawn value.

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class RepRng {
 public:
  RepRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t salt = 0) {
    std::uint64_t s = seed;
    (void)splitmix64(s);
    s ^= 0x517cc1b727220a95ULL * (stream + 1);
    (void)splitmix64(s);
    s ^= 0x2545f4914f6cdd1dULL * (salt + 1);
    state_ = s;
    // warm up
    next();
    next();
  }

  std::uint64_t next() { return splitmix64(state_); }

  // Uniform on (0,1), strictly inside the open interval.
  double uniform() {
    // 53-bit mantissa, offset by half an ulp so 0 and 1 are unreachable.
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via inverse-CDF; deterministic across platforms that
  // agree on erfc, unlike std::normal_distribution.
  double normal() { return normal_quantile(uniform()); }

  Vector normal_vector(int n, double sd = 1.0) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = sd * normal();
    return v;
  }

  double chisq1() {
    const double z = normal();
    return z * z;
  }

  // Fisher-Yates shuffle of 0..n-1.
  std::vector<int> permutation(int n) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(next() % static_cast<std::uint64_t>(i + 1));
      std::swap(idx[i], idx[j]);
    }
    return idx;
  }

 private:
  std::uint64_t state_;
};

}  // namespace boss
