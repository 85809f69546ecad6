#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace orbitope {

/// Seed for every stochastic operation. Identical seed => bit-identical
/// sample stream on a given build.
struct RngSeed {
  std::uint64_t value = 0;
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}
}  // namespace detail

/// SplitMix64 stream with Box-Muller Gaussians. Deterministic and cheap to
/// split: every parallel task takes its own derived seed.
class Rng {
 public:
  explicit Rng(RngSeed seed) : state_(seed.value) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return detail::mix64(state_);
  }

  /// Uniform in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // Box-Muller; u1 kept away from 0.
    double u1 = next_unit();
    if (u1 < 0x1.0p-60) u1 = 0x1.0p-60;
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Uniform point on S^{n-1}: normalized vector of independent Gaussians.
  std::vector<double> unit_sphere(int n) {
    std::vector<double> x(n);
    double s = 0.0;
    do {
      s = 0.0;
      for (int i = 0; i < n; ++i) {
        x[i] = next_gaussian();
        s += x[i] * x[i];
      }
    } while (s == 0.0);
    const double inv = 1.0 / std::sqrt(s);
    for (auto& v : x) v *= inv;
    return x;
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Derives an independent child seed for parallel task `stream`.
inline RngSeed derive_seed(RngSeed root, std::uint64_t stream) {
  return RngSeed{detail::mix64(root.value ^ (0x9E3779B97F4A7C15ULL * (stream + 1)))};
}

inline Rng derive_rng(RngSeed root, std::uint64_t stream) { return Rng(derive_seed(root, stream)); }

}  // namespace orbitope
