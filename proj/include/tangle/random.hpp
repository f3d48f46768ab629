#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace tangle::detail {

// Box-Muller over raw mt19937_64 draws. std::normal_distribution's algorithm
// is implementation-defined, so seeded streams would not be stable across
// standard libraries; this one is.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

 private:
  // uniform in (0, 1]
  double uniform_open() {
    return double((rng_() >> 11) + 1) * 0x1.0p-53;
  }

  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace tangle::detail
