#pragma once

#include <cmath>
#include <cstdint>

namespace hnet {

/// Deterministic xorshift64* generator used for seeded random
/// initialization. The recurrence is
///
///   x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27;
///   output = x * 0x2545F4914F6CDD1D
///
/// and uniform doubles take the top 53 bits of the output. A zero seed is
/// remapped to 0x9E3779B97F4A7C15 so the state never sticks at zero.
/// Identical seeds produce identical streams on every platform.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed = 1)
      : state_(seed ? seed : 0x9E3779B97F4A7C15ULL) {}

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Inclusive integer range.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Standard normal via Box-Muller.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double two_pi = 6.283185307179586476925286766559;
    spare_ = mag * std::sin(two_pi * u2);
    has_spare_ = true;
    return mag * std::cos(two_pi * u2);
  }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hnet
