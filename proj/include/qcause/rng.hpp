#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace qcause {

/// xoshiro256** (Blackman & Vigna) seeded through splitmix64.
///
/// The algorithm and the derived variates are spelled out here so seeded
/// golden files can be regenerated in any language:
///   * state words s[0..3] are four successive splitmix64 outputs of `seed`;
///   * uniform() = (next() >> 11) * 2^-53, in [0, 1);
///   * normal() is Box-Muller with u1 = 1 - uniform(), u2 = uniform(),
///     returning sqrt(-2 ln u1) cos(2 pi u2) (no cached second value).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Standard exponential variate, -ln(1 - u).
  double exponential() { return -std::log(1.0 - uniform()); }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t s_[4];
};

}  // namespace qcause
