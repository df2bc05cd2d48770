#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace plap {

// splitmix64 mixing step. Used both as a stream-derivation hash and to
// expand user seeds into full engine state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d49b129c838d2dULL;
  return z ^ (z >> 31);
}

// Derive an independent substream seed from (seed, a, b). Trial and cell
// streams are decoupled this way so that results do not depend on scheduling.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64(s);
  s ^= a * 0x9e3779b97f4a7c15ULL;
  h ^= splitmix64(s);
  s ^= b + 0x2545f4914f6cdd1dULL;
  h ^= splitmix64(s);
  return h;
}

// mt19937_64 with hand-rolled variate transforms. The engine's output
// sequence is fixed by the standard; std::*_distribution is not, so the
// transforms live here to keep results identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0,1) with 53 bits of precision.
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0,1) strictly positive variant for logs.
  double next_double_pos() {
    double u;
    do {
      u = next_double();
    } while (u <= 0.0);
    return u;
  }

  bool next_bernoulli(double prob) { return next_double() < prob; }

  // Integer in [0, bound) by rejection; bound >= 1.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

  // Standard normal via Box-Muller; caches the second variate.
  double next_normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = next_double_pos();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 engine_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace plap
