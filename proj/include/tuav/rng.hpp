#pragma once
// Deterministic splittable RNG. Substreams are derived from (seed, index)
// alone, so results do not depend on thread count or draw interleaving as
// long as each logical unit of work (trial, law, ...) owns its substream.

#include <cmath>
#include <cstdint>

namespace tuav {

namespace detail {
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace detail

class SplitRng {
 public:
  explicit SplitRng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& w : s_) w = detail::splitmix64(sm);
    origin_ = s_[0];
  }

  // Independent child stream; index may be any 64-bit label. Derivation uses
  // the construction-time state, so it is insensitive to draws made since.
  SplitRng substream(uint64_t index) const {
    uint64_t sm = origin_ ^ (0x6a09e667f3bcc909ULL + index * 0x9e3779b97f4a7c15ULL);
    return SplitRng(detail::splitmix64(sm));
  }

  uint64_t next_u64() {  // xoshiro256**
    const uint64_t result = detail::rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = detail::rotl(s_[3], 45);
    return result;
  }

  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }  // [0,1)
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double exponential(double mean) {
    return -mean * std::log1p(-uniform());  // 1-u in (0,1], log1p exact near 0
  }

  // Gamma(shape=m, scale=1/m): unit-mean Nakagami-m power fading, integer m.
  double gamma_unit_mean(int shape) {
    double acc = 0;
    for (int k = 0; k < shape; ++k) acc -= std::log1p(-uniform());
    return acc / shape;
  }

  // Exact Poisson sampling; large means are split into chunks (additivity)
  // to keep the Knuth product above double underflow.
  uint64_t poisson(double mean) {
    uint64_t total = 0;
    while (mean > 40.0) {
      total += poisson_knuth(40.0);
      mean -= 40.0;
    }
    return total + poisson_knuth(mean);
  }

 private:
  uint64_t poisson_knuth(double mean) {
    if (mean <= 0) return 0;
    const double limit = std::exp(-mean);
    uint64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

  uint64_t s_[4];
  uint64_t origin_ = 0;  // s_[0] at construction; substream derivation base
};

}  // namespace tuav
