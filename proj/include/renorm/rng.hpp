#pragma once

#include <cmath>
#include <cstdint>

#include "renorm/linalg.hpp"

namespace renorm {

// SplitMix64. Implementation-defined std distributions would break the
// byte-identical report contract, so sampling is spelled out here.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian() {
    // Box-Muller; discards the second value for simplicity
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  Vec gaussian_vec(int dim) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = gaussian();
    return v;
  }

  // uniform on the euclidean unit sphere
  Vec sphere_vec(int dim) {
    for (;;) {
      Vec v = gaussian_vec(dim);
      double len = norm2(v);
      if (len > 1e-12) {
        kern::active_ops().scale(1.0 / len, v.data(), v.size());
        return v;
      }
    }
  }

  // derive an independent stream (for deterministic parallel work)
  Rng fork(uint64_t salt) const {
    Rng r(state_ ^ (0x9e3779b97f4a7c15ULL * (salt + 0x632be59bd9b4e019ULL)));
    r.next_u64();
    return r;
  }

 private:
  uint64_t state_;
};

}  // namespace renorm
