#pragma once

#include <array>
#include <complex>

#include "renorm/config.hpp"
#include "renorm/norm.hpp"

namespace renorm {

// Complex vectors are laid out as interleaved pairs: coordinate gamma lives
// at (v[2*gamma], v[2*gamma + 1]).

inline std::complex<double> cx_at(const Vec& v, int gamma) {
  return {v[2 * gamma], v[2 * gamma + 1]};
}
inline void cx_set(Vec& v, int gamma, std::complex<double> z) {
  v[2 * gamma] = z.real();
  v[2 * gamma + 1] = z.imag();
}

// Multiplication by i on every complex coordinate (the standard complex
// structure for the interleaved layout).
Mat standard_complex_structure(int complex_dim);

// Norm on C^2 = R^4: max_{0<=k<=4} |x - lambda_k y| with lambda_0 = 0.
struct C2NormSpec {
  std::array<std::complex<double>, 4> lambdas;

  static C2NormSpec defaults();  // exp(i*0.2), exp(i*0.5), exp(i*0.9), exp(i*1.3)
  // conditions: |lambda_k| = 1, Re(lambda_k) > 0, pairwise products distinct
  void validate() const;
};

Norm c2_norm_build(const C2NormSpec& spec);

// Norms on (C^Gamma, sup) distinguishing order and signs of coordinates:
// variant 2: max(sup_g |x(g)|, max_{g<b} |2x(g)+x(b)|);
// variant 1 adds |(3/2) x(0) + i x(1)|.
Norm double_norm_build(int gamma_count, int variant);

// The plain sup norm max_gamma |x(gamma)| on C^Gamma.
Norm sup_norm(int gamma_count);

// Criterion (1): searches z (single-coordinate candidates from the overlap,
// plus seeded random probes) and a sign with ||z||, ||x+z||, ||eps y+z|| <= 1
// but ||x + eps y + z|| > 1. True means the supports are NOT disjoint.
bool disjoint_support_test(const Norm& sup, const Vec& x, const Vec& y,
                           uint64_t seed = 0xd15);

// Extension gauge on Y = X + C whose unit ball is the balanced convex hull
// of A = {max(||x||, |alpha|) <= 1} and the face C = {(x + x0, 2): p(x) <= 1}.
struct ExtensionWSpec {
  Norm inner;      // complex norm on X = R^n (invariant under the J-circle)
  Norm secondary;  // normalized p: p(x) = p_scale * (raw(x) + inner(x))
  Vec x0;          // scaled so inner(x0) <= 0.1
  Mat J;           // complex structure on X
  double p_scale = 1.0;
  double x0_scale = 1.0;
};

// Normalization step: p <- scale * (p_raw + inner) with 1000*inner <= p on
// samples, x0 scaled into inner(x0) <= 0.1.
ExtensionWSpec make_extension_spec(Norm inner, Norm secondary_raw, Vec x0,
                                   Mat J, uint64_t seed = 0xe87);

Norm extension_norm_w(const ExtensionWSpec& spec, double tol = 1e-8);

const ExtensionWSpec* as_extension_w(const Norm& n);
const C2NormSpec* as_c2_norm(const Norm& n);

}  // namespace renorm
