#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "renorm/kernels.hpp"
#include "renorm/rng.hpp"

using namespace renorm;

namespace {

// SIMD variants must agree with the scalar reference; FMA reassociation is
// allowed a tiny relative slack
void check_equivalence(const kern::Ops& a, const kern::Ops& b, int n,
                       uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n), y(n), m(static_cast<size_t>(n) * n);
  for (double& v : x) v = rng.gaussian();
  for (double& v : y) v = rng.gaussian();
  for (double& v : m) v = rng.gaussian();

  double slack = 1e-13 * (n + 1);
  CHECK(a.dot(x.data(), y.data(), n) ==
        doctest::Approx(b.dot(x.data(), y.data(), n)).epsilon(slack));
  CHECK(a.sumsq(x.data(), n) ==
        doctest::Approx(b.sumsq(x.data(), n)).epsilon(slack));
  CHECK(a.sum_pow4(x.data(), nullptr, n) ==
        doctest::Approx(b.sum_pow4(x.data(), nullptr, n)).epsilon(slack));
  std::vector<double> w(n);
  for (double& v : w) v = 0.5 + rng.uniform();
  CHECK(a.sum_pow4(x.data(), w.data(), n) ==
        doctest::Approx(b.sum_pow4(x.data(), w.data(), n)).epsilon(slack));

  std::vector<double> ya = y, yb = y;
  a.axpy(1.7, x.data(), ya.data(), n);
  b.axpy(1.7, x.data(), yb.data(), n);
  for (int i = 0; i < n; ++i)
    CHECK(ya[i] == doctest::Approx(yb[i]).epsilon(1e-14));

  std::vector<double> xa = x, xb = x;
  a.scale(-0.37, xa.data(), n);
  b.scale(-0.37, xb.data(), n);
  for (int i = 0; i < n; ++i) CHECK(xa[i] == xb[i]);

  std::vector<double> ra(n), rb(n);
  a.matvec(m.data(), x.data(), ra.data(), n, n);
  b.matvec(m.data(), x.data(), rb.data(), n, n);
  for (int i = 0; i < n; ++i)
    CHECK(ra[i] == doctest::Approx(rb[i]).epsilon(slack));

  CHECK(a.max_abs_diff(x.data(), y.data(), n) ==
        b.max_abs_diff(x.data(), y.data(), n));
}

}  // namespace

TEST_CASE("scalar kernels: reference values") {
  const auto& ops = kern::scalar_ops();
  double a[4] = {1, 2, 3, 4}, b[4] = {4, 3, 2, 1};
  CHECK(ops.dot(a, b, 4) == 20.0);
  CHECK(ops.sumsq(a, 4) == 30.0);
  CHECK(ops.sum_pow4(a, nullptr, 4) == 1.0 + 16.0 + 81.0 + 256.0);
  CHECK(ops.max_abs_diff(a, b, 4) == 3.0);
  double y[4] = {0, 0, 0, 0};
  ops.axpy(2.0, a, y, 4);
  CHECK(y[2] == 6.0);
  double mat[4] = {1, 2, 3, 4};  // [[1,2],[3,4]]
  double x2[2] = {1, 1}, r[2];
  ops.matvec(mat, x2, r, 2, 2);
  CHECK(r[0] == 3.0);
  CHECK(r[1] == 7.0);
}

TEST_CASE("simd kernels match scalar kernels") {
  const kern::Ops* simd = kern::simd_ops_or_null();
  if (!simd) {
    MESSAGE("no SIMD variant on this machine; scalar only");
    return;
  }
  for (int n : {1, 2, 3, 4, 5, 7, 8, 12, 16, 17, 31, 32, 64, 67})
    check_equivalence(kern::scalar_ops(), *simd, n, 0x1000 + n);
}

TEST_CASE("dispatch honors forcing") {
  kern::set_forced("scalar");
  CHECK(std::string(kern::active_ops().name) == "scalar");
  kern::set_forced(nullptr);
  const kern::Ops* simd = kern::simd_ops_or_null();
  if (simd) CHECK(std::string(kern::active_ops().name) == simd->name);
}
