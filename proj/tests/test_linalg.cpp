#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "renorm/linalg.hpp"
#include "renorm/rng.hpp"

using namespace renorm;

TEST_CASE("inverse and solve round-trip") {
  Rng rng(42);
  for (int n : {1, 2, 3, 5, 8}) {
    Mat m(n);
    for (double& v : m.a) v = rng.gaussian();
    for (int i = 0; i < n; ++i) m.at(i, i) += 3.0;  // keep it well-conditioned
    Mat inv = inverse(m);
    Mat prod = matmul(m, inv);
    CHECK(frobenius_dist(prod, Mat::identity(n)) < 1e-10);
    Vec b = rng.gaussian_vec(n);
    Vec x = solve(m, b);
    Vec back = matvec(m, x);
    CHECK(dist2(back, b) < 1e-10);
  }
}

TEST_CASE("singular matrices are rejected") {
  Mat m(2);
  m.at(0, 0) = 1.0;
  m.at(0, 1) = 2.0;
  m.at(1, 0) = 2.0;
  m.at(1, 1) = 4.0;
  CHECK(rcond(m) < 1e-12);
  CHECK_THROWS_AS(inverse(m), argument_error);
}

TEST_CASE("rank and orthonormal basis") {
  Vec a = {1, 0, 0}, b = {0, 1, 0}, c = {1, 1, 0};
  CHECK(rank_of({a, b, c}) == 2);
  auto basis = orthonormal_basis({a, c});
  CHECK(basis.size() == 2);
  CHECK(std::fabs(dot(basis[0], basis[1])) < 1e-12);
  Vec p = project_onto(basis, {3, 4, 5});
  CHECK(p[0] == doctest::Approx(3));
  CHECK(p[1] == doctest::Approx(4));
  CHECK(p[2] == doctest::Approx(0));
}

TEST_CASE("solve_linear_map recovers a matrix from column data") {
  Rng rng(7);
  Mat t(3);
  for (double& v : t.a) v = rng.gaussian();
  std::vector<Vec> s, w;
  for (int i = 0; i < 3; ++i) {
    Vec e(3, 0.0);
    e[i] = 1.0;
    s.push_back(e);
    w.push_back(matvec(t, e));
  }
  Mat rec = solve_linear_map(s, w);
  CHECK(frobenius_dist(rec, t) < 1e-12);
}
