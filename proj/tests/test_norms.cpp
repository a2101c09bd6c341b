#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "renorm/matrix_group.hpp"
#include "renorm/norm.hpp"
#include "renorm/rng.hpp"
#include "test_util.hpp"

using namespace renorm;

TEST_CASE("euclidean norm: pythagoras") {
  Norm n = Norm::euclidean(2);
  CHECK(n({3.0, 4.0}) == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("day norm: frozen values come from the tuple oracle") {
  // oracle first: enumerate all tuples, then freeze
  CHECK(testutil::day_brute_force({1.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(testutil::day_brute_force({1.0, 1.0}) ==
        doctest::Approx(std::sqrt(5.0 / 16.0)).epsilon(1e-14));

  Norm d2 = Norm::day(2);
  CHECK(d2({1.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(d2({1.0, 1.0}) == doctest::Approx(std::sqrt(5.0 / 16.0)).epsilon(1e-14));
  CHECK(d2({1.0, 1.0}) == doctest::Approx(0.559017).epsilon(1e-6));
}

TEST_CASE("day norm: fast rearrangement equals brute force, dims <= 6") {
  for (int dim = 1; dim <= 6; ++dim) {
    Norm d = Norm::day(dim);
    Rng rng(100 + dim);
    for (int s = 0; s < 1000; ++s) {
      Vec x = rng.gaussian_vec(dim);
      double fast = d(x);
      double brute = testutil::day_brute_force(x);
      CHECK(std::fabs(fast - brute) <= 1e-12);
    }
  }
}

TEST_CASE("weighted lp: direct formula") {
  Norm n = Norm::lp(4.0, 2);
  CHECK(n({1.0, 1.0}) == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-14));
  Norm n1 = Norm::lp(1.0, 3);
  CHECK(n1({1.0, -2.0, 3.0}) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK_THROWS_AS(Norm::lp(0.5, 2), argument_error);
}

TEST_CASE("axiom probes: clean kinds pass, a broken norm is reported") {
  AxiomReport euclid = check_norm_axioms(Norm::euclidean(3), 1000, 1);
  CHECK(euclid.homogeneity <= 1e-12);
  CHECK(euclid.triangle <= 1e-12);
  CHECK(euclid.symmetry == 0.0);
  CHECK(euclid.pass(1e-10));

  AxiomReport day4 = check_norm_axioms(Norm::day(4), 1000, 2);
  CHECK(day4.homogeneity <= 1e-10);
  CHECK(day4.triangle <= 1e-10);
  CHECK(day4.symmetry <= 1e-12);
  CHECK(day4.pass(1e-10));

  // negative control: eval(x) = x_1 is neither symmetric nor definite
  Norm broken = Norm::custom(2, "broken", [](const Vec& x) { return x[0]; });
  AxiomReport rep = check_norm_axioms(broken, 200, 3);
  CHECK(rep.symmetry > 0.1);
  CHECK(rep.definiteness_min <= 0.0);
  CHECK_FALSE(rep.pass(1e-10));

  CHECK_THROWS_AS(check_norm_axioms(broken, 0, 1), argument_error);
}

TEST_CASE("g-average norm is invariant under its group") {
  auto c4 = make_shared_group({rotation2(M_PI / 2.0)}, 16);
  REQUIRE(c4->order() == 4);
  Norm base = Norm::lp(4.0, 2);
  Norm avg = Norm::g_average(base, c4);
  Rng rng(11);
  for (int s = 0; s < 1000; ++s) {
    Vec x = rng.gaussian_vec(2);
    double v = avg(x);
    for (const Mat& g : c4->elements)
      CHECK(std::fabs(avg(matvec(g, x)) - v) <= 1e-12 * std::max(1.0, v));
  }
  // g-average of a euclidean norm stays gram-reducible
  Norm avg_euclid = Norm::g_average(Norm::euclidean(2), c4);
  CHECK(avg_euclid.gram_reduction() != nullptr);
  CHECK(avg_euclid({1.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("sum-squares of strictly convex pieces is strictly convex") {
  Norm n = Norm::sum_squares({Norm::euclidean(3), Norm::lp(4.0, 3)});
  Rng rng(5);
  for (int s = 0; s < 200; ++s) {
    Vec u = rng.gaussian_vec(3), v = rng.gaussian_vec(3);
    double nu = n(u), nv = n(v);
    if (nu < 1e-9 || nv < 1e-9) continue;
    kern::active_ops().scale(1.0 / nu, u.data(), u.size());
    kern::active_ops().scale(1.0 / nv, v.data(), v.size());
    if (n(u - v) < 0.1) continue;
    CHECK(n(0.5 * (u + v)) < 1.0 - 1e-12);
  }
}

TEST_CASE("block-l2 direct sums") {
  Norm n = Norm::block_l2(4, {{0, Norm::euclidean(2)}, {2, Norm::euclidean(2)}});
  CHECK(n({3.0, 0.0, 0.0, 4.0}) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK_THROWS_AS(
      Norm::block_l2(4, {{0, Norm::euclidean(2)}, {3, Norm::euclidean(1)}}),
      argument_error);
}

TEST_CASE("lur modulus: euclidean and l1 landmarks") {
  Norm e2 = Norm::euclidean(2);
  Vec x = {1.0, 0.0};
  double lam = lur_modulus(e2, x, 1.0, 256);
  CHECK(lam == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-3));
  CHECK(lur_modulus(e2, x, 2.0, 256) == doctest::Approx(0.0).epsilon(1e-3));

  Norm l1 = Norm::lp(1.0, 2);
  double flat = lur_modulus(l1, x, 1.0, 256);
  CHECK(flat == doctest::Approx(1.0).epsilon(1e-6));  // not LUR at e1

  CHECK_THROWS_AS(lur_modulus(e2, x, 1.0, 0), argument_error);
  CHECK_THROWS_AS(lur_modulus(e2, {2.0, 0.0}, 1.0, 64), argument_error);
  CHECK_THROWS_AS(lur_modulus(e2, x, 3.0, 64), argument_error);
}

TEST_CASE("gauge from membership oracles") {
  auto disk = [](const Vec& q) { return norm2(q) <= 1.0; };
  CHECK(gauge_from_membership(disk, {2.0, 0.0}, 1e-10) ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK(gauge_from_membership(disk, {1.0, 1.0}, 1e-10) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  auto square = [](const Vec& q) { return max_abs(q) <= 1.0; };
  CHECK(gauge_from_membership(square, {0.5, 1.0}, 1e-10) ==
        doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(gauge_from_membership(disk, {0.0, 0.0}, 1e-10),
                  argument_error);
  // a gauge-dependent flip-flopping oracle is caught by the bracket probes
  auto broken = [](const Vec& q) {
    double r = norm2(q);
    return r <= 1.0 || (r > 2.0 && r < 2.5);
  };
  CHECK_THROWS_AS(gauge_from_membership(broken, {2.2, 0.0}, 1e-10),
                  solver_error);
}

TEST_CASE("dual support closed forms") {
  Norm e = Norm::euclidean(2);
  CHECK(e.dual_support({3.0, 4.0}) == doctest::Approx(5.0).epsilon(1e-12));
  Norm l4 = Norm::lp(4.0, 2);
  // dual of l4 is l_{4/3}
  double q = 4.0 / 3.0;
  CHECK(l4.dual_support({1.0, 1.0}) ==
        doctest::Approx(std::pow(2.0, 1.0 / q)).epsilon(1e-12));
  Norm l1 = Norm::lp(1.0, 2);
  CHECK(l1.dual_support({0.5, -2.0}) == doctest::Approx(2.0).epsilon(1e-12));
  // numerically: dual support must dominate inner products on the ball
  Rng rng(9);
  for (int s = 0; s < 200; ++s) {
    Vec u = rng.gaussian_vec(2), x = rng.gaussian_vec(2);
    double b = l4(x);
    if (b < 1e-9) continue;
    kern::active_ops().scale(1.0 / b, x.data(), x.size());
    CHECK(dot(u, x) <= l4.dual_support(u) + 1e-10);
  }
}
