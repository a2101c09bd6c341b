#include "renorm/orbit_factory.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "renorm/rng.hpp"

namespace renorm {

namespace {

constexpr double kGolden = 0.6180339887498949;

// base(b x0 + w) = 1 for b > 0; the left end starts below 1
double unit_coefficient(const Norm& base, const Vec& x0, const Vec& w) {
  auto f = [&](double b) { return base(b * x0 + w); };
  double lo = 0.0, hi = 2.5;
  if (f(hi) <= 1.0) throw construction_error("unit_coefficient: no root");
  for (int i = 0; i < 80; ++i) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) < 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double separation_constant(const MatrixGroup& group, const Norm& base,
                           const Vec& x0, double alpha_cap) {
  if (!(alpha_cap > 0.0 && alpha_cap < 1.0))
    throw argument_error("alpha_cap must lie in (0,1)");
  double m = 1e300;
  for (int gi = 0; gi < group.order(); ++gi) {
    if (gi == group.table.identity) continue;
    double d = base(x0 - matvec(group.elements[gi], x0));
    if (d < 1e-9) {
      std::ostringstream os;
      os << "separation fails: group element " << gi << " fixes x0";
      throw construction_error(os.str());
    }
    m = std::min(m, d);
  }
  if (m == 1e300) m = 2.0;  // trivial group {Id}; callers require -Id anyway
  return std::min(alpha_cap, m);
}

double base_dist_to_span(const Norm& base, const std::vector<Vec>& basis,
                         const Vec& z) {
  if (basis.empty()) return base(z);
  if (const Mat* g = base.gram_reduction()) {
    // normal equations in the gram inner product
    int m = static_cast<int>(basis.size());
    Mat a(m);
    Vec rhs(m);
    std::vector<Vec> gb(m);
    for (int i = 0; i < m; ++i) gb[i] = matvec(*g, basis[i]);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) a.at(i, j) = dot(basis[j], gb[i]);
      rhs[i] = dot(z, gb[i]);
    }
    Vec coef = solve(a, rhs);
    Vec r = z;
    for (int i = 0; i < m; ++i)
      kern::active_ops().axpy(-coef[i], basis[i].data(), r.data(), r.size());
    return base(r);
  }
  // coordinate descent with golden line searches
  int m = static_cast<int>(basis.size());
  Vec coef(m, 0.0);
  auto value = [&]() {
    Vec r = z;
    for (int i = 0; i < m; ++i)
      kern::active_ops().axpy(-coef[i], basis[i].data(), r.data(), r.size());
    return base(r);
  };
  double cur = value();
  for (int sweep = 0; sweep < 40; ++sweep) {
    double before = cur;
    for (int i = 0; i < m; ++i) {
      double keep = coef[i];
      auto f = [&](double t) {
        coef[i] = t;
        return value();
      };
      double radius = std::max(1.0, std::fabs(keep) + cur);
      double a = keep - radius, b = keep + radius;
      double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
      double f1 = f(x1), f2 = f(x2);
      for (int it = 0; it < 60; ++it) {
        if (f1 <= f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - kGolden * (b - a);
          f1 = f(x1);
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + kGolden * (b - a);
          f2 = f(x2);
        }
      }
      double best_t = f1 <= f2 ? x1 : x2;
      double best_v = std::min(f1, f2);
      if (best_v < cur) {
        coef[i] = best_t;
        cur = best_v;
      } else {
        coef[i] = keep;
      }
    }
    if (before - cur < 1e-14) break;
  }
  return cur;
}

namespace {

// residual of the base-distance minimization, for building type-1 offsets
Vec base_residual_to_span(const Norm& base, const std::vector<Vec>& basis,
                          const Vec& z) {
  if (basis.empty()) return z;
  if (const Mat* g = base.gram_reduction()) {
    int m = static_cast<int>(basis.size());
    Mat a(m);
    Vec rhs(m);
    std::vector<Vec> gb(m);
    for (int i = 0; i < m; ++i) gb[i] = matvec(*g, basis[i]);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) a.at(i, j) = dot(basis[j], gb[i]);
      rhs[i] = dot(z, gb[i]);
    }
    Vec coef = solve(a, rhs);
    Vec r = z;
    for (int i = 0; i < m; ++i)
      kern::active_ops().axpy(-coef[i], basis[i].data(), r.data(), r.size());
    return r;
  }
  // reuse the coordinate-descent machinery by probing each coefficient
  int m = static_cast<int>(basis.size());
  Vec coef(m, 0.0);
  auto residual = [&]() {
    Vec r = z;
    for (int i = 0; i < m; ++i)
      kern::active_ops().axpy(-coef[i], basis[i].data(), r.data(), r.size());
    return r;
  };
  double cur = base(residual());
  for (int sweep = 0; sweep < 40; ++sweep) {
    double before = cur;
    for (int i = 0; i < m; ++i) {
      double keep = coef[i];
      auto f = [&](double t) {
        coef[i] = t;
        return base(residual());
      };
      double radius = std::max(1.0, std::fabs(keep) + cur);
      double a = keep - radius, b = keep + radius;
      double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
      double f1 = f(x1), f2 = f(x2);
      for (int it = 0; it < 60; ++it) {
        if (f1 <= f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - kGolden * (b - a);
          f1 = f(x1);
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + kGolden * (b - a);
          f2 = f(x2);
        }
      }
      double best_t = f1 <= f2 ? x1 : x2;
      double best_v = std::min(f1, f2);
      if (best_v < cur) {
        coef[i] = best_t;
        cur = best_v;
      } else {
        coef[i] = keep;
      }
    }
    if (before - cur < 1e-14) break;
  }
  return residual();
}

double min_dist_over_interval(const Norm& base,
                              const std::function<Vec(double)>& point,
                              const Vec& target, double lo, double hi) {
  const int grid = 33;
  double best = 1e300, best_b = lo;
  for (int i = 0; i <= grid; ++i) {
    double b = lo + (hi - lo) * i / grid;
    double v = base(point(b) - target);
    if (v < best) {
      best = v;
      best_b = b;
    }
  }
  double a = std::max(lo, best_b - (hi - lo) / grid);
  double bnd = std::min(hi, best_b + (hi - lo) / grid);
  auto f = [&](double b) { return base(point(b) - target); };
  double x1 = bnd - kGolden * (bnd - a), x2 = a + kGolden * (bnd - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 50; ++it) {
    if (f1 <= f2) {
      bnd = x2;
      x2 = x1;
      f2 = f1;
      x1 = bnd - kGolden * (bnd - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (bnd - a);
      f2 = f(x2);
    }
  }
  return std::min(best, std::min(f1, f2));
}

}  // namespace

std::vector<TrisectChoice> trisect_select(const MatrixGroup& group,
                                          const Norm& base, const Vec& x0,
                                          const std::vector<int>& g_sequence,
                                          double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw argument_error("trisect_select: alpha must lie in (0,1)");
  int M = static_cast<int>(g_sequence.size());
  std::vector<TrisectChoice> out(M);
  if (M == 0) return out;

  for (int gi : g_sequence) {
    if (gi == group.table.identity || gi == group.minus_id_index)
      throw argument_error("trisect_select: g must lie outside {+-Id}");
  }

  std::vector<Vec> gx(M);
  for (int m = 0; m < M; ++m) gx[m] = matvec(group.elements[g_sequence[m]], x0);

  auto point_on_curve = [&](int m, double beta) {
    Vec w = beta * gx[m];
    double b = unit_coefficient(base, x0, w);
    return b * x0 + w;
  };

  std::vector<double> lo(M, alpha / 10.0), hi(M, alpha / 5.0);
  Vec prev = x0;  // x'_0
  for (int n = 1; n <= M; ++n) {
    double threshold = alpha * alpha / (40.0 * std::pow(3.0, n));
    for (int m = n - 1; m < M; ++m) {
      double len = (hi[m] - lo[m]) / 3.0;
      auto curve = [&](double b) { return point_on_curve(m, b); };
      double d_first =
          min_dist_over_interval(base, curve, prev, lo[m], lo[m] + len);
      if (d_first >= threshold) {
        hi[m] = lo[m] + len;
        continue;
      }
      double d_last =
          min_dist_over_interval(base, curve, prev, hi[m] - len, hi[m]);
      if (d_last >= threshold) {
        lo[m] = hi[m] - len;
        continue;
      }
      std::ostringstream os;
      os << "trisect_select: both thirds fail the distance test at step " << n
         << ", curve " << m << " (hypothesis violation)";
      throw construction_error(os.str());
    }
    double beta = 0.5 * (lo[n - 1] + hi[n - 1]);
    out[n - 1] = {beta, lo[n - 1], hi[n - 1]};
    prev = point_on_curve(n - 1, beta);
  }
  return out;
}

PointFamily build_point_family(const MatrixGroup& group, const Norm& base,
                               const Vec& x0_in, const SolverConfig& cfg,
                               const Tolerances& tols) {
  if (!group.has_minus_id)
    throw construction_error("build_point_family: group must contain -Id");
  Vec x0 = x0_in;
  double b0 = base(x0);
  if (b0 < 1e-12) throw argument_error("x0 must be nonzero");
  kern::active_ops().scale(1.0 / b0, x0.data(), x0.size());
  int n = base.dim();

  PointFamily fam;
  fam.alpha = separation_constant(group, base, x0, cfg.alpha_cap);
  double alpha = fam.alpha;

  // probe LUR of the base at x0 (precondition of the construction)
  if (lur_modulus(base, x0, 0.5, cfg.lur_grid, cfg.seed ^ 0x0f) >= 1.0 - 1e-9)
    throw construction_error("build_point_family: base norm not LUR at x0");

  FamilyPoint p0;
  p0.x = x0;
  p0.a = 1.0;
  p0.type = 0;
  fam.points.push_back(p0);

  // type-2 points for every g outside {+-Id}, in table order
  std::vector<int> g_seq;
  for (int gi = 0; gi < group.order(); ++gi)
    if (gi != group.table.identity && gi != group.minus_id_index)
      g_seq.push_back(gi);
  std::vector<TrisectChoice> betas =
      trisect_select(group, base, x0, g_seq, alpha);
  for (size_t m = 0; m < g_seq.size(); ++m) {
    Vec w = betas[m].beta * matvec(group.elements[g_seq[m]], x0);
    double a = unit_coefficient(base, x0, w);
    FamilyPoint p;
    p.x = a * x0 + w;
    p.a = a;
    p.type = 2;
    p.source_g = g_seq[m];
    p.beta = betas[m].beta;
    p.interval_lo = betas[m].lo;
    p.interval_hi = betas[m].hi;
    fam.points.push_back(std::move(p));
  }

  // accumulated span V_k (euclidean basis is enough for rank bookkeeping;
  // distances below are measured in the base norm)
  std::vector<Vec> v_span;
  {
    std::vector<Vec> orbit;
    for (const Mat& g : group.elements) orbit.push_back(matvec(g, x0));
    v_span = orthonormal_basis(orbit);
  }

  // type-1 points: greedy standard basis vectors not yet in the span
  while (static_cast<int>(v_span.size()) < n) {
    int pick = -1;
    for (int i = 0; i < n; ++i) {
      Vec e(n, 0.0);
      e[i] = 1.0;
      Vec r = e - project_onto(v_span, e);
      if (norm2(r) > tols.span_rank) {
        pick = i;
        break;
      }
    }
    if (pick < 0)
      throw construction_error(
          "build_point_family: span not achieved but no basis vector extends it");
    Vec y(n, 0.0);
    y[pick] = 1.0;
    Vec w = base_residual_to_span(base, v_span, y);
    double wn = base(w);
    if (wn < 1e-12)
      throw construction_error("build_point_family: degenerate type-1 offset");
    Vec z = (alpha / 10.0 / wn) * w;
    double a = unit_coefficient(base, x0, z);
    FamilyPoint p;
    p.x = a * x0 + z;
    p.a = a;
    p.type = 1;
    p.source_basis = pick;
    fam.points.push_back(std::move(p));

    // V grows by the orbit of the chosen basis vector
    for (const Mat& g : group.elements) {
      Vec gy = matvec(g, y);
      Vec r = gy - project_onto(v_span, gy);
      double len = norm2(r);
      if (len > 1e-12) {
        kern::active_ops().scale(1.0 / len, r.data(), r.size());
        v_span.push_back(std::move(r));
      }
    }
  }

  // invariants: unit points, a_n range, spanning, separation floor
  for (size_t k = 0; k < fam.points.size(); ++k) {
    const FamilyPoint& p = fam.points[k];
    if (std::fabs(base(p.x) - 1.0) > 1e-10)
      throw construction_error("family point is not base-unit");
    if (p.a < 1.0 - alpha / 5.0 - 1e-9 || p.a > 1.0 + alpha / 5.0 + 1e-9) {
      std::ostringstream os;
      os << "a_n out of range at point " << k << " (a=" << p.a << ")";
      throw construction_error(os.str());
    }
  }
  {
    std::vector<Vec> all;
    for (const auto& p : fam.points)
      for (const Mat& g : group.elements) all.push_back(matvec(g, p.x));
    fam.spans = rank_of(all, tols.span_rank) == n;
    if (!fam.spans)
      throw construction_error(
          "build_point_family: orbit of the family does not span");
  }
  for (size_t k = 0; k < fam.points.size(); ++k) {
    double floor_k =
        alpha * alpha / (40.0 * std::pow(3.0, static_cast<double>(k) + 1.0));
    for (size_t j = 0; j < fam.points.size(); ++j) {
      for (int gi = 0; gi < group.order(); ++gi) {
        if (j == k && gi == group.table.identity) continue;
        double d =
            base(fam.points[j].x - matvec(group.elements[gi], fam.points[k].x));
        if (d < floor_k - 1e-9) {
          std::ostringstream os;
          os << "separation floor violated: base(x_" << j << " - g_" << gi
             << " x_" << k << ") = " << d << " < " << floor_k;
          throw construction_error(os.str());
        }
      }
    }
  }
  return fam;
}

}  // namespace renorm
