#include "renorm/pimple.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "renorm/rng.hpp"

namespace renorm {

namespace {

constexpr double kGolden = 0.6180339887498949;

// golden-section minimization of a convex function on [lo, hi]
template <typename F>
double golden_min(F&& f, double lo, double hi, int iters) {
  double a = lo, b = hi;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
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
  return std::min(f1, f2);
}

template <typename F>
double golden_max_arg(F&& f, double lo, double hi, int iters) {
  auto neg = [&](double t) { return -f(t); };
  double a = lo, b = hi;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = neg(x1), f2 = neg(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = neg(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = neg(x2);
    }
  }
  return 0.5 * (a + b);
}

inline double quarter_root(double v) { return std::sqrt(std::sqrt(v)); }

// minimize p(t)^{1/4} + lambda*|t| for a nonnegative quartic p; the
// coefficients are canonicalized so the minimizing branch is t >= 0, and the
// stationary point is found by bisection on the (sign-equivalent) derivative
// p'(t) + 4*lambda*p(t)^{3/4}
double quartic_line_min(double c0, double c1, double c2, double c3, double c4,
                        double lambda) {
  if (c1 > 0.0) {
    c1 = -c1;
    c3 = -c3;
  }
  double p0 = std::max(c0, 0.0);
  double q0 = quarter_root(p0);
  double p0_34 = q0 > 0.0 ? p0 / q0 : 0.0;
  if (c1 >= -4.0 * lambda * p0_34) return q0;  // 0 lies in the subdifferential
  auto p = [&](double t) {
    return (((c4 * t + c3) * t + c2) * t + c1) * t + c0;
  };
  auto dp = [&](double t) {
    return ((4.0 * c4 * t + 3.0 * c3) * t + 2.0 * c2) * t + c1;
  };
  auto h = [&](double t) {
    double pv = std::max(p(t), 0.0);
    double q = quarter_root(pv);
    double p34 = q > 0.0 ? pv / q : 0.0;
    return dp(t) + 4.0 * lambda * p34;
  };
  double T = 1.1 * q0 / std::max(lambda, 1e-9) + 1e-12;
  int guard = 0;
  while (h(T) <= 0.0 && guard++ < 60) T *= 2.0;
  double lo = 0.0, hi = T;
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    if (h(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double t = 0.5 * (lo + hi);
  return quarter_root(std::max(p(t), 0.0)) + lambda * t;
}

// closed form for euclidean-reducible bases:
//   min_t sqrt(c - 2bt + a t^2) + lambda |t|
double line_value_gram(double a, double b, double c, double lambda) {
  c = std::max(c, 0.0);
  double sa = std::sqrt(a);
  double bb = b / sa, ll = lambda / sa;  // normalized so the quadratic is monic
  double cc = c;
  if (ll >= 1.0) return std::sqrt(cc);  // cone slope does not undercut the ball
  double ab = std::fabs(bb);
  if (ab <= ll * std::sqrt(cc)) return std::sqrt(cc);
  double disc = std::max(cc - bb * bb, 0.0);
  double u = ab - ll * std::sqrt(disc / (1.0 - ll * ll));
  if (u <= 0.0) return std::sqrt(cc);
  double q = cc - 2.0 * ab * u + u * u;
  return std::sqrt(std::max(q, 0.0)) + ll * u;
}

struct LineData {
  Vec dir;    // g x_k representative (sign-folded)
  int k = 0;  // point index
  // gram fast path
  Vec gram_dir;     // G d
  double a = 1.0;   // d^T G d
  // quartic fast path (weighted lp, p = 4)
  bool quartic = false;
};

}  // namespace

class PimpleNormImpl final : public NormImpl {
 public:
  PimpleNormImpl(PimpleSpec spec) : spec_(std::move(spec)) {
    if (!spec_.base.valid()) throw argument_error("pimple: base norm missing");
    if (!spec_.group) throw argument_error("pimple: group missing");
    if (spec_.points.size() != spec_.lambdas.size())
      throw argument_error("pimple: lambdas/points size mismatch");
    n_ = spec_.base.dim();
    gram_ = spec_.base.gram_reduction();
    auto wlp = as_weighted_lp(spec_.base);
    bool quartic = wlp && wlp->p == 4.0;
    if (quartic) weights_ = *wlp->weights;

    // one representative per line span(g x_k), modulo sign
    for (size_t k = 0; k < spec_.points.size(); ++k) {
      for (const Mat& g : spec_.group->elements) {
        Vec d = matvec(g, spec_.points[k]);
        bool dup = false;
        for (const LineData& ld : lines_) {
          if (ld.k != static_cast<int>(k)) continue;
          Vec s = d - ld.dir, t = d + ld.dir;
          if (norm2(s) < 1e-9 || norm2(t) < 1e-9) {
            dup = true;
            break;
          }
        }
        if (dup) continue;
        LineData ld;
        ld.dir = d;
        ld.k = static_cast<int>(k);
        if (gram_) {
          ld.gram_dir = matvec(*gram_, d);
          ld.a = dot(d, ld.gram_dir);
        }
        ld.quartic = quartic;
        lines_.push_back(std::move(ld));
      }
    }
  }

  double eval(const Vec& y) const override {
    double best;
    if (gram_) {
      Vec gy = matvec(*gram_, y);
      double c = std::max(dot(y, gy), 0.0);
      best = std::sqrt(c);
      for (const LineData& ld : lines_) {
        double b = dot(y, ld.gram_dir);
        double v = line_value_gram(ld.a, b, c, spec_.lambdas[ld.k]);
        if (v < best) best = v;
      }
      return best;
    }
    best = spec_.base(y);
    for (const LineData& ld : lines_) {
      double v = line_value(ld, y, best);
      if (v < best) best = v;
    }
    return best;
  }

  int dim() const override { return n_; }
  const char* kind() const override { return "pimple-hull"; }
  std::vector<Vec> structured_points() const override {
    return tips(spec_, 1e-10);
  }

  double line_value(const LineData& ld, const Vec& y, double ub) const {
    double lambda = spec_.lambdas[ld.k];
    if (ld.quartic) {
      // base(y - t d)^4 is a quartic polynomial in t
      double c0 = 0, c1 = 0, c2 = 0, c3 = 0, c4 = 0;
      for (int i = 0; i < n_; ++i) {
        double w = weights_[i], yi = y[i], di = ld.dir[i];
        double y2 = yi * yi, d2 = di * di;
        c0 += w * y2 * y2;
        c1 += w * y2 * yi * di;
        c2 += w * y2 * d2;
        c3 += w * yi * di * d2;
        c4 += w * d2 * d2;
      }
      c1 *= -4.0;
      c2 *= 6.0;
      c3 *= -4.0;
      return quartic_line_min(c0, c1, c2, c3, c4, lambda);
    }
    auto f = [&](double t) {
      Vec r = y;
      kern::active_ops().axpy(-t, ld.dir.data(), r.data(), r.size());
      return spec_.base(r) + lambda * std::fabs(t);
    };
    double T = 2.0 * ub + 1e-12;
    return std::min(f(0.0), std::min(golden_min(f, 0.0, T, 72),
                                     golden_min(f, -T, 0.0, 72)));
  }

  const PimpleSpec& spec() const { return spec_; }
  const std::vector<LineData>& lines() const { return lines_; }

 private:
  PimpleSpec spec_;
  std::vector<LineData> lines_;
  int n_ = 0;
  const Mat* gram_ = nullptr;  // owned by the base norm impl
  Vec weights_;
};

Norm pimple_norm(PimpleSpec spec) {
  return Norm(std::make_shared<PimpleNormImpl>(std::move(spec)));
}

const PimpleSpec* as_pimple(const Norm& n) {
  if (auto* p = dynamic_cast<const PimpleNormImpl*>(n.impl().get()))
    return &p->spec();
  return nullptr;
}

double single_line_value(const Norm& base, const Vec& y, const Vec& d,
                         double lambda) {
  if (const Mat* g = base.gram_reduction()) {
    Vec gd = matvec(*g, d);
    Vec gy = matvec(*g, y);
    double a = dot(d, gd);
    double b = dot(y, gd);
    double c = std::max(dot(y, gy), 0.0);
    return line_value_gram(a, b, c, lambda);
  }
  auto f = [&](double t) {
    Vec r = y;
    kern::active_ops().axpy(-t, d.data(), r.data(), r.size());
    return base(r) + lambda * std::fabs(t);
  };
  double T = 2.0 * base(y) + 1e-12;
  return std::min(f(0.0), std::min(golden_min(f, 0.0, T, 72),
                                   golden_min(f, -T, 0.0, 72)));
}

Vec separation_constants(const Norm& base, const MatrixGroup& group,
                         const std::vector<Vec>& points) {
  int K = static_cast<int>(points.size());
  Vec c(K, 1e300);
  for (int k = 0; k < K; ++k) {
    for (int j = 0; j < K; ++j) {
      for (int gi = 0; gi < group.order(); ++gi) {
        if (j == k && gi == group.table.identity) continue;
        double v = base(points[j] - matvec(group.elements[gi], points[k]));
        if (v < c[k]) c[k] = v;
      }
    }
  }
  return c;
}

namespace {

void check_structural(const PimpleSpec& spec, const Tolerances& tols,
                      uint64_t seed) {
  if (!spec.group->has_minus_id)
    throw spec_error("pimple group must contain -Id");
  if (spec.points.empty()) throw argument_error("pimple spec has no points");
  for (size_t k = 0; k < spec.points.size(); ++k) {
    if (static_cast<int>(spec.points[k].size()) != spec.base.dim())
      throw argument_error("pimple point dimension mismatch");
    if (std::fabs(spec.base(spec.points[k]) - 1.0) > 1e-10) {
      std::ostringstream os;
      os << "pimple point " << k << " is not base-unit (base="
         << spec.base(spec.points[k]) << ")";
      throw spec_error(os.str());
    }
  }
  // base must be G-invariant: probe on seeded samples
  Rng rng(seed);
  for (int s = 0; s < 32; ++s) {
    Vec x = rng.gaussian_vec(spec.base.dim());
    double bx = spec.base(x);
    for (int gi = 0; gi < spec.group->order(); ++gi) {
      double v = spec.base(matvec(spec.group->elements[gi], x));
      if (std::fabs(v - bx) > 1e-9 * std::max(1.0, bx)) {
        std::ostringstream os;
        os << "base norm is not invariant under group element " << gi
           << " at x=" << format_vec(x) << " (" << v << " vs " << bx << ")";
        throw spec_error(os.str());
      }
    }
  }
}

}  // namespace

ValidationReport validate_spec(const PimpleSpec& spec, const Tolerances& tols,
                               const SolverConfig& cfg) {
  check_structural(spec, tols, cfg.seed ^ 0x51ec);
  int K = static_cast<int>(spec.points.size());
  if (static_cast<int>(spec.lambdas.size()) != K)
    throw argument_error("lambdas size mismatch");

  ValidationReport rep;
  rep.passed = true;
  rep.c = Vec(K, 1e300);
  rep.min_lambda = Vec(K, 0.0);
  rep.lur_at_c = Vec(K, 0.0);

  for (int k = 0; k < K; ++k) {
    for (int j = 0; j < K; ++j) {
      for (int gi = 0; gi < spec.group->order(); ++gi) {
        if (j == k && gi == spec.group->table.identity) continue;
        double v = spec.base(spec.points[j] -
                             matvec(spec.group->elements[gi], spec.points[k]));
        if (v < rep.c[k]) {
          rep.c[k] = v;
          if (v < rep.worst_pair.value || rep.worst_pair.j < 0) {
            rep.worst_pair = {j, gi, k, v};
          }
        }
      }
    }
  }

  for (int k = 0; k < K; ++k) {
    if (rep.c[k] <= 1e-9) {
      std::ostringstream os;
      os << "hypothesis (2)' fails: c_" << k << " = " << rep.c[k]
         << " with witness pair (j=" << rep.worst_pair.j
         << ", g=" << rep.worst_pair.g << ")";
      rep.failures.push_back(os.str());
      rep.passed = false;
    }
    double lam = spec.lambdas[k];
    if (!(lam > 0.5 && lam < 1.0)) {
      std::ostringstream os;
      os << "lambda_" << k << " = " << lam << " outside (1/2, 1)";
      rep.failures.push_back(os.str());
      rep.passed = false;
    }
  }

  // strict convexity probe on random unit pairs
  Rng rng(cfg.seed ^ 0xc011);
  for (int s = 0; s < 64; ++s) {
    Vec u = rng.gaussian_vec(spec.base.dim());
    Vec v = rng.gaussian_vec(spec.base.dim());
    double bu = spec.base(u), bv = spec.base(v);
    if (bu < 1e-9 || bv < 1e-9) continue;
    kern::active_ops().scale(1.0 / bu, u.data(), u.size());
    kern::active_ops().scale(1.0 / bv, v.data(), v.size());
    if (spec.base(u - v) < 0.1) continue;
    rep.strict_convexity_max =
        std::max(rep.strict_convexity_max, spec.base(0.5 * (u + v)));
  }
  if (rep.strict_convexity_max >= 1.0 - 1e-12) {
    rep.failures.push_back("hypothesis (1)' fails: base norm is not strictly convex");
    rep.passed = false;
  }

  // LUR probe at each point with eps = c_k
  for (int k = 0; k < K && rep.passed; ++k) {
    double eps = std::min(rep.c[k], 2.0);
    if (eps <= 0) continue;
    rep.lur_at_c[k] =
        lur_modulus(spec.base, spec.points[k], eps, cfg.lur_grid, cfg.seed ^ k);
    rep.min_lambda[k] = std::max(cfg.min_lambda, 1.0 / (1.0 + rep.c[k] / 6.0));
    if (rep.lur_at_c[k] >= 1.0 - 1e-9) {
      std::ostringstream os;
      os << "hypothesis (1)' fails: base norm not LUR at point " << k;
      rep.failures.push_back(os.str());
      rep.passed = false;
    }
  }
  return rep;
}

std::vector<Vec> tips(const PimpleSpec& spec, double dedup_tol) {
  std::vector<Vec> out;
  for (size_t k = 0; k < spec.points.size(); ++k) {
    double inv = 1.0 / spec.lambdas[k];
    for (const Mat& g : spec.group->elements) {
      Vec t = inv * matvec(g, spec.points[k]);
      bool dup = false;
      for (const Vec& u : out)
        if (norm2(t - u) < dedup_tol) {
          dup = true;
          break;
        }
      if (!dup) out.push_back(std::move(t));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// certified evaluation

namespace {

struct DualProblem {
  const PimpleSpec* spec;
  const std::vector<Vec>* dirs;
  const std::vector<int>* dir_k;

  double support(const Vec& u) const {
    double h = spec->base.dual_support(u);
    for (size_t i = 0; i < dirs->size(); ++i) {
      double v = std::fabs(dot(u, (*dirs)[i])) / spec->lambdas[(*dir_k)[i]];
      if (v > h) h = v;
    }
    return h;
  }

  double ratio(const Vec& u, const Vec& y) const {
    double num = dot(u, y);
    if (num <= 0) return 0.0;
    double den = support(u);
    if (den < 1e-300) return 0.0;
    return num / den;
  }
};

}  // namespace

PimpleEval eval_pimple(const PimpleSpec& spec, const Vec& y, double tol,
                       const SolverConfig& cfg) {
  if (static_cast<int>(y.size()) != spec.base.dim())
    throw argument_error("eval_pimple: dimension mismatch");
  if (!spec.base.has_exact_dual())
    throw solver_error(
        "eval_pimple: base norm has no exact dual support; certified "
        "evaluation unavailable");

  PimpleEval out;
  if (norm2(y) == 0.0) return out;

  // direction representatives (orbit modulo sign)
  std::vector<Vec> dirs;
  std::vector<int> dir_k;
  for (size_t k = 0; k < spec.points.size(); ++k) {
    for (const Mat& g : spec.group->elements) {
      Vec d = matvec(g, spec.points[k]);
      bool dup = false;
      for (size_t i = 0; i < dirs.size(); ++i) {
        if (dir_k[i] != static_cast<int>(k)) continue;
        if (norm2(d - dirs[i]) < 1e-9 || norm2(d + dirs[i]) < 1e-9) {
          dup = true;
          break;
        }
      }
      if (!dup) {
        dirs.push_back(std::move(d));
        dir_k.push_back(static_cast<int>(k));
      }
    }
  }
  int m = static_cast<int>(dirs.size());

  // warm start: best single line
  Vec t(m, 0.0);
  {
    double best = spec.base(y);
    int best_i = -1;
    double best_t = 0.0;
    for (int i = 0; i < m; ++i) {
      double lambda = spec.lambdas[dir_k[i]];
      // recover the minimizing t by a short golden search
      auto f = [&](double s) {
        Vec r = y;
        kern::active_ops().axpy(-s, dirs[i].data(), r.data(), r.size());
        return spec.base(r) + lambda * std::fabs(s);
      };
      double T = 2.0 * spec.base(y) + 1e-12;
      double lo = -T, hi = T;
      for (int it = 0; it < 90; ++it) {
        double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
        if (f(x1) <= f(x2))
          hi = x2;
        else
          lo = x1;
      }
      double s = 0.5 * (lo + hi);
      double v = std::min(f(s), f(0.0));
      if (f(0.0) <= f(s)) s = 0.0;
      if (v < best) {
        best = v;
        best_i = i;
        best_t = s;
      }
    }
    if (best_i >= 0) t[best_i] = best_t;
  }

  auto residual = [&](const Vec& tv) {
    Vec r = y;
    for (int i = 0; i < m; ++i)
      if (tv[i] != 0.0)
        kern::active_ops().axpy(-tv[i], dirs[i].data(), r.data(), r.size());
    return r;
  };
  auto objective = [&](const Vec& tv) {
    double s = spec.base(residual(tv));
    for (int i = 0; i < m; ++i)
      s += spec.lambdas[dir_k[i]] * std::fabs(tv[i]);
    return s;
  };

  // FISTA with backtracking
  Vec tk = t, tk_prev = t;
  double theta = 1.0, theta_prev = 1.0;
  double eta = 1.0;
  double f_best = objective(tk);
  Vec t_best = tk;
  int it = 0;
  for (; it < cfg.max_iterations; ++it) {
    Vec z = tk;
    if (it > 0) {
      double beta = (theta_prev - 1.0) / theta;
      for (int i = 0; i < m; ++i) z[i] = tk[i] + beta * (tk[i] - tk_prev[i]);
    }
    Vec r = residual(z);
    Vec s = spec.base.subgradient(r);
    Vec grad(m);
    for (int i = 0; i < m; ++i) grad[i] = -dot(s, dirs[i]);
    double gz = spec.base(r);

    Vec tn(m);
    for (int bt = 0; bt < 60; ++bt) {
      for (int i = 0; i < m; ++i) {
        double v = z[i] - eta * grad[i];
        double thr = eta * spec.lambdas[dir_k[i]];
        tn[i] = v > thr ? v - thr : (v < -thr ? v + thr : 0.0);
      }
      double gn = spec.base(residual(tn));
      double quad = gz;
      double sq = 0.0;
      for (int i = 0; i < m; ++i) {
        double d = tn[i] - z[i];
        quad += grad[i] * d;
        sq += d * d;
      }
      quad += sq / (2.0 * eta);
      if (gn <= quad + 1e-15) break;
      eta *= 0.5;
    }
    tk_prev = tk;
    tk = tn;
    theta_prev = theta;
    theta = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
    double f = objective(tk);
    if (f < f_best) {
      f_best = f;
      t_best = tk;
    } else if (f > f_best + 1e-14) {
      // momentum restart
      theta = theta_prev = 1.0;
    }
    double step = 0.0;
    for (int i = 0; i < m; ++i)
      step = std::max(step, std::fabs(tk[i] - tk_prev[i]));
    if (it > 4 && step < tol * 1e-3) break;
  }
  out.value = f_best;
  out.iterations = it;

  // dual certificate
  DualProblem dual{&spec, &dirs, &dir_k};
  double best_ratio = 0.0;
  auto consider = [&](const Vec& u) {
    double r = dual.ratio(u, y);
    if (r > best_ratio) best_ratio = r;
    return r;
  };
  {
    Vec r = residual(t_best);
    if (spec.base(r) > 1e-12) consider(spec.base.subgradient(r));
    consider(y);
    for (const Vec& d : dirs) {
      consider(d);
      consider(-1.0 * d);
    }
  }
  Rng rng(cfg.seed ^ 0xd7a1);
  int n = spec.base.dim();
  std::vector<Vec> seeds;
  for (int s = 0; s < cfg.dual_starts; ++s) seeds.push_back(rng.gaussian_vec(n));
  for (Vec& u : seeds) {
    double cur = consider(u);
    double sigma = 0.4;
    for (int itr = 0; itr < 80 && sigma > 1e-8; ++itr) {
      Vec prop = u + sigma * rng.gaussian_vec(n);
      double v = dual.ratio(prop, y);
      if (v > cur) {
        cur = v;
        u = prop;
        if (v > best_ratio) best_ratio = v;
        sigma *= 1.1;
      } else {
        sigma *= 0.75;
      }
    }
  }
  out.dual_lower = best_ratio;
  out.gap = out.value - out.dual_lower;
  if (out.gap > 10.0 * tol || out.gap < -10.0 * tol) {
    std::ostringstream os;
    os << "eval_pimple: certification gap not closed (primal=" << out.value
       << ", dual=" << out.dual_lower << ", gap=" << out.gap << ")";
    throw solver_error(os.str());
  }
  return out;
}

// ---------------------------------------------------------------------------
// facet measurement and conclusion checks

FacetMeasurement measure_facet(const Norm& pimple, const Norm& base,
                               const Vec& tip, int probes, uint64_t seed) {
  int n = static_cast<int>(tip.size());
  Vec axis = tip;
  double alen = norm2(axis);
  kern::active_ops().scale(1.0 / alen, axis.data(), axis.size());

  // base-unit point behind the tip
  Vec x0 = tip;
  kern::active_ops().scale(1.0 / base(tip), x0.data(), x0.size());

  std::vector<Vec> qs;
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    Vec e(n, 0.0);
    e[i] = 1.0;
    qs.push_back(e);
  }
  for (int i = 0; i < probes; ++i) qs.push_back(rng.gaussian_vec(n));

  FacetMeasurement best;
  for (Vec q : qs) {
    // orthonormalize against the tip axis
    kern::active_ops().axpy(-dot(q, axis), axis.data(), q.data(), q.size());
    double ql = norm2(q);
    if (ql < 1e-9) continue;
    kern::active_ops().scale(1.0 / ql, q.data(), q.size());

    auto sphere_point = [&](double phi) {
      Vec p = std::cos(phi) * x0 + std::sin(phi) * q;
      double b = base(p);
      kern::active_ops().scale(1.0 / b, p.data(), p.size());
      return p;
    };
    auto mid_norm = [&](double phi) {
      Vec p = sphere_point(phi);
      return pimple(0.5 * (tip + p));
    };

    // locate the tangency angle: midpoint norm peaks at 1 exactly there
    const int grid = 96;
    double best_phi = 0.0, best_val = -1.0;
    for (int i = 1; i < grid; ++i) {
      double phi = M_PI * i / grid;
      double v = mid_norm(phi);
      if (v > best_val) {
        best_val = v;
        best_phi = phi;
      }
    }
    double lo = std::max(1e-9, best_phi - M_PI / grid);
    double hi = std::min(M_PI - 1e-9, best_phi + M_PI / grid);
    double phi = golden_max_arg(mid_norm, lo, hi, 90);
    Vec endpoint = sphere_point(phi);
    double w = base(tip - endpoint);
    if (w > best.width) {
      best.width = w;
      best.endpoint = endpoint;
    }
  }
  return best;
}

ConclusionReport verify_conclusions(const PimpleSpec& spec, int samples,
                                    uint64_t seed, const SolverConfig& cfg,
                                    const Tolerances& tols) {
  ConclusionReport rep;
  Norm nrm = pimple_norm(spec);
  int n = spec.base.dim();
  int K = static_cast<int>(spec.points.size());
  double lam_min = *std::min_element(spec.lambdas.begin(), spec.lambdas.end());
  double band = 10.0 * cfg.tol;
  Rng rng(seed);

  // (3)' sandwich and (4)' deviation locality on samples
  std::vector<Vec> orbit;
  std::vector<int> orbit_k;
  for (int k = 0; k < K; ++k)
    for (const Mat& g : spec.group->elements) {
      orbit.push_back(matvec(g, spec.points[k]));
      orbit_k.push_back(k);
    }

  for (int s = 0; s < samples; ++s) {
    Vec y;
    if (s % 2 == 0) {
      y = rng.gaussian_vec(n);
    } else {
      // bias half the samples toward the cones
      size_t pick = rng.next_u64() % orbit.size();
      double r = rng.uniform(0.0, 2.0) * spec.deltas[orbit_k[pick]];
      y = orbit[pick] + r * rng.sphere_vec(n);
    }
    double b = spec.base(y);
    if (b < 1e-9) continue;
    kern::active_ops().scale(1.0 / b, y.data(), y.size());
    double v = nrm(y);
    rep.sandwich_low = std::min(rep.sandwich_low, v);
    rep.sandwich_high = std::max(rep.sandwich_high, v);
    if (v < lam_min - band || v > 1.0 + band) {
      std::ostringstream os;
      os << "sandwich (3)' fails at sample " << s << ": eval=" << v;
      rep.failures.push_back(os.str());
    }
    if (v < 1.0 - band) {
      ++rep.deviating_samples;
      double ratio_best = 1e300;
      for (size_t i = 0; i < orbit.size(); ++i) {
        double d = spec.base(orbit[i] - y);
        ratio_best = std::min(ratio_best, d / spec.deltas[orbit_k[i]]);
      }
      rep.worst_locality = std::max(rep.worst_locality, ratio_best);
      if (ratio_best >= 1.0) {
        std::ostringstream os;
        os << "deviation locality (4)' fails at sample " << s
           << ": nearest orbit point at " << ratio_best << " deltas";
        rep.failures.push_back(os.str());
      }
    }
  }

  // (6)' facet width per point (orbit tips are congruent by G-invariance)
  rep.measured_widths = Vec(K, 0.0);
  for (int k = 0; k < K; ++k) {
    Vec tip = (1.0 / spec.lambdas[k]) * spec.points[k];
    FacetMeasurement fm = measure_facet(nrm, spec.base, tip, 6, seed ^ k);
    rep.measured_widths[k] = fm.width;
    double mu = 1.0 / spec.lambdas[k] - 1.0;
    if (!(spec.widths[k] >= fm.width && fm.width >= mu - 1e-6)) {
      std::ostringstream os;
      os << "facet width (6)' fails at point " << k << ": b=" << spec.widths[k]
         << ", width=" << fm.width << ", lambda^-1 - 1=" << mu;
      rep.failures.push_back(os.str());
    }
  }

  rep.ok = rep.failures.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// schedule

PimpleSpec schedule_parameters(const Norm& base,
                               std::shared_ptr<const MatrixGroup> group,
                               const std::vector<Vec>& points,
                               const SolverConfig& cfg,
                               const Tolerances& tols) {
  if (points.empty())
    throw argument_error("schedule_parameters: empty point list");
  PimpleSpec probe;
  probe.base = base;
  probe.group = group;
  probe.points = points;
  probe.lambdas = Vec(points.size(), 0.75);
  check_structural(probe, tols, cfg.seed ^ 0x5c4e);

  int K = static_cast<int>(points.size());
  Vec c = separation_constants(base, *group, points);
  for (int k = 0; k < K; ++k)
    if (c[k] <= 1e-9) {
      std::ostringstream os;
      os << "schedule_parameters: separation c_" << k << " = " << c[k];
      throw solver_error(os.str());
    }

  Vec deltas(K), epsilons(K), lambdas(K), widths(K);
  double prev_delta = cfg.delta0;
  double prev_mu = 0.25;
  double prev_width = 1e300;

  for (int k = 0; k < K; ++k) {
    double eps = std::min(c[k], 2.0);
    double lur = lur_modulus(base, points[k], eps, cfg.lur_grid, cfg.seed ^ k);
    double head = 1.0 - lur;
    if (head <= 1e-6) {
      std::ostringstream os;
      os << "schedule_parameters: infeasible at k=" << k
         << " (LUR estimate " << lur << " leaves no room for delta)";
      throw solver_error(os.str());
    }
    deltas[k] = cfg.safety * std::min({prev_delta, c[k] / 4.0, head});
    epsilons[k] = c[k] / 2.0;
    prev_delta = deltas[k];

    // cone height mu = lambda^-1 - 1: start from the euclidean chord
    // heuristic mu <= delta^2/8 and shrink until the measured deviation
    // radius fits inside delta_k
    double mu = std::min({k == 0 ? 0.25 : 0.5 * prev_mu,
                          cfg.safety * deltas[k] * deltas[k] / 8.0, 0.25});
    double width = 0.0;
    bool ok = false;
    for (int shrink = 0; shrink < 60; ++shrink) {
      if (mu < 1e-13) break;
      PimpleSpec trial;
      trial.base = base;
      trial.group = group;
      trial.points = {points[k]};
      trial.lambdas = {1.0 / (1.0 + mu)};
      Norm trial_norm = pimple_norm(trial);
      Vec tip = (1.0 + mu) * points[k];
      FacetMeasurement fm =
          measure_facet(trial_norm, base, tip, 4, cfg.seed ^ (k * 17 + shrink));
      double dev_radius = base(points[k] - fm.endpoint);
      if (dev_radius <= 0.9 * deltas[k] && fm.width < prev_width) {
        width = fm.width;
        ok = true;
        break;
      }
      mu *= 0.35;
    }
    if (!ok) {
      std::ostringstream os;
      os << "schedule_parameters: infeasible at k=" << k
         << " (cone height underflows before locality holds)";
      throw solver_error(os.str());
    }
    lambdas[k] = 1.0 / (1.0 + mu);
    widths[k] = 1.1 * width;
    prev_mu = mu;
    prev_width = width;
    if (lambdas[k] <= std::max(0.5, cfg.min_lambda)) {
      std::ostringstream os;
      os << "schedule_parameters: lambda_" << k << " = " << lambdas[k]
         << " below the floor";
      throw solver_error(os.str());
    }
    if (k > 0 && !(lambdas[k] > lambdas[k - 1] && widths[k] < widths[k - 1])) {
      std::ostringstream os;
      os << "schedule_parameters: monotonicity broken at k=" << k;
      throw solver_error(os.str());
    }
  }

  PimpleSpec spec;
  spec.base = base;
  spec.group = std::move(group);
  spec.points = points;
  spec.lambdas = std::move(lambdas);
  spec.widths = std::move(widths);
  spec.deltas = std::move(deltas);
  spec.epsilons = std::move(epsilons);

  ConclusionReport cr = verify_conclusions(spec, 400, cfg.seed ^ 0xc0c1, cfg, tols);
  if (!cr.ok) {
    std::ostringstream os;
    os << "schedule_parameters: a-posteriori conclusion checks failed:";
    for (const auto& f : cr.failures) os << "\n  " << f;
    throw solver_error(os.str());
  }
  return spec;
}

}  // namespace renorm
