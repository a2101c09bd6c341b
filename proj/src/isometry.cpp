#include "renorm/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "renorm/rng.hpp"
#include "renorm/threads.hpp"

namespace renorm {

IsometryCheck verify_isometry(const Mat& T, const Norm& norm, int samples,
                              double tol, uint64_t seed) {
  if (T.n != norm.dim()) throw argument_error("verify_isometry: dim mismatch");
  if (rcond(T) < 1e-10)
    throw argument_error("verify_isometry: T is not invertible");

  IsometryCheck res;
  res.ok = true;
  Rng rng(seed);
  auto probe = [&](const Vec& x) {
    double ex = norm(x);
    if (ex < 1e-12) return;
    double v = std::fabs(norm(matvec(T, x)) - ex) / ex;
    if (v > res.worst) {
      res.worst = v;
      res.witness = x;
    }
  };
  for (int s = 0; s < samples; ++s) {
    Vec x = rng.gaussian_vec(norm.dim());
    double ex = norm(x);
    if (ex < 1e-12) continue;
    kern::active_ops().scale(1.0 / ex, x.data(), x.size());
    probe(x);
  }
  for (const Vec& p : norm.structured_points()) probe(p);
  res.ok = res.worst <= tol;
  return res;
}

namespace {

// greedy independent subset of the invariant points, spread across classes
std::vector<int> spanning_subset(const std::vector<Vec>& pts,
                                 const std::vector<int>& cls, int n,
                                 double threshold) {
  std::vector<int> chosen;
  std::vector<Vec> basis;
  // pass 1: prefer one representative per class
  std::vector<char> class_used(1 + *std::max_element(cls.begin(), cls.end()), 0);
  for (int pass = 0; pass < 2 && static_cast<int>(chosen.size()) < n; ++pass) {
    for (size_t i = 0; i < pts.size() && static_cast<int>(chosen.size()) < n;
         ++i) {
      if (pass == 0 && class_used[cls[i]]) continue;
      Vec r = pts[i];
      for (const Vec& b : basis)
        kern::active_ops().axpy(-dot(b, r), b.data(), r.data(), r.size());
      double len = norm2(r);
      if (len > threshold) {
        kern::active_ops().scale(1.0 / len, r.data(), r.size());
        basis.push_back(std::move(r));
        chosen.push_back(static_cast<int>(i));
        class_used[cls[i]] = 1;
      }
    }
  }
  return chosen;
}

}  // namespace

std::vector<Mat> enumerate_tip_candidates(const PimpleSpec& spec,
                                          const SolverConfig& cfg,
                                          const Tolerances& tols) {
  int n = spec.base.dim();
  Norm nrm = pimple_norm(spec);
  int K = static_cast<int>(spec.points.size());

  // tips with their point index; the (lambda_k, width_k) class is k itself
  // once widths are verified distinct, but collapse classes that collide
  std::vector<Vec> pts;
  std::vector<int> pt_class;
  std::vector<double> width_of_k(K, 0.0);
  for (int k = 0; k < K; ++k) {
    Vec tip = (1.0 / spec.lambdas[k]) * spec.points[k];
    width_of_k[k] = measure_facet(nrm, spec.base, tip, 6, cfg.seed ^ k).width;
  }
  std::vector<int> class_of_k(K);
  {
    int next = 0;
    for (int k = 0; k < K; ++k) {
      int cls = -1;
      for (int j = 0; j < k; ++j) {
        if (std::fabs(spec.lambdas[j] - spec.lambdas[k]) < 1e-9 &&
            std::fabs(width_of_k[j] - width_of_k[k]) < 1e-6) {
          cls = class_of_k[j];
          break;
        }
      }
      class_of_k[k] = cls >= 0 ? cls : next++;
    }
  }
  for (int k = 0; k < K; ++k) {
    double inv = 1.0 / spec.lambdas[k];
    for (const Mat& g : spec.group->elements) {
      Vec t = inv * matvec(g, spec.points[k]);
      bool dup = false;
      for (size_t i = 0; i < pts.size(); ++i)
        if (norm2(pts[i] - t) < 1e-9) {
          dup = true;
          break;
        }
      if (!dup) {
        pts.push_back(std::move(t));
        pt_class.push_back(class_of_k[k]);
      }
    }
  }

  int tip_rank = rank_of(pts, tols.span_rank);
  if (tip_rank < n) {
    if (n != 2)
      throw argument_error("enumerate_tip_candidates: tips do not span");
    // augment with facet endpoints (finite and metrically invariant in 2D)
    int next_class = *std::max_element(pt_class.begin(), pt_class.end()) + 1;
    size_t base_count = pts.size();
    for (size_t i = 0; i < base_count; ++i) {
      // two tangency directions per tip in the plane
      Vec tip = pts[i];
      Vec axis = tip;
      kern::active_ops().scale(1.0 / norm2(axis), axis.data(), axis.size());
      Vec perp = {-axis[1], axis[0]};
      for (int side = 0; side < 2; ++side) {
        Vec q = side == 0 ? perp : -1.0 * perp;
        // golden maximization of the midpoint norm over the angular section
        Vec x0 = tip;
        kern::active_ops().scale(1.0 / spec.base(tip), x0.data(), x0.size());
        auto sphere_point = [&](double phi) {
          Vec p = std::cos(phi) * x0 + std::sin(phi) * q;
          double b = spec.base(p);
          kern::active_ops().scale(1.0 / b, p.data(), p.size());
          return p;
        };
        auto mid_norm = [&](double phi) {
          return nrm(0.5 * (tip + sphere_point(phi)));
        };
        const int grid = 96;
        double best_phi = 0.0, best_val = -1.0;
        for (int s = 1; s < grid; ++s) {
          double phi = M_PI * s / grid;
          double v = mid_norm(phi);
          if (v > best_val) {
            best_val = v;
            best_phi = phi;
          }
        }
        double lo = std::max(1e-9, best_phi - M_PI / grid);
        double hi = std::min(M_PI - 1e-9, best_phi + M_PI / grid);
        for (int it = 0; it < 80; ++it) {
          double m1 = hi - 0.6180339887498949 * (hi - lo);
          double m2 = lo + 0.6180339887498949 * (hi - lo);
          if (mid_norm(m1) >= mid_norm(m2))
            hi = m2;
          else
            lo = m1;
        }
        Vec endpoint = sphere_point(0.5 * (lo + hi));
        bool dup = false;
        for (size_t j = 0; j < pts.size(); ++j)
          if (norm2(pts[j] - endpoint) < 1e-7) {
            dup = true;
            break;
          }
        if (!dup) {
          pts.push_back(endpoint);
          pt_class.push_back(next_class + pt_class[i]);
        }
      }
    }
    if (rank_of(pts, tols.span_rank) < n)
      throw argument_error(
          "enumerate_tip_candidates: invariant point set does not span");
  }

  std::vector<int> subset = spanning_subset(pts, pt_class, n, tols.span_rank);
  if (static_cast<int>(subset.size()) < n)
    throw argument_error("enumerate_tip_candidates: no independent subset");

  // images per subset slot: any point of the same class
  std::vector<std::vector<int>> images(n);
  for (int s = 0; s < n; ++s)
    for (size_t i = 0; i < pts.size(); ++i)
      if (pt_class[i] == pt_class[subset[s]]) images[s].push_back(static_cast<int>(i));

  long long total = 1;
  for (int s = 0; s < n; ++s) {
    total *= static_cast<long long>(images[s].size());
    if (total > 4000000)
      throw solver_error("enumerate_tip_candidates: assignment space too large");
  }

  std::vector<Vec> src;
  for (int s : subset) src.push_back(pts[s]);

  std::vector<Mat> found;
  std::vector<int> assign(n, 0);
  auto try_assignment = [&]() {
    std::vector<Vec> dst;
    for (int s = 0; s < n; ++s) dst.push_back(pts[images[s][assign[s]]]);
    Mat T;
    try {
      T = solve_linear_map(src, dst);
    } catch (const argument_error&) {
      return;  // degenerate image set
    }
    // consistency: T must permute the invariant points class-by-class
    // (the point list carries both signs, so exact matching suffices)
    for (size_t i = 0; i < pts.size(); ++i) {
      Vec img = matvec(T, pts[i]);
      bool matched = false;
      for (size_t j = 0; j < pts.size(); ++j) {
        if (pt_class[j] != pt_class[i]) continue;
        if (norm2(img - pts[j]) < tols.tip_match) {
          matched = true;
          break;
        }
      }
      if (!matched) return;
    }
    for (const Mat& m : found)
      if (frobenius_dist(m, T) < 1e-7) return;
    IsometryCheck chk = verify_isometry(T, nrm, 200, 1e-7, cfg.seed ^ 0x7e57);
    if (chk.ok) found.push_back(T);
  };

  for (;;) {
    try_assignment();
    int pos = 0;
    for (; pos < n; ++pos) {
      if (++assign[pos] < static_cast<int>(images[pos].size())) break;
      assign[pos] = 0;
    }
    if (pos == n) break;
  }

  // deterministic order
  std::sort(found.begin(), found.end(), [](const Mat& a, const Mat& b) {
    return a.a < b.a;
  });
  return found;
}

double KnownSet::distance(const Mat& T) const {
  double best = 1e300;
  for (const Mat& e : elements) best = std::min(best, frobenius_dist(T, e));
  for (const Mat& J : circles) {
    // min over theta of ||T - cos(theta) I - sin(theta) J||_F, sampled then
    // refined by golden search
    Mat I = Mat::identity(T.n);
    auto dist_at = [&](double th) {
      Mat r = mat_add(mat_scale(std::cos(th), I), mat_scale(std::sin(th), J));
      return frobenius_dist(T, r);
    };
    const int grid = 128;
    double best_th = 0.0, best_d = 1e300;
    for (int i = 0; i < grid; ++i) {
      double th = 2.0 * M_PI * i / grid;
      double d = dist_at(th);
      if (d < best_d) {
        best_d = d;
        best_th = th;
      }
    }
    double lo = best_th - 2.0 * M_PI / grid, hi = best_th + 2.0 * M_PI / grid;
    for (int it = 0; it < 60; ++it) {
      double m1 = hi - 0.6180339887498949 * (hi - lo);
      double m2 = lo + 0.6180339887498949 * (hi - lo);
      if (dist_at(m1) <= dist_at(m2))
        hi = m2;
      else
        lo = m1;
    }
    best = std::min(best, dist_at(0.5 * (lo + hi)));
  }
  return best;
}

FalsifierResult falsify_search(const Norm& norm, const KnownSet& known,
                               int starts, int steps,
                               const SolverConfig& cfg) {
  if (starts < 1) throw argument_error("falsify_search: starts >= 1");
  int n = norm.dim();
  const double exclusion = 1e-3;

  // fixed seeded sample sets; the small one drives the search, the large one
  // scores the report
  Rng sample_rng(cfg.seed ^ 0xfa15);
  std::vector<Vec> small_set, large_set;
  std::vector<double> small_val, large_val;
  for (int i = 0; i < 64; ++i) {
    Vec x = sample_rng.sphere_vec(n);
    small_val.push_back(norm(x));
    small_set.push_back(std::move(x));
  }
  for (int i = 0; i < 256; ++i) {
    Vec x = sample_rng.sphere_vec(n);
    large_val.push_back(norm(x));
    large_set.push_back(std::move(x));
  }

  auto discrepancy = [&](const Mat& T, const std::vector<Vec>& xs,
                         const std::vector<double>& vals) {
    double s = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
      double d = norm(matvec(T, xs[i])) - vals[i];
      s += d * d;
    }
    return s / xs.size();
  };
  auto objective = [&](const Mat& T) {
    double d = discrepancy(T, small_set, small_val);
    double dist = known.distance(T);
    // repulsion from the known set so minimization hunts for intruders
    double rep = 0.25 * exclusion;
    double pen = dist < 6.0 * exclusion
                     ? 1e-2 * (6.0 * exclusion - dist) / (dist + rep)
                     : 0.0;
    return d + pen;
  };

  struct StartOut {
    double residual = 1e300;
    double dist = 0.0;
    Mat map;
    bool valid = false;
  };
  std::vector<StartOut> outs(starts);

  parallel_for(starts, cfg.threads, [&](int s) {
    Rng rng(Rng(cfg.seed ^ 0xbadc0de).fork(s).next_u64());
    Mat T(n);
    if (s % 2 == 0 && !known.elements.empty()) {
      // perturb a known element
      T = known.elements[s / 2 % known.elements.size()];
      for (double& v : T.a) v += 0.25 * rng.gaussian();
    } else {
      for (double& v : T.a) v = rng.gaussian();
      // pull toward a well-conditioned start
      Mat I = Mat::identity(n);
      T = mat_add(mat_scale(0.35, T), I);
    }
    double cur = objective(T);
    double h = 0.08;
    Mat grad(n);
    for (int step = 0; step < steps; ++step) {
      // forward-difference gradient in matrix space
      double fd = 1e-5;
      for (int i = 0; i < n * n; ++i) {
        Mat Tp = T;
        Tp.a[i] += fd;
        grad.a[i] = (objective(Tp) - cur) / fd;
      }
      double gn = std::sqrt(kern::active_ops().sumsq(grad.a.data(), grad.a.size()));
      if (gn < 1e-14) break;
      bool improved = false;
      for (int bt = 0; bt < 12; ++bt) {
        Mat Tn = T;
        kern::active_ops().axpy(-h / gn, grad.a.data(), Tn.a.data(), Tn.a.size());
        double v = objective(Tn);
        if (v < cur) {
          T = Tn;
          cur = v;
          improved = true;
          h *= 1.3;
          break;
        }
        h *= 0.5;
      }
      if (!improved && h < 1e-12) break;
    }
    if (rcond(T) < 1e-8) return;
    double dist = known.distance(T);
    if (dist <= exclusion) return;
    outs[s].residual = discrepancy(T, large_set, large_val);
    outs[s].dist = dist;
    outs[s].map = T;
    outs[s].valid = true;
  });

  FalsifierResult res;
  for (const StartOut& o : outs) {
    if (!o.valid) continue;
    if (o.residual < 1e-4) ++res.intruders_found;
    if (o.residual < res.best_residual) {
      res.best_residual = o.residual;
      res.best_distance = o.dist;
      res.best_map = o.map;
    }
  }
  return res;
}

bool groups_isomorphic(const MultTable& a, const MultTable& b) {
  return tables_isomorphic(a, b);
}

}  // namespace renorm
