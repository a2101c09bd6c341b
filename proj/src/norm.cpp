#include "renorm/norm.hpp"

#include <algorithm>
#include <cmath>

#include "renorm/matrix_group.hpp"
#include "renorm/rng.hpp"

namespace renorm {

Vec NormImpl::subgradient(const Vec& x) const {
  // central differences; good enough for the solver fallbacks
  Vec g(x.size());
  Vec probe = x;
  for (size_t i = 0; i < x.size(); ++i) {
    double h = 1e-6 * std::max(1.0, std::fabs(x[i]));
    probe[i] = x[i] + h;
    double fp = eval(probe);
    probe[i] = x[i] - h;
    double fm = eval(probe);
    probe[i] = x[i];
    g[i] = (fp - fm) / (2 * h);
  }
  return g;
}

double NormImpl::dual_support(const Vec& u) const {
  const Mat* g = gram();
  if (!g) throw solver_error("dual support not available for this norm kind");
  Mat inv = inverse(*g);
  Vec t = matvec(inv, u);
  return std::sqrt(std::max(0.0, dot(u, t)));
}

namespace {

class EuclideanNorm final : public NormImpl {
 public:
  explicit EuclideanNorm(Mat gram) : gram_(std::move(gram)) {
    int n = gram_.n;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::fabs(gram_.at(i, j) - gram_.at(j, i)) > 1e-9)
          throw argument_error("euclidean gram matrix must be symmetric");
    inv_ = inverse(gram_);
    for (int i = 0; i < n; ++i) {
      Vec e(n, 0.0);
      e[i] = 1.0;
      if (eval(e) <= 0.0)
        throw argument_error("euclidean gram matrix must be positive definite");
    }
  }

  double eval(const Vec& x) const override {
    Vec gx = matvec(gram_, x);
    return std::sqrt(std::max(0.0, dot(x, gx)));
  }
  int dim() const override { return gram_.n; }
  const char* kind() const override { return "euclidean"; }
  const Mat* gram() const override { return &gram_; }
  Vec subgradient(const Vec& x) const override {
    double v = eval(x);
    if (v < 1e-300) return Vec(x.size(), 0.0);
    Vec g = matvec(gram_, x);
    kern::active_ops().scale(1.0 / v, g.data(), g.size());
    return g;
  }
  double dual_support(const Vec& u) const override {
    Vec t = matvec(inv_, u);
    return std::sqrt(std::max(0.0, dot(u, t)));
  }

  Mat gram_, inv_;
};

class WeightedLpNorm final : public NormImpl {
 public:
  WeightedLpNorm(double p, Vec weights) : p_(p), w_(std::move(weights)) {
    if (p_ < 1.0) throw argument_error("weighted-lp requires p >= 1");
    if (w_.empty()) throw argument_error("weighted-lp requires weights");
    for (double w : w_)
      if (w <= 0.0) throw argument_error("weighted-lp weights must be positive");
    if (p_ > 1.0) {
      double q = p_ / (p_ - 1.0);
      dual_w_.resize(w_.size());
      for (size_t i = 0; i < w_.size(); ++i)
        dual_w_[i] = std::pow(w_[i], -q / p_);
      if (p_ == 2.0) {
        gram_ = Mat(static_cast<int>(w_.size()));
        for (size_t i = 0; i < w_.size(); ++i)
          gram_->at(static_cast<int>(i), static_cast<int>(i)) = w_[i];
      }
    }
  }

  double eval(const Vec& x) const override {
    if (p_ == 1.0) {
      double s = 0.0;
      for (size_t i = 0; i < x.size(); ++i) s += w_[i] * std::fabs(x[i]);
      return s;
    }
    if (p_ == 2.0) {
      double s = 0.0;
      for (size_t i = 0; i < x.size(); ++i) s += w_[i] * x[i] * x[i];
      return std::sqrt(s);
    }
    if (p_ == 4.0) {
      double s = kern::active_ops().sum_pow4(x.data(), w_.data(), x.size());
      return std::sqrt(std::sqrt(s));
    }
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i)
      s += w_[i] * std::pow(std::fabs(x[i]), p_);
    return std::pow(s, 1.0 / p_);
  }
  int dim() const override { return static_cast<int>(w_.size()); }
  const char* kind() const override { return "weighted-lp"; }
  const Mat* gram() const override { return gram_ ? &*gram_ : nullptr; }
  bool has_exact_dual() const override { return true; }
  double dual_support(const Vec& u) const override {
    if (p_ == 1.0) {
      double m = 0.0;
      for (size_t i = 0; i < u.size(); ++i)
        m = std::max(m, std::fabs(u[i]) / w_[i]);
      return m;
    }
    double q = p_ / (p_ - 1.0);
    double s = 0.0;
    for (size_t i = 0; i < u.size(); ++i)
      s += dual_w_[i] * std::pow(std::fabs(u[i]), q);
    return std::pow(s, 1.0 / q);
  }
  Vec subgradient(const Vec& x) const override {
    Vec g(x.size(), 0.0);
    if (p_ == 1.0) {
      for (size_t i = 0; i < x.size(); ++i)
        g[i] = x[i] > 0 ? w_[i] : (x[i] < 0 ? -w_[i] : 0.0);
      return g;
    }
    double v = eval(x);
    if (v < 1e-300) return g;
    for (size_t i = 0; i < x.size(); ++i) {
      double s = x[i] >= 0 ? 1.0 : -1.0;
      g[i] = w_[i] * std::pow(std::fabs(x[i]), p_ - 1.0) * s /
             std::pow(v, p_ - 1.0);
    }
    return g;
  }

  double p_;
  Vec w_, dual_w_;
  std::optional<Mat> gram_;
};

class DayNorm final : public NormImpl {
 public:
  DayNorm(int dim, double base) : dim_(dim), base_(base) {
    if (dim < 1) throw argument_error("day norm needs dim >= 1");
    if (!(base > 0.0 && base < 1.0))
      throw argument_error("day weight base must lie in (0,1)");
  }

  double eval(const Vec& x) const override {
    // the supremum over tuples is attained at the decreasing rearrangement
    Vec y(x.size());
    for (size_t i = 0; i < x.size(); ++i) y[i] = std::fabs(x[i]);
    std::sort(y.begin(), y.end(), std::greater<double>());
    double s = 0.0, w = 1.0;
    for (double v : y) {
      w *= base_;
      s += w * v * v;
    }
    return std::sqrt(s);
  }
  int dim() const override { return dim_; }
  const char* kind() const override { return "day"; }
  Vec subgradient(const Vec& x) const override {
    std::vector<int> idx(x.size());
    for (size_t i = 0; i < x.size(); ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      return std::fabs(x[a]) > std::fabs(x[b]);
    });
    double v = eval(x);
    Vec g(x.size(), 0.0);
    if (v < 1e-300) return g;
    double w = 1.0;
    for (int r : idx) {
      w *= base_;
      g[r] = w * x[r] / v;
    }
    return g;
  }

  int dim_;
  double base_;
};

class MaxSeminormsNorm final : public NormImpl {
 public:
  MaxSeminormsNorm(int dim, std::vector<RectMat> mats)
      : dim_(dim), mats_(std::move(mats)) {
    if (mats_.empty()) throw argument_error("max-seminorms needs matrices");
    for (const auto& m : mats_)
      if (m.cols != dim) throw argument_error("seminorm matrix column mismatch");
  }

  double eval(const Vec& x) const override {
    double best = 0.0;
    Vec img;
    for (const auto& m : mats_) {
      img.assign(m.rows, 0.0);
      kern::active_ops().matvec(m.a.data(), x.data(), img.data(), m.rows,
                                m.cols);
      double v = kern::active_ops().sumsq(img.data(), img.size());
      if (v > best) best = v;
    }
    return std::sqrt(best);
  }
  int dim() const override { return dim_; }
  const char* kind() const override { return "max-seminorms"; }
  Vec subgradient(const Vec& x) const override {
    double best = -1.0;
    size_t arg = 0;
    Vec img, best_img;
    for (size_t j = 0; j < mats_.size(); ++j) {
      const auto& m = mats_[j];
      img.assign(m.rows, 0.0);
      kern::active_ops().matvec(m.a.data(), x.data(), img.data(), m.rows,
                                m.cols);
      double v = kern::active_ops().sumsq(img.data(), img.size());
      if (v > best) {
        best = v;
        arg = j;
        best_img = img;
      }
    }
    Vec g(dim_, 0.0);
    double v = std::sqrt(std::max(0.0, best));
    if (v < 1e-300) return g;
    const auto& m = mats_[arg];
    for (int r = 0; r < m.rows; ++r)
      for (int c = 0; c < m.cols; ++c) g[c] += m.at(r, c) * best_img[r] / v;
    return g;
  }

  int dim_;
  std::vector<RectMat> mats_;
};

class GAverageNorm final : public NormImpl {
 public:
  GAverageNorm(Norm base, std::shared_ptr<const MatrixGroup> group)
      : base_(std::move(base)), group_(std::move(group)) {
    if (!group_ || group_->elements.empty())
      throw argument_error("g-average needs a nonempty group");
    if (group_->dim() != base_.dim())
      throw argument_error("g-average group/base dimension mismatch");
    if (const Mat* g0 = base_.gram_reduction()) {
      Mat acc(base_.dim());
      for (const Mat& g : group_->elements) {
        Mat gt = transpose(g);
        acc = mat_add(acc, matmul(gt, matmul(*g0, g)));
      }
      gram_ = acc;
      gram_inv_ = inverse(acc);
    }
  }

  double eval(const Vec& x) const override {
    double s = 0.0;
    for (const Mat& g : group_->elements) {
      double v = base_(matvec(g, x));
      s += v * v;
    }
    return std::sqrt(s);
  }
  int dim() const override { return base_.dim(); }
  const char* kind() const override { return "g-average"; }
  const Mat* gram() const override { return gram_ ? &*gram_ : nullptr; }
  double dual_support(const Vec& u) const override {
    if (!gram_inv_) return NormImpl::dual_support(u);
    Vec t = matvec(*gram_inv_, u);
    return std::sqrt(std::max(0.0, dot(u, t)));
  }
  Vec subgradient(const Vec& x) const override {
    if (gram_) {
      double v = eval(x);
      if (v < 1e-300) return Vec(x.size(), 0.0);
      Vec g = matvec(*gram_, x);
      kern::active_ops().scale(1.0 / v, g.data(), g.size());
      return g;
    }
    double v = eval(x);
    Vec out(x.size(), 0.0);
    if (v < 1e-300) return out;
    for (const Mat& g : group_->elements) {
      Vec gx = matvec(g, x);
      double bv = base_(gx);
      if (bv < 1e-300) continue;
      Vec sg = base_.subgradient(gx);
      Vec pull(x.size(), 0.0);
      for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) pull[j] += g.at(i, j) * sg[i];
      kern::active_ops().axpy(bv / v, pull.data(), out.data(), out.size());
    }
    return out;
  }

  Norm base_;
  std::shared_ptr<const MatrixGroup> group_;
  std::optional<Mat> gram_, gram_inv_;
};

class SumSquaresNorm final : public NormImpl {
 public:
  explicit SumSquaresNorm(std::vector<Norm> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw argument_error("sum-squares needs parts");
    for (const Norm& p : parts_)
      if (p.dim() != parts_[0].dim())
        throw argument_error("sum-squares parts must share the dimension");
    bool reducible = true;
    for (const Norm& p : parts_) reducible = reducible && p.gram_reduction();
    if (reducible) {
      Mat acc(parts_[0].dim());
      for (const Norm& p : parts_) acc = mat_add(acc, *p.gram_reduction());
      gram_ = acc;
      gram_inv_ = inverse(acc);
    }
  }

  double eval(const Vec& x) const override {
    double s = 0.0;
    for (const Norm& p : parts_) {
      double v = p(x);
      s += v * v;
    }
    return std::sqrt(s);
  }
  int dim() const override { return parts_[0].dim(); }
  const char* kind() const override { return "sum-squares"; }
  const Mat* gram() const override { return gram_ ? &*gram_ : nullptr; }
  double dual_support(const Vec& u) const override {
    if (!gram_inv_) return NormImpl::dual_support(u);
    Vec t = matvec(*gram_inv_, u);
    return std::sqrt(std::max(0.0, dot(u, t)));
  }
  Vec subgradient(const Vec& x) const override {
    double v = eval(x);
    Vec g(x.size(), 0.0);
    if (v < 1e-300) return g;
    for (const Norm& p : parts_) {
      double pv = p(x);
      if (pv < 1e-300) continue;
      Vec sg = p.subgradient(x);
      kern::active_ops().axpy(pv / v, sg.data(), g.data(), g.size());
    }
    return g;
  }

  std::vector<Norm> parts_;
  std::optional<Mat> gram_, gram_inv_;
};

class BlockL2Norm final : public NormImpl {
 public:
  BlockL2Norm(int dim, std::vector<std::pair<int, Norm>> blocks)
      : dim_(dim), blocks_(std::move(blocks)) {
    int covered = 0;
    for (const auto& [off, nrm] : blocks_) {
      if (off != covered)
        throw argument_error("block-l2 blocks must tile the space in order");
      covered += nrm.dim();
    }
    if (covered != dim)
      throw argument_error("block-l2 blocks must cover the dimension");
    bool reducible = true;
    for (const auto& [off, nrm] : blocks_)
      reducible = reducible && nrm.gram_reduction();
    if (reducible) {
      Mat acc(dim);
      for (const auto& [off, nrm] : blocks_) {
        const Mat* g = nrm.gram_reduction();
        for (int i = 0; i < g->n; ++i)
          for (int j = 0; j < g->n; ++j) acc.at(off + i, off + j) = g->at(i, j);
      }
      gram_ = acc;
      gram_inv_ = inverse(acc);
    }
  }

  double eval(const Vec& x) const override {
    double s = 0.0;
    for (const auto& [off, nrm] : blocks_) {
      Vec sub(x.begin() + off, x.begin() + off + nrm.dim());
      double v = nrm(sub);
      s += v * v;
    }
    return std::sqrt(s);
  }
  int dim() const override { return dim_; }
  const char* kind() const override { return "block-l2"; }
  const Mat* gram() const override { return gram_ ? &*gram_ : nullptr; }
  double dual_support(const Vec& u) const override {
    if (gram_inv_) {
      Vec t = matvec(*gram_inv_, u);
      return std::sqrt(std::max(0.0, dot(u, t)));
    }
    // dual of an l2 direct sum is the l2 direct sum of the duals
    double s = 0.0;
    for (const auto& [off, nrm] : blocks_) {
      Vec sub(u.begin() + off, u.begin() + off + nrm.dim());
      double v = nrm.dual_support(sub);
      s += v * v;
    }
    return std::sqrt(s);
  }
  bool has_exact_dual() const override {
    for (const auto& [off, nrm] : blocks_)
      if (!nrm.has_exact_dual()) return false;
    return true;
  }
  Vec subgradient(const Vec& x) const override {
    double v = eval(x);
    Vec g(x.size(), 0.0);
    if (v < 1e-300) return g;
    for (const auto& [off, nrm] : blocks_) {
      Vec sub(x.begin() + off, x.begin() + off + nrm.dim());
      double pv = nrm(sub);
      if (pv < 1e-300) continue;
      Vec sg = nrm.subgradient(sub);
      for (int i = 0; i < nrm.dim(); ++i) g[off + i] += pv / v * sg[i];
    }
    return g;
  }

  int dim_;
  std::vector<std::pair<int, Norm>> blocks_;
  std::optional<Mat> gram_, gram_inv_;
};

class CustomNorm final : public NormImpl {
 public:
  CustomNorm(int dim, std::string label, std::function<double(const Vec&)> fn)
      : dim_(dim), label_(std::move(label)), fn_(std::move(fn)) {}
  double eval(const Vec& x) const override { return fn_(x); }
  int dim() const override { return dim_; }
  const char* kind() const override { return label_.c_str(); }

  int dim_;
  std::string label_;
  std::function<double(const Vec&)> fn_;
};

}  // namespace

Norm Norm::euclidean(int dim) { return euclidean(Mat::identity(dim)); }
Norm Norm::euclidean(Mat gram) {
  return Norm(std::make_shared<EuclideanNorm>(std::move(gram)));
}
Norm Norm::lp(double p, int dim) { return weighted_lp(p, Vec(dim, 1.0)); }
Norm Norm::weighted_lp(double p, Vec weights) {
  return Norm(std::make_shared<WeightedLpNorm>(p, std::move(weights)));
}
Norm Norm::day(int dim, double weight_base) {
  return Norm(std::make_shared<DayNorm>(dim, weight_base));
}
Norm Norm::max_seminorms(int dim, std::vector<RectMat> seminorms) {
  return Norm(std::make_shared<MaxSeminormsNorm>(dim, std::move(seminorms)));
}
Norm Norm::g_average(Norm base, std::shared_ptr<const MatrixGroup> group) {
  return Norm(std::make_shared<GAverageNorm>(std::move(base), std::move(group)));
}
Norm Norm::sum_squares(std::vector<Norm> parts) {
  return Norm(std::make_shared<SumSquaresNorm>(std::move(parts)));
}
Norm Norm::block_l2(int dim, std::vector<std::pair<int, Norm>> blocks) {
  return Norm(std::make_shared<BlockL2Norm>(dim, std::move(blocks)));
}
Norm Norm::custom(int dim, std::string label,
                  std::function<double(const Vec&)> fn) {
  return Norm(std::make_shared<CustomNorm>(dim, std::move(label), std::move(fn)));
}

std::optional<EuclideanView> as_euclidean(const Norm& n) {
  if (auto* p = dynamic_cast<const EuclideanNorm*>(n.impl().get()))
    return EuclideanView{&p->gram_};
  return std::nullopt;
}
std::optional<WeightedLpView> as_weighted_lp(const Norm& n) {
  if (auto* p = dynamic_cast<const WeightedLpNorm*>(n.impl().get()))
    return WeightedLpView{p->p_, &p->w_};
  return std::nullopt;
}
std::optional<DayView> as_day(const Norm& n) {
  if (auto* p = dynamic_cast<const DayNorm*>(n.impl().get()))
    return DayView{p->base_};
  return std::nullopt;
}
std::optional<MaxSeminormsView> as_max_seminorms(const Norm& n) {
  if (auto* p = dynamic_cast<const MaxSeminormsNorm*>(n.impl().get()))
    return MaxSeminormsView{&p->mats_};
  return std::nullopt;
}
std::optional<GAverageView> as_g_average(const Norm& n) {
  if (auto* p = dynamic_cast<const GAverageNorm*>(n.impl().get()))
    return GAverageView{p->base_, p->group_.get()};
  return std::nullopt;
}
std::optional<SumSquaresView> as_sum_squares(const Norm& n) {
  if (auto* p = dynamic_cast<const SumSquaresNorm*>(n.impl().get()))
    return SumSquaresView{&p->parts_};
  return std::nullopt;
}
std::optional<BlockL2View> as_block_l2(const Norm& n) {
  if (auto* p = dynamic_cast<const BlockL2Norm*>(n.impl().get()))
    return BlockL2View{&p->blocks_};
  return std::nullopt;
}

AxiomReport check_norm_axioms(const Norm& norm, int samples, uint64_t seed) {
  if (samples < 1) throw argument_error("check_norm_axioms: samples >= 1");
  Rng rng(seed);
  AxiomReport rep;
  int n = norm.dim();
  for (int s = 0; s < samples; ++s) {
    Vec x = rng.gaussian_vec(n);
    Vec y = rng.gaussian_vec(n);
    double t = rng.uniform(-3.0, 3.0);
    double ex = norm(x), ey = norm(y);
    double scale = std::max(ex, 1e-300);

    double hom = std::fabs(norm(t * x) - std::fabs(t) * ex) / scale;
    if (hom > rep.homogeneity) {
      rep.homogeneity = hom;
      rep.worst_homogeneity_x = x;
    }
    double tri = (norm(x + y) - ex - ey) / std::max(1.0, ex + ey);
    if (tri > rep.triangle) {
      rep.triangle = tri;
      rep.worst_triangle_x = x;
      rep.worst_triangle_y = y;
    }
    double sym = std::fabs(norm(-1.0 * x) - ex) / scale;
    rep.symmetry = std::max(rep.symmetry, sym);
  }
  rep.definiteness_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    Vec e(n, 0.0);
    e[i] = 1.0;
    rep.definiteness_min = std::min(rep.definiteness_min, norm(e));
  }
  rep.zero_at_origin = norm(Vec(n, 0.0)) <= 1e-30;
  return rep;
}

double lur_modulus(const Norm& norm, const Vec& x, double eps, int grid,
                   uint64_t seed) {
  if (grid <= 0) throw argument_error("lur_modulus: grid must be positive");
  if (!(eps > 0.0 && eps <= 2.0))
    throw argument_error("lur_modulus: eps must lie in (0,2]");
  if (std::fabs(norm(x) - 1.0) > 1e-10)
    throw argument_error("lur_modulus: x must be a unit vector of the norm");

  int n = norm.dim();
  auto to_sphere = [&](Vec d) -> std::optional<Vec> {
    double v = norm(d);
    if (v < 1e-12) return std::nullopt;
    kern::active_ops().scale(1.0 / v, d.data(), d.size());
    return d;
  };
  auto feasible = [&](const Vec& y) { return norm(x - y) >= eps - 1e-12; };
  auto mid_val = [&](const Vec& y) { return norm(0.5 * (x + y)); };

  std::vector<Vec> candidates;
  candidates.push_back(-1.0 * x);
  Rng rng(seed);
  if (n == 2) {
    for (int i = 0; i < grid; ++i) {
      double th = 2.0 * M_PI * i / grid;
      if (auto y = to_sphere({std::cos(th), std::sin(th)}))
        candidates.push_back(*y);
    }
  } else {
    for (int i = 0; i < grid; ++i)
      if (auto y = to_sphere(rng.gaussian_vec(n))) candidates.push_back(*y);
  }

  std::vector<std::pair<double, Vec>> best;
  for (const Vec& y : candidates) {
    if (!feasible(y)) continue;
    best.emplace_back(mid_val(y), y);
  }
  if (best.empty()) return 0.0;
  std::sort(best.begin(), best.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  if (best.size() > 6) best.resize(6);

  double champion = best[0].first;
  for (auto& [val, y0] : best) {
    Vec y = y0;
    double cur = val;
    double sigma = 0.2;
    for (int it = 0; it < 120 && sigma > 1e-9; ++it) {
      Vec prop = y + sigma * rng.gaussian_vec(n);
      auto ys = to_sphere(prop);
      if (ys && feasible(*ys)) {
        double v = mid_val(*ys);
        if (v > cur) {
          cur = v;
          y = *ys;
          sigma *= 1.15;
          continue;
        }
      }
      sigma *= 0.8;
    }
    champion = std::max(champion, cur);
  }
  return std::min(champion, 1.0);
}

double gauge_from_membership(const std::function<bool(const Vec&)>& member,
                             const Vec& x, double tol) {
  if (norm2(x) == 0.0) throw argument_error("gauge_from_membership: x != 0");
  auto inside = [&](double s) {
    Vec q = x;
    kern::active_ops().scale(1.0 / s, q.data(), q.size());
    return member(q);
  };

  double hi = 1.0;
  int guard = 0;
  while (!inside(hi)) {
    hi *= 2.0;
    if (++guard > 80)
      throw solver_error("gauge_from_membership: oracle never accepted");
  }
  double lo = hi;
  guard = 0;
  while (inside(lo)) {
    lo *= 0.5;
    if (lo < 1e-14) return 0.0;
    if (++guard > 80) return 0.0;
  }
  // monotonicity spot checks on the bracket
  if (!inside(hi * 1.5))
    throw solver_error("gauge_from_membership: oracle is not monotone");
  if (inside(lo * 0.5))
    throw solver_error("gauge_from_membership: oracle is not monotone");

  while (hi - lo > tol) {
    double mid = 0.5 * (hi + lo);
    if (inside(mid))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (hi + lo);
}

}  // namespace renorm
