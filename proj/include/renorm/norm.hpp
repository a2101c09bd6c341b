#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "renorm/config.hpp"
#include "renorm/linalg.hpp"

namespace renorm {

struct MatrixGroup;

// Rectangular matrix for seminorms x -> |A x|_2.
struct RectMat {
  int rows = 0, cols = 0;
  std::vector<double> a;
  RectMat() = default;
  RectMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}
  double& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

class NormImpl {
 public:
  virtual ~NormImpl() = default;
  virtual double eval(const Vec& x) const = 0;
  virtual int dim() const = 0;
  virtual const char* kind() const = 0;
  // any element of the subdifferential; default central finite differences
  virtual Vec subgradient(const Vec& x) const;
  // non-null when eval(x) == sqrt(x^T G x)
  virtual const Mat* gram() const { return nullptr; }
  virtual bool has_exact_dual() const { return gram() != nullptr; }
  // support function of the unit ball (the dual norm) where exact
  virtual double dual_support(const Vec& u) const;
  // metrically distinguished points an isometry must respect (tips etc.)
  virtual std::vector<Vec> structured_points() const { return {}; }
};

// Immutable evaluable gauge. Evaluation is pure; sharing across threads is
// safe after construction.
class Norm {
 public:
  Norm() = default;
  explicit Norm(std::shared_ptr<const NormImpl> impl) : impl_(std::move(impl)) {}

  bool valid() const { return impl_ != nullptr; }
  int dim() const { return impl_->dim(); }
  std::string kind() const { return impl_->kind(); }

  double operator()(const Vec& x) const {
    if (static_cast<int>(x.size()) != impl_->dim())
      throw argument_error("norm eval: dimension mismatch");
    return impl_->eval(x);
  }

  Vec subgradient(const Vec& x) const { return impl_->subgradient(x); }
  const Mat* gram_reduction() const { return impl_->gram(); }
  bool has_exact_dual() const { return impl_->has_exact_dual(); }
  double dual_support(const Vec& u) const { return impl_->dual_support(u); }
  std::vector<Vec> structured_points() const {
    return impl_->structured_points();
  }
  const std::shared_ptr<const NormImpl>& impl() const { return impl_; }

  static Norm euclidean(int dim);
  static Norm euclidean(Mat gram);
  static Norm lp(double p, int dim);
  static Norm weighted_lp(double p, Vec weights);
  static Norm day(int dim, double weight_base = 0.25);
  static Norm max_seminorms(int dim, std::vector<RectMat> seminorms);
  static Norm g_average(Norm base, std::shared_ptr<const MatrixGroup> group);
  static Norm sum_squares(std::vector<Norm> parts);
  static Norm block_l2(int dim, std::vector<std::pair<int, Norm>> blocks);
  static Norm custom(int dim, std::string label,
                     std::function<double(const Vec&)> fn);

 private:
  std::shared_ptr<const NormImpl> impl_;
};

// Accessors used by serialization and tests; null when the kind differs.
struct EuclideanView { const Mat* gram; };
struct WeightedLpView { double p; const Vec* weights; };
struct DayView { double weight_base; };
struct MaxSeminormsView { const std::vector<RectMat>* seminorms; };
struct GAverageView { Norm base; const MatrixGroup* group; };
struct SumSquaresView { const std::vector<Norm>* parts; };
struct BlockL2View { const std::vector<std::pair<int, Norm>>* blocks; };

std::optional<EuclideanView> as_euclidean(const Norm& n);
std::optional<WeightedLpView> as_weighted_lp(const Norm& n);
std::optional<DayView> as_day(const Norm& n);
std::optional<MaxSeminormsView> as_max_seminorms(const Norm& n);
std::optional<GAverageView> as_g_average(const Norm& n);
std::optional<SumSquaresView> as_sum_squares(const Norm& n);
std::optional<BlockL2View> as_block_l2(const Norm& n);

// Generic axiom probes, deterministic given the seed.
struct AxiomReport {
  double homogeneity = 0.0;  // max relative violation
  double triangle = 0.0;
  double symmetry = 0.0;
  double definiteness_min = 0.0;  // min eval over basis vectors
  bool zero_at_origin = true;
  Vec worst_homogeneity_x, worst_triangle_x, worst_triangle_y;
  bool pass(double tol) const {
    return homogeneity <= tol && triangle <= tol && symmetry <= tol &&
           definiteness_min > tol && zero_at_origin;
  }
};

AxiomReport check_norm_axioms(const Norm& norm, int samples, uint64_t seed);

// Estimate of the LUR modulus lambda(x, eps): the largest midpoint norm over
// unit y with eval(x - y) >= eps. Grid directions plus hill-climbing.
double lur_modulus(const Norm& norm, const Vec& x, double eps, int grid,
                   uint64_t seed = 0x10f);

// Bisection gauge for a balanced convex membership oracle.
double gauge_from_membership(const std::function<bool(const Vec&)>& member,
                             const Vec& x, double tol);

}  // namespace renorm
