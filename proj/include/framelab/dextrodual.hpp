#pragma once

#include <optional>
#include <vector>

#include "framelab/kaczmarz.hpp"
#include "framelab/measure.hpp"

namespace framelab {

/// Coefficients indexed by n in [-order, order].
struct TwoSidedCoefficients {
  int order = 0;
  std::vector<Complex> values;  // values[n + order]

  explicit TwoSidedCoefficients(int order = 0)
      : order(order), values(static_cast<std::size_t>(2 * order + 1)) {}

  Complex& at(int n) { return values[static_cast<std::size_t>(n + order)]; }
  Complex at(int n) const { return values[static_cast<std::size_t>(n + order)]; }
  double square_sum() const;
};

/// Closed interval [lo, hi] on the circle coordinate.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Squared errors of a symmetric partial sum against f, split by measure part.
struct ErrorReport {
  double atom_error_sq = 0.0;
  double density_error_sq = 0.0;
  double total_error_sq = 0.0;
};

/// ||sum_{|n|<=M} c_n r^{|n|} e_n - f||^2 in L^2(measure), atoms evaluated
/// pointwise and the density part through closed-form quadratic forms.
ErrorReport reconstruction_error(const CircleMeasure& measure, const TwoSidedCoefficients& coeffs,
                                 const FunctionSpec& f, double r = 1.0);

// ---------------------------------------------------------------------------
// Atoms in [0, c), density in [c, 1): f -> f~ = sum_k f(b_k) chi_{J_k} + f chi_D.

struct ExtensionPlanOptions {
  /// Request |J_k| = a_k so that f -> f~ is an isometry (unit densities).
  bool parseval = false;
  /// Split point c; defaults to the start of the density support.
  std::optional<double> split;
};

class ExtensionPlan {
 public:
  ExtensionPlan(CircleMeasure measure, double split, std::vector<Interval> intervals);

  const CircleMeasure& measure() const { return measure_; }
  double split() const { return split_; }
  /// One interval per atom, in the measure's atom order.
  const std::vector<Interval>& intervals() const { return intervals_; }
  /// Density pieces of positive height.
  const std::vector<DensityPiece>& support() const { return support_; }

 private:
  CircleMeasure measure_;
  double split_;
  std::vector<Interval> intervals_;
  std::vector<DensityPiece> support_;
};

ExtensionPlan build_extension_plan(const CircleMeasure& measure,
                                   const ExtensionPlanOptions& options = {});

/// ||f~||^2 in L^2[0,1), closed form.
double extension_norm_sq(const ExtensionPlan& plan, const FunctionSpec& f);

/// <f~, e_n>_{L^2[0,1)} for |n| <= M.
TwoSidedCoefficients analysis_coefficients_mixed(const ExtensionPlan& plan, const FunctionSpec& f,
                                                 int order);

ErrorReport reconstruct_mixed(const ExtensionPlan& plan, const FunctionSpec& f, int order);

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

FrameBounds frame_bounds_extension(const ExtensionPlan& plan);

// ---------------------------------------------------------------------------
// Atomic singular part on [a,b], density on [c,d], disjoint.

struct ExamplecaseDual {
  CircleMeasure measure;
  Interval singular_hull;  ///< [a, b]
  Interval density_hull;   ///< [c, d]
  Interval inner;          ///< I_1, open interval around [a, b]
  Interval outer;          ///< I_2, open interval around [c, d]
  CoefficientTriangle singular_triangle;
  CircleMeasure singular_part;
  std::vector<DensityPiece> support;
};

ExamplecaseDual build_examplecase_dual(const CircleMeasure& measure, int truncation);

/// Coefficients of the singular-part operator A(f) = sum_{j<=truncation} <f, h_j> e_j.
std::vector<Complex> singular_operator_coefficients(const ExamplecaseDual& dual,
                                                    const FunctionSpec& f);

TwoSidedCoefficients analysis_coefficients_examplecase(const ExamplecaseDual& dual,
                                                       const FunctionSpec& f, int order);

ErrorReport reconstruct_examplecase(const ExamplecaseDual& dual, const FunctionSpec& f, int order);

struct PythagorasCheck {
  double lhs = 0.0;  ///< sum_{|n| <= M} |coeff_n|^2
  double rhs = 0.0;  ///< ||A(f) chi_I1||^2 + ||f chi_supp g||^2
};

PythagorasCheck bessel_pythagoras_check(const ExamplecaseDual& dual, const FunctionSpec& f,
                                        int order);

// ---------------------------------------------------------------------------

struct WitnessResult {
  int order = 0;
  double atom_mismatch = 0.0;     ///< max over target atoms of |p(x) - target(x)|
  double lebesgue_norm_sq = 0.0;  ///< sum |p_n|^2
  double distance_sq = 0.0;       ///< ||p - target||^2_mu
  bool ridge_applied = false;
};

/// Best approximation of `target` in L^2(mu) by trigonometric polynomials of
/// degree <= M, through the (2M+1) x (2M+1) Gram system.
WitnessResult nonrepresentability_witness(const CircleMeasure& measure, const FunctionSpec& target,
                                          int order);

}  // namespace framelab
