#pragma once

#include <span>
#include <vector>

#include "framelab/measure.hpp"

namespace framelab {

/// Lower-triangular coefficients of the Kaczmarz auxiliary sequence:
///   g_n = sum_{k <= n} alpha(n, k) e_k,   e_k = exp(2 pi i * step * k * x).
///
/// The recursion runs on the normalized (probability) moments; `scale()` is the
/// mass that was divided out.  Rows are stored packed, row n at offset n(n+1)/2.
class CoefficientTriangle {
 public:
  CoefficientTriangle() = default;
  CoefficientTriangle(int order, double frequency_step, double scale, std::vector<Complex> packed);

  int order() const { return order_; }
  double frequency_step() const { return frequency_step_; }
  double scale() const { return scale_; }

  std::span<const Complex> row(int n) const;
  Complex operator()(int n, int k) const { return row(n)[static_cast<std::size_t>(k)]; }

 private:
  int order_ = -1;
  double frequency_step_ = 1.0;
  double scale_ = 1.0;
  std::vector<Complex> packed_;
};

struct KaczmarzOptions {
  int max_order = 4096;
  double frequency_step = 1.0;
};

/// Builds rows 0..order from `moments` (which must cover [-order, order]).
/// row_n = delta_n - sum_{k<n} nu^(k-n) row_k with nu the normalized moments.
CoefficientTriangle auxiliary_sequence(const MomentTable& moments, int order,
                                       const KaczmarzOptions& options = {});

/// Coefficients <f, g_n>_nu (nu = mu / mass) from the exponential products
/// products[k] = <f, e_k>_mu, k = 0..order.
std::vector<Complex> analysis_from_products(const CoefficientTriangle& triangle,
                                            std::span<const Complex> products);

std::vector<Complex> analysis_coefficients(const CoefficientTriangle& triangle,
                                           const CircleMeasure& measure, const FunctionSpec& f);

/// ||f||^2 - mass * sum_{n <= order} |c_n|^2, in units of the unnormalized measure.
/// Values in (-clamp_tolerance, 0) are reported as 0.
double defect_from_coefficients(double norm_sq, double mass, std::span<const Complex> coefficients,
                                int order, double clamp_tolerance = 1e-12);

/// ||f - sum_{k <= order} c_k e_k||^2_mu expanded as a quadratic form over moments.
double residual_from_coefficients(double norm_sq, const MomentTable& moments,
                                  std::span<const Complex> products,
                                  std::span<const Complex> coefficients, int order,
                                  double clamp_tolerance = 1e-12);

double parseval_defect(const CircleMeasure& measure, const CoefficientTriangle& triangle,
                       const FunctionSpec& f, int order);

double reconstruction_residual(const CircleMeasure& measure, const CoefficientTriangle& triangle,
                               const FunctionSpec& f, int order);

struct EffectivenessRow {
  int order = 0;
  double defect = 0.0;
  double residual = 0.0;
};

/// Defect and residual at each requested order, sharing one set of coefficients.
/// The triangle must cover the largest order.
std::vector<EffectivenessRow> effectiveness_table(const CircleMeasure& measure,
                                                  const CoefficientTriangle& triangle,
                                                  const FunctionSpec& f,
                                                  std::span<const int> orders,
                                                  double clamp_tolerance = 1e-12);

}  // namespace framelab
