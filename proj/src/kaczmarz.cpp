#include "framelab/kaczmarz.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "framelab/errors.hpp"

namespace framelab {

namespace {

std::size_t row_offset(int n) {
  const auto m = static_cast<std::size_t>(n);
  return m * (m + 1) / 2;
}

double clamp_small_negative(double value, double tolerance) {
  return (value < 0.0 && value > -tolerance) ? 0.0 : value;
}

}  // namespace

CoefficientTriangle::CoefficientTriangle(int order, double frequency_step, double scale,
                                         std::vector<Complex> packed)
    : order_(order), frequency_step_(frequency_step), scale_(scale), packed_(std::move(packed)) {
  if (packed_.size() != row_offset(order_ + 1)) {
    throw InvalidArgument("packed triangle size does not match its order");
  }
}

std::span<const Complex> CoefficientTriangle::row(int n) const {
  if (n < 0 || n > order_) throw InvalidArgument("triangle row outside [0, order]");
  return {packed_.data() + row_offset(n), static_cast<std::size_t>(n) + 1};
}

CoefficientTriangle auxiliary_sequence(const MomentTable& moments, int order,
                                       const KaczmarzOptions& options) {
  if (order < 0) throw InvalidArgument("auxiliary sequence order must be nonnegative");
  if (order > options.max_order) {
    throw OrderTooLarge("order " + std::to_string(order) + " exceeds the cap of " +
                        std::to_string(options.max_order));
  }
  if (moments.order() < order) throw InvalidArgument("moment table does not cover the order");
  const double mass = moments.mass();
  if (!(mass > 0.0)) throw ZeroMass("auxiliary sequence needs a measure of positive mass");

  std::vector<Complex> normalized(static_cast<std::size_t>(order) + 1);
  for (int q = 0; q <= order; ++q) normalized[static_cast<std::size_t>(q)] = moments(-q) / mass;

  // The recursion row_n = delta_n - sum_{k<n} nu^(k-n) row_k is Toeplitz:
  // alpha(n, k) = beta[n - k] with beta the power-series inverse of sum_q nu^(-q) z^q.
  std::vector<Complex> beta(static_cast<std::size_t>(order) + 1);
  beta[0] = 1.0;
  for (int m = 1; m <= order; ++m) {
    Complex acc{};
    for (int p = 0; p < m; ++p) {
      acc -= normalized[static_cast<std::size_t>(m - p)] * beta[static_cast<std::size_t>(p)];
    }
    beta[static_cast<std::size_t>(m)] = acc;
  }

  std::vector<Complex> packed(row_offset(order + 1));
  for (int n = 0; n <= order; ++n) {
    Complex* row_n = packed.data() + row_offset(n);
    for (int k = 0; k <= n; ++k) row_n[k] = beta[static_cast<std::size_t>(n - k)];
  }
  return CoefficientTriangle(order, options.frequency_step, mass, std::move(packed));
}

std::vector<Complex> analysis_from_products(const CoefficientTriangle& triangle,
                                            std::span<const Complex> products) {
  const int order = triangle.order();
  if (static_cast<int>(products.size()) < order + 1) {
    throw InvalidArgument("exponential products do not cover the triangle order");
  }
  std::vector<Complex> coefficients(static_cast<std::size_t>(order) + 1);
  for (int n = 0; n <= order; ++n) {
    const auto row = triangle.row(n);
    Complex sum{};
    for (int k = 0; k <= n; ++k) sum += std::conj(row[static_cast<std::size_t>(k)]) * products[static_cast<std::size_t>(k)];
    coefficients[static_cast<std::size_t>(n)] = sum / triangle.scale();
  }
  return coefficients;
}

std::vector<Complex> analysis_coefficients(const CoefficientTriangle& triangle,
                                           const CircleMeasure& measure, const FunctionSpec& f) {
  const auto products = exponential_products(measure, f, 0, triangle.order());
  return analysis_from_products(triangle, products);
}

double defect_from_coefficients(double norm_sq, double mass, std::span<const Complex> coefficients,
                                int order, double clamp_tolerance) {
  if (order + 1 > static_cast<int>(coefficients.size())) {
    throw InvalidArgument("defect order exceeds the available coefficients");
  }
  double captured = 0.0;
  for (int n = 0; n <= order; ++n) captured += std::norm(coefficients[static_cast<std::size_t>(n)]);
  return clamp_small_negative(norm_sq - mass * captured, clamp_tolerance);
}

double residual_from_coefficients(double norm_sq, const MomentTable& moments,
                                  std::span<const Complex> products,
                                  std::span<const Complex> coefficients, int order,
                                  double clamp_tolerance) {
  if (order + 1 > static_cast<int>(coefficients.size()) ||
      order + 1 > static_cast<int>(products.size())) {
    throw InvalidArgument("residual order exceeds the available coefficients");
  }
  if (moments.order() < order) throw InvalidArgument("moment table does not cover the order");
  // ||f||^2 - 2 Re sum_k conj(c_k) <f, e_k> + sum_{j,k} c_j conj(c_k) mu^(k - j)
  double cross = 0.0;
  Complex quadratic{};
  for (int k = 0; k <= order; ++k) {
    const Complex ck = coefficients[static_cast<std::size_t>(k)];
    cross += (std::conj(ck) * products[static_cast<std::size_t>(k)]).real();
    Complex inner{};
    for (int j = 0; j <= order; ++j) inner += coefficients[static_cast<std::size_t>(j)] * moments(k - j);
    quadratic += std::conj(ck) * inner;
  }
  return clamp_small_negative(norm_sq - 2.0 * cross + quadratic.real(), clamp_tolerance);
}

double parseval_defect(const CircleMeasure& measure, const CoefficientTriangle& triangle,
                       const FunctionSpec& f, int order) {
  if (order > triangle.order()) throw InvalidArgument("order exceeds the triangle");
  const auto coefficients = analysis_coefficients(triangle, measure, f);
  return defect_from_coefficients(norm_sq(measure, f), triangle.scale(), coefficients, order);
}

double reconstruction_residual(const CircleMeasure& measure, const CoefficientTriangle& triangle,
                               const FunctionSpec& f, int order) {
  if (order > triangle.order()) throw InvalidArgument("order exceeds the triangle");
  const auto products = exponential_products(measure, f, 0, triangle.order());
  const auto coefficients = analysis_from_products(triangle, products);
  const auto moments = MomentTable::from_measure(measure, order);
  return residual_from_coefficients(norm_sq(measure, f), moments, products, coefficients, order);
}

std::vector<EffectivenessRow> effectiveness_table(const CircleMeasure& measure,
                                                  const CoefficientTriangle& triangle,
                                                  const FunctionSpec& f,
                                                  std::span<const int> orders,
                                                  double clamp_tolerance) {
  if (orders.empty()) return {};
  const int top = *std::max_element(orders.begin(), orders.end());
  if (top > triangle.order()) throw InvalidArgument("requested order exceeds the triangle");

  const auto products = exponential_products(measure, f, 0, top);
  std::vector<Complex> padded(products);
  padded.resize(static_cast<std::size_t>(triangle.order()) + 1);
  auto coefficients = analysis_from_products(triangle, padded);
  const auto moments = MomentTable::from_measure(measure, top);
  const double f_norm = norm_sq(measure, f);

  // Incremental quadratic form: residual(N) = ||f||^2 - 2 cross(N) + Q(N).
  std::vector<double> residual_at(static_cast<std::size_t>(top) + 1);
  double cross = 0.0;
  double quadratic = 0.0;
  for (int n = 0; n <= top; ++n) {
    const Complex cn = coefficients[static_cast<std::size_t>(n)];
    cross += (std::conj(cn) * products[static_cast<std::size_t>(n)]).real();
    Complex mixed{};
    for (int j = 0; j < n; ++j) mixed += coefficients[static_cast<std::size_t>(j)] * moments(n - j);
    quadratic += std::norm(cn) * moments(0).real() + 2.0 * (std::conj(cn) * mixed).real();
    residual_at[static_cast<std::size_t>(n)] = f_norm - 2.0 * cross + quadratic;
  }

  std::vector<EffectivenessRow> rows;
  rows.reserve(orders.size());
  for (int order : orders) {
    if (order < 0) throw InvalidArgument("orders must be nonnegative");
    rows.push_back({order,
                    defect_from_coefficients(f_norm, triangle.scale(), coefficients, order,
                                             clamp_tolerance),
                    clamp_small_negative(residual_at[static_cast<std::size_t>(order)],
                                         clamp_tolerance)});
  }
  return rows;
}

}  // namespace framelab
