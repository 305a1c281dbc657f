#pragma once

#include <Eigen/Dense>

#include "framelab/dextrodual.hpp"
#include "framelab/kaczmarz.hpp"
#include "framelab/measure.hpp"

namespace framelab {

/// sum_{|n| <= M} c_n r^{|n|} e^{2 pi i n theta}; one-sided series keep c_n = 0 for n < 0.
struct DiskSeries {
  TwoSidedCoefficients coefficients;
  /// Set when a division step produced a coefficient above the instability threshold.
  bool unstable = false;

  int order() const { return coefficients.order; }
  Complex coefficient(int n) const { return coefficients.at(n); }
  Complex evaluate(double r, double theta) const;
  /// Horner evaluation in z for one-sided series, |z| <= 1.
  Complex evaluate(Complex z) const;
  double square_sum() const { return coefficients.square_sum(); }
};

/// Division coefficients above this magnitude flag the series as unstable.
inline constexpr double kDivisionInstability = 1e12;

/// Coefficients <f, e_n>_mu for 0 <= n <= M.
DiskSeries cauchy_series(const CircleMeasure& measure, const FunctionSpec& f, int order);

/// Power-series quotient C_mu(f) / C_mu(1) to order M.
DiskSeries normalized_cauchy_series(const CircleMeasure& measure, const FunctionSpec& f, int order);

/// sum_n c_n r^{|n|} e^{2 pi i n theta}
Complex disk_extension(const TwoSidedCoefficients& coeffs, double r, double theta);

/// ||sum_{|n|<=M} c_n r^{|n|} e_n - f||^2_mu
double boundary_error(const CircleMeasure& measure, const TwoSidedCoefficients& coeffs,
                      const FunctionSpec& f, double r);

// ---------------------------------------------------------------------------

/// Family g_0..g_{count-1} stored as the columns of a d x count matrix.
class FiniteFrameFamily {
 public:
  explicit FiniteFrameFamily(Eigen::MatrixXcd vectors);

  /// e_0..e_{count-1} in C^d.
  static FiniteFrameFamily orthonormal(int dimension, int count);
  /// e_0, e_1, then e_j / sqrt(j) repeated j times, for j < d.
  static FiniteFrameFamily repeated_scaled_basis(int dimension);
  /// g_n = T^n g_0.
  static FiniteFrameFamily orbit(const Eigen::MatrixXcd& shift, const Eigen::VectorXcd& start,
                                 int count);
  /// Kaczmarz auxiliary vectors g_0..g_L of the normalized measure, in isometric
  /// coordinates: point masses for atomic measures, Cholesky coordinates of
  /// span{e_0..e_L} otherwise.
  static FiniteFrameFamily auxiliary_family(const CircleMeasure& measure, int order);

  int dimension() const { return static_cast<int>(vectors_.rows()); }
  int size() const { return static_cast<int>(vectors_.cols()); }
  const Eigen::MatrixXcd& vectors() const { return vectors_; }
  Eigen::MatrixXcd gram() const { return vectors_.adjoint() * vectors_; }

 private:
  Eigen::MatrixXcd vectors_;
};

/// S = sum_n g_n g_n^*
Eigen::MatrixXcd frame_operator(const FiniteFrameFamily& family);
double smallest_frame_eigenvalue(const FiniteFrameFamily& family);
bool is_parseval(const FiniteFrameFamily& family, double tolerance = 1e-10);

/// Smallest L with |w|^L < 1e-12, capped at size - 1.
int default_kernel_truncation(const FiniteFrameFamily& family, Complex w);

/// K_w(z) = sum_{k,n <= L} <S^{-1} g_n, g_k> conj(w)^n z^k.  L < 0 selects the default.
Complex reproducing_kernel_eval(const FiniteFrameFamily& family, Complex w, Complex z,
                                int truncation = -1);

struct KernelPairing {
  Complex lhs;  ///< sum_{n <= L} <f, g_n> w^n
  Complex rhs;  ///< disk-coefficient pairing of A(f) with K_w
};

KernelPairing kernel_reproduces(const FiniteFrameFamily& family, const Eigen::VectorXcd& f,
                                Complex w, int truncation = -1);

struct ShiftResidual {
  double residual = 0.0;        ///< min_T sum_n ||T g_n - g_{n+1}||^2
  double operator_norm = 0.0;   ///< ||T|| for the minimum-norm minimizer
};

ShiftResidual shift_residual(const FiniteFrameFamily& family);

}  // namespace framelab
