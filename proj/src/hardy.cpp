#include "framelab/hardy.hpp"

#include <algorithm>
#include <cmath>

#include "framelab/errors.hpp"

namespace framelab {

namespace {

constexpr double kMaxKernelRadius = 0.999;
constexpr double kKernelTail = 1e-12;
constexpr double kFrameEigenFloor = 1e-10;

Eigen::MatrixXcd inverse_frame_operator(const FiniteFrameFamily& family) {
  const Eigen::MatrixXcd s = frame_operator(family);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(s);
  if (eig.info() != Eigen::Success || !(eig.eigenvalues().minCoeff() > kFrameEigenFloor)) {
    throw NotAFrame("frame operator is not invertible");
  }
  return eig.eigenvectors() * eig.eigenvalues().cwiseInverse().asDiagonal() *
         eig.eigenvectors().adjoint();
}

int resolve_truncation(const FiniteFrameFamily& family, Complex w, int truncation) {
  if (std::abs(w) >= kMaxKernelRadius) {
    throw InvalidArgument("kernel evaluation needs |w| < 0.999");
  }
  if (truncation < 0) return default_kernel_truncation(family, w);
  return std::min(truncation, family.size() - 1);
}

}  // namespace

Complex disk_extension(const TwoSidedCoefficients& coeffs, double r, double theta) {
  Complex sum{};
  for (int n = -coeffs.order; n <= coeffs.order; ++n) {
    const Complex c = coeffs.at(n);
    if (c == Complex{}) continue;
    sum += c * std::pow(r, std::abs(n)) * unit_phase(static_cast<double>(n) * theta);
  }
  return sum;
}

Complex DiskSeries::evaluate(double r, double theta) const {
  if (!(r >= 0.0 && r <= 1.0)) throw InvalidArgument("radius must lie in [0, 1]");
  return disk_extension(coefficients, r, theta);
}

Complex DiskSeries::evaluate(Complex z) const {
  if (std::abs(z) > 1.0) throw InvalidArgument("evaluation point must lie in the closed disk");
  for (int n = 1; n <= order(); ++n) {
    if (coefficient(-n) != Complex{}) return evaluate(std::abs(z), std::arg(z) / (2.0 * kPi));
  }
  Complex value{};
  for (int n = order(); n >= 0; --n) value = value * z + coefficient(n);
  return value;
}

DiskSeries cauchy_series(const CircleMeasure& measure, const FunctionSpec& f, int order) {
  if (order < 0) throw InvalidArgument("order must be nonnegative");
  const auto products = exponential_products(measure, f, 0, order);
  DiskSeries series{TwoSidedCoefficients(order)};
  for (int n = 0; n <= order; ++n) series.coefficients.at(n) = products[static_cast<std::size_t>(n)];
  return series;
}

DiskSeries normalized_cauchy_series(const CircleMeasure& measure, const FunctionSpec& f, int order) {
  if (order < 0) throw InvalidArgument("order must be nonnegative");
  const double mass = measure.total_mass();
  if (!(mass > 0.0)) throw ZeroMass("normalized Cauchy transform needs positive mass");
  const auto numerator = exponential_products(measure, f, 0, order);
  // C_mu(1) has coefficients mu^(n).
  std::vector<Complex> denominator(static_cast<std::size_t>(order) + 1);
  for (int n = 0; n <= order; ++n) denominator[static_cast<std::size_t>(n)] = moment(measure, n);
  const Complex lead = denominator[0];

  DiskSeries series{TwoSidedCoefficients(order)};
  for (int n = 0; n <= order; ++n) {
    Complex acc = numerator[static_cast<std::size_t>(n)];
    for (int k = 0; k < n; ++k) acc -= series.coefficients.at(k) * denominator[static_cast<std::size_t>(n - k)];
    const Complex q = acc / lead;
    if (std::abs(q) > kDivisionInstability) series.unstable = true;
    series.coefficients.at(n) = q;
  }
  return series;
}

double boundary_error(const CircleMeasure& measure, const TwoSidedCoefficients& coeffs,
                      const FunctionSpec& f, double r) {
  return reconstruction_error(measure, coeffs, f, r).total_error_sq;
}

// ---------------------------------------------------------------------------

FiniteFrameFamily::FiniteFrameFamily(Eigen::MatrixXcd vectors) : vectors_(std::move(vectors)) {
  if (vectors_.rows() < 1 || vectors_.cols() < 1) {
    throw InvalidArgument("frame family needs a positive dimension and at least one vector");
  }
  if (!vectors_.allFinite()) throw InvalidArgument("frame family vectors must be finite");
}

FiniteFrameFamily FiniteFrameFamily::orthonormal(int dimension, int count) {
  if (count > dimension) throw InvalidArgument("orthonormal family cannot exceed the dimension");
  if (count < 1) throw InvalidArgument("family needs at least one vector");
  return FiniteFrameFamily(Eigen::MatrixXcd::Identity(dimension, count));
}

FiniteFrameFamily FiniteFrameFamily::repeated_scaled_basis(int dimension) {
  if (dimension < 1) throw InvalidArgument("dimension must be positive");
  std::vector<std::pair<int, double>> entries;
  for (int j = 0; j < dimension; ++j) {
    const int copies = std::max(1, j);
    for (int c = 0; c < copies; ++c) entries.emplace_back(j, 1.0 / std::sqrt(static_cast<double>(copies)));
  }
  Eigen::MatrixXcd vectors = Eigen::MatrixXcd::Zero(dimension, static_cast<Eigen::Index>(entries.size()));
  for (std::size_t n = 0; n < entries.size(); ++n) {
    vectors(entries[n].first, static_cast<Eigen::Index>(n)) = entries[n].second;
  }
  return FiniteFrameFamily(std::move(vectors));
}

FiniteFrameFamily FiniteFrameFamily::orbit(const Eigen::MatrixXcd& shift,
                                           const Eigen::VectorXcd& start, int count) {
  if (shift.rows() != shift.cols() || shift.rows() != start.size()) {
    throw InvalidArgument("shift must be square and match the start vector");
  }
  if (count < 1) throw InvalidArgument("family needs at least one vector");
  Eigen::MatrixXcd vectors(start.size(), count);
  vectors.col(0) = start;
  for (int n = 1; n < count; ++n) vectors.col(n) = shift * vectors.col(n - 1);
  return FiniteFrameFamily(std::move(vectors));
}

FiniteFrameFamily FiniteFrameFamily::auxiliary_family(const CircleMeasure& measure, int order) {
  const auto moments = MomentTable::from_measure(measure, order);
  const auto triangle = auxiliary_sequence(moments, order);
  const double mass = triangle.scale();
  const int count = order + 1;

  if (measure.is_purely_atomic()) {
    const auto& atoms = measure.atoms();
    Eigen::MatrixXcd vectors(static_cast<Eigen::Index>(atoms.size()), count);
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      const double scale = std::sqrt(atoms[j].w / mass);
      for (int n = 0; n < count; ++n) {
        Complex value{};
        const auto row = triangle.row(n);
        for (int k = 0; k <= n; ++k) {
          value += row[static_cast<std::size_t>(k)] * unit_phase(static_cast<double>(k) * atoms[j].x);
        }
        vectors(static_cast<Eigen::Index>(j), n) = scale * value;
      }
    }
    return FiniteFrameFamily(std::move(vectors));
  }

  // Gram(j, k) = <e_k, e_j>_nu = nu^(j - k) = L L^*; coordinates of sum_k alpha_k e_k are L^* alpha.
  Eigen::MatrixXcd gram(count, count);
  for (int j = 0; j < count; ++j) {
    for (int k = 0; k < count; ++k) gram(j, k) = moments(j - k) / mass;
  }
  Eigen::LLT<Eigen::MatrixXcd> llt(gram);
  if (llt.info() != Eigen::Success) throw SingularGram("exponential Gram matrix is not positive definite");
  Eigen::MatrixXcd alpha = Eigen::MatrixXcd::Zero(count, count);
  for (int n = 0; n < count; ++n) {
    const auto row = triangle.row(n);
    for (int k = 0; k <= n; ++k) alpha(k, n) = row[static_cast<std::size_t>(k)];
  }
  Eigen::MatrixXcd coordinates = llt.matrixU() * alpha;
  return FiniteFrameFamily(std::move(coordinates));
}

Eigen::MatrixXcd frame_operator(const FiniteFrameFamily& family) {
  return family.vectors() * family.vectors().adjoint();
}

double smallest_frame_eigenvalue(const FiniteFrameFamily& family) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(frame_operator(family), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

bool is_parseval(const FiniteFrameFamily& family, double tolerance) {
  const Eigen::MatrixXcd diff =
      frame_operator(family) - Eigen::MatrixXcd::Identity(family.dimension(), family.dimension());
  return diff.cwiseAbs().maxCoeff() <= tolerance;
}

int default_kernel_truncation(const FiniteFrameFamily& family, Complex w) {
  const double radius = std::abs(w);
  int length = 1;
  if (radius > 0.0) {
    length = static_cast<int>(std::floor(std::log(kKernelTail) / std::log(radius))) + 1;
  }
  return std::min(std::max(length, 0), family.size() - 1);
}

Complex reproducing_kernel_eval(const FiniteFrameFamily& family, Complex w, Complex z,
                                int truncation) {
  if (std::abs(z) >= kMaxKernelRadius) throw InvalidArgument("kernel evaluation needs |z| < 0.999");
  int length = resolve_truncation(family, w, truncation);
  if (truncation < 0) length = std::max(length, default_kernel_truncation(family, z));
  const Eigen::MatrixXcd s_inv = inverse_frame_operator(family);
  const auto g = family.vectors().leftCols(length + 1);
  // M(k, n) = g_k^* S^{-1} g_n = <S^{-1} g_n, g_k>
  const Eigen::MatrixXcd pairing = g.adjoint() * s_inv * g;
  Eigen::VectorXcd w_powers(length + 1);
  Eigen::VectorXcd z_powers(length + 1);
  w_powers(0) = 1.0;
  z_powers(0) = 1.0;
  for (int n = 1; n <= length; ++n) {
    w_powers(n) = w_powers(n - 1) * std::conj(w);
    z_powers(n) = z_powers(n - 1) * z;
  }
  return (z_powers.transpose() * pairing * w_powers)(0, 0);
}

KernelPairing kernel_reproduces(const FiniteFrameFamily& family, const Eigen::VectorXcd& f,
                                Complex w, int truncation) {
  if (f.size() != family.dimension()) throw InvalidArgument("vector does not match the dimension");
  const int length = resolve_truncation(family, w, truncation);
  const Eigen::MatrixXcd s_inv = inverse_frame_operator(family);
  const Eigen::MatrixXcd& g = family.vectors();

  const Eigen::VectorXcd analysis = g.adjoint() * f;  // a_k = <f, g_k>
  Eigen::VectorXcd w_bar_powers(length + 1);
  w_bar_powers(0) = 1.0;
  for (int n = 1; n <= length; ++n) w_bar_powers(n) = w_bar_powers(n - 1) * std::conj(w);

  KernelPairing out;
  for (int n = 0; n <= length; ++n) out.lhs += analysis(n) * std::conj(w_bar_powers(n));
  // Kernel coefficient of z^k, over every family index k.
  const Eigen::VectorXcd kernel = g.adjoint() * (s_inv * (g.leftCols(length + 1) * w_bar_powers));
  out.rhs = kernel.dot(analysis);  // sum_k a_k conj(kernel_k)
  return out;
}

ShiftResidual shift_residual(const FiniteFrameFamily& family) {
  if (family.size() < 2) throw InvalidArgument("shift residual needs at least two vectors");
  const Eigen::Index count = family.size() - 1;
  const Eigen::MatrixXcd x = family.vectors().leftCols(count);
  const Eigen::MatrixXcd y = family.vectors().rightCols(count);
  const Eigen::MatrixXcd x_pinv = x.completeOrthogonalDecomposition().pseudoInverse();
  const Eigen::MatrixXcd t = y * x_pinv;
  ShiftResidual out;
  out.residual = (t * x - y).squaredNorm();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t);
  out.operator_norm = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
  return out;
}

}  // namespace framelab
