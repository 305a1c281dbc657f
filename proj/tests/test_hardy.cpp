#include <gtest/gtest.h>

#include <cmath>

#include "framelab/errors.hpp"
#include "framelab/hardy.hpp"
#include "oracles.hpp"

using namespace framelab;

namespace {

CircleMeasure point_plus_half() { return CircleMeasure({{0.25, 0.5}}, {{0.5, 1.0, 1.0}}); }

TwoSidedCoefficients parseval_dual(const FunctionSpec& f, int order) {
  ExtensionPlanOptions options;
  options.parseval = true;
  return analysis_coefficients_mixed(build_extension_plan(point_plus_half(), options), f, order);
}

}  // namespace

TEST(CauchySeries, KnownValues) {
  const auto leb = cauchy_series(CircleMeasure::lebesgue(), FunctionSpec::constant(1.0), 16);
  EXPECT_NEAR(std::abs(leb.coefficient(0) - 1.0), 0.0, 1e-15);
  for (int n = 1; n <= 16; ++n) EXPECT_NEAR(std::abs(leb.coefficient(n)), 0.0, 1e-15);
  for (int n = 1; n <= 16; ++n) EXPECT_EQ(leb.coefficient(-n), Complex{});

  const auto delta = cauchy_series(CircleMeasure::atomic({{0.0, 1.0}}), FunctionSpec::constant(1.0), 64);
  EXPECT_NEAR(std::abs(delta.evaluate(Complex(0.5, 0.0)) - 2.0), 0.0, 1e-18);

  const auto prop = cauchy_series(point_plus_half(), FunctionSpec::constant(1.0), 4);
  EXPECT_NEAR(std::abs(prop.evaluate(Complex{}) - 1.0), 0.0, 1e-15);
  EXPECT_EQ(prop.evaluate(0.0, 0.3), prop.coefficient(0));
}

TEST(NormalizedCauchy, KnownValues) {
  const auto delta = CircleMeasure::atomic({{0.0, 1.0}});
  const auto one = normalized_cauchy_series(delta, FunctionSpec::constant(1.0), 8);
  for (int n = 0; n <= 8; ++n) EXPECT_NEAR(std::abs(one.coefficient(n) - (n == 0 ? 1.0 : 0.0)), 0.0, 1e-15);

  oracle::Gen gen(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto mu = gen.measure();
    const auto v = normalized_cauchy_series(mu, FunctionSpec::constant(1.0), 32);
    for (int n = 0; n <= 32; ++n) EXPECT_NEAR(std::abs(v.coefficient(n) - (n == 0 ? 1.0 : 0.0)), 0.0, 1e-9);
  }

  const auto two = CircleMeasure::atomic({{0.0, 0.5}, {0.5, 0.5}});
  const auto pm = normalized_cauchy_series(two, FunctionSpec::atom_values_only({{0.0, 1.0}, {0.5, -1.0}}), 8);
  EXPECT_NEAR(std::abs(pm.coefficient(1) - 1.0), 0.0, 1e-15);
  EXPECT_THROW(normalized_cauchy_series(CircleMeasure(), FunctionSpec::constant(1.0), 2), ZeroMass);
}

TEST(NormalizedCauchy, MatchesRationalDivision) {
  // Atoms at 0 and 1/2 have real rational moments.
  using oracle::Rational;
  const Rational w0(1, 3), w1(2, 3), f0(2), f1(5);
  const auto mu = CircleMeasure::atomic({{0.0, 1.0 / 3.0}, {0.5, 2.0 / 3.0}});
  const auto f = FunctionSpec::atom_values_only({{0.0, 2.0}, {0.5, 5.0}});
  const int order = 24;
  std::vector<Rational> num, den;
  for (int n = 0; n <= order; ++n) {
    const Rational sign = n % 2 == 0 ? Rational(1) : Rational(-1);
    num.push_back(w0 * f0 + sign * w1 * f1);
    den.push_back(w0 + sign * w1);
  }
  const auto exact = oracle::series_divide(num, den, order);
  const auto v = normalized_cauchy_series(mu, f, order);
  for (int n = 0; n <= order; ++n) {
    const double want = boost::rational_cast<double>(exact[n]);
    EXPECT_NEAR(v.coefficient(n).real(), want, 1e-12 * std::max(1.0, std::abs(want))) << n;
    EXPECT_NEAR(v.coefficient(n).imag(), 0.0, 1e-12);
  }
  EXPECT_FALSE(v.unstable);
}

TEST(NormalizedCauchy, EqualsKaczmarzCoefficients) {
  oracle::Gen gen(77);
  for (int trial = 0; trial < 15; ++trial) {
    const bool cantor = trial % 4 == 0;
    const auto mu = cantor ? CircleMeasure::cantor(0.7) : gen.measure();
    const auto f = gen.function(mu, cantor);
    const int order = 48;
    const auto v = normalized_cauchy_series(mu, f, order);
    const auto triangle = auxiliary_sequence(MomentTable::from_measure(mu, order), order);
    const auto c = analysis_coefficients(triangle, mu, f);
    for (int n = 0; n <= order; ++n) EXPECT_NEAR(std::abs(v.coefficient(n) - c[n]), 0.0, 1e-9) << trial;
  }
}

TEST(NormalizedCauchy, TruncatedDiskParseval) {
  const auto mu = CircleMeasure::atomic({{0.1, 0.2}, {0.37, 0.5}, {0.8, 0.3}});
  oracle::Gen gen(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = gen.function(mu);
    const double bound = norm_sq(mu, f) * (1.0 + 1e-6);
    const auto v = normalized_cauchy_series(mu, f, 256);
    double sum = 0.0;
    double previous = 0.0;
    for (int n = 0; n <= 256; ++n) {
      sum += std::norm(v.coefficient(n));
      EXPECT_GE(sum, previous);
      EXPECT_LE(sum, bound + 1e-12);
      previous = sum;
    }
  }
}

TEST(BoundaryError, KnownValues) {
  const auto mu = point_plus_half();
  const auto one = parseval_dual(FunctionSpec::constant(1.0), 64);
  for (double r : {0.0, 0.5, 0.9, 1.0}) {
    EXPECT_NEAR(boundary_error(mu, one, FunctionSpec::constant(1.0), r), 0.0, 1e-25);
  }
  const auto zero = parseval_dual(FunctionSpec(), 16);
  EXPECT_EQ(boundary_error(mu, zero, FunctionSpec(), 0.7), 0.0);

  const auto f = FunctionSpec::indicator(0.5, 1.0).with_atom_value(0.25, 0.0);
  const auto c = parseval_dual(f, 4096);
  const double e90 = boundary_error(mu, c, f, 0.9);
  const double e99 = boundary_error(mu, c, f, 0.99);
  const double e999 = boundary_error(mu, c, f, 0.999);
  EXPECT_LT(e99, e90);
  EXPECT_LT(e999, e99);
  EXPECT_NEAR(boundary_error(mu, c, f, 1.0), reconstruction_error(mu, c, f).total_error_sq, 1e-18);
}

TEST(BoundaryError, NonincreasingAlongRadii) {
  oracle::Gen gen(55);
  const auto mu = point_plus_half();
  for (int trial = 0; trial < 4; ++trial) {
    const auto f = gen.function(mu).with_atom_value(0.25, gen.box());
    const auto c = parseval_dual(f, 4096);
    double previous = boundary_error(mu, c, f, 0.9);
    for (double r : {0.99, 0.999}) {
      const double e = boundary_error(mu, c, f, r);
      EXPECT_LE(e, previous + 1e-12) << trial;
      previous = e;
    }
  }
}

TEST(DiskSeries, EvaluationConsistency) {
  TwoSidedCoefficients c(3);
  c.at(-2) = {0.5, 0.1};
  c.at(0) = 1.0;
  c.at(3) = {0.0, -2.0};
  const DiskSeries s{c};
  EXPECT_EQ(s.evaluate(0.0, 0.123), Complex(1.0));
  const double r = 0.6, theta = 0.3;
  const Complex z = std::polar(r, 2.0 * M_PI * theta);
  const Complex direct = c.at(0) + c.at(3) * z * z * z + c.at(-2) * std::conj(z) * std::conj(z);
  EXPECT_NEAR(std::abs(s.evaluate(r, theta) - direct), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(s.evaluate(z) - direct), 0.0, 1e-14);
}

TEST(FrameFamily, RepeatedScaledBasisIsParseval) {
  for (int d = 1; d <= 16; ++d) {
    const auto family = FiniteFrameFamily::repeated_scaled_basis(d);
    EXPECT_EQ(family.size(), 1 + d * (d - 1) / 2);
    EXPECT_TRUE(is_parseval(family));
  }
  EXPECT_EQ(FiniteFrameFamily::repeated_scaled_basis(8).size(), 29);
}

TEST(FrameFamily, AuxiliaryFamilies) {
  const auto two = FiniteFrameFamily::auxiliary_family(CircleMeasure::atomic({{0.0, 0.5}, {0.5, 0.5}}), 6);
  EXPECT_EQ(two.dimension(), 2);
  EXPECT_TRUE(is_parseval(two, 1e-12));
  const auto leb = FiniteFrameFamily::auxiliary_family(CircleMeasure::lebesgue(), 5);
  EXPECT_TRUE(is_parseval(leb, 1e-12));
  const auto atoms = FiniteFrameFamily::auxiliary_family(CircleMeasure::atomic({{0.1, 0.2}, {0.37, 0.5}, {0.8, 0.3}}), 400);
  EXPECT_TRUE(is_parseval(atoms, 1e-6));
}

TEST(Kernel, SzegoConsistency) {
  const int order = 40;
  const auto family = FiniteFrameFamily::orthonormal(order + 1, order + 1);
  for (Complex w : {Complex(0.3, 0.1), Complex(-0.5, 0.2)}) {
    for (Complex z : {Complex(0.2, -0.4), Complex(0.6, 0.0)}) {
      Complex want{};
      Complex power = 1.0;
      for (int n = 0; n <= order; ++n) {
        want += power;
        power *= std::conj(w) * z;
      }
      EXPECT_NEAR(std::abs(reproducing_kernel_eval(family, w, z, order) - want), 0.0, 1e-12);
    }
  }
}

TEST(Kernel, ReproducesOnOrthonormalAndParsevalFamilies) {
  const auto basis = FiniteFrameFamily::orthonormal(4, 4);
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(4);
  e1(1) = 1.0;
  const auto p = kernel_reproduces(basis, e1, 0.3);
  EXPECT_NEAR(std::abs(p.lhs - 0.3), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p.rhs - 0.3), 0.0, 1e-15);

  for (int d : {4, 8}) {
    const auto family = FiniteFrameFamily::repeated_scaled_basis(d);
    oracle::Gen gen(d);
    Eigen::VectorXcd f(d);
    for (int i = 0; i < d; ++i) f(i) = gen.box();
    const auto q = kernel_reproduces(family, f, 0.25);
    EXPECT_NEAR(std::abs(q.lhs - q.rhs), 0.0, 1e-8);
  }
}

TEST(Kernel, ReproducesForNonParsevalFrame) {
  Eigen::MatrixXcd g(3, 5);
  g << 1.0, 0.5, 0.0, 0.2, 1.0,
       0.0, 1.0, 0.3, 0.0, -1.0,
       0.5, 0.0, 2.0, 1.0, 0.0;
  const FiniteFrameFamily family(g);
  Eigen::VectorXcd f(3);
  f << Complex(1.0, 0.5), -2.0, Complex(0.0, 1.0);
  const auto q = kernel_reproduces(family, f, Complex(0.2, -0.1));
  EXPECT_NEAR(std::abs(q.lhs - q.rhs), 0.0, 1e-12);
}

TEST(Kernel, Errors) {
  const FiniteFrameFamily zeros(Eigen::MatrixXcd::Zero(3, 4));
  EXPECT_THROW(reproducing_kernel_eval(zeros, 0.2, 0.3), NotAFrame);
  const auto family = FiniteFrameFamily::orthonormal(3, 3);
  EXPECT_THROW(reproducing_kernel_eval(family, 0.999, 0.3), InvalidArgument);
  EXPECT_EQ(default_kernel_truncation(FiniteFrameFamily::orthonormal(200, 200), 0.25), 20);
}

TEST(ShiftResidual, KnownValues) {
  const auto shift_basis = FiniteFrameFamily::orthonormal(7, 6);
  const auto exact = shift_residual(shift_basis);
  EXPECT_NEAR(exact.residual, 0.0, 1e-20);
  EXPECT_NEAR(exact.operator_norm, 1.0, 1e-12);

  EXPECT_GT(shift_residual(FiniteFrameFamily::repeated_scaled_basis(4)).residual, 1e-6);
  EXPECT_GT(shift_residual(FiniteFrameFamily::repeated_scaled_basis(8)).residual, 1e-6);

  oracle::Gen gen(13);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = gen.integer(2, 6);
    Eigen::MatrixXcd t(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) t(i, j) = gen.box();
    }
    t /= 1.5 * t.norm();
    Eigen::VectorXcd g0(d);
    for (int i = 0; i < d; ++i) g0(i) = gen.box();
    const auto orbit = FiniteFrameFamily::orbit(t, g0, gen.integer(2, 3 * d));
    EXPECT_LE(shift_residual(orbit).residual, 1e-10) << trial;
  }
  EXPECT_THROW(shift_residual(FiniteFrameFamily::orthonormal(3, 1)), InvalidArgument);
}
