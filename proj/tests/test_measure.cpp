#include <gtest/gtest.h>

#include <cmath>

#include "framelab/errors.hpp"
#include "framelab/measure.hpp"
#include "oracles.hpp"

using namespace framelab;

namespace {

CircleMeasure point_plus_half() { return CircleMeasure({{0.25, 0.5}}, {{0.5, 1.0, 1.0}}); }

}  // namespace

TEST(Moment, LebesgueIsOrthonormal) {
  const auto leb = CircleMeasure::lebesgue();
  EXPECT_NEAR(std::abs(moment(leb, 3)), 0.0, 1e-15);
  EXPECT_NEAR(moment(leb, 0).real(), 1.0, 1e-15);
}

TEST(Moment, PointPlusHalfInterval) {
  const Complex m = moment(point_plus_half(), 1);
  EXPECT_NEAR(m.real(), 0.0, 1e-15);
  EXPECT_NEAR(m.imag(), 1.0 / M_PI - 0.5, 1e-15);
  EXPECT_NEAR(m.imag(), -0.18169, 1e-5);
}

TEST(Moment, CantorFrozenValues) {
  // 30-digit product evaluations.
  const auto c = CircleMeasure::cantor();
  EXPECT_NEAR(moment(c, 1).real(), -0.466274578955049170557324775498, 1e-14);
  EXPECT_NEAR(moment(c, 2).real(), -0.371437356708765635053381878515, 1e-14);
  EXPECT_NEAR(moment(c, 3).real(), 0.466274578955049170557324775498, 1e-14);
  EXPECT_NEAR(moment(c, 1).imag(), 0.0, 1e-15);
}

TEST(Moment, CantorMatchesLongDoubleProduct) {
  for (long n : {1L, 2L, 5L, 9L, 27L, 100L, 243L, 1000L, 4095L}) {
    const auto ref = oracle::cantor_product(n);
    EXPECT_NEAR(cantor_transform(n).real(), static_cast<double>(ref.real()), 1e-13) << n;
    EXPECT_NEAR(cantor_transform(-n).real(), static_cast<double>(ref.real()), 1e-13) << n;
  }
}

TEST(Moment, ConjugateSymmetryAndMass) {
  oracle::Gen gen(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto mu = gen.measure();
    const CircleMeasure with_cantor(mu.atoms(), mu.pieces(), trial % 3 == 0 ? 0.5 : 0.0);
    EXPECT_NEAR(moment(with_cantor, 0).real(), with_cantor.total_mass(), 1e-12);
    for (long n = 1; n <= 256; n += 17) {
      EXPECT_NEAR(std::abs(moment(with_cantor, -n) - std::conj(moment(with_cantor, n))), 0.0, 1e-12);
    }
  }
}

TEST(Moment, GramMatricesArePositiveSemidefinite) {
  oracle::Gen gen(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto mu = gen.measure();
    const int size = 24;
    const int shift = gen.integer(-10, 10);
    Eigen::MatrixXcd g(size, size);
    for (int j = 0; j < size; ++j) {
      for (int k = 0; k < size; ++k) g(j, k) = moment(mu, (k + shift) - (j + shift));
    }
    const Eigen::MatrixXcd sym = 0.5 * (g + g.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(sym, Eigen::EigenvaluesOnly);
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-9);
  }
}

TEST(MomentTable, CachesAndConjugates) {
  const auto mu = point_plus_half();
  const auto table = MomentTable::from_measure(mu, 8);
  EXPECT_EQ(table.order(), 8);
  EXPECT_DOUBLE_EQ(table.mass(), 1.0);
  for (int n = -8; n <= 8; ++n) EXPECT_NEAR(std::abs(table(n) - moment(mu, n)), 0.0, 1e-15);
}

TEST(InnerProduct, KnownValues) {
  const auto mu = point_plus_half();
  const auto one = FunctionSpec::constant(1.0);
  EXPECT_NEAR(std::abs(inner_product(mu, one, one) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(norm_sq(mu, one), 1.0, 1e-15);
  EXPECT_EQ(inner_product(mu, FunctionSpec(), one), Complex{});
  const auto e1 = FunctionSpec::exponential(1);
  EXPECT_NEAR(std::abs(inner_product(CircleMeasure::lebesgue(), e1, e1) - 1.0), 0.0, 1e-15);

  const auto two = CircleMeasure::atomic({{0.0, 0.5}, {0.5, 0.5}});
  const auto pm = FunctionSpec::atom_values_only({{0.0, 1.0}, {0.5, -1.0}});
  EXPECT_NEAR(norm_sq(two, pm), 1.0, 1e-15);
  for (const auto& mu2 : {two, mu, CircleMeasure::cantor()}) EXPECT_EQ(norm_sq(mu2, FunctionSpec()), 0.0);
}

TEST(InnerProduct, CantorRestriction) {
  const auto c = CircleMeasure::cantor();
  EXPECT_THROW(inner_product(c, FunctionSpec::indicator(0.0, 0.5), FunctionSpec::constant(1.0)),
               CantorRestriction);
  EXPECT_NO_THROW(inner_product(c, FunctionSpec::exponential(2), FunctionSpec::exponential(-1)));
  // <e_m, e_k>_c = c^(k - m)
  EXPECT_NEAR(std::abs(inner_product(c, FunctionSpec::exponential(2), FunctionSpec::exponential(-1)) -
                       cantor_transform(-3)),
              0.0, 1e-15);
}

TEST(InnerProduct, MatchesQuadratureOracle) {
  oracle::Gen gen(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const auto mu = gen.measure();
    const auto f = gen.function(mu);
    const auto g = gen.function(mu);
    const Complex fast = inner_product(mu, f, g);
    const Complex slow = oracle::quadrature_inner_product(mu, f, g);
    EXPECT_NEAR(std::abs(fast - slow), 0.0, 1e-8) << "trial " << trial;
  }
}

TEST(InnerProduct, SesquilinearAndHermitian) {
  oracle::Gen gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto mu = gen.measure();
    const auto f = gen.function(mu);
    const auto g = gen.function(mu);
    const auto h = gen.function(mu);
    const Complex a = gen.box();
    EXPECT_NEAR(std::abs(inner_product(mu, f, g) - std::conj(inner_product(mu, g, f))), 0.0, 1e-12);
    const Complex lhs = inner_product(mu, f.scaled(a) + h, g);
    const Complex rhs = a * inner_product(mu, f, g) + inner_product(mu, h, g);
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-11);
    EXPECT_GE(norm_sq(mu, f), 0.0);
  }
}

TEST(InnerProduct, ExponentialProductsAgree) {
  const auto mu = point_plus_half();
  const auto f = FunctionSpec::indicator(0.2, 0.7, {1.0, 2.0}).with_atom_value(0.25, 3.0);
  const auto products = exponential_products(mu, f, -5, 5);
  for (int k = -5; k <= 5; ++k) {
    EXPECT_NEAR(std::abs(products[static_cast<std::size_t>(k + 5)] -
                         inner_product(mu, f, FunctionSpec::exponential(k))),
                0.0, 1e-14);
  }
}

TEST(Evaluate, KnownValues) {
  EXPECT_EQ(evaluate(FunctionSpec::constant(1.0), 0.25), Complex(1.0));
  const FunctionSpec f({Term{1, 0.5, 1.0, 1.0}});
  EXPECT_EQ(evaluate(f, 0.25), Complex{});
  EXPECT_NEAR(std::abs(evaluate(f, 0.75) - Complex(0.0, -1.0)), 0.0, 1e-15);
  EXPECT_EQ(evaluate(f.with_atom_value(0.75, 5.0), 0.75), Complex(5.0));
}

TEST(CircleMeasure, RejectsInvalidStructure) {
  EXPECT_THROW(CircleMeasure({{1.0, 0.5}}, {}), InvalidMeasure);
  EXPECT_THROW(CircleMeasure({{0.2, -1.0}}, {}), InvalidMeasure);
  EXPECT_THROW(CircleMeasure({{0.2, 1.0}, {0.2, 1.0}}, {}), InvalidMeasure);
  EXPECT_THROW(CircleMeasure({}, {{0.0, 0.6, 1.0}, {0.5, 1.0, 1.0}}), InvalidMeasure);
  EXPECT_THROW(CircleMeasure({}, {{0.6, 0.5, 1.0}}), InvalidMeasure);
  EXPECT_THROW(CircleMeasure({}, {}, -1.0), InvalidMeasure);
  EXPECT_THROW(FunctionSpec({Term{0, 0.5, 1.5, 1.0}}), InvalidFunction);
}

TEST(CircleMeasure, PartsAndMasses) {
  const CircleMeasure mu({{0.1, 0.25}, {0.3, 0.5}}, {{0.5, 0.75, 2.0}}, 0.125);
  EXPECT_DOUBLE_EQ(mu.atomic_mass(), 0.75);
  EXPECT_DOUBLE_EQ(mu.density_mass(), 0.5);
  EXPECT_DOUBLE_EQ(mu.total_mass(), 1.375);
  EXPECT_TRUE(mu.atomic_part().is_purely_atomic());
  EXPECT_FALSE(mu.density_part().has_atoms());
  ASSERT_TRUE(mu.find_atom(0.3));
  EXPECT_EQ(*mu.find_atom(0.3), 1u);
  EXPECT_FALSE(mu.find_atom(0.2));
}
