#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "framelab/errors.hpp"
#include "framelab/kaczmarz.hpp"
#include "oracles.hpp"

using namespace framelab;

namespace {

CoefficientTriangle triangle_for(const CircleMeasure& mu, int order) {
  return auxiliary_sequence(MomentTable::from_measure(mu, order), order);
}

void expect_row(const CoefficientTriangle& t, int n, std::vector<Complex> want) {
  ASSERT_EQ(t.row(n).size(), want.size());
  for (std::size_t k = 0; k < want.size(); ++k) {
    EXPECT_NEAR(std::abs(t.row(n)[k] - want[k]), 0.0, 1e-15) << "row " << n << " entry " << k;
  }
}

const CircleMeasure kTwoAtoms = CircleMeasure::atomic({{0.0, 0.5}, {0.5, 0.5}});
const FunctionSpec kPlusMinus = FunctionSpec::atom_values_only({{0.0, 1.0}, {0.5, -1.0}});

}  // namespace

TEST(AuxiliarySequence, LebesgueIsIdentity) {
  const auto t = triangle_for(CircleMeasure::lebesgue(), 3);
  expect_row(t, 0, {1.0});
  expect_row(t, 1, {0.0, 1.0});
  expect_row(t, 2, {0.0, 0.0, 1.0});
  expect_row(t, 3, {0.0, 0.0, 0.0, 1.0});
}

TEST(AuxiliarySequence, SinglePointMass) {
  const auto t = triangle_for(CircleMeasure::atomic({{0.0, 1.0}}), 1);
  expect_row(t, 0, {1.0});
  expect_row(t, 1, {-1.0, 1.0});
}

TEST(AuxiliarySequence, TwoAtoms) {
  const auto t = triangle_for(kTwoAtoms, 2);
  expect_row(t, 0, {1.0});
  expect_row(t, 1, {0.0, 1.0});
  expect_row(t, 2, {-1.0, 0.0, 1.0});
  // g_2 = e_2 - e_0 vanishes on {0, 1/2}
  const FunctionSpec g2({Term{2}, Term{0, 0.0, 1.0, -1.0}});
  EXPECT_NEAR(norm_sq(kTwoAtoms, g2), 0.0, 1e-30);
}

TEST(AuxiliarySequence, Errors) {
  EXPECT_THROW(triangle_for(CircleMeasure::lebesgue(), 4097), OrderTooLarge);
  KaczmarzOptions small;
  small.max_order = 8;
  EXPECT_THROW(auxiliary_sequence(MomentTable::from_measure(CircleMeasure::lebesgue(), 9), 9, small),
               OrderTooLarge);
  EXPECT_THROW(triangle_for(CircleMeasure(), 2), ZeroMass);
  EXPECT_THROW(auxiliary_sequence(MomentTable::from_measure(CircleMeasure::lebesgue(), 2), 3),
               InvalidArgument);
}

TEST(AuxiliarySequence, ReportsScaleAndStep) {
  const auto t = triangle_for(CircleMeasure::lebesgue().scaled(3.0), 2);
  EXPECT_DOUBLE_EQ(t.scale(), 3.0);
  EXPECT_DOUBLE_EQ(t.frequency_step(), 1.0);
  expect_row(t, 2, {0.0, 0.0, 1.0});
}

TEST(AuxiliarySequence, MatchesLiteralRecursion) {
  oracle::Gen gen(31);
  for (int trial = 0; trial < 25; ++trial) {
    const auto mu = trial % 5 == 0 ? CircleMeasure::cantor() : gen.measure();
    const int order = 40;
    const auto t = triangle_for(mu, order);
    std::vector<Complex> nu(order + 1);
    for (int q = 0; q <= order; ++q) nu[q] = moment(mu, q) / mu.total_mass();
    const auto ref = oracle::literal_triangle(nu, order);
    double worst = 0.0;
    for (int n = 0; n <= order; ++n) {
      EXPECT_EQ(t(n, n), Complex(1.0));
      for (int k = 0; k <= n; ++k) worst = std::max(worst, std::abs(t(n, k) - ref[n][k]));
    }
    EXPECT_LT(worst, 1e-9) << "trial " << trial;
  }
}

TEST(AnalysisCoefficients, KnownValues) {
  const auto leb = triangle_for(CircleMeasure::lebesgue(), 4);
  const auto c = analysis_coefficients(leb, CircleMeasure::lebesgue(), FunctionSpec::exponential(2));
  for (int n = 0; n <= 4; ++n) EXPECT_NEAR(std::abs(c[n] - (n == 2 ? 1.0 : 0.0)), 0.0, 1e-15);

  const auto two = analysis_coefficients(triangle_for(kTwoAtoms, 2), kTwoAtoms, kPlusMinus);
  EXPECT_NEAR(std::abs(two[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(two[1] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(two[2]), 0.0, 1e-15);

  const auto delta = CircleMeasure::atomic({{0.0, 1.0}});
  const auto d = analysis_coefficients(triangle_for(delta, 1), delta, FunctionSpec::constant(1.0));
  EXPECT_NEAR(std::abs(d[0] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d[1]), 0.0, 1e-15);
}

TEST(AnalysisCoefficients, MatchKaczmarzProjections) {
  oracle::Gen gen(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x;
    std::vector<double> w;
    std::vector<Atom> atoms;
    const int count = gen.integer(1, 6);
    for (int j = 0; j < count; ++j) {
      const double loc = (j + gen.uniform(0.0, 0.9)) / count;
      const double weight = gen.uniform(0.1, 1.0);
      atoms.push_back({loc, weight});
    }
    double mass = 0.0;
    for (const auto& a : atoms) mass += a.w;
    std::vector<AtomValue> values;
    std::vector<Complex> f;
    for (const auto& a : atoms) {
      x.push_back(a.x);
      w.push_back(a.w / mass);
      f.push_back(gen.box());
      values.push_back({a.x, f.back()});
    }
    const auto mu = CircleMeasure::atomic(atoms);
    const auto spec = FunctionSpec::atom_values_only(values);
    const int order = 30;
    const auto distances = oracle::kaczmarz_iteration(x, w, f, order);
    const auto t = triangle_for(mu, order);
    std::vector<int> orders(order + 1);
    for (int n = 0; n <= order; ++n) orders[n] = n;
    const auto rows = effectiveness_table(mu, t, spec, orders);
    for (int n = 0; n <= order; ++n) {
      // The library reports in units of mu, the oracle in units of mu / mass.
      EXPECT_NEAR(rows[n].residual, mass * distances[n], 1e-10) << "trial " << trial << " n " << n;
      EXPECT_NEAR(rows[n].defect, mass * distances[n], 1e-10);
    }
  }
}

TEST(ParsevalDefect, KnownValues) {
  const auto leb = CircleMeasure::lebesgue();
  EXPECT_NEAR(parseval_defect(leb, triangle_for(leb, 2), FunctionSpec::exponential(2), 2), 0.0, 1e-15);
  EXPECT_NEAR(parseval_defect(kTwoAtoms, triangle_for(kTwoAtoms, 1), kPlusMinus, 1), 0.0, 1e-15);
  EXPECT_NEAR(reconstruction_residual(leb, triangle_for(leb, 3), FunctionSpec::exponential(1), 1), 0.0, 1e-15);
  EXPECT_NEAR(reconstruction_residual(kTwoAtoms, triangle_for(kTwoAtoms, 1), kPlusMinus, 1), 0.0, 1e-15);

  const auto cantor = CircleMeasure::cantor();
  const auto t = triangle_for(cantor, 64);
  const auto e1 = FunctionSpec::exponential(1);
  const double d8 = parseval_defect(cantor, t, e1, 8);
  const double d64 = parseval_defect(cantor, t, e1, 64);
  EXPECT_GT(d8, 0.0);
  EXPECT_LT(d8, 1.0);
  EXPECT_GT(d64, 0.0);
  EXPECT_LT(d64, d8);
  EXPECT_NEAR(reconstruction_residual(cantor, t, e1, 64), d64, 1e-8);
}

TEST(ParsevalDefect, CantorEffectivenessFrozen) {
  // Values from an independent multiprecision run of the same recursion.
  const auto cantor = CircleMeasure::cantor();
  const auto t = triangle_for(cantor, 512);
  const std::array<int, 5> orders{32, 64, 128, 256, 512};
  const std::array<double, 5> expected{0.030303714789, 0.018756895030, 0.014505557501,
                                       0.009984203773, 0.006462554972};
  const auto rows = effectiveness_table(cantor, t, FunctionSpec::exponential(1), orders);
  for (std::size_t i = 0; i < orders.size(); ++i) EXPECT_NEAR(rows[i].defect, expected[i], 1e-9);
}

TEST(ParsevalDefect, MonotoneAndMatchesResidual) {
  oracle::Gen gen(99);
  for (int trial = 0; trial < 30; ++trial) {
    const bool cantor = trial % 3 == 0;
    const auto mu = cantor ? CircleMeasure::cantor(gen.uniform(0.5, 2.0)) : gen.measure();
    const auto f = gen.function(mu, cantor);
    const auto t = triangle_for(mu, 64);
    const std::vector<int> orders{0, 1, 2, 4, 8, 16, 32, 64};
    const auto rows = effectiveness_table(mu, t, f, orders);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      EXPECT_GE(rows[i].defect, -1e-10);
      EXPECT_NEAR(rows[i].defect, rows[i].residual, 1e-8) << "trial " << trial;
      if (i > 0) EXPECT_LE(rows[i].defect, rows[i - 1].defect + 1e-12);
    }
  }
}

TEST(ParsevalDefect, SingularMeasuresImproveFrom32To512) {
  oracle::Gen gen(3);
  const auto cantor = CircleMeasure::cantor();
  const auto atoms = CircleMeasure::atomic({{0.1, 0.3}, {0.35, 0.2}, {0.8, 0.5}});
  const auto tc = triangle_for(cantor, 512);
  const auto ta = triangle_for(atoms, 512);
  const std::vector<int> orders{32, 512};
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = gen.function(cantor, true);
    if (norm_sq(cantor, f) < 1e-6) continue;
    const auto rc = effectiveness_table(cantor, tc, f, orders);
    EXPECT_LT(rc[1].defect, rc[0].defect) << "cantor trial " << trial;
    const auto ra = effectiveness_table(atoms, ta, f, orders);
    EXPECT_LE(ra[1].defect, ra[0].defect);
  }
}
