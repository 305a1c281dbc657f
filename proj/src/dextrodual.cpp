#include "framelab/dextrodual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "framelab/errors.hpp"

namespace framelab {

namespace {

// Interior margin when packing Parseval intervals around atoms.
constexpr double kPackingMargin = 1e-12;

std::vector<DensityPiece> positive_support(const CircleMeasure& measure) {
  std::vector<DensityPiece> support;
  for (const auto& piece : measure.pieces()) {
    if (piece.h > 0.0) support.push_back(piece);
  }
  return support;
}

// Lebesgue measure on the union of the given pieces.
CircleMeasure lebesgue_on(const std::vector<DensityPiece>& pieces) {
  std::vector<DensityPiece> unit;
  unit.reserve(pieces.size());
  for (const auto& p : pieces) unit.push_back({p.a, p.b, 1.0});
  return CircleMeasure({}, std::move(unit));
}

FunctionSpec terms_only(const FunctionSpec& f) { return FunctionSpec(f.terms()); }

FunctionSpec series_function(const TwoSidedCoefficients& coeffs, double r) {
  std::vector<Complex> weighted(coeffs.values.size());
  for (int n = -coeffs.order; n <= coeffs.order; ++n) {
    weighted[static_cast<std::size_t>(n + coeffs.order)] = coeffs.at(n) * std::pow(r, std::abs(n));
  }
  return FunctionSpec::trigonometric(-coeffs.order, weighted);
}

Complex evaluate_series(const TwoSidedCoefficients& coeffs, double r, double x) {
  Complex sum{};
  for (int n = -coeffs.order; n <= coeffs.order; ++n) {
    sum += coeffs.at(n) * std::pow(r, std::abs(n)) * unit_phase(static_cast<double>(n) * x);
  }
  return sum;
}

void require_atom_values(const CircleMeasure& measure, const FunctionSpec& f) {
  if (f.atom_values().empty()) return;
  for (const auto& atom : measure.atoms()) {
    if (!f.atom_override(atom.x)) {
      throw MissingAtomValue("function specifies atom values but none at x = " +
                             std::to_string(atom.x));
    }
  }
}

// Leftmost feasible placement, then shift each interval right toward centered.
std::optional<std::vector<Interval>> pack_parseval(const std::vector<Atom>& atoms, double split) {
  std::vector<Interval> out(atoms.size());
  double cursor = 0.0;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const double b = atoms[k].x;
    const double a = atoms[k].w;
    const double lo = std::max(cursor, b - a + kPackingMargin);
    if (!(lo < b - kPackingMargin) || lo + a > split) return std::nullopt;
    out[k] = {lo, lo + a};
    cursor = lo + a;
  }
  for (std::size_t k = atoms.size(); k-- > 0;) {
    const double limit = (k + 1 == atoms.size()) ? split : out[k + 1].lo;
    const double a = atoms[k].w;
    const double centered = atoms[k].x - 0.5 * a;
    const double lo = std::min(std::max(out[k].lo, centered), limit - a);
    out[k] = {lo, lo + a};
  }
  return out;
}

}  // namespace

double TwoSidedCoefficients::square_sum() const {
  double sum = 0.0;
  for (const auto& v : values) sum += std::norm(v);
  return sum;
}

ErrorReport reconstruction_error(const CircleMeasure& measure, const TwoSidedCoefficients& coeffs,
                                 const FunctionSpec& f, double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw InvalidArgument("radius must lie in [0, 1]");
  ErrorReport report;
  for (const auto& atom : measure.atoms()) {
    report.atom_error_sq += atom.w * std::norm(evaluate_series(coeffs, r, atom.x) - f.evaluate(atom.x));
  }
  const CircleMeasure continuous({}, measure.pieces(), measure.cantor_weight());
  if (continuous.has_density() || continuous.cantor_weight() > 0.0) {
    const FunctionSpec difference = series_function(coeffs, r) - terms_only(f);
    report.density_error_sq = norm_sq(continuous, difference);
  }
  report.total_error_sq = report.atom_error_sq + report.density_error_sq;
  return report;
}

// ---------------------------------------------------------------------------

ExtensionPlan::ExtensionPlan(CircleMeasure measure, double split, std::vector<Interval> intervals)
    : measure_(std::move(measure)), split_(split), intervals_(std::move(intervals)),
      support_(positive_support(measure_)) {
  if (intervals_.size() != measure_.atoms().size()) {
    throw InvalidArgument("extension plan needs one interval per atom");
  }
  const auto& atoms = measure_.atoms();
  for (std::size_t k = 0; k < intervals_.size(); ++k) {
    const auto& J = intervals_[k];
    if (!(J.lo >= 0.0 && J.hi <= split_ && J.lo < atoms[k].x && atoms[k].x < J.hi)) {
      throw InvalidArgument("extension interval must lie in [0, c] with its atom inside");
    }
    if (k > 0 && J.lo < intervals_[k - 1].hi) throw AtomTooClose("extension intervals overlap");
  }
  for (const auto& piece : support_) {
    if (piece.a < split_) throw InvalidArgument("density support must lie in [c, 1)");
  }
}

ExtensionPlan build_extension_plan(const CircleMeasure& measure,
                                   const ExtensionPlanOptions& options) {
  if (measure.cantor_weight() > 0.0) {
    throw InvalidArgument("extension plans take atoms plus density only");
  }
  const auto support = positive_support(measure);
  double split = 1.0;
  if (options.split) {
    split = *options.split;
  } else if (!support.empty()) {
    split = support.front().a;
  }
  // Without atoms the split may sit at 0.
  const double lowest = measure.has_atoms() ? std::nextafter(0.0, 1.0) : 0.0;
  if (!(split >= lowest && split <= 1.0)) throw InvalidArgument("split point must lie in (0, 1]");
  for (const auto& piece : support) {
    if (piece.a < split) throw InvalidArgument("density support must lie in [c, 1)");
  }
  const auto& atoms = measure.atoms();
  for (const auto& atom : atoms) {
    if (!(atom.x > 0.0 && atom.x < split)) {
      throw AtomTooClose("atoms must lie strictly inside (0, c)");
    }
  }

  if (options.parseval) {
    auto packed = pack_parseval(atoms, split);
    if (!packed) {
      throw ParsevalInfeasible("intervals of length a_k cannot be packed disjointly in (0, c)");
    }
    return ExtensionPlan(measure, split, std::move(*packed));
  }

  std::vector<Interval> intervals;
  intervals.reserve(atoms.size());
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const double b = atoms[k].x;
    double delta = 0.5 * std::min(b, split - b);
    if (k > 0) delta = std::min(delta, (b - atoms[k - 1].x) / 3.0);
    if (k + 1 < atoms.size()) delta = std::min(delta, (atoms[k + 1].x - b) / 3.0);
    if (!(delta > kPackingMargin)) throw AtomTooClose("atom has no room for an extension interval");
    intervals.push_back({b - delta, b + delta});
  }
  return ExtensionPlan(measure, split, std::move(intervals));
}

double extension_norm_sq(const ExtensionPlan& plan, const FunctionSpec& f) {
  require_atom_values(plan.measure(), f);
  double total = 0.0;
  const auto& atoms = plan.measure().atoms();
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    total += std::norm(f.evaluate(atoms[k].x)) * plan.intervals()[k].length();
  }
  if (!plan.support().empty()) total += norm_sq(lebesgue_on(plan.support()), terms_only(f));
  return total;
}

TwoSidedCoefficients analysis_coefficients_mixed(const ExtensionPlan& plan, const FunctionSpec& f,
                                                 int order) {
  if (order < 0) throw InvalidArgument("order must be nonnegative");
  require_atom_values(plan.measure(), f);
  const auto& atoms = plan.measure().atoms();
  std::vector<Complex> atom_values;
  for (const auto& atom : atoms) atom_values.push_back(f.evaluate(atom.x));

  TwoSidedCoefficients out(order);
  for (int n = -order; n <= order; ++n) {
    Complex sum{};
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      const auto& J = plan.intervals()[k];
      sum += atom_values[k] * interval_transform(n, J.lo, J.hi);
    }
    for (const auto& piece : plan.support()) {
      for (const auto& t : f.terms()) {
        const double lo = std::max(piece.a, t.u);
        const double hi = std::min(piece.b, t.v);
        if (lo < hi) sum += t.coef * interval_transform(n - t.m, lo, hi);
      }
    }
    out.at(n) = sum;
  }
  return out;
}

ErrorReport reconstruct_mixed(const ExtensionPlan& plan, const FunctionSpec& f, int order) {
  return reconstruction_error(plan.measure(), analysis_coefficients_mixed(plan, f, order), f);
}

FrameBounds frame_bounds_extension(const ExtensionPlan& plan) {
  double lower = std::numeric_limits<double>::infinity();
  double upper = 0.0;
  const auto& atoms = plan.measure().atoms();
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const double ratio = plan.intervals()[k].length() / atoms[k].w;
    lower = std::min(lower, ratio);
    upper = std::max(upper, ratio);
  }
  for (const auto& piece : plan.support()) {
    lower = std::min(lower, 1.0 / piece.h);
    upper = std::max(upper, 1.0 / piece.h);
  }
  if (upper == 0.0) return {1.0, 1.0};
  return {lower, upper};
}

// ---------------------------------------------------------------------------

ExamplecaseDual build_examplecase_dual(const CircleMeasure& measure, int truncation) {
  if (measure.cantor_weight() > 0.0 || !measure.has_atoms()) {
    throw InvalidArgument("the singular part must be a nonempty finite set of atoms");
  }
  const auto support = positive_support(measure);
  if (support.empty()) throw InvalidArgument("the measure needs a density part");

  const Interval sing{measure.atoms().front().x, measure.atoms().back().x};
  const Interval dens{support.front().a, support.back().b};
  const bool density_right = sing.hi < dens.lo;
  const bool density_left = dens.hi < sing.lo;
  if (!(density_right || density_left) || sing.lo <= 0.0 || dens.lo <= 0.0) {
    throw NotSeparated("singular hull and density hull must be disjoint and away from 0");
  }

  // Each side grows by a third of the gap to the other hull or to the circle boundary.
  auto inflate = [](const Interval& self, double left_obstacle, double right_obstacle) {
    return Interval{self.lo - (self.lo - left_obstacle) / 3.0,
                    self.hi + (right_obstacle - self.hi) / 3.0};
  };
  ExamplecaseDual dual;
  dual.measure = measure;
  dual.singular_hull = sing;
  dual.density_hull = dens;
  if (density_right) {
    dual.inner = inflate(sing, 0.0, dens.lo);
    dual.outer = inflate(dens, sing.hi, 1.0);
  } else {
    dual.inner = inflate(sing, dens.hi, 1.0);
    dual.outer = inflate(dens, 0.0, sing.lo);
  }
  dual.singular_part = measure.atomic_part();
  dual.support = support;
  dual.singular_triangle =
      auxiliary_sequence(MomentTable::from_measure(dual.singular_part, truncation), truncation);
  return dual;
}

std::vector<Complex> singular_operator_coefficients(const ExamplecaseDual& dual,
                                                    const FunctionSpec& f) {
  const auto products =
      exponential_products(dual.singular_part, f, 0, dual.singular_triangle.order());
  return analysis_from_products(dual.singular_triangle, products);
}

TwoSidedCoefficients analysis_coefficients_examplecase(const ExamplecaseDual& dual,
                                                       const FunctionSpec& f, int order) {
  if (order < 0) throw InvalidArgument("order must be nonnegative");
  const int truncation = dual.singular_triangle.order();
  if (truncation < order) {
    throw TruncationOrder("singular-part truncation is below the requested order");
  }
  const auto a_coeffs = singular_operator_coefficients(dual, f);

  // <A(f) chi_I1, e_n> = sum_j c_j I(n - j, I1)
  const long dmin = -order - truncation;
  std::vector<Complex> table(static_cast<std::size_t>(order - dmin + 1));
  for (long d = dmin; d <= order; ++d) {
    table[static_cast<std::size_t>(d - dmin)] = interval_transform(d, dual.inner.lo, dual.inner.hi);
  }

  TwoSidedCoefficients out(order);
  for (int n = -order; n <= order; ++n) {
    Complex sum{};
    for (int j = 0; j <= truncation; ++j) {
      sum += a_coeffs[static_cast<std::size_t>(j)] * table[static_cast<std::size_t>(n - j - dmin)];
    }
    for (const auto& piece : dual.support) {
      for (const auto& t : f.terms()) {
        const double lo = std::max(piece.a, t.u);
        const double hi = std::min(piece.b, t.v);
        if (lo < hi) sum += t.coef * interval_transform(n - t.m, lo, hi);
      }
    }
    out.at(n) = sum;
  }
  return out;
}

ErrorReport reconstruct_examplecase(const ExamplecaseDual& dual, const FunctionSpec& f, int order) {
  return reconstruction_error(dual.measure, analysis_coefficients_examplecase(dual, f, order), f);
}

PythagorasCheck bessel_pythagoras_check(const ExamplecaseDual& dual, const FunctionSpec& f,
                                        int order) {
  PythagorasCheck check;
  check.lhs = analysis_coefficients_examplecase(dual, f, order).square_sum();
  const auto a_coeffs = singular_operator_coefficients(dual, f);
  const CircleMeasure on_inner({}, {{dual.inner.lo, dual.inner.hi, 1.0}});
  check.rhs = norm_sq(on_inner, FunctionSpec::trigonometric(0, a_coeffs)) +
              norm_sq(lebesgue_on(dual.support), terms_only(f));
  return check;
}

// ---------------------------------------------------------------------------

WitnessResult nonrepresentability_witness(const CircleMeasure& measure, const FunctionSpec& target,
                                          int order) {
  if (order < 0) throw InvalidArgument("order must be nonnegative");
  const int size = 2 * order + 1;
  const auto moments = MomentTable::from_measure(measure, 2 * order);

  // G(j, k) = <e_k, e_j> = mu^(j - k), indices shifted by -order.
  Eigen::MatrixXcd gram(size, size);
  for (int j = 0; j < size; ++j) {
    for (int k = 0; k < size; ++k) gram(j, k) = moments(j - k);
  }
  const auto products = exponential_products(measure, target, -order, order);
  Eigen::VectorXcd rhs(size);
  for (int j = 0; j < size; ++j) rhs(j) = products[static_cast<std::size_t>(j)];

  WitnessResult result;
  result.order = order;
  Eigen::LLT<Eigen::MatrixXcd> llt(gram);
  auto well_posed = [&](const Eigen::LLT<Eigen::MatrixXcd>& f) {
    if (f.info() != Eigen::Success) return false;
    const Eigen::VectorXd diag = f.matrixLLT().diagonal().real();
    return diag.minCoeff() > 1e-7 * diag.maxCoeff();
  };
  if (!well_posed(llt)) {
    const double ridge = 1e-12 * std::max(1.0, gram.diagonal().real().maxCoeff());
    Eigen::MatrixXcd regularized = gram;
    regularized.diagonal().array() += ridge;
    llt.compute(regularized);
    if (llt.info() != Eigen::Success) throw SingularGram("Gram system is singular even with ridge");
    result.ridge_applied = true;
  }
  const Eigen::VectorXcd p = llt.solve(rhs);

  for (const auto& atom : measure.atoms()) {
    const Complex wanted = target.evaluate(atom.x);
    if (wanted == Complex{}) continue;
    Complex value{};
    for (int j = 0; j < size; ++j) value += p(j) * unit_phase(static_cast<double>(j - order) * atom.x);
    result.atom_mismatch = std::max(result.atom_mismatch, std::abs(value - wanted));
  }
  result.lebesgue_norm_sq = p.squaredNorm();
  const double quadratic = p.dot(gram * p).real();
  const double cross = p.dot(rhs).real();  // Re sum conj(p_j) <t, e_j>
  result.distance_sq = std::max(0.0, quadratic - 2.0 * cross + norm_sq(measure, target));
  return result;
}

}  // namespace framelab
