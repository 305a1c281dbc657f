#include "framelab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "framelab/errors.hpp"

namespace framelab {

namespace {

// sin(pi x) with argument reduction, exact zeros at integers.
double sinpi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0.0) r += 2.0;
  if (r == 0.0 || r == 1.0) return 0.0;
  return std::sin(kPi * r);
}

double cospi(double x) {
  double r = std::fmod(std::abs(x), 2.0);
  if (r == 0.5 || r == 1.5) return 0.0;
  return std::cos(kPi * r);
}

void check_finite(double value, const char* what) {
  if (!std::isfinite(value)) throw InvalidMeasure(std::string(what) + " must be finite");
}

// Terms sharing one interval, with merged frequencies.
struct TermGroup {
  double u = 0.0;
  double v = 1.0;
  std::vector<std::pair<long, Complex>> entries;  // sorted by frequency
  long min_m() const { return entries.front().first; }
  long max_m() const { return entries.back().first; }
};

std::vector<TermGroup> group_terms(const std::vector<Term>& terms) {
  std::map<std::pair<double, double>, std::map<long, Complex>> grouped;
  for (const auto& t : terms) grouped[{t.u, t.v}][t.m] += t.coef;
  std::vector<TermGroup> groups;
  for (auto& [interval, freqs] : grouped) {
    TermGroup g{interval.first, interval.second, {}};
    for (auto& [m, c] : freqs) {
      if (c != Complex{}) g.entries.emplace_back(m, c);
    }
    if (!g.entries.empty()) groups.push_back(std::move(g));
  }
  return groups;
}

constexpr long kKernelTableLimit = 1L << 24;

// sum_{p in a, q in b} a_p conj(b_q) kernel(m_q - m_p)
template <class Kernel>
Complex bilinear_sum(const TermGroup& a, const TermGroup& b, Kernel&& kernel) {
  const long dmin = b.min_m() - a.max_m();
  const long dmax = b.max_m() - a.min_m();
  Complex total{};
  if (dmax - dmin + 1 <= kKernelTableLimit) {
    std::vector<Complex> table(static_cast<std::size_t>(dmax - dmin + 1));
    for (long d = dmin; d <= dmax; ++d) table[static_cast<std::size_t>(d - dmin)] = kernel(d);
    for (const auto& [mp, cp] : a.entries) {
      Complex acc{};
      const long offset = -mp - dmin;
      for (const auto& [mq, cq] : b.entries) {
        acc += std::conj(cq) * table[static_cast<std::size_t>(mq + offset)];
      }
      total += cp * acc;
    }
    return total;
  }
  for (const auto& [mp, cp] : a.entries) {
    for (const auto& [mq, cq] : b.entries) total += cp * std::conj(cq) * kernel(mq - mp);
  }
  return total;
}

void check_cantor(const CircleMeasure& measure, const FunctionSpec& f) {
  if (measure.cantor_weight() > 0.0 && !f.is_trigonometric_polynomial()) {
    throw CantorRestriction(
        "functions paired with a Cantor component must be trigonometric polynomials on [0,1)");
  }
}

}  // namespace

Complex unit_phase(double t) {
  double r = t - std::round(t);
  // Exact values at quarter turns keep lattice fixtures free of round-off.
  if (r == 0.0) return {1.0, 0.0};
  if (r == 0.5 || r == -0.5) return {-1.0, 0.0};
  if (r == 0.25) return {0.0, 1.0};
  if (r == -0.25) return {0.0, -1.0};
  return {std::cos(2.0 * kPi * r), std::sin(2.0 * kPi * r)};
}

Complex interval_transform(long n, double c, double d) {
  const double length = d - c;
  if (n == 0) return {length, 0.0};
  const double nd = static_cast<double>(n);
  // e^{-i pi n (c+d)} sin(pi n (d-c)) / (pi n)
  return unit_phase(-0.5 * nd * (c + d)) * (sinpi(nd * length) / (kPi * nd));
}

Complex cantor_transform(long n) {
  if (n == 0) return {1.0, 0.0};
  const double nd = static_cast<double>(n);
  double product = 1.0;
  double scale = 1.0 / 3.0;
  while (std::abs(kPi * nd * scale) >= kCantorTailThreshold) {
    product *= cospi(nd * scale);
    scale /= 3.0;
  }
  return (n % 2 == 0) ? Complex{product, 0.0} : Complex{-product, 0.0};
}

// ---------------------------------------------------------------------------
// CircleMeasure

CircleMeasure::CircleMeasure(std::vector<Atom> atoms, std::vector<DensityPiece> pieces,
                             double cantor_weight)
    : atoms_(std::move(atoms)), pieces_(std::move(pieces)), cantor_weight_(cantor_weight) {
  for (const auto& atom : atoms_) {
    check_finite(atom.x, "atom location");
    check_finite(atom.w, "atom weight");
    if (atom.x < 0.0 || atom.x >= 1.0) throw InvalidMeasure("atom location outside [0,1)");
    if (atom.w <= 0.0) throw InvalidMeasure("atom weight must be positive");
  }
  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& l, const Atom& r) { return l.x < r.x; });
  for (std::size_t i = 1; i < atoms_.size(); ++i) {
    if (atoms_[i].x - atoms_[i - 1].x <= kAtomMatchTolerance) {
      throw InvalidMeasure("atom locations must be distinct");
    }
  }

  for (const auto& piece : pieces_) {
    check_finite(piece.a, "density piece start");
    check_finite(piece.b, "density piece end");
    check_finite(piece.h, "density height");
    if (!(0.0 <= piece.a && piece.a < piece.b && piece.b <= 1.0)) {
      throw InvalidMeasure("density piece must satisfy 0 <= start < end <= 1");
    }
    if (piece.h < 0.0) throw InvalidMeasure("density height must be nonnegative");
  }
  std::sort(pieces_.begin(), pieces_.end(),
            [](const DensityPiece& l, const DensityPiece& r) { return l.a < r.a; });
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    if (pieces_[i].a < pieces_[i - 1].b) throw InvalidMeasure("density pieces overlap");
  }

  check_finite(cantor_weight_, "Cantor weight");
  if (cantor_weight_ < 0.0) throw InvalidMeasure("Cantor weight must be nonnegative");
}

CircleMeasure CircleMeasure::lebesgue() { return CircleMeasure({}, {{0.0, 1.0, 1.0}}); }

CircleMeasure CircleMeasure::cantor(double weight) { return CircleMeasure({}, {}, weight); }

CircleMeasure CircleMeasure::atomic(std::vector<Atom> atoms) {
  return CircleMeasure(std::move(atoms), {});
}

double CircleMeasure::atomic_mass() const {
  double mass = 0.0;
  for (const auto& atom : atoms_) mass += atom.w;
  return mass;
}

double CircleMeasure::density_mass() const {
  double mass = 0.0;
  for (const auto& piece : pieces_) mass += piece.h * (piece.b - piece.a);
  return mass;
}

double CircleMeasure::total_mass() const {
  return atomic_mass() + density_mass() + cantor_weight_;
}

bool CircleMeasure::has_density() const {
  return std::any_of(pieces_.begin(), pieces_.end(),
                     [](const DensityPiece& p) { return p.h > 0.0; });
}

std::optional<std::size_t> CircleMeasure::find_atom(double x) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (std::abs(atoms_[i].x - x) <= kAtomMatchTolerance) return i;
  }
  return std::nullopt;
}

CircleMeasure CircleMeasure::atomic_part() const { return CircleMeasure(atoms_, {}); }

CircleMeasure CircleMeasure::density_part() const { return CircleMeasure({}, pieces_); }

CircleMeasure CircleMeasure::scaled(double factor) const {
  if (!(factor > 0.0)) throw InvalidArgument("measure scale factor must be positive");
  auto atoms = atoms_;
  for (auto& atom : atoms) atom.w *= factor;
  auto pieces = pieces_;
  for (auto& piece : pieces) piece.h *= factor;
  return CircleMeasure(std::move(atoms), std::move(pieces), cantor_weight_ * factor);
}

// ---------------------------------------------------------------------------
// FunctionSpec

FunctionSpec::FunctionSpec(std::vector<Term> terms, std::vector<AtomValue> atom_values)
    : terms_(std::move(terms)), atom_values_(std::move(atom_values)) {
  for (const auto& t : terms_) {
    if (!(std::isfinite(t.u) && std::isfinite(t.v) && 0.0 <= t.u && t.u < t.v && t.v <= 1.0)) {
      throw InvalidFunction("term interval must satisfy 0 <= u < v <= 1");
    }
    if (!std::isfinite(t.coef.real()) || !std::isfinite(t.coef.imag())) {
      throw InvalidFunction("term coefficient must be finite");
    }
  }
  for (std::size_t i = 0; i < atom_values_.size(); ++i) {
    const auto& av = atom_values_[i];
    if (!(std::isfinite(av.x) && av.x >= 0.0 && av.x < 1.0)) {
      throw InvalidFunction("atom value location outside [0,1)");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(atom_values_[j].x - av.x) <= kAtomMatchTolerance) {
        throw InvalidFunction("duplicate atom value location");
      }
    }
  }
}

FunctionSpec FunctionSpec::constant(Complex c) { return FunctionSpec({{0, 0.0, 1.0, c}}); }

FunctionSpec FunctionSpec::exponential(int m, Complex coef) {
  return FunctionSpec({{m, 0.0, 1.0, coef}});
}

FunctionSpec FunctionSpec::indicator(double u, double v, Complex coef) {
  return FunctionSpec({{0, u, v, coef}});
}

FunctionSpec FunctionSpec::trigonometric(int first, std::span<const Complex> coeffs) {
  std::vector<Term> terms;
  terms.reserve(coeffs.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    terms.push_back({first + static_cast<int>(j), 0.0, 1.0, coeffs[j]});
  }
  return FunctionSpec(std::move(terms));
}

FunctionSpec FunctionSpec::atom_values_only(std::vector<AtomValue> values) {
  return FunctionSpec({}, std::move(values));
}

bool FunctionSpec::is_trigonometric_polynomial() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.full_interval(); });
}

bool FunctionSpec::is_zero() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.coef == Complex{}; }) &&
         std::all_of(atom_values_.begin(), atom_values_.end(),
                     [](const AtomValue& a) { return a.value == Complex{}; });
}

std::optional<Complex> FunctionSpec::atom_override(double x) const {
  for (const auto& av : atom_values_) {
    if (std::abs(av.x - x) <= kAtomMatchTolerance) return av.value;
  }
  return std::nullopt;
}

Complex FunctionSpec::evaluate_terms(double x) const {
  Complex sum{};
  for (const auto& t : terms_) {
    if (t.u <= x && x < t.v) sum += t.coef * unit_phase(static_cast<double>(t.m) * x);
  }
  return sum;
}

Complex FunctionSpec::evaluate(double x) const {
  if (auto v = atom_override(x)) return *v;
  return evaluate_terms(x);
}

FunctionSpec FunctionSpec::with_atom_value(double x, Complex value) const {
  auto values = atom_values_;
  auto it = std::find_if(values.begin(), values.end(), [x](const AtomValue& av) {
    return std::abs(av.x - x) <= kAtomMatchTolerance;
  });
  if (it != values.end()) {
    it->value = value;
  } else {
    values.push_back({x, value});
  }
  return FunctionSpec(terms_, std::move(values));
}

FunctionSpec FunctionSpec::scaled(Complex factor) const {
  auto terms = terms_;
  for (auto& t : terms) t.coef *= factor;
  auto values = atom_values_;
  for (auto& av : values) av.value *= factor;
  return FunctionSpec(std::move(terms), std::move(values));
}

FunctionSpec operator+(const FunctionSpec& a, const FunctionSpec& b) {
  auto terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  // Overrides of the sum: pointwise sum at every location overridden on either side.
  std::vector<AtomValue> values;
  auto add_location = [&](double x) {
    for (const auto& v : values) {
      if (std::abs(v.x - x) <= kAtomMatchTolerance) return;
    }
    values.push_back({x, a.evaluate(x) + b.evaluate(x)});
  };
  for (const auto& av : a.atom_values_) add_location(av.x);
  for (const auto& av : b.atom_values_) add_location(av.x);
  return FunctionSpec(std::move(terms), std::move(values));
}

FunctionSpec operator-(const FunctionSpec& a, const FunctionSpec& b) { return a + b.scaled(-1.0); }

// ---------------------------------------------------------------------------
// Moments and inner products

Complex moment(const CircleMeasure& measure, long n) {
  Complex sum{};
  for (const auto& atom : measure.atoms()) {
    sum += atom.w * unit_phase(-static_cast<double>(n) * atom.x);
  }
  for (const auto& piece : measure.pieces()) {
    if (piece.h > 0.0) sum += piece.h * interval_transform(n, piece.a, piece.b);
  }
  if (measure.cantor_weight() > 0.0) sum += measure.cantor_weight() * cantor_transform(n);
  return sum;
}

Complex inner_product(const CircleMeasure& measure, const FunctionSpec& f, const FunctionSpec& g) {
  check_cantor(measure, f);
  check_cantor(measure, g);

  Complex total{};
  for (const auto& atom : measure.atoms()) {
    total += atom.w * f.evaluate(atom.x) * std::conj(g.evaluate(atom.x));
  }

  const bool need_density = measure.has_density();
  const bool need_cantor = measure.cantor_weight() > 0.0;
  if (!need_density && !need_cantor) return total;

  const auto f_groups = group_terms(f.terms());
  const auto g_groups = group_terms(g.terms());

  if (need_density) {
    for (const auto& piece : measure.pieces()) {
      if (piece.h <= 0.0) continue;
      for (const auto& fg : f_groups) {
        for (const auto& gg : g_groups) {
          const double lo = std::max({piece.a, fg.u, gg.u});
          const double hi = std::min({piece.b, fg.v, gg.v});
          if (!(lo < hi)) continue;
          total += piece.h * bilinear_sum(fg, gg, [lo, hi](long d) {
                     return interval_transform(d, lo, hi);
                   });
        }
      }
    }
  }

  if (need_cantor) {
    const double weight = measure.cantor_weight();
    for (const auto& fg : f_groups) {
      for (const auto& gg : g_groups) {
        total += weight * bilinear_sum(fg, gg, [](long d) { return cantor_transform(d); });
      }
    }
  }
  return total;
}

double norm_sq(const CircleMeasure& measure, const FunctionSpec& f) {
  return std::max(0.0, inner_product(measure, f, f).real());
}

std::vector<Complex> exponential_products(const CircleMeasure& measure, const FunctionSpec& f,
                                          long first, long last) {
  check_cantor(measure, f);
  if (last < first) return {};
  std::vector<Complex> out(static_cast<std::size_t>(last - first + 1));

  std::vector<Complex> atom_values;
  atom_values.reserve(measure.atoms().size());
  for (const auto& atom : measure.atoms()) atom_values.push_back(atom.w * f.evaluate(atom.x));

  for (long k = first; k <= last; ++k) {
    Complex sum{};
    for (std::size_t i = 0; i < atom_values.size(); ++i) {
      sum += atom_values[i] * unit_phase(-static_cast<double>(k) * measure.atoms()[i].x);
    }
    for (const auto& piece : measure.pieces()) {
      if (piece.h <= 0.0) continue;
      for (const auto& t : f.terms()) {
        const double lo = std::max(piece.a, t.u);
        const double hi = std::min(piece.b, t.v);
        if (lo < hi) sum += piece.h * t.coef * interval_transform(k - t.m, lo, hi);
      }
    }
    if (measure.cantor_weight() > 0.0) {
      for (const auto& t : f.terms()) {
        sum += measure.cantor_weight() * t.coef * cantor_transform(k - t.m);
      }
    }
    out[static_cast<std::size_t>(k - first)] = sum;
  }
  return out;
}

// ---------------------------------------------------------------------------
// MomentTable

MomentTable MomentTable::from_measure(const CircleMeasure& measure, int order) {
  if (order < 0) throw InvalidArgument("moment table order must be nonnegative");
  std::vector<Complex> values(static_cast<std::size_t>(order) + 1);
  for (int n = 0; n <= order; ++n) values[static_cast<std::size_t>(n)] = moment(measure, n);
  values[0] = {measure.total_mass(), 0.0};
  return from_nonnegative(std::move(values));
}

MomentTable MomentTable::from_nonnegative(std::vector<Complex> values) {
  if (values.empty()) throw InvalidArgument("moment table needs at least the zeroth moment");
  MomentTable table;
  table.order_ = static_cast<int>(values.size()) - 1;
  values[0] = {values[0].real(), 0.0};
  table.values_ = std::move(values);
  return table;
}

Complex MomentTable::operator()(long n) const {
  if (std::abs(n) > order_) throw InvalidArgument("moment index outside the cached range");
  const auto& v = values_[static_cast<std::size_t>(std::abs(n))];
  return n >= 0 ? v : std::conj(v);
}

}  // namespace framelab
