#include "framelab/realline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "framelab/errors.hpp"

namespace framelab {

namespace {

double fold(double y, double period) {
  double u = (y - period * std::floor(y / period)) / period;
  if (u >= 1.0 || u < 0.0) u = 0.0;
  return u;
}

// e^{-i q k} with the integer argument reduced exactly by the libm.
Complex integer_phase(long q, long k) {
  return std::polar(1.0, -static_cast<double>(q) * static_cast<double>(k));
}

}  // namespace

RealAtomicMeasure::RealAtomicMeasure(std::vector<RealAtom> atoms) : atoms_(std::move(atoms)) {
  for (const auto& atom : atoms_) {
    if (!std::isfinite(atom.y) || !std::isfinite(atom.w)) {
      throw InvalidMeasure("real atom fields must be finite");
    }
    if (atom.w <= 0.0) throw InvalidMeasure("real atom weight must be positive");
  }
  std::sort(atoms_.begin(), atoms_.end(),
            [](const RealAtom& l, const RealAtom& r) { return l.y < r.y; });
  for (std::size_t i = 1; i < atoms_.size(); ++i) {
    if (atoms_[i].y - atoms_[i - 1].y <= kAtomMatchTolerance) {
      throw InvalidMeasure("real atom positions must be distinct");
    }
  }
  if (atoms_.empty()) throw InvalidMeasure("real measure needs at least one atom");
}

double RealAtomicMeasure::total_mass() const {
  double mass = 0.0;
  for (const auto& atom : atoms_) mass += atom.w;
  return mass;
}

std::vector<Complex> align_values(const RealAtomicMeasure& measure,
                                  std::span<const RealValue> values) {
  std::vector<Complex> out;
  out.reserve(measure.atoms().size());
  for (const auto& atom : measure.atoms()) {
    const auto it = std::find_if(values.begin(), values.end(), [&](const RealValue& v) {
      return std::abs(v.y - atom.y) <= kAtomMatchTolerance;
    });
    if (it == values.end()) {
      throw MissingAtomValue("no value given for the atom at y = " + std::to_string(atom.y));
    }
    out.push_back(it->value);
  }
  return out;
}

double norm_sq(const RealAtomicMeasure& measure, std::span<const Complex> values) {
  if (values.size() != measure.atoms().size()) {
    throw InvalidFunction("value count does not match the atom count");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) total += measure.atoms()[i].w * std::norm(values[i]);
  return total;
}

CircleMeasure periodize(const RealAtomicMeasure& measure, double period) {
  if (!(period > 0.0) || !std::isfinite(period)) throw InvalidArgument("period must be positive");
  std::vector<Atom> folded;
  for (const auto& atom : measure.atoms()) folded.push_back({fold(atom.y, period), atom.w});
  std::sort(folded.begin(), folded.end(), [](const Atom& l, const Atom& r) { return l.x < r.x; });

  std::vector<Atom> merged;
  for (const auto& atom : folded) {
    if (!merged.empty() && atom.x - merged.back().x <= kAtomMatchTolerance) {
      merged.back().w += atom.w;
    } else {
      merged.push_back(atom);
    }
  }
  // Points just below 1 coincide with 0 on the circle.
  if (merged.size() > 1 && merged.front().x == 0.0 &&
      1.0 - merged.back().x <= kAtomMatchTolerance) {
    merged.front().w += merged.back().w;
    merged.pop_back();
  }
  return CircleMeasure::atomic(std::move(merged));
}

LatticeExpansion lattice_effective_expansion(const RealAtomicMeasure& measure, double c,
                                             std::span<const Complex> values,
                                             std::span<const int> orders) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("frequency scale c must be positive");
  if (values.size() != measure.atoms().size()) {
    throw InvalidFunction("value count does not match the atom count");
  }
  int top = 0;
  for (int order : orders) {
    if (order < 0) throw InvalidArgument("orders must be nonnegative");
    top = std::max(top, order);
  }
  const double step = 1.0 / c;

  // Generalized moments and products: integral of e^{-2 pi i q y / c}.
  std::vector<Complex> moments(static_cast<std::size_t>(top) + 1);
  std::vector<Complex> products(static_cast<std::size_t>(top) + 1);
  for (int q = 0; q <= top; ++q) {
    Complex m{};
    Complex p{};
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto& atom = measure.atoms()[i];
      const Complex phase = unit_phase(-static_cast<double>(q) * step * atom.y);
      m += atom.w * phase;
      p += atom.w * values[i] * phase;
    }
    moments[static_cast<std::size_t>(q)] = m;
    products[static_cast<std::size_t>(q)] = p;
  }
  const auto table = MomentTable::from_nonnegative(moments);

  LatticeExpansion out;
  KaczmarzOptions options;
  options.frequency_step = step;
  out.triangle = auxiliary_sequence(table, top, options);
  out.coefficients = analysis_from_products(out.triangle, products);
  const double f_norm = norm_sq(measure, values);
  for (int order : orders) {
    out.rows.push_back(
        {order, defect_from_coefficients(f_norm, out.triangle.scale(), out.coefficients, order),
         residual_from_coefficients(f_norm, table, products, out.coefficients, order)});
  }
  return out;
}

// ---------------------------------------------------------------------------

Complex SliceSystem::marginal_moment(long q) const {
  Complex sum{};
  for (const auto& slice : slices) sum += slice.weight * integer_phase(q, slice.k);
  return sum;
}

RealAtomicMeasure SliceSystem::reassemble() const {
  std::vector<RealAtom> atoms;
  for (const auto& slice : slices) {
    for (const auto& atom : slice.gamma.atoms()) {
      atoms.push_back({atom.x + static_cast<double>(slice.k), atom.w * slice.weight});
    }
  }
  return RealAtomicMeasure(std::move(atoms));
}

SliceSystem disintegrate(const RealAtomicMeasure& measure) {
  std::map<long, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < measure.atoms().size(); ++i) {
    groups[static_cast<long>(std::floor(measure.atoms()[i].y))].push_back(i);
  }
  SliceSystem system;
  for (auto& [k, indices] : groups) {
    Slice slice;
    slice.k = k;
    for (std::size_t i : indices) slice.weight += measure.atoms()[i].w;
    std::vector<Atom> local;
    for (std::size_t i : indices) {
      double x = measure.atoms()[i].y - static_cast<double>(k);
      if (x >= 1.0) x = std::nextafter(1.0, 0.0);
      local.push_back({x, measure.atoms()[i].w / slice.weight});
    }
    slice.gamma = CircleMeasure::atomic(std::move(local));
    slice.atom_indices = std::move(indices);
    system.total_mass += slice.weight;
    system.slices.push_back(std::move(slice));
  }
  return system;
}

DoubleExpansion::DoubleExpansion(int n_order, int m_order, double norm_sq, double mass,
                                 std::vector<Complex> values)
    : n_order_(n_order), m_order_(m_order), norm_sq_(norm_sq), mass_(mass),
      values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(n_order + 1) * static_cast<std::size_t>(m_order + 1)) {
    throw InvalidArgument("coefficient matrix size does not match its orders");
  }
}

double DoubleExpansion::defect(int n, int m) const {
  if (n < 0 || m < 0 || n > n_order_ || m > m_order_) {
    throw InvalidArgument("defect orders outside the computed range");
  }
  double captured = 0.0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= m; ++j) captured += std::norm((*this)(i, j));
  }
  const double value = norm_sq_ - mass_ * captured;
  return (value < 0.0 && value > -1e-12) ? 0.0 : value;
}

DoubleExpansion double_expansion_coefficients(const SliceSystem& system,
                                              std::span<const Complex> values, int n_order,
                                              int m_order) {
  if (n_order < 0 || m_order < 0) throw InvalidArgument("orders must be nonnegative");
  if (!(system.total_mass > 0.0)) throw ZeroMass("slice system has no mass");

  // h[n][s] for slice s
  const std::size_t slice_count = system.slices.size();
  std::vector<std::vector<Complex>> inner(static_cast<std::size_t>(n_order) + 1,
                                          std::vector<Complex>(slice_count));
  double f_norm = 0.0;
  for (std::size_t s = 0; s < slice_count; ++s) {
    const auto& slice = system.slices[s];
    const auto& atoms = slice.gamma.atoms();
    if (atoms.size() != slice.atom_indices.size()) {
      throw InvalidArgument("slice atoms do not match their source indices");
    }
    std::vector<Complex> local_values;
    for (std::size_t i : slice.atom_indices) {
      if (i >= values.size()) throw InvalidFunction("value count does not match the atom count");
      local_values.push_back(values[i]);
    }
    std::vector<Complex> products(static_cast<std::size_t>(n_order) + 1);
    for (int j = 0; j <= n_order; ++j) {
      Complex p{};
      for (std::size_t a = 0; a < atoms.size(); ++a) {
        p += atoms[a].w * local_values[a] * unit_phase(-static_cast<double>(j) * atoms[a].x);
      }
      products[static_cast<std::size_t>(j)] = p;
    }
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      f_norm += slice.weight * atoms[a].w * std::norm(local_values[a]);
    }
    const auto triangle =
        auxiliary_sequence(MomentTable::from_measure(slice.gamma, n_order), n_order);
    const auto h = analysis_from_products(triangle, products);
    for (int n = 0; n <= n_order; ++n) inner[static_cast<std::size_t>(n)][s] = h[static_cast<std::size_t>(n)];
  }

  // Marginal exponentials e^{imk} are the frequency-step 1/(2 pi) case.
  std::vector<Complex> marginal(static_cast<std::size_t>(m_order) + 1);
  for (int q = 0; q <= m_order; ++q) marginal[static_cast<std::size_t>(q)] = system.marginal_moment(q);
  const auto table = MomentTable::from_nonnegative(marginal);
  KaczmarzOptions options;
  options.frequency_step = 1.0 / (2.0 * kPi);
  const auto triangle = auxiliary_sequence(table, m_order, options);

  std::vector<std::vector<Complex>> phases(static_cast<std::size_t>(m_order) + 1,
                                           std::vector<Complex>(slice_count));
  for (int j = 0; j <= m_order; ++j) {
    for (std::size_t s = 0; s < slice_count; ++s) {
      phases[static_cast<std::size_t>(j)][s] = system.slices[s].weight * integer_phase(j, system.slices[s].k);
    }
  }

  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(n_order + 1) * static_cast<std::size_t>(m_order + 1));
  std::vector<Complex> products(static_cast<std::size_t>(m_order) + 1);
  for (int n = 0; n <= n_order; ++n) {
    const auto& h = inner[static_cast<std::size_t>(n)];
    for (int j = 0; j <= m_order; ++j) {
      Complex p{};
      for (std::size_t s = 0; s < slice_count; ++s) p += h[s] * phases[static_cast<std::size_t>(j)][s];
      products[static_cast<std::size_t>(j)] = p;
    }
    const auto row = analysis_from_products(triangle, products);
    out.insert(out.end(), row.begin(), row.end());
  }
  return DoubleExpansion(n_order, m_order, f_norm, system.total_mass, std::move(out));
}

double double_parseval_defect(const SliceSystem& system, std::span<const Complex> values,
                              int n_order, int m_order) {
  return double_expansion_coefficients(system, values, n_order, m_order).defect(n_order, m_order);
}

// ---------------------------------------------------------------------------

PositiveSequence PositiveSequence::geometric(double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw InvalidArgument("geometric ratio must lie in (0, 1)");
  PositiveSequence s;
  s.kind_ = Kind::Geometric;
  s.ratio_ = ratio;
  return s;
}

PositiveSequence PositiveSequence::harmonic() {
  PositiveSequence s;
  s.kind_ = Kind::Harmonic;
  return s;
}

PositiveSequence PositiveSequence::finite(std::vector<double> values) {
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("sequence values must be finite and nonnegative");
  }
  PositiveSequence s;
  s.kind_ = Kind::Finite;
  s.values_ = std::move(values);
  return s;
}

double PositiveSequence::at(long n) const {
  if (n < 0) throw InvalidArgument("sequence index must be nonnegative");
  switch (kind_) {
    case Kind::Geometric: return std::pow(ratio_, static_cast<double>(n));
    case Kind::Harmonic: return 1.0 / static_cast<double>(n + 1);
    case Kind::Finite:
      return static_cast<std::size_t>(n) < values_.size() ? values_[static_cast<std::size_t>(n)] : 0.0;
  }
  return 0.0;
}

double PositiveSequence::square_sum() const {
  switch (kind_) {
    case Kind::Geometric: return 1.0 / (1.0 - ratio_ * ratio_);
    case Kind::Harmonic: return kPi * kPi / 6.0;
    case Kind::Finite: {
      double sum = 0.0;
      for (double v : values_) sum += v * v;
      return sum;
    }
  }
  return 0.0;
}

double PositiveSequence::tail_bound(long count) const {
  if (count < 0) count = 0;
  switch (kind_) {
    case Kind::Geometric:
      return std::pow(ratio_, 2.0 * static_cast<double>(count)) / (1.0 - ratio_ * ratio_);
    case Kind::Harmonic:
      // sum_{k >= count} 1/(k+1)^2 <= 1/count
      return count == 0 ? square_sum() : 1.0 / static_cast<double>(count);
    case Kind::Finite: {
      double sum = 0.0;
      for (std::size_t k = static_cast<std::size_t>(count); k < values_.size(); ++k) sum += values_[k] * values_[k];
      return sum;
    }
  }
  return 0.0;
}

std::vector<DecayRow> weighted_bessel_decay(const PositiveSequence& weights,
                                            const PositiveSequence& coefficients, long first,
                                            long last, long truncation) {
  if (first < 0 || last < first) throw InvalidArgument("decay range must satisfy 0 <= first <= last");
  if (truncation < 1) throw InvalidArgument("truncation must be positive");
  const double c_norm = coefficients.square_sum();
  std::vector<DecayRow> rows;
  for (long n = first; n <= last; ++n) {
    DecayRow row;
    row.n = n;
    row.weight = weights.at(n);
    if (!(row.weight > 0.0)) throw InvalidArgument("weights must be positive");
    row.closed_form = row.weight * c_norm;
    // <chi_{n} / sqrt(a_n), c_k e_k> = a_n / sqrt(a_n) * c_k * e^{-2 pi i k n}
    const double amplitude = row.weight / std::sqrt(row.weight);
    double direct = 0.0;
    for (long k = 0; k < truncation; ++k) {
      const Complex pairing = amplitude * coefficients.at(k) * unit_phase(-static_cast<double>(k * n));
      direct += std::norm(pairing);
    }
    row.direct = direct;
    row.tail_bound = row.weight * coefficients.tail_bound(truncation);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace framelab
