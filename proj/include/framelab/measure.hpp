#pragma once

#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace framelab {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Two atoms or an atom and a function override closer than this are the same point.
inline constexpr double kAtomMatchTolerance = 1e-12;

/// Cantor product factors with |pi n 3^-j| below this are replaced by 1.
inline constexpr double kCantorTailThreshold = 1e-8;

struct Atom {
  double x = 0.0;  ///< location in [0,1)
  double w = 0.0;  ///< positive weight
};

/// Constant density `h` on [a, b).
struct DensityPiece {
  double a = 0.0;
  double b = 0.0;
  double h = 0.0;
};

/// e^{2 pi i t}, with t reduced modulo 1 before the trig evaluation.
Complex unit_phase(double t);

/// Integral of e^{-2 pi i n x} over [c, d], in closed form.
Complex interval_transform(long n, double c, double d);

/// Fourier coefficient of the normalized middle-third Cantor measure carried
/// by [1/4, 3/4]:  e^{-i pi n} prod_{j>=1} cos(pi n 3^-j).
Complex cantor_transform(long n);

/// Finite Borel measure on [0,1): finitely many atoms, a piecewise-constant
/// density and a multiple of the Cantor measure.
///
/// Atoms are kept sorted by location and density pieces sorted by start.
/// The constructor enforces the structural invariants; positivity of the total
/// mass is checked by the operations that need it.
class CircleMeasure {
 public:
  CircleMeasure() = default;
  CircleMeasure(std::vector<Atom> atoms, std::vector<DensityPiece> pieces,
                double cantor_weight = 0.0);

  static CircleMeasure lebesgue();
  static CircleMeasure cantor(double weight = 1.0);
  static CircleMeasure atomic(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<DensityPiece>& pieces() const { return pieces_; }
  double cantor_weight() const { return cantor_weight_; }

  double atomic_mass() const;
  double density_mass() const;
  double total_mass() const;

  bool has_atoms() const { return !atoms_.empty(); }
  bool has_density() const;
  bool is_purely_atomic() const { return !has_density() && cantor_weight_ == 0.0; }

  /// Index of the atom at `x`, if any.
  std::optional<std::size_t> find_atom(double x) const;

  CircleMeasure atomic_part() const;
  CircleMeasure density_part() const;
  CircleMeasure scaled(double factor) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<DensityPiece> pieces_;
  double cantor_weight_ = 0.0;
};

/// coefficient * e^{2 pi i m x} * chi_[u, v)(x)
struct Term {
  int m = 0;
  double u = 0.0;
  double v = 1.0;
  Complex coef{1.0, 0.0};

  bool full_interval() const { return u == 0.0 && v == 1.0; }
};

struct AtomValue {
  double x = 0.0;
  Complex value;
};

/// A test function: finite sum of modulated interval indicators, with optional
/// pointwise overrides at atom locations.
class FunctionSpec {
 public:
  FunctionSpec() = default;
  explicit FunctionSpec(std::vector<Term> terms, std::vector<AtomValue> atom_values = {});

  static FunctionSpec constant(Complex c);
  static FunctionSpec exponential(int m, Complex coef = 1.0);
  static FunctionSpec indicator(double u, double v, Complex coef = 1.0);
  /// sum_j coeffs[j] e^{2 pi i (first + j) x} on [0,1)
  static FunctionSpec trigonometric(int first, std::span<const Complex> coeffs);
  /// Zero everywhere except the listed atom values.
  static FunctionSpec atom_values_only(std::vector<AtomValue> values);

  const std::vector<Term>& terms() const { return terms_; }
  const std::vector<AtomValue>& atom_values() const { return atom_values_; }

  bool is_trigonometric_polynomial() const;
  bool is_zero() const;

  std::optional<Complex> atom_override(double x) const;
  Complex evaluate_terms(double x) const;
  /// Term formula, replaced by the override when `x` is a registered atom location.
  Complex evaluate(double x) const;

  FunctionSpec with_atom_value(double x, Complex value) const;
  FunctionSpec scaled(Complex factor) const;

  friend FunctionSpec operator+(const FunctionSpec& a, const FunctionSpec& b);
  friend FunctionSpec operator-(const FunctionSpec& a, const FunctionSpec& b);

 private:
  std::vector<Term> terms_;
  std::vector<AtomValue> atom_values_;
};

/// mu^(n) = integral of e^{-2 pi i n x} d mu
Complex moment(const CircleMeasure& measure, long n);

/// <f, g>_mu = integral of f conj(g) d mu.  Throws CantorRestriction when the
/// measure has a Cantor part and either function is not a trigonometric polynomial.
Complex inner_product(const CircleMeasure& measure, const FunctionSpec& f, const FunctionSpec& g);

double norm_sq(const CircleMeasure& measure, const FunctionSpec& f);

inline Complex evaluate(const FunctionSpec& f, double x) { return f.evaluate(x); }

/// <f, e_k>_mu for k = first .. last.
std::vector<Complex> exponential_products(const CircleMeasure& measure, const FunctionSpec& f,
                                          long first, long last);

/// Cached moments mu^(n), |n| <= order.  The table may also carry generalized
/// moments (other frequency steps); only mu^(-n) = conj(mu^(n)) is assumed.
class MomentTable {
 public:
  static MomentTable from_measure(const CircleMeasure& measure, int order);
  /// values[n] for n = 0 .. order; negative indices by conjugate symmetry.
  static MomentTable from_nonnegative(std::vector<Complex> values);

  int order() const { return order_; }
  Complex operator()(long n) const;
  double mass() const { return values_.empty() ? 0.0 : values_.front().real(); }

 private:
  int order_ = -1;
  std::vector<Complex> values_;  // n = 0 .. order
};

}  // namespace framelab
