#pragma once

#include <span>
#include <vector>

#include "framelab/kaczmarz.hpp"
#include "framelab/measure.hpp"

namespace framelab {

struct RealAtom {
  double y = 0.0;
  double w = 0.0;
};

/// Finitely many atoms on the real line, sorted by position.
class RealAtomicMeasure {
 public:
  RealAtomicMeasure() = default;
  explicit RealAtomicMeasure(std::vector<RealAtom> atoms);

  const std::vector<RealAtom>& atoms() const { return atoms_; }
  double total_mass() const;

 private:
  std::vector<RealAtom> atoms_;
};

/// A function known only through its values at the atoms.
struct RealValue {
  double y = 0.0;
  Complex value;
};

/// Values aligned with measure.atoms(); throws MissingAtomValue for uncovered atoms.
std::vector<Complex> align_values(const RealAtomicMeasure& measure,
                                  std::span<const RealValue> values);

double norm_sq(const RealAtomicMeasure& measure, std::span<const Complex> values);

/// Folds positions to (y mod a) / a.  Total mass is kept, not normalized.
CircleMeasure periodize(const RealAtomicMeasure& measure, double period);

struct LatticeExpansion {
  CoefficientTriangle triangle;  ///< frequency step 1/c
  std::vector<Complex> coefficients;
  std::vector<EffectivenessRow> rows;
};

/// Kaczmarz expansion in exp(2 pi i n y / c), n >= 0.  Convergence needs c to be
/// irrational relative to the lattice spacing; that is left to the caller.
LatticeExpansion lattice_effective_expansion(const RealAtomicMeasure& measure, double c,
                                             std::span<const Complex> values,
                                             std::span<const int> orders);

struct Slice {
  long k = 0;
  double weight = 0.0;                    ///< mu([k, k+1))
  CircleMeasure gamma;                    ///< probability measure, atoms at y - k
  std::vector<std::size_t> atom_indices;  ///< positions in the source measure
};

struct SliceSystem {
  std::vector<Slice> slices;  ///< increasing k
  double total_mass = 0.0;

  /// sum_k w_k e^{-i q k}
  Complex marginal_moment(long q) const;
  RealAtomicMeasure reassemble() const;
};

SliceSystem disintegrate(const RealAtomicMeasure& measure);

/// c[n][m] = <h_n, g_m> over the normalized marginal, h_n(k) = <f(. + k), g^k_n>_{gamma^k}.
class DoubleExpansion {
 public:
  DoubleExpansion(int n_order, int m_order, double norm_sq, double mass,
                  std::vector<Complex> values);

  int n_order() const { return n_order_; }
  int m_order() const { return m_order_; }
  double norm_sq() const { return norm_sq_; }
  double mass() const { return mass_; }
  Complex operator()(int n, int m) const {
    return values_[static_cast<std::size_t>(n) * static_cast<std::size_t>(m_order_ + 1) +
                   static_cast<std::size_t>(m)];
  }

  /// ||f||^2 - mass * sum_{n <= N, m <= M} |c[n][m]|^2
  double defect(int n, int m) const;

 private:
  int n_order_;
  int m_order_;
  double norm_sq_;
  double mass_;
  std::vector<Complex> values_;
};

DoubleExpansion double_expansion_coefficients(const SliceSystem& system,
                                              std::span<const Complex> values, int n_order,
                                              int m_order);

double double_parseval_defect(const SliceSystem& system, std::span<const Complex> values,
                              int n_order, int m_order);

// ---------------------------------------------------------------------------

/// Positive sequence indexed from 0: r^n, 1/(n+1), or an explicit finite list.
class PositiveSequence {
 public:
  enum class Kind { Geometric, Harmonic, Finite };

  static PositiveSequence geometric(double ratio);
  static PositiveSequence harmonic();
  static PositiveSequence finite(std::vector<double> values);

  Kind kind() const { return kind_; }
  double at(long n) const;
  /// Closed form of sum_n at(n)^2.
  double square_sum() const;
  /// Upper bound on sum_{n >= count} at(n)^2.
  double tail_bound(long count) const;

 private:
  Kind kind_ = Kind::Finite;
  double ratio_ = 0.0;
  std::vector<double> values_;
};

struct DecayRow {
  long n = 0;
  double weight = 0.0;       ///< a_n
  double closed_form = 0.0;  ///< a_n * sum_k c_k^2
  double direct = 0.0;       ///< sum_{k < truncation} |<f_n, c_k e_k>|^2
  double tail_bound = 0.0;   ///< direct + tail_bound >= closed_form
};

/// Frame functional of the system {c_k e_k} in L^2(sum a_n delta_n) on the unit
/// vectors chi_{n} / sqrt(a_n), for n = first..last.
std::vector<DecayRow> weighted_bessel_decay(const PositiveSequence& weights,
                                            const PositiveSequence& coefficients, long first,
                                            long last, long truncation = 4096);

}  // namespace framelab
