#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dunklab/polyalg.hpp"

namespace dunklab {

/// Multi-index k of the Euler monomial D_1^{k_1} ... D_N^{k_N}, D_i = q_i d/dq_i.
using EulerIndex = std::array<std::uint8_t, kMaxSites>;

struct OpKey {
  EulerIndex euler{};
  WreathElement group;
  friend bool operator==(const OpKey&, const OpKey&) = default;
  friend auto operator<=>(const OpKey&, const OpKey&) = default;
};

/// Spin-valued function: one rational function per spin basis state.
using SpinFunction = std::vector<RationalFunction>;

/// Finite sum of (coefficient matrix) * (Euler monomial) * (group element),
/// coefficient-left, Euler-middle, group-right. The coefficient is a d x d
/// matrix of rational functions acting on the spin factor (d = 1 for
/// spinless operators); spin matrices commute with all position data.
class MixedOperator {
 public:
  using Matrix = std::vector<RationalFunction>;  // row-major d x d

  MixedOperator() = default;
  MixedOperator(int nvars, int m, int spin_dim = 1) : nvars_(nvars), m_(m), dim_(spin_dim) {}

  static MixedOperator identity(int nvars, int m, int spin_dim = 1);
  /// c(q) times the identity matrix.
  static MixedOperator coefficient(const RationalFunction& c, int m, int spin_dim = 1);
  static MixedOperator euler(int nvars, int m, int i, int power = 1, int spin_dim = 1);
  static MixedOperator group(const WreathElement& g, int spin_dim = 1);
  /// Constant spin matrix (row-major, spin_dim^2 entries).
  static MixedOperator spin(int nvars, int m, const std::vector<CycloScalar>& matrix, int spin_dim);
  static MixedOperator term(int nvars, int m, int spin_dim, const OpKey& key, Matrix coeff);

  int nvars() const { return nvars_; }
  int order() const { return m_; }
  int spin_dim() const { return dim_; }
  const std::map<OpKey, Matrix>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  MixedOperator operator-() const;
  MixedOperator& operator+=(const MixedOperator& o);
  MixedOperator& operator-=(const MixedOperator& o);
  friend MixedOperator operator+(MixedOperator a, const MixedOperator& b) { return a += b; }
  friend MixedOperator operator-(MixedOperator a, const MixedOperator& b) { return a -= b; }
  /// Composition A o B in normal form.
  friend MixedOperator operator*(const MixedOperator& a, const MixedOperator& b);
  MixedOperator scaled(const CycloScalar& c) const;
  MixedOperator pow(int e) const;

  /// Lifts a spinless operator to act diagonally on spin_dim spin states.
  MixedOperator with_spin_dim(int spin_dim) const;

  SpinFunction apply(const SpinFunction& f) const;
  RationalFunction apply(const RationalFunction& f) const;

  /// Numerical value of (A f)(q) with f a Laurent polynomial per spin state.
  /// Coefficients are evaluated in floating point; the action on f is exact.
  /// Returns nullopt when some denominator is below 1e-6 at q.
  std::optional<std::vector<std::complex<double>>> evaluate_on(const std::vector<LaurentPoly>& f,
                                                               ComplexPoint q) const;

  std::string str() const;

 private:
  void add_term(const OpKey& key, Matrix coeff);
  void check_compatible(const MixedOperator& o) const;
  int nvars_ = 0;
  int m_ = 1;
  int dim_ = 1;
  std::map<OpKey, Matrix> terms_;
};

MixedOperator commutator(const MixedOperator& a, const MixedOperator& b);

/// (1/m) sum_s tau^{s r} Q_i^{-s} A Q_i^{s}
MixedOperator ad_projector(int site, int r, const MixedOperator& a);

struct ZeroCheck {
  bool zero = true;
  std::size_t terms = 0;
  double numeric_residual = 0;
  std::string witness;  // first surviving term when nonzero
};

/// Exact zero test of the normal form plus a numeric residual: max over 5
/// random torus points and 3 random test functions of |(A f)(q)|.
ZeroCheck normalize_is_zero(const MixedOperator& a, std::uint64_t seed = 1);

/// max |(A f)(q) - (B f)(q)| with both sides evaluated separately.
double numeric_difference(const MixedOperator& a, const MixedOperator& b, std::uint64_t seed = 1,
                          int points = 5, int functions = 3);


json to_json(const MixedOperator& a);

}  // namespace dunklab
