#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dunklab/cyclotomic.hpp"
#include "dunklab/groups.hpp"

namespace dunklab {

/// Exponent vector of a Laurent monomial q_1^{e_1} ... q_N^{e_N}.
struct Monomial {
  std::array<std::int16_t, kMaxSites> e{};

  static Monomial unit(int i, int power = 1) {
    Monomial m;
    m.e[i] = static_cast<std::int16_t>(power);
    return m;
  }
  Monomial operator+(const Monomial& o) const;
  Monomial operator-(const Monomial& o) const;
  bool is_one() const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

using ComplexPoint = std::span<const std::complex<double>>;

/// Sparse Laurent polynomial in q_1..q_N over cyclotomic scalars. Terms are
/// kept sorted by exponent vector (lexicographic) with no zero coefficients,
/// so equality is structural.
class LaurentPoly {
 public:
  using Term = std::pair<Monomial, CycloScalar>;

  explicit LaurentPoly(int nvars = 0) : nvars_(nvars) {}
  static LaurentPoly constant(int nvars, const CycloScalar& c);
  static LaurentPoly monomial(int nvars, const Monomial& m, const CycloScalar& c = CycloScalar(1));
  /// c * q_i^power
  static LaurentPoly variable(int nvars, int i, int power = 1, const CycloScalar& c = CycloScalar(1));

  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term value; only meaningful when is_constant().
  CycloScalar constant_value() const;
  std::size_t size() const { return terms_.size(); }

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly scaled(const CycloScalar& c) const;
  LaurentPoly shifted(const Monomial& m) const;
  LaurentPoly pow(int e) const;
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

  /// Substitution action of a group element: Q_i scales q_i by tau, K_i
  /// inverts q_i, P_s moves exponent k to s(k).
  LaurentPoly act(const WreathElement& g) const;
  /// q_i d/dq_i
  LaurentPoly euler(int i) const;

  std::complex<double> evaluate(ComplexPoint q) const;
  /// Largest cyclotomic order among the coefficients.
  int max_order() const;
  std::size_t hash() const;
  std::string str() const;

  /// Sums like terms and drops zeros.
  static LaurentPoly from_terms(int nvars, std::vector<Term> terms);

 private:
  int nvars_;
  std::vector<Term> terms_;
};

/// Exact quotient a / b when b divides a in the Laurent ring, otherwise nullopt.
/// b must have no monomial content and a monic leading term (see normalize_factor).
std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b);

/// f = unit * q^shift * primitive, where primitive has no monomial content
/// and its lexicographically largest term has coefficient 1.
struct NormalizedFactor {
  CycloScalar unit;
  Monomial shift;
  LaurentPoly primitive;
};
NormalizedFactor normalize_factor(const LaurentPoly& f);

using FactorId = std::uint32_t;

/// Interned primitive denominator factor.
const LaurentPoly& factor_poly(FactorId id);
FactorId intern_factor(const LaurentPoly& primitive);

/// Quotient of a Laurent polynomial by a product of interned primitive
/// factors. Denominators are kept factored: sums take the factor-wise lcm and
/// numerators are cancelled by exact division, so no polynomial gcd is
/// needed. Zero test is exact (numerator is the zero polynomial).
class RationalFunction {
 public:
  using DenFactor = std::pair<FactorId, int>;

  explicit RationalFunction(int nvars = 0) : num_(nvars) {}
  RationalFunction(LaurentPoly num) : num_(std::move(num)) {}  // NOLINT
  static RationalFunction constant(int nvars, const CycloScalar& c);
  /// num / prod(den_factors); each factor is normalized and interned.
  static RationalFunction fraction(const LaurentPoly& num, std::span<const LaurentPoly> den_factors);
  static RationalFunction fraction(const LaurentPoly& num, const LaurentPoly& den);

  int nvars() const { return num_.nvars(); }
  const LaurentPoly& numerator() const { return num_; }
  const std::vector<DenFactor>& denominator_factors() const { return den_; }
  LaurentPoly denominator() const;
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction scaled(const CycloScalar& c) const;

  RationalFunction act(const WreathElement& g) const;
  RationalFunction euler(int i) const;

  /// Numerical value; throws std::domain_error if a denominator factor vanishes.
  std::complex<double> evaluate(ComplexPoint q) const;
  /// Smallest |factor(q)| over the denominator, for resampling near poles.
  double min_denominator_modulus(ComplexPoint q) const;

  std::string str() const;

 private:
  void cancel();
  LaurentPoly num_;
  std::vector<DenFactor> den_;  // sorted by id, exponents > 0
};

/// Exact equality by cross-multiplication: num_a * den_b == num_b * den_a.
bool rational_eq(const RationalFunction& a, const RationalFunction& b);

json to_json(const LaurentPoly& p);
LaurentPoly poly_from_json(const json& j, int nvars);
json to_json(const RationalFunction& f);

}  // namespace dunklab
