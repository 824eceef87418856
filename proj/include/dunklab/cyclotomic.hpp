#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

namespace dunklab {

using Rational = mpq_class;
using json = nlohmann::json;

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

/// Descriptor of Q(zeta_n): the n-th cyclotomic polynomial and a table
/// expressing zeta^k (0 <= k < table size) on the power basis 1, zeta, ...,
/// zeta^(phi-1). Descriptors are built once per order and shared read-only.
class CyclotomicField {
 public:
  static const CyclotomicField& get(int n);

  int order() const { return order_; }
  int degree() const { return degree_; }

  /// Coefficients of Phi_n, lowest degree first (length degree + 1).
  const std::vector<Rational>& minimal_polynomial() const { return phi_; }

  /// Power-basis expansion of zeta^k for any k >= 0.
  std::span<const Rational> power(std::int64_t k) const;

  /// Reduces a dense polynomial in zeta (any length) to the power basis.
  std::vector<Rational> reduce(std::vector<Rational> poly) const;

  explicit CyclotomicField(int n);

 private:
  int order_;
  int degree_;
  std::vector<Rational> phi_;
  std::vector<std::vector<Rational>> table_;  // zeta^k, k < max(n, 2*degree)
};

int euler_phi(int n);

/// Exact element of Q(zeta_n), stored on the power basis modulo Phi_n.
///
/// Results whose value is rational are always demoted to order 1, so the
/// order reported by a scalar is the field it was built in, or 1.
/// Binary operations embed the smaller field when one order divides the
/// other; otherwise they throw and the caller must lift to the lcm.
class CycloScalar {
 public:
  CycloScalar() : order_(1), coeffs_{Rational(0)} {}
  CycloScalar(const Rational& r) : order_(1), coeffs_{r} {}  // NOLINT
  CycloScalar(long v) : order_(1), coeffs_{Rational(v)} {}   // NOLINT
  CycloScalar(int v) : CycloScalar(static_cast<long>(v)) {}  // NOLINT

  /// zeta_n^k, k taken modulo n.
  static CycloScalar root_of_unity(int n, std::int64_t k);
  static CycloScalar from_coeffs(int n, std::vector<Rational> coeffs);

  int order() const { return order_; }
  std::span<const Rational> coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const { return order_ == 1; }
  /// Only valid when is_rational().
  const Rational& rational() const { return coeffs_[0]; }

  /// Same value, represented in Q(zeta_target); target must be a multiple of order().
  CycloScalar embedded(int target) const;

  CycloScalar operator-() const;
  CycloScalar& operator+=(const CycloScalar& o);
  CycloScalar& operator-=(const CycloScalar& o);
  CycloScalar& operator*=(const CycloScalar& o);
  CycloScalar& operator/=(const CycloScalar& o);
  friend CycloScalar operator+(CycloScalar a, const CycloScalar& b) { return a += b; }
  friend CycloScalar operator-(CycloScalar a, const CycloScalar& b) { return a -= b; }
  friend CycloScalar operator*(const CycloScalar& a, const CycloScalar& b);
  friend CycloScalar operator/(CycloScalar a, const CycloScalar& b) { return a /= b; }
  friend bool operator==(const CycloScalar& a, const CycloScalar& b);

  CycloScalar inverse() const;
  /// Complex conjugation zeta -> zeta^-1.
  CycloScalar conj() const;
  CycloScalar pow(std::int64_t e) const;

  /// Numerical value; precision_bits <= 64 (long double accumulation).
  std::complex<double> to_complex(int precision_bits = 53) const;
  /// Sum of |coeff|, the scale in the to_complex error bound.
  double coeff_l1() const;

  std::size_t hash() const;
  /// Strict weak order on the stored representation (order, then coeffs).
  friend bool representation_less(const CycloScalar& a, const CycloScalar& b);

  std::string str() const;

 private:
  void demote();
  int order_;
  std::vector<Rational> coeffs_;
};

/// Common order for two scalars, or throws when neither divides the other.
int common_order(int a, int b);

json to_json(const CycloScalar& s);
CycloScalar scalar_from_json(const json& j);

}  // namespace dunklab
