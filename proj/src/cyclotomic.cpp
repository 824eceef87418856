#include "dunklab/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dunklab {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

// Long division; returns {quotient, remainder}.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
  trim(a);
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  Poly q(a.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  for (std::size_t k = a.size(); k >= b.size(); --k) {
    const std::size_t top = k - 1;
    if (sgn(a[top]) == 0) continue;
    Rational c = a[top] / lead;
    std::size_t shift = top - (b.size() - 1);
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
  }
  trim(a);
  trim(q);
  return {q, a};
}

Poly cyclotomic_polynomial(int n, std::map<int, Poly>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  Poly p(n + 1, Rational(0));
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto [q, r] = poly_divmod(p, cyclotomic_polynomial(d, memo));
    if (!r.empty()) throw std::logic_error("cyclotomic division not exact");
    p = std::move(q);
  }
  memo[n] = p;
  return p;
}

std::recursive_mutex& field_mutex() {
  static std::recursive_mutex m;
  return m;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

int euler_phi(int n) {
  if (n < 1) throw std::invalid_argument("euler_phi: n must be positive");
  int result = n;
  int m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

CyclotomicField::CyclotomicField(int n) : order_(n), degree_(euler_phi(n)) {
  if (n < 1) throw std::invalid_argument("cyclotomic order must be positive");
  std::map<int, Poly> memo;
  phi_ = cyclotomic_polynomial(n, memo);
  const int size = std::max(n, 2 * degree_);
  table_.reserve(size);
  for (int k = 0; k < size; ++k) {
    Poly mono(k + 1, Rational(0));
    mono[k] = 1;
    table_.push_back(reduce(std::move(mono)));
  }
}

const CyclotomicField& CyclotomicField::get(int n) {
  static std::map<int, std::unique_ptr<CyclotomicField>> cache;
  std::lock_guard lock(field_mutex());
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<CyclotomicField>(n)).first;
  return *it->second;
}

std::span<const Rational> CyclotomicField::power(std::int64_t k) const {
  k %= order_;
  if (k < 0) k += order_;
  return table_[static_cast<std::size_t>(k)];
}

std::vector<Rational> CyclotomicField::reduce(std::vector<Rational> poly) const {
  for (std::size_t k = poly.size(); k-- > static_cast<std::size_t>(degree_);) {
    if (sgn(poly[k]) == 0) continue;
    Rational c = poly[k];
    poly[k] = 0;
    std::size_t shift = k - degree_;
    for (int i = 0; i < degree_; ++i) poly[shift + i] -= c * phi_[i];
  }
  poly.resize(degree_, Rational(0));
  return poly;
}

int common_order(int a, int b) {
  if (a == b) return a;
  if (b % a == 0) return b;
  if (a % b == 0) return a;
  throw std::invalid_argument("incompatible cyclotomic orders " + std::to_string(a) + " and " +
                              std::to_string(b) + ": lift both into zeta_" +
                              std::to_string(std::lcm(a, b)) + " explicitly");
}

CycloScalar CycloScalar::root_of_unity(int n, std::int64_t k) {
  const auto& f = CyclotomicField::get(n);
  auto p = f.power(k);
  return from_coeffs(n, std::vector<Rational>(p.begin(), p.end()));
}

CycloScalar CycloScalar::from_coeffs(int n, std::vector<Rational> coeffs) {
  const auto& f = CyclotomicField::get(n);
  CycloScalar s;
  s.order_ = n;
  s.coeffs_ = f.reduce(std::move(coeffs));
  s.demote();
  return s;
}

void CycloScalar::demote() {
  if (order_ == 1) return;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) return;
  }
  coeffs_.resize(1);
  order_ = 1;
}

bool CycloScalar::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

bool CycloScalar::is_one() const {
  if (coeffs_[0] != 1) return false;
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

CycloScalar CycloScalar::embedded(int target) const {
  if (target == order_) return *this;
  if (target % order_ != 0) {
    throw std::invalid_argument("cannot embed Q(zeta_" + std::to_string(order_) + ") into Q(zeta_" +
                                std::to_string(target) + ")");
  }
  const auto& f = CyclotomicField::get(target);
  const int step = target / order_;
  CycloScalar r;
  r.order_ = target;
  r.coeffs_.assign(f.degree(), Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (sgn(coeffs_[k]) == 0) continue;
    auto p = f.power(static_cast<std::int64_t>(k) * step);
    for (int i = 0; i < f.degree(); ++i) {
      if (sgn(p[i]) != 0) r.coeffs_[i] += coeffs_[k] * p[i];
    }
  }
  return r;
}

CycloScalar CycloScalar::operator-() const {
  CycloScalar r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycloScalar& CycloScalar::operator+=(const CycloScalar& o) {
  if (o.order_ == 1) {
    coeffs_[0] += o.coeffs_[0];
    demote();
    return *this;
  }
  const int n = common_order(order_, o.order_);
  if (n != order_) *this = embedded(n);
  const CycloScalar& rhs = o.order_ == n ? o : o.embedded(n);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  demote();
  return *this;
}

CycloScalar& CycloScalar::operator-=(const CycloScalar& o) { return *this += -o; }

CycloScalar operator*(const CycloScalar& a, const CycloScalar& b) {
  if (a.order_ == 1 || b.order_ == 1) {
    const CycloScalar& rat = a.order_ == 1 ? a : b;
    const CycloScalar& other = a.order_ == 1 ? b : a;
    if (sgn(rat.coeffs_[0]) == 0) return {};
    CycloScalar r = other;
    for (auto& c : r.coeffs_) c *= rat.coeffs_[0];
    return r;
  }
  const int n = common_order(a.order_, b.order_);
  const CycloScalar& x = a.order_ == n ? a : a.embedded(n);
  const CycloScalar& y = b.order_ == n ? b : b.embedded(n);
  const auto& f = CyclotomicField::get(n);
  const int d = f.degree();
  std::vector<Rational> prod(2 * d - 1, Rational(0));
  for (int i = 0; i < d; ++i) {
    if (sgn(x.coeffs_[i]) == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (sgn(y.coeffs_[j]) != 0) prod[i + j] += x.coeffs_[i] * y.coeffs_[j];
    }
  }
  CycloScalar r;
  r.order_ = n;
  r.coeffs_.assign(prod.begin(), prod.begin() + d);
  for (int k = d; k < 2 * d - 1; ++k) {
    if (sgn(prod[k]) == 0) continue;
    auto p = f.power(k);
    for (int i = 0; i < d; ++i) {
      if (sgn(p[i]) != 0) r.coeffs_[i] += prod[k] * p[i];
    }
  }
  r.demote();
  return r;
}

CycloScalar& CycloScalar::operator*=(const CycloScalar& o) { return *this = *this * o; }

CycloScalar& CycloScalar::operator/=(const CycloScalar& o) { return *this = *this * o.inverse(); }

CycloScalar CycloScalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in cyclotomic field");
  if (order_ == 1) return CycloScalar(Rational(1) / coeffs_[0]);
  const auto& f = CyclotomicField::get(order_);
  // Extended Euclid: track s with s*a = r (mod Phi).
  Poly r0 = f.minimal_polynomial(), r1(coeffs_.begin(), coeffs_.end());
  trim(r1);
  Poly s0, s1{Rational(1)};
  while (r1.size() > 1) {
    auto [q, rem] = poly_divmod(r0, r1);
    Poly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw std::logic_error("non-invertible cyclotomic element");
  Rational c = Rational(1) / r1[0];
  for (auto& x : s1) x *= c;
  return from_coeffs(order_, std::move(s1));
}

CycloScalar CycloScalar::conj() const {
  if (order_ == 1) return *this;
  const auto& f = CyclotomicField::get(order_);
  std::vector<Rational> out(f.degree(), Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (sgn(coeffs_[k]) == 0) continue;
    auto p = f.power(-static_cast<std::int64_t>(k));
    for (int i = 0; i < f.degree(); ++i) {
      if (sgn(p[i]) != 0) out[i] += coeffs_[k] * p[i];
    }
  }
  CycloScalar r;
  r.order_ = order_;
  r.coeffs_ = std::move(out);
  r.demote();
  return r;
}

CycloScalar CycloScalar::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  CycloScalar result(1L), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

std::complex<double> CycloScalar::to_complex(int precision_bits) const {
  if (precision_bits < 1 || precision_bits > 64) {
    throw std::invalid_argument("to_complex supports 1..64 bits of precision");
  }
  long double re = 0, im = 0;
  const long double two_pi = 2 * std::numbers::pi_v<long double>;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (sgn(coeffs_[k]) == 0) continue;
    mpf_class cf(coeffs_[k], 128);
    long double c = static_cast<long double>(cf.get_d());
    // Refine with the residual so the coefficient carries ~64 bits.
    mpf_class resid = cf - mpf_class(static_cast<double>(c), 128);
    c += static_cast<long double>(resid.get_d());
    long double angle = two_pi * static_cast<long double>(k) / static_cast<long double>(order_);
    re += c * std::cos(angle);
    im += c * std::sin(angle);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

double CycloScalar::coeff_l1() const {
  double s = 0;
  for (const auto& c : coeffs_) s += std::abs(c.get_d());
  return s;
}

std::size_t CycloScalar::hash() const {
  std::size_t h = static_cast<std::size_t>(order_) * 0x9E3779B97F4A7C15ULL;
  for (const auto& c : coeffs_) {
    std::size_t v = mpz_get_ui(c.get_num_mpz_t()) * 31 + mpz_get_ui(c.get_den_mpz_t());
    if (sgn(c) < 0) v = ~v;
    h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

bool representation_less(const CycloScalar& a, const CycloScalar& b) {
  if (a.order_ != b.order_) return a.order_ < b.order_;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    int c = cmp(a.coeffs_[i], b.coeffs_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

bool operator==(const CycloScalar& a, const CycloScalar& b) {
  if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
  const int n = common_order(a.order_, b.order_);
  return a.embedded(n).coeffs_ == b.embedded(n).coeffs_;
}

std::string CycloScalar::str() const {
  if (order_ == 1) return to_string(coeffs_[0]);
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational& c = coeffs_[k];
    if (sgn(c) == 0) continue;
    if (!first) os << (sgn(c) > 0 ? " + " : " - ");
    else if (sgn(c) < 0) os << "-";
    Rational a = abs(c);
    if (k == 0 || a != 1) os << a.get_str();
    if (k > 0) {
      if (a != 1) os << "*";
      os << "z" << order_;
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

json to_json(const CycloScalar& s) {
  json coeffs = json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(to_string(c));
  return json{{"order", s.order()}, {"coeffs", coeffs}};
}

CycloScalar scalar_from_json(const json& j) {
  int n = j.at("order").get<int>();
  std::vector<Rational> coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.push_back(parse_rational(c.get<std::string>()));
  if (static_cast<int>(coeffs.size()) != euler_phi(n)) {
    throw std::invalid_argument("scalar JSON: expected phi(n) coefficients");
  }
  return CycloScalar::from_coeffs(n, std::move(coeffs));
}

}  // namespace dunklab
