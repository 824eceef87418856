#include "dunklab/polyalg.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace dunklab {

Monomial Monomial::operator+(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxSites; ++i) r.e[i] = static_cast<std::int16_t>(e[i] + o.e[i]);
  return r;
}

Monomial Monomial::operator-(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxSites; ++i) r.e[i] = static_cast<std::int16_t>(e[i] - o.e[i]);
  return r;
}

bool Monomial::is_one() const {
  return std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
}

namespace {

std::size_t mono_hash(const Monomial& m) {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (auto x : m.e) h = (h ^ static_cast<std::uint16_t>(x)) * 0x100000001b3ULL;
  return h;
}

}  // namespace

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly LaurentPoly::constant(int nvars, const CycloScalar& c) {
  return monomial(nvars, Monomial{}, c);
}

LaurentPoly LaurentPoly::monomial(int nvars, const Monomial& m, const CycloScalar& c) {
  LaurentPoly p(nvars);
  if (!c.is_zero()) p.terms_.emplace_back(m, c);
  return p;
}

LaurentPoly LaurentPoly::variable(int nvars, int i, int power, const CycloScalar& c) {
  if (i < 0 || i >= nvars) throw std::out_of_range("variable index out of range");
  return monomial(nvars, Monomial::unit(i, power), c);
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

CycloScalar LaurentPoly::constant_value() const {
  for (const auto& [m, c] : terms_)
    if (m.is_one()) return c;
  return CycloScalar(0);
}

LaurentPoly LaurentPoly::from_terms(int nvars, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  LaurentPoly p(nvars);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
    } else {
      if (!p.terms_.empty() && p.terms_.back().second.is_zero()) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().second.is_zero()) p.terms_.pop_back();
  return p;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

namespace {

template <class Sign>
std::vector<LaurentPoly::Term> merge_terms(const std::vector<LaurentPoly::Term>& a,
                                           const std::vector<LaurentPoly::Term>& b, Sign sign) {
  std::vector<LaurentPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, sign(b[j].second));
      ++j;
    } else {
      CycloScalar c = a[i].second + sign(b[j].second);
      if (!c.is_zero()) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.terms_.empty()) return *this;
  if (nvars_ == 0) nvars_ = o.nvars_;
  terms_ = merge_terms(terms_, o.terms_, [](const CycloScalar& c) { return c; });
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (o.terms_.empty()) return *this;
  if (nvars_ == 0) nvars_ = o.nvars_;
  terms_ = merge_terms(terms_, o.terms_, [](const CycloScalar& c) { return -c; });
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  const int nv = std::max(a.nvars_, b.nvars_);
  if (a.terms_.empty() || b.terms_.empty()) return LaurentPoly(nv);
  if (b.is_constant()) return a.scaled(b.terms_[0].second);
  if (a.is_constant()) return b.scaled(a.terms_[0].second);
  std::vector<LaurentPoly::Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) prod.emplace_back(ma + mb, ca * cb);
  return LaurentPoly::from_terms(nv, std::move(prod));
}

LaurentPoly LaurentPoly::scaled(const CycloScalar& c) const {
  if (c.is_zero()) return LaurentPoly(nvars_);
  if (c.is_one()) return *this;
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

LaurentPoly LaurentPoly::shifted(const Monomial& m) const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.first = t.first + m;
  return r;
}

LaurentPoly LaurentPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power of a Laurent polynomial");
  LaurentPoly r = constant(nvars_, CycloScalar(1)), base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].first != b.terms_[i].first || !(a.terms_[i].second == b.terms_[i].second))
      return false;
  return true;
}

LaurentPoly LaurentPoly::act(const WreathElement& g) const {
  if (g.is_identity() || terms_.empty()) return *this;
  if (g.sites() != nvars_) throw std::invalid_argument("group element size does not match nvars");
  const int m = g.order();
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [mono, c] : terms_) {
    Monomial b;
    for (int k = 0; k < nvars_; ++k) b.e[g.image(k)] = mono.e[k];
    long phase = 0;
    for (int i = 0; i < nvars_; ++i) {
      if (g.flips(i)) b.e[i] = static_cast<std::int16_t>(-b.e[i]);
      phase += static_cast<long>(g.rot(i)) * b.e[i];
    }
    phase %= m;
    if (phase < 0) phase += m;
    out.emplace_back(b, phase == 0 ? c : c * CycloScalar::root_of_unity(m, phase));
  }
  return from_terms(nvars_, std::move(out));
}

LaurentPoly LaurentPoly::euler(int i) const {
  LaurentPoly r(nvars_);
  for (const auto& [mono, c] : terms_)
    if (mono.e[i] != 0) r.terms_.emplace_back(mono, c * CycloScalar(static_cast<long>(mono.e[i])));
  return r;
}

std::complex<double> LaurentPoly::evaluate(ComplexPoint q) const {
  std::complex<double> sum = 0;
  for (const auto& [mono, c] : terms_) {
    std::complex<double> t = c.to_complex();
    for (int i = 0; i < nvars_; ++i)
      if (mono.e[i] != 0) t *= std::pow(q[i], static_cast<int>(mono.e[i]));
    sum += t;
  }
  return sum;
}

int LaurentPoly::max_order() const {
  int n = 1;
  for (const auto& t : terms_) n = std::max(n, t.second.order());
  return n;
}

std::size_t LaurentPoly::hash() const {
  std::size_t h = terms_.size() * 16 + static_cast<std::size_t>(nvars_);
  for (const auto& [m, c] : terms_) h = h * 31 + (mono_hash(m) ^ (c.hash() << 1));
  return h;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << it->second.str() << ")";
    for (int i = 0; i < nvars_; ++i) {
      if (it->first.e[i] == 0) continue;
      os << "*q" << (i + 1);
      if (it->first.e[i] != 1) os << "^" << it->first.e[i];
    }
  }
  return os.str();
}

// ------------------------------------------------------- division and factors

std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (a.is_zero()) return LaurentPoly(a.nvars());
  const auto& lead = b.terms().back();
  const CycloScalar lead_inv = lead.second.is_one() ? CycloScalar(1) : lead.second.inverse();
  std::map<Monomial, CycloScalar> rem;
  for (const auto& t : a.terms()) rem.emplace(t.first, t.second);
  std::vector<LaurentPoly::Term> quot;
  // Laurent exponents: the bound on the quotient support in each variable is
  // min(a) - min(b) from below, which guarantees termination.
  Monomial lo_b = b.terms().front().first, lo_a = a.terms().front().first;
  for (const auto& t : b.terms())
    for (int i = 0; i < kMaxSites; ++i) lo_b.e[i] = std::min(lo_b.e[i], t.first.e[i]);
  for (const auto& t : a.terms())
    for (int i = 0; i < kMaxSites; ++i) lo_a.e[i] = std::min(lo_a.e[i], t.first.e[i]);
  const Monomial floor = lo_a - lo_b;
  while (!rem.empty()) {
    auto top = std::prev(rem.end());
    const Monomial d = top->first - lead.first;
    for (int i = 0; i < kMaxSites; ++i)
      if (d.e[i] < floor.e[i]) return std::nullopt;
    const CycloScalar c = top->second * lead_inv;
    quot.emplace_back(d, c);
    for (const auto& [mb, cb] : b.terms()) {
      const Monomial x = mb + d;
      auto it = rem.find(x);
      CycloScalar v = c * cb;
      if (it == rem.end()) {
        rem.emplace(x, -v);
      } else {
        it->second -= v;
        if (it->second.is_zero()) rem.erase(it);
      }
    }
  }
  return LaurentPoly::from_terms(a.nvars(), std::move(quot));
}

NormalizedFactor normalize_factor(const LaurentPoly& f) {
  if (f.is_zero()) throw std::domain_error("zero denominator factor");
  Monomial lo = f.terms().front().first;
  for (const auto& t : f.terms())
    for (int i = 0; i < kMaxSites; ++i) lo.e[i] = std::min(lo.e[i], t.first.e[i]);
  const CycloScalar unit = f.terms().back().second;
  LaurentPoly prim = f.shifted(Monomial{} - lo);
  if (!unit.is_one()) prim = prim.scaled(unit.inverse());
  return {unit, lo, std::move(prim)};
}

namespace {

struct PolyHash {
  std::size_t operator()(const LaurentPoly& p) const { return p.hash(); }
};

struct ActionImage {
  CycloScalar unit_inv;
  Monomial shift;
  FactorId id;
};

struct ActionKey {
  FactorId id;
  WreathElement g;
  bool operator==(const ActionKey&) const = default;
};

struct ActionKeyHash {
  std::size_t operator()(const ActionKey& k) const { return k.g.hash() * 1000003u + k.id; }
};

class FactorTable {
 public:
  static FactorTable& instance() {
    static FactorTable t;
    return t;
  }

  FactorId intern(const LaurentPoly& p) {
    std::lock_guard lock(mu_);
    auto it = index_.find(p);
    if (it != index_.end()) return it->second;
    const auto id = static_cast<FactorId>(polys_.size());
    polys_.push_back(std::make_unique<LaurentPoly>(p));
    index_.emplace(p, id);
    return id;
  }

  const LaurentPoly& poly(FactorId id) {
    std::lock_guard lock(mu_);
    return *polys_.at(id);
  }

  ActionImage act(FactorId id, const WreathElement& g) {
    {
      std::lock_guard lock(mu_);
      auto it = actions_.find({id, g});
      if (it != actions_.end()) return it->second;
    }
    auto nf = normalize_factor(poly(id).act(g));
    ActionImage img{nf.unit.inverse(), nf.shift, intern(nf.primitive)};
    std::lock_guard lock(mu_);
    actions_.emplace(ActionKey{id, g}, img);
    return img;
  }

 private:
  std::mutex mu_;
  std::vector<std::unique_ptr<LaurentPoly>> polys_;
  std::unordered_map<LaurentPoly, FactorId, PolyHash> index_;
  std::unordered_map<ActionKey, ActionImage, ActionKeyHash> actions_;
};

void add_factor(std::vector<RationalFunction::DenFactor>& den, FactorId id, int e) {
  auto it = std::lower_bound(den.begin(), den.end(), id,
                             [](const auto& f, FactorId x) { return f.first < x; });
  if (it != den.end() && it->first == id)
    it->second += e;
  else
    den.insert(it, {id, e});
}

}  // namespace

const LaurentPoly& factor_poly(FactorId id) { return FactorTable::instance().poly(id); }

FactorId intern_factor(const LaurentPoly& primitive) { return FactorTable::instance().intern(primitive); }

// ----------------------------------------------------------- RationalFunction

RationalFunction RationalFunction::constant(int nvars, const CycloScalar& c) {
  return RationalFunction(LaurentPoly::constant(nvars, c));
}

RationalFunction RationalFunction::fraction(const LaurentPoly& num,
                                            std::span<const LaurentPoly> den_factors) {
  RationalFunction r(num);
  CycloScalar unit(1);
  Monomial shift;
  for (const auto& f : den_factors) {
    auto nf = normalize_factor(f);
    unit *= nf.unit;
    shift = shift + nf.shift;
    if (!nf.primitive.is_constant()) add_factor(r.den_, intern_factor(nf.primitive), 1);
  }
  r.num_ = r.num_.shifted(Monomial{} - shift).scaled(unit.inverse());
  r.cancel();
  return r;
}

RationalFunction RationalFunction::fraction(const LaurentPoly& num, const LaurentPoly& den) {
  return fraction(num, std::span<const LaurentPoly>(&den, 1));
}

LaurentPoly RationalFunction::denominator() const {
  LaurentPoly d = LaurentPoly::constant(nvars(), CycloScalar(1));
  for (const auto& [id, e] : den_) d = d * factor_poly(id).pow(e);
  return d;
}

void RationalFunction::cancel() {
  if (den_.empty()) return;
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto& [id, e] : den_) {
    const LaurentPoly& f = factor_poly(id);
    while (e > 0) {
      auto q = divide_exact(num_, f);
      if (!q) break;
      num_ = std::move(*q);
      --e;
    }
  }
  std::erase_if(den_, [](const DenFactor& f) { return f.second == 0; });
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

namespace {

// Numerator of `a` over the lcm denominator.
LaurentPoly lift_numerator(const LaurentPoly& num, const std::vector<RationalFunction::DenFactor>& own,
                           const std::vector<RationalFunction::DenFactor>& lcm) {
  LaurentPoly out = num;
  std::size_t j = 0;
  for (const auto& [id, e] : lcm) {
    int have = 0;
    while (j < own.size() && own[j].first < id) ++j;
    if (j < own.size() && own[j].first == id) have = own[j].second;
    if (e > have) out = out * factor_poly(id).pow(e - have);
  }
  return out;
}

std::vector<RationalFunction::DenFactor> lcm_factors(const std::vector<RationalFunction::DenFactor>& a,
                                                     const std::vector<RationalFunction::DenFactor>& b) {
  std::vector<RationalFunction::DenFactor> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, std::max(a[i].second, b[j].second));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    cancel();
    return *this;
  }
  auto lcm = lcm_factors(den_, o.den_);
  num_ = lift_numerator(num_, den_, lcm) + lift_numerator(o.num_, o.den_, lcm);
  den_ = std::move(lcm);
  cancel();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return RationalFunction(std::max(a.nvars(), b.nvars()));
  RationalFunction r(a.num_ * b.num_);
  r.den_ = a.den_;
  for (const auto& [id, e] : b.den_) add_factor(r.den_, id, e);
  r.cancel();
  return r;
}

RationalFunction RationalFunction::scaled(const CycloScalar& c) const {
  if (c.is_zero()) return RationalFunction(nvars());
  RationalFunction r = *this;
  r.num_ = r.num_.scaled(c);
  return r;
}

RationalFunction RationalFunction::act(const WreathElement& g) const {
  if (g.is_identity() || is_zero()) return *this;
  RationalFunction r(num_.act(g));
  auto& table = FactorTable::instance();
  CycloScalar unit_inv(1);
  Monomial shift;
  for (const auto& [id, e] : den_) {
    auto img = table.act(id, g);
    for (int k = 0; k < e; ++k) {
      unit_inv *= img.unit_inv;
      shift = shift - img.shift;
    }
    add_factor(r.den_, img.id, e);
  }
  r.num_ = r.num_.shifted(shift).scaled(unit_inv);
  return r;
}

RationalFunction RationalFunction::euler(int i) const {
  if (den_.empty()) return RationalFunction(num_.euler(i));
  // D(N / prod f_k^e_k) over prod f_k^(e_k+1) for the factors with D f_k != 0.
  std::vector<std::size_t> moving;
  std::vector<LaurentPoly> derivs;
  for (std::size_t k = 0; k < den_.size(); ++k) {
    auto d = factor_poly(den_[k].first).euler(i);
    if (!d.is_zero()) {
      moving.push_back(k);
      derivs.push_back(std::move(d));
    }
  }
  if (moving.empty()) {
    RationalFunction r = *this;
    r.num_ = num_.euler(i);
    r.cancel();
    return r;
  }
  LaurentPoly all = LaurentPoly::constant(nvars(), CycloScalar(1));
  for (auto k : moving) all = all * factor_poly(den_[k].first);
  LaurentPoly num = num_.euler(i) * all;
  for (std::size_t t = 0; t < moving.size(); ++t) {
    LaurentPoly others = LaurentPoly::constant(nvars(), CycloScalar(1));
    for (std::size_t u = 0; u < moving.size(); ++u)
      if (u != t) others = others * factor_poly(den_[moving[u]].first);
    num -= (num_ * derivs[t] * others).scaled(CycloScalar(static_cast<long>(den_[moving[t]].second)));
  }
  RationalFunction r(std::move(num));
  r.den_ = den_;
  for (auto k : moving) r.den_[k].second += 1;
  r.cancel();
  return r;
}

std::complex<double> RationalFunction::evaluate(ComplexPoint q) const {
  std::complex<double> den = 1;
  for (const auto& [id, e] : den_) {
    auto v = factor_poly(id).evaluate(q);
    if (v == 0.0) throw std::domain_error("evaluation at a pole");
    den *= std::pow(v, e);
  }
  return num_.evaluate(q) / den;
}

double RationalFunction::min_denominator_modulus(ComplexPoint q) const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& [id, e] : den_) m = std::min(m, std::abs(factor_poly(id).evaluate(q)));
  return m;
}

std::string RationalFunction::str() const {
  if (den_.empty()) return num_.str();
  std::ostringstream os;
  os << "(" << num_.str() << ") / (";
  bool first = true;
  for (const auto& [id, e] : den_) {
    if (!first) os << " * ";
    first = false;
    os << "(" << factor_poly(id).str() << ")";
    if (e != 1) os << "^" << e;
  }
  os << ")";
  return os.str();
}

bool rational_eq(const RationalFunction& a, const RationalFunction& b) {
  return a.numerator() * b.denominator() == b.numerator() * a.denominator();
}

// ----------------------------------------------------------------------- JSON

json to_json(const LaurentPoly& p) {
  json out = json::array();
  for (const auto& [m, c] : p.terms()) {
    json e = json::array();
    for (int i = 0; i < p.nvars(); ++i) e.push_back(m.e[i]);
    out.push_back({{"exp", e}, {"coeff", to_json(c)}});
  }
  return out;
}

LaurentPoly poly_from_json(const json& j, int nvars) {
  LaurentPoly p(nvars);
  for (const auto& t : j) {
    Monomial m;
    const auto& e = t.at("exp");
    if (static_cast<int>(e.size()) != nvars) throw std::invalid_argument("exponent length mismatch");
    for (int i = 0; i < nvars; ++i) m.e[i] = static_cast<std::int16_t>(e[i].get<int>());
    p += LaurentPoly::monomial(nvars, m, scalar_from_json(t.at("coeff")));
  }
  return p;
}

json to_json(const RationalFunction& f) {
  json den = json::array();
  for (const auto& [id, e] : f.denominator_factors())
    den.push_back({{"factor", to_json(factor_poly(id))}, {"power", e}});
  return {{"num", to_json(f.numerator())}, {"den", den}};
}

}  // namespace dunklab
