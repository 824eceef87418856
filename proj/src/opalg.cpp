#include "dunklab/opalg.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace dunklab {

namespace {

MixedOperator::Matrix identity_matrix(int nvars, int d, const RationalFunction& diag) {
  MixedOperator::Matrix m(static_cast<std::size_t>(d) * d, RationalFunction(nvars));
  for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i) * d + i] = diag;
  return m;
}

bool matrix_zero(const MixedOperator::Matrix& m) {
  for (const auto& e : m)
    if (!e.is_zero()) return false;
  return true;
}

MixedOperator::Matrix matmul(const MixedOperator::Matrix& a, const MixedOperator::Matrix& b, int d,
                             int nvars) {
  if (d == 1) return {a[0] * b[0]};
  MixedOperator::Matrix c(static_cast<std::size_t>(d) * d, RationalFunction(nvars));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const auto& x = a[static_cast<std::size_t>(i) * d + j];
      if (x.is_zero()) continue;
      for (int k = 0; k < d; ++k) {
        const auto& y = b[static_cast<std::size_t>(j) * d + k];
        if (!y.is_zero()) c[static_cast<std::size_t>(i) * d + k] += x * y;
      }
    }
  return c;
}

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

MixedOperator MixedOperator::identity(int nvars, int m, int spin_dim) {
  return group(WreathElement::identity(nvars, m), spin_dim);
}

MixedOperator MixedOperator::coefficient(const RationalFunction& c, int m, int spin_dim) {
  MixedOperator op(c.nvars(), m, spin_dim);
  op.add_term({EulerIndex{}, WreathElement::identity(c.nvars(), m)}, identity_matrix(c.nvars(), spin_dim, c));
  return op;
}

MixedOperator MixedOperator::euler(int nvars, int m, int i, int power, int spin_dim) {
  if (i < 0 || i >= nvars) throw std::out_of_range("Euler operator site out of range");
  MixedOperator op(nvars, m, spin_dim);
  OpKey key{EulerIndex{}, WreathElement::identity(nvars, m)};
  key.euler[i] = static_cast<std::uint8_t>(power);
  op.add_term(key, identity_matrix(nvars, spin_dim, RationalFunction::constant(nvars, 1)));
  return op;
}

MixedOperator MixedOperator::group(const WreathElement& g, int spin_dim) {
  MixedOperator op(g.sites(), g.order(), spin_dim);
  op.add_term({EulerIndex{}, g}, identity_matrix(g.sites(), spin_dim, RationalFunction::constant(g.sites(), 1)));
  return op;
}

MixedOperator MixedOperator::spin(int nvars, int m, const std::vector<CycloScalar>& matrix, int spin_dim) {
  if (matrix.size() != static_cast<std::size_t>(spin_dim) * spin_dim)
    throw std::invalid_argument("spin matrix has the wrong size");
  Matrix coeff;
  for (const auto& x : matrix) coeff.push_back(RationalFunction::constant(nvars, x));
  MixedOperator op(nvars, m, spin_dim);
  op.add_term({EulerIndex{}, WreathElement::identity(nvars, m)}, std::move(coeff));
  return op;
}

MixedOperator MixedOperator::term(int nvars, int m, int spin_dim, const OpKey& key, Matrix coeff) {
  MixedOperator op(nvars, m, spin_dim);
  op.add_term(key, std::move(coeff));
  return op;
}

void MixedOperator::add_term(const OpKey& key, Matrix coeff) {
  if (matrix_zero(coeff)) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, std::move(coeff));
    return;
  }
  for (std::size_t e = 0; e < coeff.size(); ++e)
    if (!coeff[e].is_zero()) it->second[e] += coeff[e];
  if (matrix_zero(it->second)) terms_.erase(it);
}

void MixedOperator::check_compatible(const MixedOperator& o) const {
  if (nvars_ != o.nvars_ || dim_ != o.dim_ || (m_ != o.m_ && !terms_.empty() && !o.terms_.empty()))
    throw std::invalid_argument("operators act on different spaces");
}

MixedOperator MixedOperator::operator-() const {
  MixedOperator r = *this;
  for (auto& [k, mat] : r.terms_)
    for (auto& e : mat) e = -e;
  return r;
}

MixedOperator& MixedOperator::operator+=(const MixedOperator& o) {
  check_compatible(o);
  for (const auto& [k, mat] : o.terms_) add_term(k, mat);
  return *this;
}

MixedOperator& MixedOperator::operator-=(const MixedOperator& o) { return *this += -o; }

MixedOperator MixedOperator::scaled(const CycloScalar& c) const {
  if (c.is_zero()) return MixedOperator(nvars_, m_, dim_);
  MixedOperator r = *this;
  for (auto& [k, mat] : r.terms_)
    for (auto& e : mat) e = e.scaled(c);
  return r;
}

MixedOperator operator*(const MixedOperator& a, const MixedOperator& b) {
  a.check_compatible(b);
  const int n = a.nvars_, d = a.dim_;
  MixedOperator out(n, a.m_, d);
  // D^j (g . M_b) for each (g, b-term, j), shared across a-terms.
  std::map<std::pair<WreathElement, const OpKey*>, MixedOperator::Matrix> acted;
  std::map<std::tuple<WreathElement, const OpKey*, EulerIndex>, MixedOperator::Matrix> derived;

  for (const auto& [ka, ma] : a.terms_) {
    const WreathElement& g = ka.group;
    for (const auto& [kb, mb] : b.terms_) {
      // g D^{k_b} = sign D^{k'} g with k'_{s(i)} = k_b[i].
      EulerIndex kp{};
      int sign_exp = 0;
      for (int i = 0; i < n; ++i) {
        kp[g.image(i)] = kb.euler[i];
        if (g.flips(g.image(i))) sign_exp += kb.euler[i];
      }
      const WreathElement gh = g * kb.group;
      auto ait = acted.find({g, &kb});
      if (ait == acted.end()) {
        MixedOperator::Matrix m2;
        m2.reserve(mb.size());
        for (const auto& e : mb) m2.push_back(e.act(g));
        ait = acted.emplace(std::pair{g, &kb}, std::move(m2)).first;
      }
      // Leibniz over all j <= k_a.
      EulerIndex j{};
      while (true) {
        auto key = std::tuple{g, &kb, j};
        auto dit = derived.find(key);
        if (dit == derived.end()) {
          MixedOperator::Matrix m3 = ait->second;
          for (int i = 0; i < n; ++i)
            for (int t = 0; t < j[i]; ++t)
              for (auto& e : m3) e = e.euler(i);
          dit = derived.emplace(key, std::move(m3)).first;
        }
        if (!matrix_zero(dit->second)) {
          long coeff = (sign_exp % 2) ? -1 : 1;
          OpKey rk{EulerIndex{}, gh};
          for (int i = 0; i < n; ++i) {
            coeff *= binomial(ka.euler[i], j[i]);
            rk.euler[i] = static_cast<std::uint8_t>(ka.euler[i] - j[i] + kp[i]);
          }
          auto prod = matmul(ma, dit->second, d, n);
          if (coeff != 1)
            for (auto& e : prod) e = e.scaled(CycloScalar(coeff));
          out.add_term(rk, std::move(prod));
        }
        int i = 0;
        while (i < n && j[i] == ka.euler[i]) j[i++] = 0;
        if (i == n) break;
        ++j[i];
      }
    }
  }
  return out;
}

MixedOperator MixedOperator::pow(int e) const {
  MixedOperator r = identity(nvars_, m_, dim_);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

MixedOperator MixedOperator::with_spin_dim(int spin_dim) const {
  if (dim_ != 1) throw std::logic_error("operator already carries a spin part");
  MixedOperator r(nvars_, m_, spin_dim);
  for (const auto& [k, mat] : terms_) r.add_term(k, identity_matrix(nvars_, spin_dim, mat[0]));
  return r;
}

SpinFunction MixedOperator::apply(const SpinFunction& f) const {
  if (static_cast<int>(f.size()) != dim_) throw std::invalid_argument("spin function has wrong dimension");
  SpinFunction out(dim_, RationalFunction(nvars_));
  for (const auto& [k, mat] : terms_) {
    SpinFunction g;
    for (const auto& c : f) {
      auto h = c.act(k.group);
      for (int i = 0; i < nvars_; ++i)
        for (int t = 0; t < k.euler[i]; ++t) h = h.euler(i);
      g.push_back(std::move(h));
    }
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) {
        const auto& x = mat[static_cast<std::size_t>(r) * dim_ + c];
        if (!x.is_zero() && !g[c].is_zero()) out[r] += x * g[c];
      }
  }
  return out;
}

RationalFunction MixedOperator::apply(const RationalFunction& f) const { return apply(SpinFunction{f})[0]; }

std::optional<std::vector<std::complex<double>>> MixedOperator::evaluate_on(const std::vector<LaurentPoly>& f,
                                                                            ComplexPoint q) const {
  std::vector<std::complex<double>> out(dim_, 0.0);
  for (const auto& [k, mat] : terms_) {
    std::vector<std::complex<double>> g;
    for (const auto& c : f) {
      auto h = c.act(k.group);
      for (int i = 0; i < nvars_; ++i)
        for (int t = 0; t < k.euler[i]; ++t) h = h.euler(i);
      g.push_back(h.evaluate(q));
    }
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) {
        const auto& x = mat[static_cast<std::size_t>(r) * dim_ + c];
        if (x.is_zero()) continue;
        if (x.min_denominator_modulus(q) < 1e-6) return std::nullopt;
        out[r] += x.evaluate(q) * g[c];
      }
  }
  return out;
}

std::string MixedOperator::str() const {
  std::ostringstream os;
  for (const auto& [k, mat] : terms_) {
    os << "[D^(";
    for (int i = 0; i < nvars_; ++i) os << (i ? "," : "") << int(k.euler[i]);
    os << ") " << k.group.str() << "] ";
    if (dim_ == 1) {
      os << mat[0].str();
    } else {
      os << "{";
      for (std::size_t e = 0; e < mat.size(); ++e)
        if (!mat[e].is_zero()) os << " (" << e / dim_ << "," << e % dim_ << "): " << mat[e].str();
      os << " }";
    }
    os << "\n";
  }
  return os.str();
}

MixedOperator commutator(const MixedOperator& a, const MixedOperator& b) { return a * b - b * a; }

MixedOperator ad_projector(int site, int r, const MixedOperator& a) {
  const int m = a.order(), n = a.nvars();
  MixedOperator out(n, m, a.spin_dim());
  for (int s = 0; s < m; ++s) {
    auto qs = MixedOperator::group(WreathElement::rotation(n, m, site, s), a.spin_dim());
    auto qms = MixedOperator::group(WreathElement::rotation(n, m, site, (m - s) % m), a.spin_dim());
    out += (qms * a * qs).scaled(CycloScalar::root_of_unity(m, static_cast<std::int64_t>(s) * r));
  }
  return out.scaled(CycloScalar(Rational(1, m)));
}

namespace {

std::vector<std::complex<double>> torus_point(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0, 2 * std::acos(-1.0));
  std::vector<std::complex<double>> p;
  for (int i = 0; i < n; ++i) p.push_back(std::polar(1.0, u(rng)));
  return p;
}

std::vector<LaurentPoly> test_function(std::mt19937_64& rng, int n, int d) {
  std::uniform_int_distribution<int> ex(-2, 2), co(-4, 4);
  std::vector<LaurentPoly> f;
  for (int c = 0; c < d; ++c) {
    LaurentPoly p(n);
    for (int t = 0; t < 4; ++t) {
      Monomial mono;
      for (int i = 0; i < n; ++i) mono.e[i] = static_cast<std::int16_t>(ex(rng));
      p += LaurentPoly::monomial(n, mono, CycloScalar(co(rng)));
    }
    f.push_back(std::move(p));
  }
  return f;
}

double residual(const MixedOperator& a, const MixedOperator* b, std::uint64_t seed, int points, int functions) {
  std::mt19937_64 rng(seed);
  double worst = 0;
  for (int fi = 0; fi < functions; ++fi) {
    auto f = test_function(rng, a.nvars(), a.spin_dim());
    int done = 0;
    for (int attempt = 0; done < points && attempt < 100 * points; ++attempt) {
      auto q = torus_point(rng, a.nvars());
      auto va = a.evaluate_on(f, q);
      if (!va) continue;
      std::vector<std::complex<double>> vb(va->size(), 0.0);
      if (b) {
        auto v = b->evaluate_on(f, q);
        if (!v) continue;
        vb = *v;
      }
      for (std::size_t r = 0; r < va->size(); ++r) {
        const double scale = std::max({1.0, std::abs((*va)[r]), std::abs(vb[r])});
        worst = std::max(worst, std::abs((*va)[r] - vb[r]) / scale);
      }
      ++done;
    }
  }
  return worst;
}

}  // namespace

ZeroCheck normalize_is_zero(const MixedOperator& a, std::uint64_t seed) {
  ZeroCheck z;
  z.terms = a.size();
  z.zero = a.is_zero();
  if (!z.zero) {
    const auto& [k, mat] = *a.terms().begin();
    std::ostringstream os;
    os << "euler=(";
    for (int i = 0; i < a.nvars(); ++i) os << (i ? "," : "") << int(k.euler[i]);
    os << ") group=" << k.group.str() << " coeff=";
    for (const auto& e : mat)
      if (!e.is_zero()) {
        os << e.str();
        break;
      }
    z.witness = os.str();
  }
  z.numeric_residual = residual(a, nullptr, seed, 5, 3);
  return z;
}

double numeric_difference(const MixedOperator& a, const MixedOperator& b, std::uint64_t seed, int points,
                          int functions) {
  return residual(a, &b, seed, points, functions);
}

json to_json(const MixedOperator& a) {
  json out = json::array();
  for (const auto& [k, mat] : a.terms()) {
    json e = json::array();
    for (int i = 0; i < a.nvars(); ++i) e.push_back(k.euler[i]);
    json rows = json::array();
    for (int r = 0; r < a.spin_dim(); ++r) {
      json row = json::array();
      for (int c = 0; c < a.spin_dim(); ++c) row.push_back(to_json(mat[static_cast<std::size_t>(r) * a.spin_dim() + c]));
      rows.push_back(row);
    }
    out.push_back({{"euler", e}, {"group", to_json(k.group)}, {"matrix", rows}});
  }
  return out;
}

}  // namespace dunklab
