#include "dunklab/static.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace dunklab {

namespace {

CycloScalar tau(int m, long s) { return CycloScalar::root_of_unity(m, ((s % m) + m) % m); }

LaurentPoly qv(int N, int i, int power = 1, const CycloScalar& c = CycloScalar(1)) {
  return LaurentPoly::variable(N, i, power, c);
}

LaurentPoly one(int N) { return LaurentPoly::constant(N, CycloScalar(1)); }

MixedOperator coeff_group(const RationalFunction& c, const WreathElement& g) {
  return MixedOperator::term(g.sites(), g.order(), 1, {EulerIndex{}, g}, {c});
}

RationalFunction squared_over(const LaurentPoly& num, const LaurentPoly& den) {
  return RationalFunction::fraction(num, std::vector<LaurentPoly>{den, den});
}

Rational rational_sqrt(const Rational& r) {
  if (r < 0) throw std::invalid_argument("negative squared coupling");
  mpz_class n = r.get_num(), d = r.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    throw std::invalid_argument("squared coupling " + to_string(r) + " is not a rational square");
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  return Rational(sn, sd);
}

// Scalar operations shared by the exact and floating point residuals.
struct ExactField {
  int field;
  int m;
  CycloScalar tau(long s) const { return CycloScalar::root_of_unity(field, (((s % m) + m) % m) * (field / m)); }
  CycloScalar one() const { return CycloScalar(1); }
  CycloScalar scalar(const Rational& r) const { return CycloScalar(r); }
  void check(const CycloScalar& den) const {
    if (den.is_zero()) throw std::domain_error("an image of one site coincides with another site");
  }
};

struct FloatField {
  int m;
  std::complex<double> tau(long s) const { return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(s) / m); }
  std::complex<double> one() const { return 1.0; }
  std::complex<double> scalar(double r) const { return r; }
  void check(const std::complex<double>& den) const {
    if (std::abs(den) < 1e-9) throw std::domain_error("an image of one site coincides with another site");
  }
};

template <class F, class S>
std::vector<S> cyclic_residuals(const F& f, const std::vector<S>& q) {
  const int N = static_cast<int>(q.size());
  std::vector<S> out(N, S(0));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      for (int s = 0; s < f.m; ++s) {
        const S t = f.tau(s);
        const S den = q[i] - t * q[j];
        f.check(den);
        out[i] += t * q[i] * q[j] * (q[i] + t * q[j]) / (den * den * den);
      }
    }
  return out;
}

template <class F, class S, class C>
std::vector<S> dihedral_residuals(const F& f, const std::vector<S>& q, const C& beta2, const C& gamma2) {
  const int N = static_cast<int>(q.size());
  std::vector<S> out(N, S(0));
  const S b2 = f.scalar(beta2), g2 = f.scalar(gamma2), two = f.scalar(2), u = f.one();
  for (int l = 0; l < N; ++l)
    for (int s = 0; s < f.m; ++s) {
      const S t = f.tau(s);
      S inner(0);
      for (int j = 0; j < N; ++j) {
        if (j == l) continue;
        const S d1 = q[l] - t * q[j];
        const S d2 = t * q[l] * q[j] - u;
        f.check(d1);
        f.check(d2);
        inner += q[j] * (q[l] + t * q[j]) / (d1 * d1 * d1) + q[j] * (t * q[l] * q[j] + u) / (d2 * d2 * d2);
      }
      const S x = t * q[l];
      const S dp = u + x, dm = u - x;
      f.check(dp);
      f.check(dm);
      S term = two * inner;
      if (!(b2 == S(0))) term += b2 * (u - x) / (dp * dp * dp);
      if (!(g2 == S(0))) term -= g2 * (u + x) / (dm * dm * dm);
      out[l] += t * term;
    }
  return out;
}

int lcm_int(int a, int b) { return std::lcm(a, b); }

}  // namespace

// ---------------------------------------------------------------- operators

MixedOperator build_barred(const ModelParams& p, int i) {
  if (p.family != ModelFamily::cyclic) throw std::invalid_argument("barred operators are built for the cyclic family");
  const int N = p.N, m = p.m;
  MixedOperator op(N, m);
  for (int j = 0; j < N; ++j) {
    if (j == i) continue;
    for (int s = 0; s < m; ++s) {
      auto den = qv(N, i) - qv(N, j, 1, tau(m, s));
      auto num = j < i ? qv(N, i) : qv(N, j, 1, tau(m, s));
      op += coeff_group(RationalFunction::fraction(num, den), twisted_exchange(N, m, i, j, s));
    }
  }
  return op;
}

MixedOperator build_hbar(int N, int m) {
  MixedOperator op(N, m);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      for (int s = 0; s < m; ++s) {
        auto num = qv(N, i, 1, tau(m, s)) * qv(N, j);
        op += coeff_group(squared_over(num, qv(N, i) - qv(N, j, 1, tau(m, s))), twisted_exchange(N, m, i, j, s));
      }
    }
  return op;
}

RationalFunction hbar_potential(int N, int m) {
  RationalFunction v(N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      for (int s = 0; s < m; ++s)
        v += squared_over(qv(N, i, 1, tau(m, s)) * qv(N, j), qv(N, i) - qv(N, j, 1, tau(m, s)));
    }
  return v;
}

RationalFunction cyclic_residual_function(int N, int m, int i) {
  RationalFunction r(N);
  for (int j = 0; j < N; ++j) {
    if (j == i) continue;
    for (int s = 0; s < m; ++s) {
      auto den = qv(N, i) - qv(N, j, 1, tau(m, s));
      auto num = qv(N, i, 1, tau(m, s)) * qv(N, j) * (qv(N, i) + qv(N, j, 1, tau(m, s)));
      r += RationalFunction::fraction(num, std::vector<LaurentPoly>{den, den, den});
    }
  }
  return r;
}

MixedOperator build_barred_dihedral(int N, int m, const Rational& beta, const Rational& gamma, int i) {
  ModelParams p;
  p.family = ModelFamily::dihedral;
  p.N = N;
  p.m = m;
  p.lambda = 1;
  p.mu = beta + gamma;
  p.rho = beta - gamma;
  return build_dunkl(p, i) - MixedOperator::euler(N, m, i);
}

MixedOperator build_hbar_dihedral(int N, int m, const Rational& beta, const Rational& gamma) {
  MixedOperator op = build_hbar(N, m);
  for (int l = 0; l < N; ++l) {
    for (int k = 0; k < N; ++k) {
      if (k == l) continue;
      for (int s = 0; s < m; ++s) {
        auto x = qv(N, l, 1, tau(m, s)) * qv(N, k);
        op += coeff_group(squared_over(x, x - one(N)), reflected_exchange(N, m, l, k, s));
      }
    }
    for (int s = 0; s < m; ++s) {
      auto x = qv(N, l, 1, tau(m, s));
      auto c = squared_over(x.scaled(CycloScalar(gamma)), one(N) - x) -
               squared_over(x.scaled(CycloScalar(beta)), one(N) + x);
      op += coeff_group(c, WreathElement::rotation(N, m, l, (2 * s) % m) * WreathElement::reflection(N, m, l));
    }
  }
  return op;
}

// ----------------------------------------------------------------- lattices

std::string to_string(LatticeFamily f) {
  switch (f) {
    case LatticeFamily::cyclic: return "cyclic";
    case LatticeFamily::dihedral_odd: return "dihedral-odd";
    case LatticeFamily::dihedral_even: return "dihedral-even";
  }
  return "?";
}

std::string to_string(LatticeLabel l) {
  switch (l) {
    case LatticeLabel::qqk: return "qqk";
    case LatticeLabel::L2Nm: return "L2Nm";
    case LatticeLabel::L2NmPlusM_halfshift: return "L2NmPlusM_halfshift";
    case LatticeLabel::L2NmPlusM_integer: return "L2NmPlusM_integer";
    case LatticeLabel::L2Np1m: return "L2Np1m";
    case LatticeLabel::custom: return "custom";
  }
  return "?";
}

LatticeFamily lattice_family_from_string(const std::string& s) {
  for (auto f : {LatticeFamily::cyclic, LatticeFamily::dihedral_odd, LatticeFamily::dihedral_even})
    if (to_string(f) == s) return f;
  throw std::invalid_argument("unknown lattice family '" + s + "'");
}

LatticeLabel lattice_label_from_string(const std::string& s) {
  for (auto l : {LatticeLabel::qqk, LatticeLabel::L2Nm, LatticeLabel::L2NmPlusM_halfshift,
                 LatticeLabel::L2NmPlusM_integer, LatticeLabel::L2Np1m, LatticeLabel::custom})
    if (to_string(l) == s) return l;
  throw std::invalid_argument("unknown lattice label '" + s + "'");
}

Rational LatticeConfig::beta() const { return rational_sqrt(beta2); }
Rational LatticeConfig::gamma() const { return rational_sqrt(gamma2); }
Rational LatticeConfig::mu() const { return rational_sqrt(mu2); }

std::vector<CycloScalar> LatticeConfig::reduced_positions() const {
  if (angles.size() != positions.size()) return positions;
  std::vector<CycloScalar> out;
  for (const auto& a : angles) out.push_back(CycloScalar::root_of_unity(static_cast<int>(a.get_den().get_si()), a.get_num().get_si()));
  return out;
}

LatticeConfig equidistant_lattice(LatticeFamily family, int N, int m, int L, const Rational& offset,
                                  const Rational& coupling_a, const Rational& coupling_b) {
  if (N < 1 || N > 64) throw std::invalid_argument("N out of range");
  if (m < 1) throw std::invalid_argument("m must be positive");
  if (L < 1) throw std::invalid_argument("L must be positive");
  if (family == LatticeFamily::dihedral_odd && m % 2 == 0) throw std::invalid_argument("dihedral-odd needs odd m");
  if (family == LatticeFamily::dihedral_even && m % 2 == 1) throw std::invalid_argument("dihedral-even needs even m");
  const Rational twice = 2 * offset;
  if (twice.get_den() != 1) throw std::invalid_argument("offset must be a multiple of 1/2");
  LatticeConfig lat;
  lat.family = family;
  lat.N = N;
  lat.m = m;
  lat.L = L;
  lat.offset = offset;
  lat.label = LatticeLabel::custom;
  lat.field = lcm_int(2 * L, m);
  const long shift = twice.get_num().get_si();
  for (int k = 1; k <= N; ++k) {
    long e = ((2L * k - shift) * (lat.field / (2 * L))) % lat.field;
    lat.positions.push_back(CycloScalar::root_of_unity(lat.field, (e + lat.field) % lat.field));
    Rational angle((e + lat.field) % lat.field, lat.field);
    angle.canonicalize();
    lat.angles.push_back(angle);
  }
  if (family == LatticeFamily::dihedral_odd) {
    lat.beta2 = coupling_a;
    lat.gamma2 = coupling_b;
  } else if (family == LatticeFamily::dihedral_even) {
    lat.mu2 = coupling_a;
  }
  return lat;
}

LatticeConfig build_lattice(LatticeFamily family, int N, int m, LatticeLabel label) {
  if (family == LatticeFamily::cyclic) {
    if (label != LatticeLabel::qqk) throw std::invalid_argument("the cyclic lattice has label qqk");
    auto lat = equidistant_lattice(family, N, m, m * N, 0);
    lat.label = label;
    return lat;
  }
  if (label == LatticeLabel::qqk || label == LatticeLabel::custom)
    throw std::invalid_argument("dihedral lattices need a table label");
  if (family == LatticeFamily::dihedral_even || m % 2 == 0)
    throw std::invalid_argument("the lattice table covers odd m only");
  const Rational q(1, 4), n(9, 4), h(1, 2);
  LatticeConfig lat;
  switch (label) {
    case LatticeLabel::L2Nm: lat = equidistant_lattice(family, N, m, 2 * N * m, h, q, q); break;
    case LatticeLabel::L2NmPlusM_halfshift: lat = equidistant_lattice(family, N, m, 2 * N * m + m, h, n, q); break;
    case LatticeLabel::L2NmPlusM_integer: lat = equidistant_lattice(family, N, m, 2 * N * m + m, 0, q, n); break;
    case LatticeLabel::L2Np1m: lat = equidistant_lattice(family, N, m, 2 * (N + 1) * m, 0, n, n); break;
    default: throw std::invalid_argument("unknown label");
  }
  lat.label = label;
  return lat;
}

std::vector<CycloScalar> residual_cyclic(int N, int m, const std::vector<CycloScalar>& q) {
  if (static_cast<int>(q.size()) != N) throw std::invalid_argument("expected N positions");
  int field = m;
  for (const auto& x : q) field = lcm_int(field, x.order());
  std::vector<CycloScalar> qe;
  for (const auto& x : q) qe.push_back(x.embedded(field));
  return cyclic_residuals(ExactField{field, m}, qe);
}

std::vector<CycloScalar> residual_dihedral(const LatticeConfig& lat) {
  if (lat.family == LatticeFamily::cyclic) throw std::invalid_argument("not a dihedral lattice");
  const bool odd = lat.family == LatticeFamily::dihedral_odd;
  return dihedral_residuals(ExactField{lat.field, lat.m}, lat.positions, odd ? lat.beta2 : Rational(0),
                            odd ? lat.gamma2 : lat.mu2);
}

std::vector<CycloScalar> lattice_residuals(const LatticeConfig& lat) {
  if (lat.family == LatticeFamily::cyclic) return residual_cyclic(lat.N, lat.m, lat.positions);
  return residual_dihedral(lat);
}

std::vector<std::complex<double>> residual_cyclic_numeric(int m, const std::vector<std::complex<double>>& q) {
  return cyclic_residuals(FloatField{m}, q);
}

std::vector<std::complex<double>> residual_dihedral_numeric(int m, const std::vector<std::complex<double>>& q,
                                                            double beta2, double gamma2) {
  return dihedral_residuals(FloatField{m}, q, beta2, gamma2);
}

json to_json(const LatticeConfig& lat) {
  json pos = json::array();
  for (const auto& x : lat.reduced_positions()) pos.push_back(to_json(x));
  json angles = json::array();
  for (const auto& a : lat.angles) angles.push_back(to_string(a));
  json couplings = json::object();
  if (lat.family == LatticeFamily::dihedral_odd) {
    couplings["beta2"] = to_string(lat.beta2);
    couplings["gamma2"] = to_string(lat.gamma2);
  } else if (lat.family == LatticeFamily::dihedral_even) {
    couplings["mu2"] = to_string(lat.mu2);
  }
  json j{{"family", to_string(lat.family)}, {"N", lat.N}, {"m", lat.m}, {"L", lat.L},
         {"offset", to_string(lat.offset)}, {"label", to_string(lat.label)}, {"positions", pos}, {"angles", angles},
         {"couplings", couplings}};
  try {
    auto res = lattice_residuals(lat);
    json rj = json::array();
    double worst = 0;
    bool exact_zero = true;
    for (const auto& r : res) {
      rj.push_back(to_json(r));
      exact_zero = exact_zero && r.is_zero();
      worst = std::max(worst, std::abs(r.to_complex()));
    }
    j["residuals"] = rj;
    j["residual_max"] = exact_zero ? json("0") : json(worst);
  } catch (const std::domain_error& e) {
    j["residual_max"] = nullptr;
    j["error"] = e.what();
  }
  return j;
}

// ------------------------------------------------------------------ freezing

namespace {

CycloScalar evaluate_poly(const LaurentPoly& p, const std::vector<CycloScalar>& q) {
  CycloScalar sum(0);
  for (const auto& [mono, c] : p.terms()) {
    CycloScalar t = c;
    for (int i = 0; i < p.nvars(); ++i)
      if (mono.e[i] != 0) t *= q[i].pow(mono.e[i]);
    sum += t;
  }
  return sum;
}

}  // namespace

CycloScalar evaluate_exact(const RationalFunction& f, const std::vector<CycloScalar>& q) {
  if (static_cast<int>(q.size()) != f.nvars()) throw std::invalid_argument("wrong number of positions");
  const auto num = evaluate_poly(f.numerator(), q);
  if (f.is_polynomial()) return num;
  const auto den = evaluate_poly(f.denominator(), q);
  if (den.is_zero()) throw std::domain_error("coefficient has a pole at the lattice");
  return num / den;
}

MixedOperator freeze(const MixedOperator& a, const LatticeConfig& lat) {
  MixedOperator out(a.nvars(), a.order(), a.spin_dim());
  for (const auto& [key, coeff] : a.terms()) {
    MixedOperator::Matrix mat;
    mat.reserve(coeff.size());
    for (const auto& c : coeff)
      mat.push_back(c.is_zero() ? RationalFunction(a.nvars())
                                : RationalFunction::constant(a.nvars(), evaluate_exact(c, lat.positions)));
    out += MixedOperator::term(a.nvars(), a.order(), a.spin_dim(), key, std::move(mat));
  }
  return out;
}

FrozenHamiltonian build_frozen_hamiltonian(const LatticeConfig& lat) {
  FrozenHamiltonian h;
  h.lattice = lat;
  switch (lat.family) {
    case LatticeFamily::cyclic: h.symbolic = build_hbar(lat.N, lat.m); break;
    case LatticeFamily::dihedral_odd: h.symbolic = build_hbar_dihedral(lat.N, lat.m, lat.beta(), lat.gamma()); break;
    case LatticeFamily::dihedral_even: h.symbolic = build_hbar_dihedral(lat.N, lat.m, 0, lat.mu()); break;
  }
  h.residuals = lattice_residuals(lat);
  h.warning = std::any_of(h.residuals.begin(), h.residuals.end(), [](const CycloScalar& r) { return !r.is_zero(); });
  h.frozen = freeze(h.symbolic, lat);
  return h;
}

SpinMatrix frozen_spin_matrix(const FrozenHamiltonian& h, const SpinRepData& rep) {
  return constant_spin_matrix(substitute_spin(h.frozen, rep));
}

Eigen::MatrixXcd frozen_spin_matrix_complex(const FrozenHamiltonian& h, const SpinRepData& rep) {
  rep.validate();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rep.dim(), rep.dim());
  for (const auto& [key, coeff] : h.frozen.terms()) {
    if (key.euler != EulerIndex{}) throw std::invalid_argument("frozen operator has a derivative part");
    const auto c = coeff[0].numerator().constant_value() / coeff[0].denominator().constant_value();
    add_spin_image(out, c.to_complex(), rep, key.group.inverse());
  }
  return out;
}

Eigen::MatrixXcd frozen_cyclic_sin_matrix(const SpinRepData& rep) {
  const int N = rep.N, m = rep.m, d = rep.dim();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 0; k < N; ++k)
    for (int l = 0; l < N; ++l) {
      if (k == l) continue;
      for (int s = 0; s < m; ++s) {
        const double x = std::sin(std::numbers::pi * (k - l - N * s) / (m * N));
        h += (-0.25 / (x * x)) * spin_image(rep, twisted_exchange(N, m, k, l, s)).to_complex();
      }
    }
  return h;
}

json x_display(const FrozenHamiltonian& h) {
  const auto& lat = h.lattice;
  const int N = lat.N, m = lat.m;
  std::map<WreathElement, double> sin_form;
  if (lat.family == LatticeFamily::cyclic)
    for (int k = 0; k < N; ++k)
      for (int l = 0; l < N; ++l) {
        if (k == l) continue;
        for (int s = 0; s < m; ++s) {
          const double x = std::sin(std::numbers::pi * (k - l - N * s) / (m * N));
          sin_form[twisted_exchange(N, m, k, l, s)] += -0.25 / (x * x);
        }
      }
  json out = json::array();
  for (const auto& [key, coeff] : h.frozen.terms()) {
    const auto c = coeff[0].numerator().constant_value();
    json e{{"element", key.group.str()}, {"coupling", c.to_complex().real()}, {"coupling_exact", to_json(c)}};
    if (auto it = sin_form.find(key.group); it != sin_form.end()) {
      e["x_form"] = "-1/4 sum 1/sin^2(pi (k - l - N s)/(m N))";
      e["x_form_value"] = it->second;
    }
    out.push_back(std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------------- scan

std::vector<ScanEntry> scan_equidistant(LatticeFamily family, int N, int m, const ScanOptions& opts) {
  std::vector<ScanEntry> out;
  std::vector<std::pair<Rational, Rational>> grid;
  if (family == LatticeFamily::cyclic) {
    grid.emplace_back(0, 0);
  } else if (family == LatticeFamily::dihedral_odd) {
    if (m % 2 == 0) throw std::invalid_argument("dihedral-odd needs odd m");
    for (const auto& a : opts.couplings)
      for (const auto& b : opts.couplings) grid.emplace_back(a, b);
  } else {
    if (m % 2 == 1) throw std::invalid_argument("dihedral-even needs even m");
    for (const auto& a : opts.couplings) grid.emplace_back(a, 0);
  }
  for (int L = opts.Lmin; L <= opts.Lmax; ++L)
    for (const auto& off : opts.offsets) {
      std::vector<std::complex<double>> q;
      for (int k = 1; k <= N; ++k)
        q.push_back(std::polar(1.0, 2 * std::numbers::pi * (k - off.get_d()) / L));
      for (const auto& [a, b] : grid) {
        std::vector<std::complex<double>> res;
        try {
          if (family == LatticeFamily::cyclic)
            res = residual_cyclic_numeric(m, q);
          else if (family == LatticeFamily::dihedral_odd)
            res = residual_dihedral_numeric(m, q, a.get_d(), b.get_d());
          else
            res = residual_dihedral_numeric(m, q, 0, a.get_d());
        } catch (const std::domain_error&) {
          continue;
        }
        double worst = 0;
        for (const auto& r : res) worst = std::max(worst, std::abs(r));
        out.push_back({L, off, a, b, worst});
      }
    }
  std::stable_sort(out.begin(), out.end(), [](const ScanEntry& x, const ScanEntry& y) { return x.residual < y.residual; });
  return out;
}

json to_json(const ScanEntry& e) {
  return {{"L", e.L}, {"offset", to_string(e.offset)}, {"a2", to_string(e.a2)}, {"b2", to_string(e.b2)},
          {"residual", e.residual}};
}

// ---------------------------------------------------------------- identities

SuiteReport static_identities(int N, int m, std::uint64_t seed) {
  SuiteReport r{"static", json{{"N", N}, {"m", m}}, {}};
  ModelParams p;
  p.family = ModelFamily::cyclic;
  p.N = N;
  p.m = m;
  p.lambda = Rational(1, 2);
  std::vector<MixedOperator> db;
  for (int i = 0; i < N; ++i) db.push_back(build_barred(p, i));
  const auto H = build_hbar(N, m);
  const auto V = hbar_potential(N, m);
  for (int i = 0; i < N; ++i) {
    const auto s = std::to_string(i + 1);
    r.checks.push_back(check_identity("d" + s + " = D" + s + " + lambda dbar" + s, build_dunkl(p, i),
                                      MixedOperator::euler(N, m, i) + db[i].scaled(CycloScalar(p.lambda)), true, seed));
    for (int j = i + 1; j < N; ++j)
      r.checks.push_back(check_identity("[dbar" + s + ", dbar" + std::to_string(j + 1) + "] = 0", db[i] * db[j],
                                        db[j] * db[i], true, seed));
    r.checks.push_back(check_identity("[Hbar, dbar" + s + "] = D" + s + " V", H * db[i] - db[i] * H,
                                      MixedOperator::coefficient(V.euler(i), m), true, seed));
    r.checks.push_back(check_identity("D" + s + " V = -2 R" + s, MixedOperator::coefficient(V.euler(i), m),
                                      MixedOperator::coefficient(cyclic_residual_function(N, m, i).scaled(CycloScalar(-2)), m),
                                      true, seed));
  }
  return r;
}

json candidate_spin_charges(const FrozenHamiltonian& h, const SpinRepData& rep, int kmax) {
  const auto& lat = h.lattice;
  const int N = lat.N, m = lat.m;
  std::vector<MixedOperator> db;
  for (int i = 0; i < N; ++i) {
    if (lat.family == LatticeFamily::cyclic) {
      ModelParams p;
      p.family = ModelFamily::cyclic;
      p.N = N;
      p.m = m;
      db.push_back(build_barred(p, i));
    } else if (lat.family == LatticeFamily::dihedral_odd) {
      db.push_back(build_barred_dihedral(N, m, lat.beta(), lat.gamma(), i));
    } else {
      db.push_back(build_barred_dihedral(N, m, lat.mu() / 2, lat.mu() / 2, i));
    }
  }
  const Eigen::MatrixXcd H = frozen_spin_matrix(h, rep).to_complex();
  json out = json::array();
  for (int k = 1; k <= kmax; ++k) {
    MixedOperator charge(N, m);
    for (const auto& d : db) charge += d.pow(k);
    json e{{"k", k}};
    try {
      const Eigen::MatrixXcd C = constant_spin_matrix(substitute_spin(freeze(charge, lat), rep)).to_complex();
      e["commutator_norm"] = (H * C - C * H).norm();
      e["charge_norm"] = C.norm();
    } catch (const std::exception& ex) {
      e["error"] = ex.what();
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace dunklab
