#include "dunklab/dunkl.hpp"

#include <stdexcept>

namespace dunklab {

namespace {

CycloScalar tau(int m, long s) { return CycloScalar::root_of_unity(m, ((s % m) + m) % m); }

LaurentPoly qv(int N, int i, int power = 1, const CycloScalar& c = CycloScalar(1)) {
  return LaurentPoly::variable(N, i, power, c);
}

LaurentPoly one(int N, const CycloScalar& c = CycloScalar(1)) { return LaurentPoly::constant(N, c); }

MixedOperator coeff_group(const RationalFunction& c, const WreathElement& g) {
  return MixedOperator::term(g.sites(), g.order(), 1, {EulerIndex{}, g}, {c});
}

MixedOperator group_op(const WreathElement& g) { return MixedOperator::group(g); }

WreathElement rot(int N, int m, int i, long s) { return WreathElement::rotation(N, m, i, static_cast<int>(((s % m) + m) % m)); }

/// Q_i^{2s} K_i
WreathElement boundary_element(int N, int m, int i, long s) {
  return rot(N, m, i, 2 * s) * WreathElement::reflection(N, m, i);
}

CycloScalar cs(const Rational& r) { return CycloScalar(r); }

MixedOperator cyclic_d(int N, int m, const Rational& lambda, int i) {
  MixedOperator op = MixedOperator::euler(N, m, i);
  for (int j = 0; j < N; ++j) {
    if (j == i) continue;
    for (int s = 0; s < m; ++s) {
      auto g = twisted_exchange(N, m, i, j, s);
      auto c = RationalFunction::fraction(qv(N, i, 1, cs(lambda)), qv(N, i) - qv(N, j, 1, tau(m, s)));
      op += coeff_group(c, g);
      if (j > i) op += coeff_group(RationalFunction::constant(N, cs(-lambda)), g);
    }
  }
  return op;
}

MixedOperator dihedral_newD(const ModelParams& p, int i) {
  const int N = p.N, m = p.m;
  MixedOperator op = cyclic_d(N, m, p.lambda, i);
  for (int j = 0; j < N; ++j) {
    if (j == i) continue;
    for (int s = 0; s < m; ++s) {
      // q_i / (q_i - tau^{-s} q_j^{-1})
      auto c = RationalFunction::fraction(qv(N, i, 1, cs(p.lambda)), qv(N, i) - qv(N, j, -1, tau(m, -s)));
      op += coeff_group(c, reflected_exchange(N, m, i, j, s));
    }
  }
  for (int s = 0; s < m; ++s) {
    auto num = qv(N, i, 1, cs(p.mu) * tau(m, s)) - one(N, cs(p.rho));
    auto den = qv(N, i, 1, tau(m, s)) - qv(N, i, -1, tau(m, -s));
    op += coeff_group(RationalFunction::fraction(num, den), boundary_element(N, m, i, s));
  }
  return op;
}

MixedOperator dihedral_bdunkl2(const ModelParams& p, int l) {
  const int N = p.N, m = p.m;
  MixedOperator op = cyclic_d(N, m, p.lambda, l);
  for (int k = 0; k < N; ++k) {
    if (k == l) continue;
    for (int s = 0; s < m; ++s) {
      auto x = qv(N, l, 1, tau(m, s)) * qv(N, k);
      auto c = RationalFunction::fraction(x.scaled(cs(p.lambda)), x - one(N));
      op += coeff_group(c, reflected_exchange(N, m, l, k, s));
    }
  }
  for (int s = 0; s < m; ++s) {
    auto x = qv(N, l, 1, tau(m, s));
    auto c = RationalFunction::fraction(x.scaled(cs(p.beta())), x + one(N)) +
             RationalFunction::fraction(x.scaled(cs(p.gamma())), x - one(N));
    op += coeff_group(c, boundary_element(N, m, l, s));
  }
  return op;
}

// Z_i with coupling c on the group of order m.
MixedOperator rational_Z(int N, int m, const Rational& c, int i) {
  MixedOperator op = MixedOperator::euler(N, m, i);
  for (int j = 0; j < N; ++j) {
    if (j == i) continue;
    auto P = WreathElement::transposition(N, m, i, j);
    op += coeff_group(RationalFunction::fraction(qv(N, i, 1, cs(c)), qv(N, i) - qv(N, j)), P);
    if (j > i) op += coeff_group(RationalFunction::constant(N, cs(-c)), P);
  }
  return op;
}

// Y_i with couplings (c, cmu, crho) on the group of order m.
MixedOperator rational_Y(int N, int m, const Rational& c, const Rational& cmu, const Rational& crho, int i) {
  MixedOperator op = rational_Z(N, m, c, i);
  auto K = WreathElement::reflection(N, m, i);
  for (int j = 0; j < N; ++j) {
    if (j == i) continue;
    auto g = K * WreathElement::transposition(N, m, i, j) * K;
    op += coeff_group(RationalFunction::fraction(qv(N, i, 1, cs(c)), qv(N, i) - qv(N, j, -1)), g);
  }
  auto num = qv(N, i, 1, cs(cmu)) - one(N, cs(crho));
  op += coeff_group(RationalFunction::fraction(num, qv(N, i) - qv(N, i, -1)), K);
  return op;
}

json rational_json(const Rational& r) { return to_string(r); }

}  // namespace

void ModelParams::validate() const {
  if (N < 1 || N > kMaxSites) throw std::invalid_argument("N out of range");
  if (m < 1 || m > 255) throw std::invalid_argument("m out of range");
  if ((family == ModelFamily::A || family == ModelFamily::BC) && m != 1)
    throw std::invalid_argument("the A and BC families have m = 1");
}

std::string ModelParams::name() const {
  static const char* names[] = {"A", "BC", "cyclic", "dihedral"};
  std::string s = std::string(names[static_cast<int>(family)]) + " N=" + std::to_string(N) +
                  " m=" + std::to_string(m) + " lambda=" + to_string(lambda);
  if (family == ModelFamily::dihedral || family == ModelFamily::BC)
    s += " mu=" + to_string(mu) + " rho=" + to_string(rho);
  return s;
}

json to_json(const ModelParams& p) {
  static const char* names[] = {"A", "BC", "cyclic", "dihedral"};
  json j{{"family", names[static_cast<int>(p.family)]}, {"N", p.N}, {"m", p.m}, {"lambda", rational_json(p.lambda)}};
  if (p.family == ModelFamily::dihedral || p.family == ModelFamily::BC) {
    j["mu"] = rational_json(p.mu);
    j["rho"] = rational_json(p.rho);
    j["beta"] = rational_json(p.beta());
    j["gamma"] = rational_json(p.gamma());
  }
  return j;
}

WreathElement twisted_exchange(int N, int m, int i, int j, int s) {
  return rot(N, m, i, -s) * WreathElement::transposition(N, m, i, j) * rot(N, m, i, s);
}

WreathElement reflected_exchange(int N, int m, int i, int j, int s) {
  auto K = WreathElement::reflection(N, m, i);
  return K * twisted_exchange(N, m, i, j, s) * K;
}

MixedOperator build_dunkl(const ModelParams& p, int i, DunklForm form) {
  p.validate();
  if (i < 0 || i >= p.N) throw std::out_of_range("site out of range");
  if (form == DunklForm::boundary && p.family != ModelFamily::dihedral)
    throw std::invalid_argument("the boundary form exists for the dihedral family only");
  switch (p.family) {
    case ModelFamily::A:
      return rational_Z(p.N, 1, p.lambda, i);
    case ModelFamily::BC:
      return rational_Y(p.N, 1, p.lambda, p.mu, p.rho, i);
    case ModelFamily::cyclic:
      return cyclic_d(p.N, p.m, p.lambda, i);
    case ModelFamily::dihedral:
      return form == DunklForm::boundary ? dihedral_bdunkl2(p, i) : dihedral_newD(p, i);
  }
  throw std::logic_error("unknown family");
}

MixedOperator build_rational_parent(const ModelParams& p, int i) {
  p.validate();
  const Rational m(p.m);
  if (p.family == ModelFamily::cyclic) return rational_Z(p.N, p.m, m * p.lambda, i);
  if (p.family == ModelFamily::dihedral) return rational_Y(p.N, p.m, m * p.lambda, m * p.mu, m * p.rho, i);
  throw std::invalid_argument("parent operators are defined for the cyclic and dihedral families");
}

MixedOperator build_charge(const ModelParams& p, int k) {
  if (k < 1) throw std::invalid_argument("charge power must be positive");
  MixedOperator out(p.N, p.m);
  for (int i = 0; i < p.N; ++i) out += build_dunkl(p, i).pow(k);
  return out;
}

MixedOperator build_hamiltonian(const ModelParams& p, HamiltonianKind which) {
  p.validate();
  const int N = p.N, m = p.m;
  if (p.family != ModelFamily::cyclic && p.family != ModelFamily::dihedral)
    throw std::invalid_argument("Hamiltonians are built for the cyclic and dihedral families");
  if (which != HamiltonianKind::ham) {
    if (p.family != ModelFamily::dihedral) throw std::invalid_argument("parity forms need the dihedral family");
    const bool odd = m % 2 == 1;
    if ((which == HamiltonianKind::even && odd) || (which != HamiltonianKind::even && !odd))
      throw std::invalid_argument("Hamiltonian form does not match the parity of m");
    if (which == HamiltonianKind::odd_boundary_simplified && p.rho != 0)
      throw std::invalid_argument("the simplified boundary form needs rho = 0");
  }
  const auto lam = cs(p.lambda);
  MixedOperator H(N, m);
  for (int i = 0; i < N; ++i) H += MixedOperator::euler(N, m, i, 2);
  auto lam_plus = [&](const WreathElement& g) {
    return MixedOperator::identity(N, m).scaled(lam) + group_op(g);
  };
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      for (int s = 0; s < m; ++s) {
        auto num = qv(N, i, 1, -lam * tau(m, s)) * qv(N, j);
        auto den = qv(N, i) - qv(N, j, 1, tau(m, s));
        auto c = RationalFunction::fraction(num, std::vector<LaurentPoly>{den, den});
        H += MixedOperator::coefficient(c, m) * lam_plus(twisted_exchange(N, m, i, j, s));
      }
    }
  if (which == HamiltonianKind::ham) return H;

  for (int l = 0; l < N; ++l)
    for (int k = 0; k < N; ++k) {
      if (k == l) continue;
      for (int s = 0; s < m; ++s) {
        auto x = qv(N, l, 1, tau(m, s)) * qv(N, k);
        auto c = RationalFunction::fraction(x.scaled(-lam), std::vector<LaurentPoly>{x - one(N), x - one(N)});
        H += MixedOperator::coefficient(c, m) * lam_plus(reflected_exchange(N, m, l, k, s));
      }
    }
  auto boundary = [&](const CycloScalar& coupling, const CycloScalar& weight, const LaurentPoly& x,
                      const LaurentPoly& den, const WreathElement& g) {
    auto c = RationalFunction::fraction(x.scaled(weight), std::vector<LaurentPoly>{den, den});
    return MixedOperator::coefficient(c, m) *
           (MixedOperator::identity(N, m).scaled(coupling) + group_op(g));
  };
  for (int l = 0; l < N; ++l) {
    if (which == HamiltonianKind::odd_boundary_simplified) {
      const auto b = cs(p.beta());
      for (int s = 0; s < 2 * m; ++s) {
        auto x = qv(N, l, 1, CycloScalar::root_of_unity(2 * m, s));
        H += boundary(b, -b, x, one(N) - x, rot(N, m, l, s) * WreathElement::reflection(N, m, l));
      }
      continue;
    }
    for (int s = 0; s < m; ++s) {
      auto x = qv(N, l, 1, tau(m, s));
      auto g = boundary_element(N, m, l, s);
      if (which == HamiltonianKind::odd) {
        H += boundary(cs(p.beta()), cs(p.beta()), x, one(N) + x, g);
        H += boundary(cs(p.gamma()), -cs(p.gamma()), x, one(N) - x, g);
      } else {
        H += boundary(cs(p.mu), -cs(p.mu), x, one(N) - x, g);
      }
    }
  }
  return H;
}

// ------------------------------------------------------------------- checks

bool SuiteReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass()) return false;
  return true;
}

json to_json(const IdentityCheck& c, const json& params) {
  json j{{"relation", c.relation},
         {"params", params},
         {"pass", c.pass()},
         {"expect_zero", c.expect_zero},
         {"exact_zero", c.is_zero},
         {"numeric_residual", c.numeric_residual}};
  j["witness"] = c.witness.empty() ? json(nullptr) : json(c.witness);
  return j;
}

json to_json(const SuiteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c, r.params));
  return {{"suite", r.suite}, {"params", r.params}, {"pass", r.pass()}, {"checks", checks}};
}

IdentityCheck check_identity(const std::string& name, const MixedOperator& lhs, const MixedOperator& rhs,
                             bool expect_zero, std::uint64_t seed) {
  IdentityCheck c;
  c.relation = name;
  c.expect_zero = expect_zero;
  auto z = normalize_is_zero(lhs - rhs, seed);
  c.is_zero = z.zero;
  c.witness = z.witness;
  c.numeric_residual = numeric_difference(lhs, rhs, seed);
  return c;
}

namespace {

std::string site(int i) { return std::to_string(i + 1); }

}  // namespace

SuiteReport check_recursion(const ModelParams& p, Corruption corrupt, std::uint64_t seed) {
  SuiteReport r{"recursion", to_json(p), {}};
  const int N = p.N, m = p.m;
  const Rational lam = corrupt == Corruption::recursion ? p.lambda + 1 : p.lambda;
  auto prev = build_dunkl(p, 0);
  for (int i = 0; i + 1 < N; ++i) {
    auto next = build_dunkl(p, i + 1);
    auto P = group_op(WreathElement::transposition(N, m, i, i + 1));
    MixedOperator rhs = P * prev * P;
    for (int s = 0; s < m; ++s)
      rhs += group_op(twisted_exchange(N, m, i, i + 1, -s)).scaled(cs(lam));
    r.checks.push_back(check_identity("d" + site(i + 1) + " = P d" + site(i) + " P + lambda sum Q^s P Q^-s",
                                      next, rhs, true, seed));
    prev = std::move(next);
  }
  return r;
}

SuiteReport check_hecke_relations(const ModelParams& p, Corruption corrupt, std::uint64_t seed) {
  const int N = p.N, m = p.m;
  const bool dihedral = p.family == ModelFamily::dihedral || p.family == ModelFamily::BC;
  SuiteReport r{"hecke", to_json(p), {}};
  const std::string x = dihedral ? "D" : "d";
  std::vector<MixedOperator> d;
  for (int i = 0; i < N; ++i) d.push_back(build_dunkl(p, i));
  const auto& D = d[0];
  const auto a = group_op(rot(N, m, 0, 1));
  const auto lam = cs(p.lambda);

  r.checks.push_back(check_identity("a d = d a", a * D, D * a, true, seed));
  if (N >= 2) {
    const auto e1 = group_op(WreathElement::transposition(N, m, 0, 1));
    const auto e1ae1 = e1 * a * e1;
    r.checks.push_back(check_identity("d e1 a e1 = e1 a e1 d", D * e1ae1, e1ae1 * D, true, seed));
    MixedOperator sum_pos(N, m), sum_neg(N, m);  // sum a^s e1 a^-s, sum a^-s e1 a^s
    for (int s = 0; s < m; ++s) {
      sum_pos += group_op(twisted_exchange(N, m, 0, 1, -s));
      sum_neg += group_op(twisted_exchange(N, m, 0, 1, s));
    }
    if (!dihedral) {
      const auto lam_l = corrupt == Corruption::drels ? cs(p.lambda + 1) : lam;
      r.checks.push_back(check_identity("d e1 d e1 + lambda d S = e1 d e1 d + lambda S d",
                                        D * e1 * D * e1 + (D * sum_pos).scaled(lam_l),
                                        e1 * D * e1 * D + (sum_pos * D).scaled(lam), true, seed));
    } else {
      const auto k = group_op(WreathElement::reflection(N, m, 0));
      MixedOperator a2s(N, m);
      for (int s = 0; s < m; ++s) a2s += group_op(rot(N, m, 0, 2 * s));
      r.checks.push_back(check_identity("k D = -D k + mu sum a^2s", k * D, -(D * k) + a2s.scaled(cs(p.mu)), true, seed));
      const auto e1ke1 = e1 * k * e1;
      const auto shifted = D + sum_neg.scaled(lam);
      r.checks.push_back(check_identity("(D + lambda sum a^-s e1 a^s) e1 k e1 = e1 k e1 (D + ...)",
                                        shifted * e1ke1, e1ke1 * shifted, true, seed));
      r.checks.push_back(check_identity("D e1 a e1 = e1 a e1 D", D * e1ae1, e1ae1 * D, true, seed));
      const auto lam_l = corrupt == Corruption::drels ? cs(p.lambda + 1) : lam;
      const auto inner_l = e1 * D * e1 + sum_pos.scaled(lam_l);
      const auto inner_r = e1 * D * e1 + sum_pos.scaled(lam);
      r.checks.push_back(check_identity("D (e1 D e1 + lambda S) = (e1 D e1 + lambda S) D", D * inner_l,
                                        inner_r * D, true, seed));
      r.checks.push_back(check_identity("[D1, K1] != 0", k * D, D * k, false, seed));
    }
    for (int j = 1; j + 1 < N; ++j) {
      const auto ej = group_op(WreathElement::transposition(N, m, j, j + 1));
      r.checks.push_back(check_identity("e" + site(j) + " " + x + " = " + x + " e" + site(j), ej * D, D * ej, true, seed));
    }
  }
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      r.checks.push_back(check_identity("[" + x + site(i) + ", " + x + site(j) + "] = 0", d[i] * d[j], d[j] * d[i], true, seed));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const auto Qj = group_op(rot(N, m, j, 1));
      r.checks.push_back(check_identity("[" + x + site(i) + ", Q" + site(j) + "] = 0", d[i] * Qj, Qj * d[i], true, seed));
    }
  return r;
}

SuiteReport reduction_check(const ModelParams& p, std::uint64_t seed) {
  SuiteReport r{"reduction", to_json(p), {}};
  const bool expect = p.m == 1;
  for (int i = 0; i < p.N; ++i) {
    auto d = build_dunkl(p, i);
    if (p.family == ModelFamily::cyclic) {
      auto Z = rational_Z(p.N, p.m, p.lambda, i);
      r.checks.push_back(check_identity("d" + site(i) + " = Z" + site(i), d, Z, expect, seed));
    } else if (p.family == ModelFamily::dihedral) {
      auto Y = rational_Y(p.N, p.m, p.lambda, p.mu, p.rho, i);
      r.checks.push_back(check_identity("D" + site(i) + " = Y" + site(i), d, Y, expect, seed));
    } else {
      throw std::invalid_argument("reduction applies to the cyclic and dihedral families");
    }
  }
  return r;
}

SuiteReport projector_check(const ModelParams& p, std::uint64_t seed) {
  SuiteReport r{"projector", to_json(p), {}};
  const std::string parent = p.family == ModelFamily::dihedral ? "Y" : "Z";
  for (int i = 0; i < p.N; ++i) {
    auto target = build_dunkl(p, i);
    auto proj = build_rational_parent(p, i);
    for (int j = 0; j < p.N; ++j)
      if (j != i) proj = ad_projector(j, 0, proj);
    proj = ad_projector(i, 0, proj);
    r.checks.push_back(check_identity("Pi^0 " + parent + site(i) + " = " + (p.family == ModelFamily::dihedral ? "D" : "d") + site(i),
                                      proj, target, true, seed));
  }
  return r;
}

SuiteReport hamiltonian_check(const ModelParams& p, std::uint64_t seed) {
  SuiteReport r{"hamiltonian", to_json(p), {}};
  const auto I2 = build_charge(p, 2);
  if (p.family == ModelFamily::cyclic) {
    r.checks.push_back(check_identity("H = I^(2)", build_hamiltonian(p, HamiltonianKind::ham), I2, true, seed));
    return r;
  }
  if (p.family != ModelFamily::dihedral) throw std::invalid_argument("hamiltonian_check needs cyclic or dihedral");
  for (int i = 0; i < p.N; ++i)
    r.checks.push_back(check_identity("newD" + site(i) + " = bdunkl2" + site(i), build_dunkl(p, i),
                                      build_dunkl(p, i, DunklForm::boundary), true, seed));
  const bool odd = p.m % 2 == 1;
  auto H = build_hamiltonian(p, odd ? HamiltonianKind::odd : HamiltonianKind::even);
  r.checks.push_back(check_identity(odd ? "J^(2) = H^odd" : "J^(2) = H^even", I2, H, true, seed));
  if (odd && p.rho == 0)
    r.checks.push_back(check_identity("H^odd = simplified boundary form", H,
                                      build_hamiltonian(p, HamiltonianKind::odd_boundary_simplified), true, seed));
  return r;
}

SuiteReport charge_check(const ModelParams& p, int kmax, std::uint64_t seed) {
  SuiteReport r{"charges", to_json(p), {}};
  const int N = p.N, m = p.m;
  const bool dihedral = p.family == ModelFamily::dihedral || p.family == ModelFamily::BC;
  const std::string J = dihedral ? "J" : "I";
  std::vector<MixedOperator> I;
  for (int k = 1; k <= kmax; ++k) I.push_back(build_charge(p, k));
  for (int k = 1; k <= kmax; ++k)
    for (int l = k + 1; l <= kmax; ++l)
      r.checks.push_back(check_identity("[" + J + "^(" + std::to_string(k) + "), " + J + "^(" + std::to_string(l) + ")] = 0",
                                        I[k - 1] * I[l - 1], I[l - 1] * I[k - 1], true, seed));
  for (int k = 1; k <= kmax; ++k) {
    const auto& C = I[k - 1];
    const std::string name = J + "^(" + std::to_string(k) + ")";
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) {
        auto P = group_op(WreathElement::transposition(N, m, i, j));
        r.checks.push_back(check_identity("[" + name + ", P" + site(i) + site(j) + "] = 0", C * P, P * C, true, seed));
      }
    for (int i = 0; i < N; ++i) {
      auto Q = group_op(rot(N, m, i, 1));
      r.checks.push_back(check_identity("[" + name + ", Q" + site(i) + "] = 0", C * Q, Q * C, true, seed));
      if (dihedral) {
        auto K = group_op(WreathElement::reflection(N, m, i));
        const bool vanish = k % 2 == 0;
        r.checks.push_back(check_identity("[" + name + ", K" + site(i) + "]" + (vanish ? " = 0" : " != 0"), C * K,
                                          K * C, vanish, seed));
      }
    }
  }
  return r;
}

}  // namespace dunklab
