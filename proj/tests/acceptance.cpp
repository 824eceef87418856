// One line per acceptance criterion: PASS or FAIL, timing and a short detail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "dunklab/dunkl.hpp"
#include "dunklab/groups.hpp"
#include "dunklab/spinrep.hpp"
#include "dunklab/static.hpp"

using namespace dunklab;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& what) {
    if (pass) detail.str("");
    pass = false;
    detail << what << "; ";
  }
};

// Identity checks that came out exactly zero, for the backend comparison.
std::vector<IdentityCheck> exact_zeros;

void absorb(Outcome& o, const SuiteReport& r) {
  for (const auto& c : r.checks) {
    if (c.is_zero) exact_zeros.push_back(c);
    if (!c.pass()) o.fail(r.suite + " [" + c.relation + "] " + r.params.dump());
  }
}

ModelParams cyclic(int N, int m, Rational lambda) {
  ModelParams p;
  p.family = ModelFamily::cyclic;
  p.N = N;
  p.m = m;
  p.lambda = lambda;
  return p;
}

ModelParams dihedral(int N, int m, Rational lambda, Rational mu, Rational rho) {
  auto p = cyclic(N, m, lambda);
  p.family = ModelFamily::dihedral;
  p.mu = mu;
  p.rho = rho;
  return p;
}

std::uint64_t factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }
std::uint64_t ipow(std::uint64_t b, int e) { return e == 0 ? 1 : b * ipow(b, e - 1); }

Outcome criterion1() {
  Outcome o;
  for (auto [N, m] : {std::pair{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    GroupSpec g{GroupFamily::cyclic, N, m, 1};
    if (!relation_suite(g).pass()) o.fail("relations " + g.name());
    if (enumerate_subgroup(g).size() != ipow(m, N) * factorial(N)) o.fail("order " + g.name());
  }
  for (auto [N, m] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    GroupSpec g{GroupFamily::wreath, N, m, 1};
    if (!relation_suite(g).pass()) o.fail("relations " + g.name());
    if (enumerate_subgroup(g).size() != ipow(2 * m, N) * factorial(N)) o.fail("order " + g.name());
  }
  for (auto [N, m, p] : {std::tuple{2, 2, 2}, {2, 4, 2}, {2, 3, 3}, {3, 2, 2}, {2, 6, 3}, {3, 3, 3}}) {
    GroupSpec g{GroupFamily::imprimitive, N, m, p};
    if (enumerate_subgroup(g).size() != ipow(m, N) / p * factorial(N)) o.fail("order " + g.name());
  }
  if (o.pass) o.detail << "7 relation suites, 13 enumerated orders";
  return o;
}

Outcome criterion2() {
  Outcome o;
  int n = 0;
  for (auto [N, m] : {std::pair{2, 2}, {2, 3}, {3, 2}})
    for (const auto& lam : {Rational(0), Rational(1, 2), Rational(1)}) {
      const auto p = cyclic(N, m, lam);
      absorb(o, check_hecke_relations(p));
      absorb(o, check_recursion(p));
      absorb(o, hamiltonian_check(p));
      ++n;
    }
  if (o.pass) o.detail << n << " cyclic cases: Hecke relations, commutators, recursion, H = I^(2)";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const Rational h(1, 2);
  const std::vector<std::array<Rational, 3>> grid{{0, 0, 0}, {1, 1, 0}, {h, 1, h}, {1, h, 1}, {h, 0, 1}};
  int n = 0;
  for (auto [N, m] : {std::pair{2, 2}, {2, 3}})
    for (const auto& c : grid) {
      const auto p = dihedral(N, m, c[0], c[1], c[2]);
      absorb(o, check_hecke_relations(p));
      absorb(o, check_recursion(p));
      absorb(o, hamiltonian_check(p));
      ++n;
    }
  if (o.pass) o.detail << n << " dihedral cases: Hecke relations, recursion, newD = bdunkl2, J^(2) = H^odd/H^even";
  return o;
}

MixedOperator random_operator(std::mt19937_64& rng, int n, int m) {
  std::uniform_int_distribution<int> co(-3, 3), ex(-1, 2), ph(0, m - 1), e(0, 1), kind(0, 2);
  MixedOperator op(n, m);
  for (int t = 0; t < 3; ++t) {
    std::vector<int> perm(n), rot(n), flip(n, 0);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (auto& r : rot) r = ph(rng);
    OpKey k{EulerIndex{}, WreathElement::from_parts(m, perm, rot, flip)};
    for (int i = 0; i < n; ++i) k.euler[i] = static_cast<std::uint8_t>(e(rng));
    LaurentPoly num(n);
    for (int s = 0; s < 2; ++s) {
      Monomial mono;
      for (int i = 0; i < n; ++i) mono.e[i] = static_cast<std::int16_t>(ex(rng));
      num += LaurentPoly::monomial(n, mono, CycloScalar(co(rng)) * CycloScalar::root_of_unity(m, ph(rng)));
    }
    auto den = LaurentPoly::variable(n, 0) - LaurentPoly::variable(n, 1).scaled(CycloScalar::root_of_unity(m, ph(rng)));
    auto c = kind(rng) == 0 ? RationalFunction(num) : RationalFunction::fraction(num, den);
    op += MixedOperator::term(n, m, 1, k, {c});
  }
  return op;
}

Outcome criterion4() {
  Outcome o;
  for (auto [N, m] : {std::pair{2, 2}, {2, 3}}) {
    absorb(o, projector_check(cyclic(N, m, Rational(1, 2))));
    absorb(o, projector_check(dihedral(N, m, Rational(1, 2), 1, Rational(1, 2))));
  }
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2, m = 3;
    const auto a = random_operator(rng, n, m);
    MixedOperator sum(n, m);
    for (int r = 0; r < m; ++r) {
      const auto pr = ad_projector(trial % n, r, a);
      sum += pr;
      for (int t = 0; t < m; ++t) {
        const auto prt = ad_projector(trial % n, t, pr);
        if (t == r ? !(prt - pr).is_zero() : !prt.is_zero()) o.fail("projector algebra, trial " + std::to_string(trial));
      }
    }
    if (!(sum - a).is_zero()) o.fail("projectors do not sum to the identity, trial " + std::to_string(trial));
  }
  if (o.pass) o.detail << "Pi^0 Z = d, Pi^0 Y = D at (2,2), (2,3); 50 random operators";
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto rep = SpinRepData::make(2, 2, 2);
  absorb(o, projector_identities(rep, true));
  const auto p = cyclic(2, 2, Rational(1, 2));
  for (int k = 1; k <= 3; ++k) absorb(o, verify_agreement(p, rep, k));
  const auto q = dihedral(2, 2, Rational(1, 2), 1, Rational(1, 3));
  absorb(o, verify_agreement(q, rep, 2));
  const auto odd = verify_agreement(q, rep, 1);
  absorb(o, odd);
  const bool reported = std::any_of(odd.checks.begin(), odd.checks.end(),
                                    [](const IdentityCheck& c) { return !c.expect_zero && !c.is_zero; });
  if (!reported) o.fail("odd-k dihedral case not reported nonzero");
  if (o.pass) o.detail << "projectors, I^(1..3) and J^(2) agreement exact; J^(1) reported nonzero";
  return o;
}

Outcome criterion6() {
  Outcome o;
  int cyc = 0;
  for (int N = 1; N <= 12; ++N)
    for (int m = 1; m * N <= 12; ++m) {
      const auto lat = build_lattice(LatticeFamily::cyclic, N, m);
      for (const auto& r : residual_cyclic(N, m, lat.positions))
        if (!r.is_zero()) o.fail("cyclic lattice N=" + std::to_string(N) + " m=" + std::to_string(m));
      ++cyc;
    }
  const LatticeLabel labels[] = {LatticeLabel::L2Nm, LatticeLabel::L2NmPlusM_halfshift, LatticeLabel::L2NmPlusM_integer,
                                 LatticeLabel::L2Np1m};
  int rows = 0;
  for (auto [m, N] : {std::pair{3, 2}, {3, 3}, {5, 2}})
    for (auto l : labels) {
      for (const auto& r : residual_dihedral(build_lattice(LatticeFamily::dihedral_odd, N, m, l)))
        if (!r.is_zero()) o.fail("table row " + to_string(l) + " m=" + std::to_string(m) + " N=" + std::to_string(N));
      ++rows;
    }
  const auto scan = scan_equidistant(LatticeFamily::dihedral_even, 2, 2, {2, 40});
  const auto& best = scan.front();
  if (best.residual <= 1e-6) {
    std::ostringstream s;
    s << "even-m scan has min residual " << best.residual << " at L=" << best.L << " offset=" << to_string(best.offset)
      << " mu^2=" << to_string(best.a2);
    o.fail(s.str());
  }
  if (o.pass) o.detail << cyc << " cyclic lattices, " << rows << " table rows exact; scan min " << best.residual;
  else o.detail << cyc << " cyclic lattices and " << rows << " table rows checked";
  return o;
}

// Cyclic Jacobi on the real symmetric embedding [[A, -B], [B, A]] of A + iB.
std::vector<double> jacobi_eigenvalues(const Eigen::MatrixXcd& h) {
  const int n = static_cast<int>(h.rows()), d = 2 * n;
  Eigen::MatrixXd a(d, d);
  a << h.real(), -h.imag(), h.imag(), h.real();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (int p = 0; p < d; ++p)
      for (int q = p + 1; q < d; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (int p = 0; p < d; ++p)
      for (int q = p + 1; q < d; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        const double t = (theta >= 0 ? 1 : -1) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < d; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < d; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev;
  for (int i = 0; i < d; ++i) ev.push_back(a(i, i));
  std::sort(ev.begin(), ev.end());
  std::vector<double> out;
  for (int i = 0; i < d; i += 2) out.push_back(ev[i]);
  return out;
}

Outcome criterion7() {
  Outcome o;
  std::ostringstream norms;
  for (auto [m, N, n] : {std::tuple{1, 2, 2}, {1, 3, 2}, {3, 2, 2}}) {
    const std::string tag = "(m,N,n)=(" + std::to_string(m) + "," + std::to_string(N) + "," + std::to_string(n) + ")";
    const auto rep = SpinRepData::make(N, m, n);
    const auto h = build_frozen_hamiltonian(build_lattice(LatticeFamily::cyclic, N, m));
    const Eigen::MatrixXcd H = frozen_spin_matrix(h, rep).to_complex();
    if ((H - H.adjoint()).norm() >= 1e-12) o.fail("not Hermitian " + tag);
    const auto sp = diagonalize_hermitian(H);
    const auto oracle = jacobi_eigenvalues(H);
    for (std::size_t i = 0; i < oracle.size(); ++i)
      if (std::abs(oracle[i] - sp.eigenvalues[i]) > 1e-8) o.fail("spectrum differs from oracle " + tag);
    double worst = 0;
    int bad = 0, total = 0;
    for (int k = 0; k < N; ++k)
      for (int l = 0; l < N; ++l) {
        if (k == l) continue;
        for (int s = 0; s < m; ++s) {
          Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(rep.dim(), rep.dim());
          add_spin_image(G, 1.0, rep, twisted_exchange(N, m, k, l, s));
          const double c = (H * G - G * H).norm();
          worst = std::max(worst, c);
          bad += c >= 1e-10;
          ++total;
        }
      }
    norms << tag << " max |[H, G]| " << worst << "; ";
    if (bad > 0) {
      std::ostringstream s;
      s << tag << ": " << bad << " of " << total << " exchange images do not commute, max norm " << worst;
      o.fail(s.str());
    }
  }
  if (o.pass) o.detail << "Hermitian, oracle spectra match; " << norms.str();
  return o;
}

Outcome criterion8() {
  Outcome o;
  double worst = 0;
  for (const auto& c : exact_zeros) {
    worst = std::max(worst, c.numeric_residual);
    if (c.numeric_residual >= 1e-10) o.fail("numeric residual " + std::to_string(c.numeric_residual) + " at " + c.relation);
  }
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> order(1, 30), num(-50, 50), den(1, 9);
  double scalar_err = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = order(rng);
    std::vector<Rational> c(n);
    for (auto& x : c) {
      x = Rational(num(rng), den(rng));
      x.canonicalize();
    }
    const auto a = CycloScalar::from_coeffs(n, c);
    std::complex<long double> direct = 0;
    long double scale = 0;
    for (int k = 0; k < n; ++k) {
      const long double ang = 2 * std::numbers::pi_v<long double> * k / n;
      const long double v = c[k].get_d();
      direct += v * std::complex<long double>(std::cos(ang), std::sin(ang));
      scale += std::abs(v);
    }
    const auto b = CycloScalar::root_of_unity(n, t % n);
    const auto prod = (a * b).to_complex();
    const auto expect = std::complex<double>(direct) * b.to_complex();
    const double e1 = std::abs(a.to_complex() - std::complex<double>(direct)) / std::max(1.0L, scale);
    const double e2 = std::abs(prod - expect) / std::max(1.0L, scale);
    scalar_err = std::max({scalar_err, e1, e2});
  }
  if (scalar_err >= 1e-12) o.fail("scalar samples differ by " + std::to_string(scalar_err));
  if (o.pass)
    o.detail << exact_zeros.size() << " exact zeros with numeric residual <= " << worst
             << "; 1000 scalars within " << scalar_err << " relative";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"group layer", criterion1},       {"cyclic Hecke realisation", criterion2}, {"dihedral Hecke relations", criterion3},
      {"projection machinery", criterion4}, {"spin layer", criterion5},         {"lattice table", criterion6},
      {"frozen chains", criterion7},     {"backend consistency", criterion8}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " " << criteria[i].first << " ("
              << std::fixed << std::setprecision(1) << secs << " s): " << std::defaultfloat << o.detail.str() << std::endl;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
