#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "dunklab/spinrep.hpp"

using namespace dunklab;

namespace {

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

void require_pass(const SuiteReport& r) {
  for (const auto& c : r.checks) {
    INFO(r.suite << ": " << c.relation << " witness " << c.witness);
    CHECK(c.pass());
    if (c.expect_zero) CHECK(c.numeric_residual < 1e-10);
  }
}

// Cyclic Jacobi on the real symmetric embedding [[A, -B], [B, A]] of A + iB.
std::vector<double> jacobi_eigenvalues(const Eigen::MatrixXcd& h) {
  const int n = static_cast<int>(h.rows());
  Eigen::MatrixXd a(2 * n, 2 * n);
  a << h.real(), -h.imag(), h.imag(), h.real();
  const int d = 2 * n;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (int p = 0; p < d; ++p)
      for (int q = p + 1; q < d; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (int p = 0; p < d; ++p)
      for (int q = p + 1; q < d; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        double t = (theta >= 0 ? 1 : -1) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < d; ++k) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < d; ++k) {
          double apk = a(p, k), aqk = a(q, k);
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

}  // namespace

TEST_CASE("default weights") {
  CHECK(default_weights(2, 3) == std::vector<int>{1, 2});
  CHECK(default_weights(3, 5) == std::vector<int>{1, 0, 4});
  CHECK(default_weights(4, 5) == std::vector<int>{1, 2, 3, 4});
  CHECK_THROWS(SpinRepData::make(2, 3, 2, {1, 1}));
}

TEST_CASE("spin generators") {
  auto rep = SpinRepData::make(2, 3, 2);
  auto gen = build_spin_generators(rep);
  const auto one = SpinMatrix::identity(4);
  CHECK(gen.P[0][1] * gen.P[0][1] == one);
  CHECK(gen.Q[0] * gen.Q[1] == gen.Q[1] * gen.Q[0]);
  CHECK(gen.K[0] * gen.Q[0] * gen.K[0] == gen.Q[0] * gen.Q[0]);
  CHECK(gen.Q[0](0, 0) == CycloScalar::root_of_unity(3, 1));
  CHECK(gen.Q[0](3, 3) == CycloScalar::root_of_unity(3, 2));
  for (auto spec : {GroupSpec{GroupFamily::cyclic, 2, 3, 1}, GroupSpec{GroupFamily::wreath, 2, 3, 1}}) {
    auto r = spin_relation_suite(rep, spec);
    INFO(r.group);
    CHECK(r.pass());
  }
  auto rep3 = SpinRepData::make(3, 2, 2);
  CHECK(spin_relation_suite(rep3, GroupSpec{GroupFamily::wreath, 3, 2, 1}).pass());
}

TEST_CASE("projectors") {
  auto rep = SpinRepData::make(2, 2, 2);
  CHECK(build_projector(rep, ProjectorKind::Lambda).size() == 4);
  require_pass(projector_identities(rep, true));
  require_pass(projector_identities(SpinRepData::make(2, 3, 2), true));
}

TEST_CASE("substitution of a single term") {
  auto rep = SpinRepData::make(2, 2, 2);
  auto c = RationalFunction::fraction(LaurentPoly::variable(2, 0), LaurentPoly::variable(2, 0) - LaurentPoly::variable(2, 1));
  auto P = WreathElement::transposition(2, 2, 0, 1);
  auto op = MixedOperator::coefficient(c, 2) * MixedOperator::group(P);
  auto expect = MixedOperator::coefficient(c, 2, 4) * MixedOperator::spin(2, 2, spin_image(rep, P).entries(), 4);
  CHECK((substitute_spin(op, rep) - expect).is_zero());
}

TEST_CASE("spin and position charges agree on projected states") {
  auto rep = SpinRepData::make(2, 2, 2);
  auto p = cyclic(2, 2, Rational(1, 2));
  for (int k = 1; k <= 3; ++k) require_pass(verify_agreement(p, rep, k));
  auto q = dihedral(2, 2, Rational(1, 2), 1, Rational(1, 3));
  require_pass(verify_agreement(q, rep, 2));
  require_pass(verify_agreement(q, rep, 1));
}

TEST_CASE("literal substitution order") {
  auto p = cyclic(2, 3, Rational(1, 2));
  for (int k = 1; k <= 3; ++k) require_pass(verify_agreement(p, SpinRepData::make(2, 3, 2), k, SpinOrdering::literal));
}

TEST_CASE("Hermitian diagonalization") {
  Eigen::MatrixXcd x(2, 2);
  x << 0, 1, 1, 0;
  auto s = diagonalize_hermitian(x);
  REQUIRE(s.eigenvalues.size() == 2);
  CHECK(s.eigenvalues[0] == doctest::Approx(-1));
  CHECK(s.eigenvalues[1] == doctest::Approx(1));
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) a(i, j) = {g(rng), g(rng)};
  Eigen::MatrixXcd h = a + a.adjoint();
  auto sp = diagonalize_hermitian(h);
  CHECK(sp.max_eigen_residual < 1e-12);
  auto oracle = jacobi_eigenvalues(h);
  for (int i = 0; i < 8; ++i) CHECK(std::abs(oracle[i] - sp.eigenvalues[i]) < 1e-8);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::MatrixXcd rebuilt = es.eigenvectors() * es.eigenvalues().asDiagonal() * es.eigenvectors().adjoint();
  CHECK((rebuilt - h).norm() < 1e-8);
  Eigen::MatrixXcd bad = h;
  bad(0, 1) += 1.0;
  CHECK_THROWS(diagonalize_hermitian(bad));
}
