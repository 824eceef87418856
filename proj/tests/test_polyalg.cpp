#include <numbers>
#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "dunklab/polyalg.hpp"

using namespace dunklab;

namespace {

LaurentPoly q(int n, int i, int p = 1) { return LaurentPoly::variable(n, i, p); }
LaurentPoly c(int n, const CycloScalar& s) { return LaurentPoly::constant(n, s); }

std::vector<std::complex<double>> torus_point(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0, 2 * std::numbers::pi);
  std::vector<std::complex<double>> p;
  for (int i = 0; i < n; ++i) p.push_back(std::polar(1.0, u(rng)));
  return p;
}

LaurentPoly random_poly(std::mt19937_64& rng, int n, int m, int terms = 3) {
  std::uniform_int_distribution<int> ex(-2, 2), co(-3, 3), ph(0, m - 1);
  LaurentPoly p(n);
  for (int t = 0; t < terms; ++t) {
    Monomial mono;
    for (int i = 0; i < n; ++i) mono.e[i] = static_cast<std::int16_t>(ex(rng));
    p += LaurentPoly::monomial(n, mono, CycloScalar(co(rng)) * CycloScalar::root_of_unity(m, ph(rng)));
  }
  return p;
}

RationalFunction random_rational(std::mt19937_64& rng, int n, int m) {
  std::uniform_int_distribution<int> ph(0, m - 1), pick(0, n - 1);
  int i = pick(rng), j = (i + 1) % n;
  auto den = q(n, i) - q(n, j).scaled(CycloScalar::root_of_unity(m, ph(rng)));
  auto den2 = q(n, j, 2) + c(n, CycloScalar(ph(rng) + 2));
  std::vector<LaurentPoly> dens{den, den2};
  return RationalFunction::fraction(random_poly(rng, n, m), dens);
}

WreathElement random_element(std::mt19937_64& rng, int n, int m) {
  std::vector<int> perm(n), rot(n), flip(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_int_distribution<int> r(0, m - 1), f(0, 1);
  for (int i = 0; i < n; ++i) {
    rot[i] = r(rng);
    flip[i] = f(rng);
  }
  return WreathElement::from_parts(m, perm, rot, flip);
}

}  // namespace

TEST_CASE("sparse arithmetic") {
  CHECK((q(2, 0) - q(2, 1)) * (q(2, 0) + q(2, 1)) == q(2, 0, 2) - q(2, 1, 2));
  CHECK(q(2, 0) * q(2, 0, -1) == c(2, 1));
  LaurentPoly sum(1);
  for (int s = 0; s < 3; ++s) sum += c(1, CycloScalar::root_of_unity(3, s));
  CHECK(sum.is_zero());
  CHECK((q(2, 0) - q(2, 0)).is_zero());
}

TEST_CASE("group action on monomials") {
  const int m = 3;
  auto Q1 = WreathElement::rotation(2, m, 0);
  CHECK(q(2, 0, 2).act(Q1) == q(2, 0, 2).scaled(CycloScalar::root_of_unity(3, 2)));
  auto K1 = WreathElement::reflection(2, m, 0);
  CHECK((q(2, 0, 3) * q(2, 1)).act(K1) == q(2, 0, -3) * q(2, 1));
  auto P12 = WreathElement::transposition(2, m, 0, 1);
  CHECK((q(2, 0) - q(2, 1)).act(P12) == q(2, 1) - q(2, 0));
}

TEST_CASE("action is a homomorphism on rational functions") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 2, m = 2 + trial % 3;
    auto g = random_element(rng, n, m), h = random_element(rng, n, m);
    auto f = trial % 2 ? RationalFunction(random_poly(rng, n, m)) : random_rational(rng, n, m);
    REQUIRE(rational_eq(f.act(g * h), f.act(h).act(g)));
  }
}

TEST_CASE("euler derivative") {
  auto m = q(2, 0, 2) * q(2, 1);
  CHECK(m.euler(0) == m.scaled(CycloScalar(2)));
  CHECK(q(2, 0, -1).euler(0) == -q(2, 0, -1));

  auto f = RationalFunction::fraction(q(2, 0), q(2, 0) - q(2, 1));
  auto expect = RationalFunction::fraction(-(q(2, 0) * q(2, 1)), (q(2, 0) - q(2, 1)).pow(2));
  CHECK(rational_eq(f.euler(0), expect));

  std::mt19937_64 rng(9);
  for (int t = 0; t < 5; ++t) {
    auto p = torus_point(rng, 2);
    const double h = 1e-6;
    auto plus = p, minus = p;
    plus[0] *= std::exp(std::complex<double>(h, 0));
    minus[0] *= std::exp(std::complex<double>(-h, 0));
    auto fd = (f.evaluate(plus) - f.evaluate(minus)) / (2 * h);
    CHECK(std::abs(fd - f.euler(0).evaluate(p)) < 1e-6 * (1 + std::abs(fd)));
  }
}

TEST_CASE("euler commutes with Q and anticommutes with K on the same site") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    auto f = random_rational(rng, 2, 3);
    auto Q1 = WreathElement::rotation(2, 3, 0), K1 = WreathElement::reflection(2, 3, 0);
    CHECK(rational_eq(f.act(Q1).euler(0), f.euler(0).act(Q1)));
    CHECK(rational_eq(f.act(K1).euler(0), -f.euler(0).act(K1)));
  }
}

TEST_CASE("rational identities") {
  const int n = 2;
  auto qi = q(n, 0), qj = q(n, 1);
  auto a = RationalFunction::fraction(qi, qi - qj) + RationalFunction::fraction(qj, qj - qi);
  CHECK(rational_eq(a, RationalFunction::constant(n, 1)));
  CHECK(a.is_polynomial());

  RationalFunction sum(n);
  for (int s = 0; s < 3; ++s)
    sum += RationalFunction::fraction(qi, qi - qj.scaled(CycloScalar::root_of_unity(3, s)));
  auto rhs = RationalFunction::fraction(q(n, 0, 3).scaled(CycloScalar(3)), q(n, 0, 3) - q(n, 1, 3));
  CHECK(rational_eq(sum, rhs));
  CHECK((sum - rhs).is_zero());

  auto x = RationalFunction::fraction(c(n, 1), qi - qj), y = RationalFunction::fraction(c(n, 1), qj - qi);
  CHECK(!rational_eq(x, y));
  CHECK((x + y).is_zero());
}

TEST_CASE("exact division") {
  auto a = q(2, 0, 3) - q(2, 1, 3), b = q(2, 0) - q(2, 1);
  auto d = divide_exact(a, b);
  REQUIRE(d);
  CHECK(*d * b == a);
  CHECK(!divide_exact(q(2, 0, 3) + q(2, 1, 3), b));
  auto laurent = (q(2, 0, -2) * q(2, 1) - q(2, 1, 2)) * (q(2, 0) + c(2, 2));
  auto nf = normalize_factor(q(2, 0) + c(2, 2));
  auto d2 = divide_exact(laurent, nf.primitive);
  REQUIRE(d2);
  CHECK(*d2 == q(2, 0, -2) * q(2, 1) - q(2, 1, 2));
}

TEST_CASE("numeric oracle agrees with exact arithmetic") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    auto f = random_rational(rng, 2, 4), g = random_rational(rng, 2, 4);
    auto sum = f + g, prod = f * g;
    for (int k = 0; k < 10; ++k) {
      auto p = torus_point(rng, 2);
      if (sum.min_denominator_modulus(p) < 1e-6 || prod.min_denominator_modulus(p) < 1e-6 ||
          f.min_denominator_modulus(p) < 1e-6 || g.min_denominator_modulus(p) < 1e-6)
        continue;
      auto fv = f.evaluate(p), gv = g.evaluate(p);
      CHECK(std::abs(sum.evaluate(p) - (fv + gv)) <= 1e-9 * (1 + std::abs(fv) + std::abs(gv)));
      CHECK(std::abs(prod.evaluate(p) - fv * gv) <= 1e-9 * (1 + std::abs(fv * gv)));
    }
  }
}

TEST_CASE("polynomial JSON") {
  auto p = q(2, 0, -1).scaled(CycloScalar::root_of_unity(3, 1)) + c(2, Rational(1, 2));
  auto j = to_json(p);
  CHECK(j.size() == 2);
  CHECK(poly_from_json(j, 2) == p);
}
