#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "dunklab/opalg.hpp"

using namespace dunklab;

namespace {

LaurentPoly q(int n, int i, int p = 1) { return LaurentPoly::variable(n, i, p); }

WreathElement random_element(std::mt19937_64& rng, int n, int m, bool flips) {
  std::vector<int> perm(n), rot(n), flip(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_int_distribution<int> r(0, m - 1), f(0, flips ? 1 : 0);
  for (int i = 0; i < n; ++i) {
    rot[i] = r(rng);
    flip[i] = f(rng);
  }
  return WreathElement::from_parts(m, perm, rot, flip);
}

RationalFunction random_coeff(std::mt19937_64& rng, int n, int m) {
  std::uniform_int_distribution<int> co(-3, 3), ex(-1, 2), ph(0, m - 1), kind(0, 2);
  LaurentPoly num(n);
  for (int t = 0; t < 2; ++t) {
    Monomial mono;
    for (int i = 0; i < n; ++i) mono.e[i] = static_cast<std::int16_t>(ex(rng));
    num += LaurentPoly::monomial(n, mono, CycloScalar(co(rng)) * CycloScalar::root_of_unity(m, ph(rng)));
  }
  if (kind(rng) == 0) return RationalFunction(num);
  return RationalFunction::fraction(num, q(n, 0) - q(n, 1).scaled(CycloScalar::root_of_unity(m, ph(rng))));
}

MixedOperator random_operator(std::mt19937_64& rng, int n, int m, bool flips, int terms = 2) {
  std::uniform_int_distribution<int> e(0, 1);
  MixedOperator op(n, m);
  for (int t = 0; t < terms; ++t) {
    OpKey k{EulerIndex{}, random_element(rng, n, m, flips)};
    for (int i = 0; i < n; ++i) k.euler[i] = static_cast<std::uint8_t>(e(rng));
    op += MixedOperator::term(n, m, 1, k, {random_coeff(rng, n, m)});
  }
  return op;
}

}  // namespace

TEST_CASE("exchange rules") {
  const int n = 2, m = 3;
  auto K1 = MixedOperator::group(WreathElement::reflection(n, m, 0));
  auto Q1 = MixedOperator::group(WreathElement::rotation(n, m, 0));
  auto D1 = MixedOperator::euler(n, m, 0), D2 = MixedOperator::euler(n, m, 1);
  CHECK((K1 * D1 + D1 * K1).is_zero());
  auto q1 = MixedOperator::coefficient(RationalFunction(q(n, 0)), m);
  auto tq1 = MixedOperator::coefficient(RationalFunction(q(n, 0).scaled(CycloScalar::root_of_unity(m, 1))), m);
  CHECK((Q1 * q1 - tq1 * Q1).is_zero());
  CHECK((D1 * q1 - (q1 * D1 + q1)).is_zero());
  CHECK(commutator(D1, D2).is_zero());
  auto c = normalize_is_zero(commutator(Q1, K1));
  CHECK(!c.zero);
  CHECK(!c.witness.empty());
  CHECK(c.numeric_residual > 1e-3);
}

TEST_CASE("P moves Euler operators") {
  const int n = 3, m = 2;
  auto P13 = MixedOperator::group(WreathElement::transposition(n, m, 0, 2));
  CHECK((P13 * MixedOperator::euler(n, m, 0) - MixedOperator::euler(n, m, 2) * P13).is_zero());
  auto K2 = MixedOperator::group(WreathElement::reflection(n, m, 1));
  CHECK((K2 * MixedOperator::euler(n, m, 0, 2) - MixedOperator::euler(n, m, 0, 2) * K2).is_zero());
  CHECK((K2 * MixedOperator::euler(n, m, 1, 2) - MixedOperator::euler(n, m, 1, 2) * K2).is_zero());
  CHECK((K2 * MixedOperator::euler(n, m, 1, 3) + MixedOperator::euler(n, m, 1, 3) * K2).is_zero());
}

TEST_CASE("apply is compatible with compose") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2, m = 2 + trial % 2;
    auto a = random_operator(rng, n, m, trial % 3 == 0), b = random_operator(rng, n, m, trial % 2 == 0);
    auto f = random_coeff(rng, n, m);
    REQUIRE(rational_eq((a * b).apply(f), a.apply(b.apply(f))));
  }
}

TEST_CASE("normal ordering is confluent") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2, m = 2 + trial % 2;
    auto a = random_operator(rng, n, m, true), b = random_operator(rng, n, m, true),
         c = random_operator(rng, n, m, true);
    REQUIRE(((a * b) * c - a * (b * c)).is_zero());
  }
}

TEST_CASE("Ad projectors") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2, m = 3;
    auto a = random_operator(rng, n, m, false, 3);
    MixedOperator sum(n, m);
    for (int r = 0; r < m; ++r) {
      auto pr = ad_projector(0, r, a);
      sum += pr;
      for (int t = 0; t < m; ++t) {
        auto prt = ad_projector(0, t, pr);
        if (t == r)
          REQUIRE((prt - pr).is_zero());
        else
          REQUIRE(prt.is_zero());
      }
    }
    REQUIRE((sum - a).is_zero());
  }
}

TEST_CASE("numeric backend agrees on exact identities") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_operator(rng, 2, 3, true), b = random_operator(rng, 2, 3, true);
    CHECK(numeric_difference(a * b + b, (a + MixedOperator::identity(2, 3)) * b, trial) < 1e-10);
  }
  auto a = random_operator(rng, 2, 3, true);
  CHECK(numeric_difference(a, a + MixedOperator::identity(2, 3), 3) > 1e-3);
}

TEST_CASE("spin matrices ride along") {
  const int n = 2, m = 2, d = 2;
  std::vector<CycloScalar> sx{0, 1, 1, 0};
  auto X = MixedOperator::spin(n, m, sx, d);
  CHECK((X * X - MixedOperator::identity(n, m, d)).is_zero());
  auto P = MixedOperator::group(WreathElement::transposition(n, m, 0, 1), d);
  CHECK(commutator(X, P).is_zero());
  auto c = MixedOperator::coefficient(RationalFunction(q(n, 0)), m, d);
  CHECK(commutator(X, c).is_zero());
  SpinFunction f{RationalFunction(q(n, 0)), RationalFunction(q(n, 1, 2))};
  auto g = (X * P).apply(f);
  CHECK(rational_eq(g[0], RationalFunction(q(n, 0, 2))));
  CHECK(rational_eq(g[1], RationalFunction(q(n, 1))));
}

TEST_CASE("operator JSON") {
  auto op = MixedOperator::euler(2, 2, 0) +
            MixedOperator::coefficient(RationalFunction::fraction(q(2, 0), q(2, 0) - q(2, 1)), 2) *
                MixedOperator::group(WreathElement::transposition(2, 2, 0, 1));
  auto j = to_json(op);
  REQUIRE(j.size() == 2);
  CHECK(j[0].contains("euler"));
  CHECK(j[0]["group"]["perm"] == json::array({2, 1}));
  CHECK(j[1]["euler"] == json::array({1, 0}));
}
