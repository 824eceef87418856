#include <iostream>

#include "doctest.h"
#include "dunklab/dunkl.hpp"

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
  ModelParams p;
  p.family = ModelFamily::dihedral;
  p.N = N;
  p.m = m;
  p.lambda = lambda;
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

}  // namespace

TEST_CASE("cyclic Dunkl operators commute") {
  for (int m : {1, 2, 3}) {
    auto p = cyclic(2, m, Rational(1, 3));
    require_pass(check_hecke_relations(p));
    require_pass(check_recursion(p));
  }
  require_pass(check_recursion(cyclic(3, 2, Rational(2, 5))));
}

TEST_CASE("dihedral relations") {
  require_pass(check_hecke_relations(dihedral(2, 2, Rational(1, 3), Rational(1, 2), Rational(1, 5))));
  require_pass(check_hecke_relations(dihedral(2, 3, Rational(1, 3), Rational(2, 7), Rational(1, 5))));
  require_pass(check_recursion(dihedral(3, 2, Rational(1, 3), Rational(1, 2), Rational(1, 5))));
}

TEST_CASE("corruptions are detected") {
  auto r = check_hecke_relations(cyclic(2, 2, Rational(1, 3)), Corruption::drels);
  CHECK(!r.pass());
  CHECK(!check_recursion(cyclic(2, 2, Rational(1, 3)), Corruption::recursion).pass());
  CHECK(!check_hecke_relations(dihedral(2, 2, Rational(1, 3), 1, 0), Corruption::drels).pass());
}

TEST_CASE("m = 1 reduces to the rational operators") {
  require_pass(reduction_check(cyclic(3, 1, Rational(1, 3))));
  require_pass(reduction_check(dihedral(2, 1, Rational(1, 3), Rational(1, 2), Rational(1, 5))));
  require_pass(reduction_check(cyclic(2, 3, Rational(1, 3))));
}

TEST_CASE("projected parents") {
  require_pass(projector_check(cyclic(2, 3, Rational(1, 3))));
  require_pass(projector_check(cyclic(3, 2, Rational(1, 3))));
  require_pass(projector_check(dihedral(2, 2, Rational(1, 3), Rational(1, 2), Rational(1, 5))));
  require_pass(projector_check(dihedral(2, 3, Rational(1, 3), Rational(1, 2), Rational(1, 5))));
}

TEST_CASE("Hamiltonians") {
  require_pass(hamiltonian_check(cyclic(2, 3, Rational(1, 3))));
  require_pass(hamiltonian_check(cyclic(3, 2, Rational(1, 3))));
  require_pass(hamiltonian_check(dihedral(2, 3, Rational(1, 3), Rational(1, 2), 0)));
  require_pass(hamiltonian_check(dihedral(2, 3, Rational(1, 3), Rational(1, 2), Rational(1, 5))));
  require_pass(hamiltonian_check(dihedral(2, 2, Rational(1, 3), Rational(1, 2), 0)));
}

TEST_CASE("charges") {
  require_pass(charge_check(cyclic(2, 3, Rational(1, 3)), 3));
  require_pass(charge_check(dihedral(2, 2, Rational(1, 3), Rational(1, 2), 0), 2));
}

TEST_CASE("report JSON") {
  auto r = check_recursion(cyclic(2, 2, Rational(1, 3)));
  auto j = to_json(r);
  CHECK(j["suite"] == "recursion");
  CHECK(j["checks"][0]["params"]["lambda"] == "1/3");
  CHECK(j["checks"][0]["witness"].is_null());
}
