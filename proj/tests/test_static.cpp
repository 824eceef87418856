#include <cmath>

#include "doctest.h"
#include "dunklab/static.hpp"

using namespace dunklab;

namespace {

void require_pass(const SuiteReport& r) {
  for (const auto& c : r.checks) {
    INFO(r.suite << ": " << c.relation << " witness " << c.witness);
    CHECK(c.pass());
    if (c.expect_zero) CHECK(c.numeric_residual < 1e-10);
  }
}

bool all_zero(const std::vector<CycloScalar>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("barred operators and the freezing identity") {
  require_pass(static_identities(2, 2));
  require_pass(static_identities(2, 3));
  require_pass(static_identities(3, 2));
}

TEST_CASE("cyclic lattice residuals vanish exactly") {
  for (int N = 1; N <= 6; ++N)
    for (int m = 1; m * N <= 12; ++m) {
      auto lat = build_lattice(LatticeFamily::cyclic, N, m);
      REQUIRE(static_cast<int>(lat.positions.size()) == N);
      INFO("N=" << N << " m=" << m);
      CHECK(all_zero(residual_cyclic(N, m, lat.positions)));
    }
  auto lat = build_lattice(LatticeFamily::cyclic, 5, 3);
  for (const auto& q : lat.positions) CHECK(q.pow(15).is_one());
  std::vector<std::complex<double>> q{std::polar(1.0, 2 * M_PI / 6) * (1 + 1e-3), std::polar(1.0, 4 * M_PI / 6)};
  CHECK(std::abs(residual_cyclic_numeric(3, q)[0]) > 1e-4);
  CHECK(residual_cyclic(1, 2, {CycloScalar(1)})[0].is_zero());
}

TEST_CASE("table rows solve the dihedral condition exactly") {
  const LatticeLabel labels[] = {LatticeLabel::L2Nm, LatticeLabel::L2NmPlusM_halfshift, LatticeLabel::L2NmPlusM_integer,
                                 LatticeLabel::L2Np1m};
  for (auto [m, N] : {std::pair{3, 2}, {3, 3}, {5, 2}, {1, 2}})
    for (auto l : labels) {
      auto lat = build_lattice(LatticeFamily::dihedral_odd, N, m, l);
      INFO("m=" << m << " N=" << N << " " << to_string(l));
      CHECK(all_zero(residual_dihedral(lat)));
    }
  auto row3 = build_lattice(LatticeFamily::dihedral_odd, 2, 3, LatticeLabel::L2NmPlusM_integer);
  CHECK(row3.L == 15);
  CHECK(row3.beta2 == Rational(1, 4));
  CHECK(row3.gamma2 == Rational(9, 4));
  CHECK(row3.positions[0] == CycloScalar::root_of_unity(15, 1));
  CHECK_THROWS(build_lattice(LatticeFamily::dihedral_odd, 2, 2, LatticeLabel::L2Nm));
  auto off = equidistant_lattice(LatticeFamily::dihedral_odd, 2, 3, 16, Rational(1, 2), Rational(1, 4), Rational(1, 4));
  CHECK(!all_zero(residual_dihedral(off)));
}

TEST_CASE("dihedral freezing identity") {
  const int N = 2, m = 3;
  const Rational b(1, 2), g(3, 2);
  auto H = build_hbar_dihedral(N, m, b, g);
  auto lat = equidistant_lattice(LatticeFamily::dihedral_odd, N, m, 16, Rational(1, 2), b * b, g * g);
  auto res = residual_dihedral(lat);
  for (int l = 0; l < N; ++l) {
    auto D = build_barred_dihedral(N, m, b, g, l);
    auto C = H * D - D * H;
    REQUIRE(C.size() == 1);
    const auto& [key, coeff] = *C.terms().begin();
    CHECK(key.group.is_identity());
    CHECK(evaluate_exact(coeff[0], lat.positions) == -(lat.positions[l] * res[l]));
  }
}

TEST_CASE("scans") {
  auto odd = scan_equidistant(LatticeFamily::dihedral_odd, 2, 3, {2, 40});
  auto found = [&](int L, Rational off, Rational a, Rational b) {
    for (const auto& e : odd)
      if (e.L == L && e.offset == off && e.a2 == a && e.b2 == b) return e.residual < 1e-12;
    return false;
  };
  CHECK(found(12, Rational(1, 2), Rational(1, 4), Rational(1, 4)));
  CHECK(found(15, Rational(1, 2), Rational(9, 4), Rational(1, 4)));
  CHECK(found(15, 0, Rational(1, 4), Rational(9, 4)));
  CHECK(found(18, 0, Rational(9, 4), Rational(9, 4)));
  auto cyc = scan_equidistant(LatticeFamily::cyclic, 3, 2, {2, 20});
  REQUIRE(!cyc.empty());
  CHECK(cyc.front().residual < 1e-12);
  bool six = false;
  for (const auto& e : cyc)
    if (e.L == 6 && e.offset == 0) six = e.residual < 1e-12;
  CHECK(six);
  auto even = scan_equidistant(LatticeFamily::dihedral_even, 2, 2, {2, 40});
  REQUIRE(!even.empty());
  // Exact solution of the even-m condition at L = 8, mu^2 = 4.
  CHECK(even.front().L == 8);
  CHECK(even.front().a2 == 4);
  CHECK(even.front().residual < 1e-12);
}

TEST_CASE("frozen cyclic chains") {
  for (auto [m, N] : {std::pair{1, 2}, {1, 3}, {3, 2}}) {
    auto rep = SpinRepData::make(N, m, 2);
    auto h = build_frozen_hamiltonian(build_lattice(LatticeFamily::cyclic, N, m));
    CHECK(!h.warning);
    auto S = frozen_spin_matrix(h, rep);
    CHECK(S.is_hermitian());
    auto H = S.to_complex();
    CHECK((H - frozen_cyclic_sin_matrix(rep)).norm() < 1e-12);
    auto sp = diagonalize_hermitian(H);
    CHECK(sp.max_eigen_residual < 1e-12);
  }
  auto h = build_frozen_hamiltonian(build_lattice(LatticeFamily::cyclic, 2, 1));
  auto S = frozen_spin_matrix(h, SpinRepData::make(2, 1, 2));
  // -(1/4) * 2/sin^2(pi/2) * P12
  auto P = spin_image(SpinRepData::make(2, 1, 2), WreathElement::transposition(2, 1, 0, 1));
  CHECK(S == P.scaled(CycloScalar(Rational(-1, 2))));
  auto xs = x_display(h);
  REQUIRE(xs.size() == 1);
  CHECK(xs[0]["coupling"].get<double>() == doctest::Approx(xs[0]["x_form_value"].get<double>()));
}

TEST_CASE("frozen dihedral chains") {
  auto rep = SpinRepData::make(2, 3, 2);
  auto h = build_frozen_hamiltonian(build_lattice(LatticeFamily::dihedral_odd, 2, 3, LatticeLabel::L2Nm));
  CHECK(!h.warning);
  CHECK(frozen_spin_matrix(h, rep).is_hermitian());
  auto even = build_frozen_hamiltonian(equidistant_lattice(LatticeFamily::dihedral_even, 2, 2, 12, Rational(1, 2), 1));
  CHECK(even.warning);
  auto exact = build_frozen_hamiltonian(equidistant_lattice(LatticeFamily::dihedral_even, 2, 2, 8, 0, 4));
  CHECK(!exact.warning);
}

TEST_CASE("lattice JSON") {
  auto j = to_json(build_lattice(LatticeFamily::dihedral_odd, 2, 3, LatticeLabel::L2Nm));
  CHECK(j["residual_max"] == "0");
  CHECK(j["L"] == 12);
  CHECK(j["positions"].size() == 2);
  CHECK(j["couplings"]["beta2"] == "1/4");
}
