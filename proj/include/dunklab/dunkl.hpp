#pragma once

#include <string>
#include <vector>

#include "dunklab/opalg.hpp"

namespace dunklab {

enum class ModelFamily { A, BC, cyclic, dihedral };

/// Model couplings. beta = (mu + rho)/2 and gamma = (mu - rho)/2 are derived.
struct ModelParams {
  ModelFamily family = ModelFamily::cyclic;
  int N = 2;
  int m = 1;
  Rational lambda = 0;
  Rational mu = 0;
  Rational rho = 0;

  Rational beta() const { return (mu + rho) / 2; }
  Rational gamma() const { return (mu - rho) / 2; }
  void validate() const;
  std::string name() const;
};

json to_json(const ModelParams& p);

enum class DunklForm {
  standard,  // d_i (cyclic), Z_i (A), Y_i (BC), D_i in the rho form (dihedral)
  boundary,  // dihedral only: the beta/gamma form
};

/// d_i for cyclic, Z_i for A (coupling m*lambda), Y_i for BC (couplings
/// m*lambda, m*mu, m*rho), D_i for dihedral. Site i is 0-based.
MixedOperator build_dunkl(const ModelParams& p, int i, DunklForm form = DunklForm::standard);

/// Z_i or Y_i attached to the group W(m, N) so they can be projected with
/// the Ad-projectors of order m. `p.family` must be cyclic or dihedral.
MixedOperator build_rational_parent(const ModelParams& p, int i);

/// sum_i build_dunkl(p, i)^k
MixedOperator build_charge(const ModelParams& p, int k);

enum class HamiltonianKind { ham, odd, even, odd_boundary_simplified };

/// The closed-form Hamiltonians in multiplicative coordinates.
MixedOperator build_hamiltonian(const ModelParams& p, HamiltonianKind which);

/// Q_i^{-s} P_ij Q_i^{s}
WreathElement twisted_exchange(int N, int m, int i, int j, int s);
/// K_i Q_i^{-s} P_ij Q_i^{s} K_i
WreathElement reflected_exchange(int N, int m, int i, int j, int s);

struct IdentityCheck {
  std::string relation;
  bool expect_zero = true;
  bool is_zero = false;
  double numeric_residual = 0;  // |lhs f - rhs f| at random torus points, sides evaluated separately
  std::string witness;
  bool pass() const { return is_zero == expect_zero; }
};

struct SuiteReport {
  std::string suite;
  json params;
  std::vector<IdentityCheck> checks;
  bool pass() const;
};

json to_json(const IdentityCheck& c, const json& params);
json to_json(const SuiteReport& r);

/// Compares lhs and rhs exactly and numerically.
IdentityCheck check_identity(const std::string& name, const MixedOperator& lhs, const MixedOperator& rhs,
                             bool expect_zero = true, std::uint64_t seed = 1);

/// Deliberate corruptions for negative controls.
enum class Corruption { none, drels, recursion };

SuiteReport check_recursion(const ModelParams& p, Corruption c = Corruption::none, std::uint64_t seed = 1);
SuiteReport check_hecke_relations(const ModelParams& p, Corruption c = Corruption::none, std::uint64_t seed = 1);
/// m = 1: cyclic d_i equals Z_i; dihedral D_i equals Y_i. For m > 1 the
/// checks are reported as expected-nonequal.
SuiteReport reduction_check(const ModelParams& p, std::uint64_t seed = 1);
/// Pi_i^0 Pi_j^0 Z_i = d_i (cyclic) or Pi_i^0 Pi_j^0 Y_i = D_i (dihedral).
SuiteReport projector_check(const ModelParams& p, std::uint64_t seed = 1);
/// H = I^(2) (cyclic); J^(2) = closed form by parity, newD = bdunkl2,
/// the rho = 0 simplified boundary term (dihedral).
SuiteReport hamiltonian_check(const ModelParams& p, std::uint64_t seed = 1);
/// [I^(k), I^(l)] = 0, [I^(k), P_ij] = 0, [I^(k), Q_i] = 0 and, dihedral,
/// [J^(k), K_i] vanishing for even k only.
SuiteReport charge_check(const ModelParams& p, int kmax, std::uint64_t seed = 1);

}  // namespace dunklab
