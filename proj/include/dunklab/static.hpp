#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "dunklab/spinrep.hpp"

namespace dunklab {

/// Sum over j < i of q_i/(q_i - tau^s q_j) X + sum over j > i of tau^s q_j/(q_i - tau^s q_j) X,
/// X = Q_i^-s P_ij Q_i^s; cyclic family. d_i = D_i + lambda dbar_i.
MixedOperator build_barred(const ModelParams& p, int i);

/// sum_{i != j} sum_s tau^s q_i q_j / (q_i - tau^s q_j)^2 Q_i^-s P_ij Q_i^s
MixedOperator build_hbar(int N, int m);

/// sum_{i != j} sum_s tau^s q_i q_j / (q_i - tau^s q_j)^2, the function paired with Hbar in H.
RationalFunction hbar_potential(int N, int m);

/// sum_{j != i} sum_s tau^s q_i q_j (q_i + tau^s q_j) / (q_i - tau^s q_j)^3 as a rational function.
RationalFunction cyclic_residual_function(int N, int m, int i);

/// Group part of the dihedral Dunkl operator at lambda = 1 with boundary
/// couplings beta, gamma: D_i(1, beta + gamma, beta - gamma) - q_i d/dq_i.
MixedOperator build_barred_dihedral(int N, int m, const Rational& beta, const Rational& gamma, int i);

/// Frozen dihedral Hamiltonians before substitution of positions. For odd m
/// the boundary term is (gamma x/(1-x)^2 - beta x/(1+x)^2) Q^2s K, for even m
/// it is mu x/(1-x)^2 Q^2s K (pass beta = 0, gamma = mu), x = tau^s q_l.
MixedOperator build_hbar_dihedral(int N, int m, const Rational& beta, const Rational& gamma);

enum class LatticeFamily { cyclic, dihedral_odd, dihedral_even };
enum class LatticeLabel { qqk, L2Nm, L2NmPlusM_halfshift, L2NmPlusM_integer, L2Np1m, custom };

std::string to_string(LatticeFamily f);
std::string to_string(LatticeLabel l);
LatticeFamily lattice_family_from_string(const std::string& s);
LatticeLabel lattice_label_from_string(const std::string& s);

/// Equidistant positions q_k = omega_L^{k - offset}, k = 1..N, held exactly in
/// Q(zeta_field). Couplings are stored by their squares; the positive roots
/// are used when a Hamiltonian is built.
struct LatticeConfig {
  LatticeFamily family = LatticeFamily::cyclic;
  int N = 2;
  int m = 1;
  int L = 2;
  Rational offset = 0;
  LatticeLabel label = LatticeLabel::qqk;
  int field = 1;
  std::vector<CycloScalar> positions;  // all in Q(zeta_field)
  std::vector<Rational> angles;        // q_k = exp(2 pi i angles_k)
  Rational beta2 = 0, gamma2 = 0, mu2 = 0;

  Rational beta() const;
  Rational gamma() const;
  Rational mu() const;
  /// Positions, each in its smallest cyclotomic field.
  std::vector<CycloScalar> reduced_positions() const;
};

/// Table rows (odd m) and the cyclic lattice q_k = zeta_{mN}^k.
LatticeConfig build_lattice(LatticeFamily family, int N, int m, LatticeLabel label = LatticeLabel::qqk);
LatticeConfig equidistant_lattice(LatticeFamily family, int N, int m, int L, const Rational& offset,
                                  const Rational& coupling_a = 0, const Rational& coupling_b = 0);

/// Exact residuals. Throw std::domain_error when an image of one site hits another.
std::vector<CycloScalar> residual_cyclic(int N, int m, const std::vector<CycloScalar>& q);
std::vector<CycloScalar> residual_dihedral(const LatticeConfig& lat);
std::vector<CycloScalar> lattice_residuals(const LatticeConfig& lat);

std::vector<std::complex<double>> residual_cyclic_numeric(int m, const std::vector<std::complex<double>>& q);
/// Odd m uses beta2, gamma2; even m uses mu2 in place of gamma2 with beta2 = 0.
std::vector<std::complex<double>> residual_dihedral_numeric(int m, const std::vector<std::complex<double>>& q,
                                                            double beta2, double gamma2);

json to_json(const LatticeConfig& lat);

/// Exact value of a coefficient at lattice positions.
CycloScalar evaluate_exact(const RationalFunction& f, const std::vector<CycloScalar>& q);

/// Replaces every coefficient of `a` by its value at the lattice.
MixedOperator freeze(const MixedOperator& a, const LatticeConfig& lat);

struct FrozenHamiltonian {
  LatticeConfig lattice;
  MixedOperator symbolic;  // positions free
  MixedOperator frozen;    // positions substituted
  std::vector<CycloScalar> residuals;
  bool warning = false;    // some residual is nonzero: integrability not established
};

FrozenHamiltonian build_frozen_hamiltonian(const LatticeConfig& lat);

/// Spin chain of a frozen Hamiltonian.
SpinMatrix frozen_spin_matrix(const FrozenHamiltonian& h, const SpinRepData& rep);
/// Same matrix assembled in floating point, for chains too large for exact entries.
Eigen::MatrixXcd frozen_spin_matrix_complex(const FrozenHamiltonian& h, const SpinRepData& rep);

/// -1/4 sum_{k != l} sum_s 1/sin^2(pi (k - l - N s)/(m N)) Q_k^-s P_kl Q_k^s, in floating point.
Eigen::MatrixXcd frozen_cyclic_sin_matrix(const SpinRepData& rep);

/// Coupling table in the x-coordinate display, one entry per group term.
json x_display(const FrozenHamiltonian& h);

struct ScanEntry {
  int L = 0;
  Rational offset = 0;
  Rational a2 = 0, b2 = 0;  // (beta^2, gamma^2) for odd m, (mu^2, -) for even m
  double residual = 0;
};

struct ScanOptions {
  int Lmin = 2;
  int Lmax = 40;
  std::vector<Rational> offsets{0, Rational(1, 2)};
  std::vector<Rational> couplings{Rational(1, 4), Rational(9, 4), Rational(1), Rational(4)};
};

/// Max residual over sites for every candidate, sorted ascending. Candidates
/// whose sites collide with images are skipped.
std::vector<ScanEntry> scan_equidistant(LatticeFamily family, int N, int m, const ScanOptions& opts = {});

json to_json(const ScanEntry& e);

/// [Hbar, dbar_i] as a multiplication operator, for the freezing argument.
SuiteReport static_identities(int N, int m, std::uint64_t seed = 1);

/// Spin images of sum_i dbar_i^k at a lattice and their commutator norms with
/// the frozen chain. Reported without an expected outcome.
json candidate_spin_charges(const FrozenHamiltonian& h, const SpinRepData& rep, int kmax);

}  // namespace dunklab
