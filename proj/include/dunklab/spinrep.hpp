#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dunklab/dunkl.hpp"

namespace dunklab {

/// Local spin space C^n with Q = diag(tau^{a_1}, ..., tau^{a_n}) and
/// K = antidiag(1, ..., 1), on N sites.
struct SpinRepData {
  int N = 2;
  int m = 1;
  int n = 2;
  std::vector<int> weights;  // residues mod m, a_i = -a_{n+1-i}

  /// Default weights: (1, 2, ..., n/2, m - n/2, ..., m - 1), with 0 in the
  /// middle for odd n.
  static SpinRepData make(int N, int m, int n, std::vector<int> weights = {});
  void validate() const;
  int dim() const;
};

std::vector<int> default_weights(int n, int m);

/// Dense exact matrix on (C^n)^{(x)N}. Basis index sum_i s_i n^{N-1-i}.
class SpinMatrix {
 public:
  SpinMatrix() = default;
  explicit SpinMatrix(int dim) : dim_(dim), e_(static_cast<std::size_t>(dim) * dim) {}
  static SpinMatrix identity(int dim);

  int dim() const { return dim_; }
  CycloScalar& operator()(int r, int c) { return e_[static_cast<std::size_t>(r) * dim_ + c]; }
  const CycloScalar& operator()(int r, int c) const { return e_[static_cast<std::size_t>(r) * dim_ + c]; }
  const std::vector<CycloScalar>& entries() const { return e_; }

  SpinMatrix& operator+=(const SpinMatrix& o);
  SpinMatrix& operator-=(const SpinMatrix& o);
  friend SpinMatrix operator+(SpinMatrix a, const SpinMatrix& b) { return a += b; }
  friend SpinMatrix operator-(SpinMatrix a, const SpinMatrix& b) { return a -= b; }
  friend SpinMatrix operator*(const SpinMatrix& a, const SpinMatrix& b);
  friend bool operator==(const SpinMatrix& a, const SpinMatrix& b);
  SpinMatrix scaled(const CycloScalar& c) const;
  SpinMatrix adjoint() const;
  bool is_zero() const;
  bool is_hermitian() const { return *this == adjoint(); }
  Eigen::MatrixXcd to_complex() const;

 private:
  int dim_ = 0;
  std::vector<CycloScalar> e_;
};

json to_json(const SpinMatrix& a);

/// Spin image of g = (prod Q_i^r K_i^e) P_s, built from the same normal-form
/// word in the spin generators. g -> spin_image(g) is a homomorphism.
SpinMatrix spin_image(const SpinRepData& rep, const WreathElement& g);
/// target += c * spin_image(g), in floating point.
void add_spin_image(Eigen::MatrixXcd& target, std::complex<double> c, const SpinRepData& rep, const WreathElement& g);

struct SpinGenerators {
  std::vector<SpinMatrix> Q, K;
  std::vector<std::vector<SpinMatrix>> P;  // P[i][j], i != j
};

SpinGenerators build_spin_generators(const SpinRepData& rep);

/// Homomorphism check of spin_image over every pair of elements of `spec`,
/// plus the direct matrix relations Q^m = 1, K^2 = 1, K Q K = Q^-1.
RelationReport spin_relation_suite(const SpinRepData& rep, const GroupSpec& spec);

enum class ProjectorKind { Lambda, Lambda_b, product };

/// Lambda = (1/(N! m^(N-1))) sum over G(m,m,N) of P_g (spin) times P_g (position);
/// Lambda_b = (1/(2m)^N) prod_j (sum_s Q_j^2s Q_j^2s)(1 + K_j K_j).
MixedOperator build_projector(const SpinRepData& rep, ProjectorKind which);

/// How a position group element is replaced by spin matrices. `reversed`
/// uses the spin image of g^-1, which is how the word acts on projected
/// states; `literal` replaces the normal-form word letter by letter.
enum class SpinOrdering { reversed, literal };

/// Replaces every position group element of a spinless operator by its
/// spin matrix; coefficients and Euler parts are unchanged.
MixedOperator substitute_spin(const MixedOperator& a, const SpinRepData& rep,
                              SpinOrdering ordering = SpinOrdering::reversed);

/// (I_spin^(k) - I^(k)) Lambda = 0 (cyclic) or (J_spin^(k) - J^(k)) Lambda Lambda_b = 0
/// (dihedral, expected zero only for even k), plus the generator-level
/// properties of the projector.
SuiteReport verify_agreement(const ModelParams& p, const SpinRepData& rep, int k,
                             SpinOrdering ordering = SpinOrdering::reversed, std::uint64_t seed = 1);

/// Projector identities: idempotence, Hermiticity of the spin part and the
/// invariance of Lambda (and Lambda Lambda_b) under the generalized exchanges.
SuiteReport projector_identities(const SpinRepData& rep, bool dihedral, std::uint64_t seed = 1);

/// substitute_spin of the dynamical Hamiltonian (H for cyclic, the parity
/// form for dihedral).
MixedOperator build_dynamical_spin_hamiltonian(const ModelParams& p, const SpinRepData& rep);

/// Constant part of an operator with no Euler or group content.
SpinMatrix constant_spin_matrix(const MixedOperator& a);

struct Spectrum {
  std::vector<double> eigenvalues;                  // ascending
  std::vector<std::pair<double, int>> degeneracies;  // (value, multiplicity)
  double hermiticity_residual = 0;
  double max_eigen_residual = 0;  // max ||Hv - lv|| / max(1, ||H||)
};

Spectrum diagonalize_hermitian(const Eigen::MatrixXcd& h, double tol = 1e-10);

json to_json(const Spectrum& s);

}  // namespace dunklab
