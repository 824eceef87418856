#include "dunklab/spinrep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dunklab {

std::vector<int> default_weights(int n, int m) {
  if (n < 1) throw std::invalid_argument("spin dimension must be positive");
  std::vector<int> a(n, 0);
  for (int i = 0; i < n / 2; ++i) {
    a[i] = (i + 1) % m;
    a[n - 1 - i] = ((m - (i + 1)) % m + m) % m;
  }
  return a;
}

SpinRepData SpinRepData::make(int N, int m, int n, std::vector<int> weights) {
  SpinRepData r{N, m, n, weights.empty() ? default_weights(n, m) : std::move(weights)};
  r.validate();
  return r;
}

void SpinRepData::validate() const {
  if (N < 1 || N > kMaxSites) throw std::invalid_argument("N out of range");
  if (m < 1) throw std::invalid_argument("m must be positive");
  if (n < 1 || static_cast<int>(weights.size()) != n) throw std::invalid_argument("weights must have n entries");
  for (int i = 0; i < n; ++i)
    if (((weights[i] + weights[n - 1 - i]) % m + m) % m != 0)
      throw std::invalid_argument("weights must satisfy a_i = -a_{n+1-i} mod m");
  if (dim() > 4096) throw std::invalid_argument("spin space exceeds the dense cap n^N <= 4096");
}

int SpinRepData::dim() const {
  long d = 1;
  for (int i = 0; i < N; ++i) {
    d *= n;
    if (d > 1 << 20) return 1 << 20;
  }
  return static_cast<int>(d);
}

// ------------------------------------------------------------------ matrices

SpinMatrix SpinMatrix::identity(int dim) {
  SpinMatrix a(dim);
  for (int i = 0; i < dim; ++i) a(i, i) = CycloScalar(1);
  return a;
}

SpinMatrix& SpinMatrix::operator+=(const SpinMatrix& o) {
  if (dim_ != o.dim_) throw std::invalid_argument("matrix size mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (!o.e_[i].is_zero()) e_[i] += o.e_[i];
  return *this;
}

SpinMatrix& SpinMatrix::operator-=(const SpinMatrix& o) {
  if (dim_ != o.dim_) throw std::invalid_argument("matrix size mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (!o.e_[i].is_zero()) e_[i] -= o.e_[i];
  return *this;
}

SpinMatrix operator*(const SpinMatrix& a, const SpinMatrix& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("matrix size mismatch");
  const int d = a.dim_;
  SpinMatrix c(d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      const auto& x = a(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < d; ++j) {
        const auto& y = b(k, j);
        if (!y.is_zero()) c(i, j) += x * y;
      }
    }
  return c;
}

bool operator==(const SpinMatrix& a, const SpinMatrix& b) {
  if (a.dim_ != b.dim_) return false;
  for (std::size_t i = 0; i < a.e_.size(); ++i)
    if (!(a.e_[i] == b.e_[i])) return false;
  return true;
}

SpinMatrix SpinMatrix::scaled(const CycloScalar& c) const {
  SpinMatrix r(dim_);
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (!e_[i].is_zero()) r.e_[i] = e_[i] * c;
  return r;
}

SpinMatrix SpinMatrix::adjoint() const {
  SpinMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r(j, i) = (*this)(i, j).conj();
  return r;
}

bool SpinMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const CycloScalar& x) { return x.is_zero(); });
}

Eigen::MatrixXcd SpinMatrix::to_complex() const {
  Eigen::MatrixXcd m(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j).to_complex();
  return m;
}

json to_json(const SpinMatrix& a) {
  json rows = json::array();
  for (int i = 0; i < a.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.dim(); ++j) row.push_back(to_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// --------------------------------------------------------------- generators

namespace {

// Column c of the image of g has a single entry tau^phase[c] in row row[c].
void monomial_image(const SpinRepData& rep, const WreathElement& g, std::vector<int>& row, std::vector<int>& phase) {
  if (g.sites() != rep.N) throw std::invalid_argument("group element acts on a different number of sites");
  if (g.order() != rep.m) throw std::invalid_argument("group order differs from the spin representation order");
  const int N = rep.N, n = rep.n, d = rep.dim();
  row.assign(d, 0);
  phase.assign(d, 0);
  std::vector<int> s(N), t(N);
  for (int col = 0; col < d; ++col) {
    int x = col;
    for (int i = N - 1; i >= 0; --i) {
      s[i] = x % n;
      x /= n;
    }
    for (int k = 0; k < N; ++k) t[g.image(k)] = s[k];
    long ph = 0;
    for (int i = 0; i < N; ++i) {
      if (g.flips(i)) t[i] = n - 1 - t[i];
      ph += static_cast<long>(g.rot(i)) * rep.weights[t[i]];
    }
    int r = 0;
    for (int i = 0; i < N; ++i) r = r * n + t[i];
    row[col] = r;
    phase[col] = static_cast<int>(((ph % rep.m) + rep.m) % rep.m);
  }
}

}  // namespace

SpinMatrix spin_image(const SpinRepData& rep, const WreathElement& g) {
  std::vector<int> row, phase;
  monomial_image(rep, g, row, phase);
  SpinMatrix out(rep.dim());
  for (int col = 0; col < rep.dim(); ++col) out(row[col], col) = CycloScalar::root_of_unity(rep.m, phase[col]);
  return out;
}

void add_spin_image(Eigen::MatrixXcd& target, std::complex<double> c, const SpinRepData& rep, const WreathElement& g) {
  std::vector<int> row, phase;
  monomial_image(rep, g, row, phase);
  for (int col = 0; col < rep.dim(); ++col)
    target(row[col], col) += c * std::polar(1.0, 2 * std::numbers::pi * phase[col] / rep.m);
}

SpinGenerators build_spin_generators(const SpinRepData& rep) {
  rep.validate();
  SpinGenerators gen;
  const int N = rep.N, m = rep.m;
  gen.P.assign(N, std::vector<SpinMatrix>(N));
  for (int i = 0; i < N; ++i) {
    gen.Q.push_back(spin_image(rep, WreathElement::rotation(N, m, i, 1 % m)));
    gen.K.push_back(spin_image(rep, WreathElement::reflection(N, m, i)));
    for (int j = 0; j < N; ++j)
      if (i != j) gen.P[i][j] = spin_image(rep, WreathElement::transposition(N, m, i, j));
  }
  return gen;
}

RelationReport spin_relation_suite(const SpinRepData& rep, const GroupSpec& spec) {
  RelationReport r{spec.name() + " on spins", {}};
  auto elements = enumerate_subgroup(spec);
  std::vector<SpinMatrix> images;
  images.reserve(elements.size());
  for (const auto& g : elements) images.push_back(spin_image(rep, g));
  RelationCheck hom{"spin image is a homomorphism", true, ""};
  for (std::size_t a = 0; a < elements.size() && hom.pass; ++a)
    for (std::size_t b = 0; b < elements.size(); ++b)
      if (!(spin_image(rep, elements[a] * elements[b]) == images[a] * images[b])) {
        hom.pass = false;
        hom.witness = elements[a].str() + " * " + elements[b].str();
        break;
      }
  r.checks.push_back(hom);
  auto gen = build_spin_generators(rep);
  const auto one = SpinMatrix::identity(rep.dim());
  for (int i = 0; i < rep.N; ++i) {
    SpinMatrix qm = one;
    for (int k = 0; k < rep.m; ++k) qm = qm * gen.Q[i];
    r.checks.push_back({"Q" + std::to_string(i + 1) + "^m = 1", qm == one, ""});
    r.checks.push_back({"K" + std::to_string(i + 1) + "^2 = 1", gen.K[i] * gen.K[i] == one, ""});
    SpinMatrix qinv = one;
    for (int k = 1; k < rep.m; ++k) qinv = qinv * gen.Q[i];
    r.checks.push_back({"K" + std::to_string(i + 1) + " Q K = Q^-1", gen.K[i] * gen.Q[i] * gen.K[i] == qinv, ""});
    for (int j = 0; j < rep.N; ++j) {
      if (i == j) continue;
      r.checks.push_back({"P" + std::to_string(i + 1) + std::to_string(j + 1) + "^2 = 1",
                          gen.P[i][j] * gen.P[i][j] == one, ""});
      r.checks.push_back({"[Q" + std::to_string(i + 1) + ", Q" + std::to_string(j + 1) + "] = 0",
                          gen.Q[i] * gen.Q[j] == gen.Q[j] * gen.Q[i], ""});
      r.checks.push_back({"P Q" + std::to_string(i + 1) + " P = Q" + std::to_string(j + 1),
                          gen.P[i][j] * gen.Q[i] * gen.P[i][j] == gen.Q[j], ""});
    }
  }
  for (auto& c : r.checks)
    if (!c.pass && c.witness.empty()) c.witness = "matrices differ";
  return r;
}

// --------------------------------------------------------------- projectors

namespace {

MixedOperator::Matrix constant_matrix(int nvars, const SpinMatrix& a, const CycloScalar& scale) {
  MixedOperator::Matrix out;
  out.reserve(a.entries().size());
  for (const auto& x : a.entries()) out.push_back(RationalFunction::constant(nvars, x * scale));
  return out;
}

MixedOperator spin_op(const SpinRepData& rep, const SpinMatrix& a) {
  return MixedOperator::spin(rep.N, rep.m, a.entries(), rep.dim());
}

MixedOperator pos_op(const SpinRepData& rep, const WreathElement& g) { return MixedOperator::group(g, rep.dim()); }

Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

MixedOperator build_projector(const SpinRepData& rep, ProjectorKind which) {
  rep.validate();
  const int N = rep.N, m = rep.m, d = rep.dim();
  if (which == ProjectorKind::product)
    return build_projector(rep, ProjectorKind::Lambda) * build_projector(rep, ProjectorKind::Lambda_b);
  if (which == ProjectorKind::Lambda) {
    GroupSpec spec{GroupFamily::imprimitive, N, m, m};
    Rational norm = factorial(N);
    for (int i = 1; i < N; ++i) norm *= m;
    const CycloScalar scale(Rational(1) / norm);
    MixedOperator out(N, m, d);
    for (const auto& g : enumerate_subgroup(spec))
      out += MixedOperator::term(N, m, d, {EulerIndex{}, g}, constant_matrix(N, spin_image(rep, g), scale));
    return out;
  }
  MixedOperator out = MixedOperator::identity(N, m, d);
  for (int j = 0; j < N; ++j) {
    MixedOperator rot(N, m, d);
    for (int s = 0; s < m; ++s) {
      auto g = WreathElement::rotation(N, m, j, (2 * s) % m);
      rot += MixedOperator::term(N, m, d, {EulerIndex{}, g}, constant_matrix(N, spin_image(rep, g), CycloScalar(1)));
    }
    auto k = WreathElement::reflection(N, m, j);
    auto refl = MixedOperator::identity(N, m, d) +
                MixedOperator::term(N, m, d, {EulerIndex{}, k}, constant_matrix(N, spin_image(rep, k), CycloScalar(1)));
    out = out * rot * refl;
  }
  return out.scaled(CycloScalar(Rational(1, 2 * m)).pow(N));
}

MixedOperator substitute_spin(const MixedOperator& a, const SpinRepData& rep, SpinOrdering ordering) {
  if (a.spin_dim() != 1) throw std::invalid_argument("substitute_spin expects a spinless operator");
  const int N = rep.N, m = rep.m, d = rep.dim();
  if (a.nvars() != N) throw std::invalid_argument("operator acts on a different number of sites");
  MixedOperator out(N, m, d);
  const auto id = WreathElement::identity(N, m);
  for (const auto& [key, coeff] : a.terms()) {
    const auto& g = key.group;
    const auto M = spin_image(rep, ordering == SpinOrdering::reversed ? g.inverse() : g);
    MixedOperator::Matrix mat;
    mat.reserve(static_cast<std::size_t>(d) * d);
    for (const auto& x : M.entries())
      mat.push_back(x.is_zero() ? RationalFunction(N) : coeff[0].scaled(x));
    out += MixedOperator::term(N, m, d, {key.euler, id}, std::move(mat));
  }
  return out;
}

SuiteReport projector_identities(const SpinRepData& rep, bool dihedral, std::uint64_t seed) {
  const int N = rep.N, m = rep.m;
  SuiteReport r{"projectors", json{{"N", N}, {"m", m}, {"n", rep.n}, {"weights", rep.weights}}, {}};
  const auto L = build_projector(rep, ProjectorKind::Lambda);
  r.checks.push_back(check_identity("Lambda^2 = Lambda", L * L, L, true, seed));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      for (int s = 0; s < m; ++s) {
        auto g = twisted_exchange(N, m, i, j, s);
        r.checks.push_back(check_identity(
            "(Q" + std::to_string(i + 1) + "^-s P" + std::to_string(i + 1) + std::to_string(j + 1) +
                " Q^s)_pos Lambda = (...)_spin Lambda, s=" + std::to_string(s),
            pos_op(rep, g) * L, spin_op(rep, spin_image(rep, g)) * L, true, seed));
      }
    }
  if (!dihedral) return r;
  const auto Lb = build_projector(rep, ProjectorKind::Lambda_b);
  const auto LLb = L * Lb;
  r.checks.push_back(check_identity("Lambda_b^2 = Lambda_b", Lb * Lb, Lb, true, seed));
  r.checks.push_back(check_identity("Lambda Lambda_b = Lambda_b Lambda", LLb, Lb * L, true, seed));
  r.checks.push_back(check_identity("(Lambda Lambda_b)^2 = Lambda Lambda_b", LLb * LLb, LLb, true, seed));
  for (int i = 0; i < N; ++i)
    for (int s = 0; s < m; ++s) {
      auto g = WreathElement::rotation(N, m, i, (2 * s) % m) * WreathElement::reflection(N, m, i);
      r.checks.push_back(check_identity("(Q" + std::to_string(i + 1) + "^2s K)_pos Lambda Lambda_b = (...)_spin Lambda Lambda_b, s=" +
                                            std::to_string(s),
                                        pos_op(rep, g) * LLb, spin_op(rep, spin_image(rep, g)) * LLb, true, seed));
    }
  return r;
}

SuiteReport verify_agreement(const ModelParams& p, const SpinRepData& rep, int k, SpinOrdering ordering,
                             std::uint64_t seed) {
  if (p.N != rep.N || p.m != rep.m) throw std::invalid_argument("model and spin representation disagree on N or m");
  const bool dihedral = p.family == ModelFamily::dihedral;
  if (!dihedral && p.family != ModelFamily::cyclic)
    throw std::invalid_argument("agreement is defined for the cyclic and dihedral families");
  const int d = rep.dim();
  json params = to_json(p);
  params["n"] = rep.n;
  params["k"] = k;
  params["ordering"] = ordering == SpinOrdering::reversed ? "reversed" : "literal";
  SuiteReport r{"agreement", params, {}};
  MixedOperator proj = build_projector(rep, ProjectorKind::Lambda);
  if (dihedral) proj = proj * build_projector(rep, ProjectorKind::Lambda_b);
  const auto I = build_charge(p, k);
  const auto Ispin = substitute_spin(I, rep, ordering);
  const std::string name = dihedral ? "J" : "I";
  const auto Iproj = I.with_spin_dim(d) * proj;
  const std::string pname = dihedral ? "Lambda Lambda_b" : "Lambda";
  const std::string kname = name + "^(" + std::to_string(k) + ")";
  r.checks.push_back(check_identity("(" + name + "_spin^(" + std::to_string(k) + ") - " + kname + ") " + pname + " = 0",
                                    Ispin * proj, Iproj, true, seed));
  // The charge times the projector must keep the projector's invariances.
  const int N = p.N, m = p.m;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      for (int s = 0; s < m; ++s) {
        auto g = twisted_exchange(N, m, i, j, s);
        r.checks.push_back(check_identity("(Q" + std::to_string(i + 1) + "^-s P" + std::to_string(i + 1) +
                                              std::to_string(j + 1) + " Q^s) " + kname + " " + pname +
                                              " invariant, s=" + std::to_string(s),
                                          pos_op(rep, g) * Iproj, spin_op(rep, spin_image(rep, g)) * Iproj, true, seed));
      }
    }
  if (dihedral) {
    const bool expect = k % 2 == 0;
    for (int i = 0; i < N; ++i)
      for (int s = 0; s < m; ++s) {
        auto g = WreathElement::rotation(N, m, i, (2 * s) % m) * WreathElement::reflection(N, m, i);
        r.checks.push_back(check_identity("(Q" + std::to_string(i + 1) + "^2s K" + std::to_string(i + 1) + ") " +
                                              kname + " " + pname + (expect ? " invariant" : " not invariant") +
                                              ", s=" + std::to_string(s),
                                          pos_op(rep, g) * Iproj, spin_op(rep, spin_image(rep, g)) * Iproj, expect,
                                          seed));
      }
  }
  return r;
}

MixedOperator build_dynamical_spin_hamiltonian(const ModelParams& p, const SpinRepData& rep) {
  HamiltonianKind kind = HamiltonianKind::ham;
  if (p.family == ModelFamily::dihedral) kind = p.m % 2 ? HamiltonianKind::odd : HamiltonianKind::even;
  return substitute_spin(build_hamiltonian(p, kind), rep);
}

SpinMatrix constant_spin_matrix(const MixedOperator& a) {
  const int d = a.spin_dim();
  SpinMatrix out(d);
  for (const auto& [key, coeff] : a.terms()) {
    if (!key.group.is_identity() || std::any_of(key.euler.begin(), key.euler.end(), [](auto e) { return e != 0; }))
      throw std::invalid_argument("operator has position dependence beyond a constant matrix");
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const auto& c = coeff[static_cast<std::size_t>(i) * d + j];
        if (c.is_zero()) continue;
        if (!c.is_polynomial() || !c.numerator().is_constant())
          throw std::invalid_argument("coefficient is not constant");
        out(i, j) += c.numerator().constant_value();
      }
  }
  return out;
}

// ------------------------------------------------------------------ spectra

Spectrum diagonalize_hermitian(const Eigen::MatrixXcd& h, double tol) {
  if (h.rows() != h.cols()) throw std::invalid_argument("matrix is not square");
  Spectrum out;
  const double scale = std::max(1.0, h.norm());
  out.hermiticity_residual = (h - h.adjoint()).norm() / scale;
  if (out.hermiticity_residual > tol) throw std::invalid_argument("matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  for (int i = 0; i < vals.size(); ++i) {
    out.eigenvalues.push_back(vals[i]);
    double res = (h * vecs.col(i) - vals[i] * vecs.col(i)).norm() / scale;
    out.max_eigen_residual = std::max(out.max_eigen_residual, res);
  }
  const double gap = 1e-8 * scale;
  for (double v : out.eigenvalues) {
    if (!out.degeneracies.empty() && std::abs(v - out.degeneracies.back().first) <= gap)
      ++out.degeneracies.back().second;
    else
      out.degeneracies.emplace_back(v, 1);
  }
  return out;
}

json to_json(const Spectrum& s) {
  json deg = json::array();
  for (const auto& [v, k] : s.degeneracies) deg.push_back({{"value", v}, {"multiplicity", k}});
  return {{"eigenvalues", s.eigenvalues},
          {"degeneracies", deg},
          {"hermiticity_residual", s.hermiticity_residual},
          {"max_eigen_residual", s.max_eigen_residual}};
}

}  // namespace dunklab
