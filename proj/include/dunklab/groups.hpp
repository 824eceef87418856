#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dunklab/cyclotomic.hpp"

namespace dunklab {

inline constexpr int kMaxSites = 8;

/// Element of W(m, N) = Dih_m wr S_N in the normal form
///
///     g = (prod_i Q_i^{rot_i} K_i^{flip_i}) * P_perm
///
/// with all local factors to the left of the permutation. Sites are 0-based.
/// As operators on functions of (q_1..q_N):
///   Q_i: q_i -> tau q_i,  K_i: q_i -> 1/q_i,  (P_s psi)(q) = psi(q_{s(1)}, ..., q_{s(N)})
/// so that P_s q_k = q_{s(k)} P_s and P_s Q_k = Q_{s(k)} P_s.
class WreathElement {
 public:
  WreathElement() = default;
  static WreathElement identity(int sites, int m);
  /// Direct constructions (not words in the abstract generators).
  static WreathElement transposition(int sites, int m, int i, int j);
  static WreathElement rotation(int sites, int m, int i, int power = 1);
  static WreathElement reflection(int sites, int m, int i);
  static WreathElement from_parts(int m, std::vector<int> perm, std::vector<int> rot,
                                  std::vector<int> flip);

  int sites() const { return sites_; }
  int order() const { return m_; }
  int image(int i) const { return perm_[i]; }
  int rot(int i) const { return rot_[i]; }
  bool flips(int i) const { return flip_[i] != 0; }
  bool is_identity() const;
  bool is_permutation() const;

  WreathElement operator*(const WreathElement& h) const;
  WreathElement inverse() const;
  WreathElement pow(int e) const;

  friend bool operator==(const WreathElement& a, const WreathElement& b) = default;
  friend auto operator<=>(const WreathElement& a, const WreathElement& b) = default;

  std::size_t hash() const;
  std::string str() const;

 private:
  std::uint8_t sites_ = 0;
  std::uint8_t m_ = 1;
  std::array<std::uint8_t, kMaxSites> perm_{};
  std::array<std::uint8_t, kMaxSites> rot_{};
  std::array<std::uint8_t, kMaxSites> flip_{};
};

enum class GroupFamily { symmetric, cyclic, imprimitive, wreath };

/// symmetric = S_N, cyclic = G(m,1,N), imprimitive = G(m,p,N) with p | m,
/// wreath = W(m,N). For the imprimitive family m is the full order pr.
struct GroupSpec {
  GroupFamily family = GroupFamily::cyclic;
  int sites = 2;
  int m = 1;
  int p = 1;

  void validate() const;
  std::string name() const;
  /// Cardinality as a double-free integer; throws on overflow past 2^63.
  std::uint64_t cardinality() const;
  bool contains(const WreathElement& g) const;
};

/// The abstract generators of the presentations and the derived elements.
enum class Generator { e, a, k, P, Q, K };

/// e: e_i = P_{i,i+1} (i in 0..N-2); a = Q_1; k = K_1; P: P_ij built from the
/// word e_i e_{i+1} ... e_{j-1} ... e_{i+1} e_i; Q: Q_i = P_{i1} a P_{i1};
/// K: K_i = P_{i1} k P_{i1}. Word results are checked against the direct
/// constructions and a std::logic_error is raised on mismatch.
WreathElement generator(const GroupSpec& spec, Generator which, int i = 0, int j = 0);

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

std::vector<WreathElement> enumerate_subgroup(const GroupSpec& spec,
                                              std::uint64_t cap = kDefaultEnumerationCap);

using ComposeFn = std::function<WreathElement(const WreathElement&, const WreathElement&)>;

struct RelationCheck {
  std::string name;
  bool pass = true;
  std::string witness;  // "lhs != rhs" when failing
};

struct RelationReport {
  std::string group;
  std::vector<RelationCheck> checks;
  bool pass() const;
  std::vector<RelationCheck> failures() const;
};

/// Instantiates every defining relation of the family for all index choices
/// and checks it with `compose`. The commutation relation for generators e_i,
/// e_j is taken for |i - j| >= 2.
RelationReport relation_suite(const GroupSpec& spec, const ComposeFn& compose = {});

json to_json(const WreathElement& g);
WreathElement element_from_json(const json& j, int m);
json to_json(const RelationReport& r);

}  // namespace dunklab

template <>
struct std::hash<dunklab::WreathElement> {
  std::size_t operator()(const dunklab::WreathElement& g) const noexcept { return g.hash(); }
};
