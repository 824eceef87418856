#include "dunklab/groups.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dunklab {

namespace {

void check_site(const WreathElement& g, int i) {
  if (i < 0 || i >= g.sites()) throw std::out_of_range("site index out of range");
}

std::string word_str(const WreathElement& lhs, const WreathElement& rhs) {
  return lhs.str() + " != " + rhs.str();
}

}  // namespace

WreathElement WreathElement::identity(int sites, int m) {
  if (sites < 1 || sites > kMaxSites) throw std::invalid_argument("number of sites must be in 1..8");
  if (m < 1 || m > 255) throw std::invalid_argument("rotation order must be in 1..255");
  WreathElement g;
  g.sites_ = static_cast<std::uint8_t>(sites);
  g.m_ = static_cast<std::uint8_t>(m);
  for (int i = 0; i < sites; ++i) g.perm_[i] = static_cast<std::uint8_t>(i);
  return g;
}

WreathElement WreathElement::transposition(int sites, int m, int i, int j) {
  WreathElement g = identity(sites, m);
  check_site(g, i);
  check_site(g, j);
  std::swap(g.perm_[i], g.perm_[j]);
  return g;
}

WreathElement WreathElement::rotation(int sites, int m, int i, int power) {
  WreathElement g = identity(sites, m);
  check_site(g, i);
  g.rot_[i] = static_cast<std::uint8_t>(((power % m) + m) % m);
  return g;
}

WreathElement WreathElement::reflection(int sites, int m, int i) {
  WreathElement g = identity(sites, m);
  check_site(g, i);
  g.flip_[i] = 1;
  return g;
}

WreathElement WreathElement::from_parts(int m, std::vector<int> perm, std::vector<int> rot,
                                        std::vector<int> flip) {
  const int n = static_cast<int>(perm.size());
  if (static_cast<int>(rot.size()) != n || static_cast<int>(flip.size()) != n) {
    throw std::invalid_argument("perm/rot/flip lengths differ");
  }
  WreathElement g = identity(n, m);
  std::vector<bool> seen(n, false);
  for (int i = 0; i < n; ++i) {
    if (perm[i] < 0 || perm[i] >= n || seen[perm[i]]) throw std::invalid_argument("perm is not a bijection");
    seen[perm[i]] = true;
    if (rot[i] < 0 || rot[i] >= m) throw std::invalid_argument("rot residue out of range");
    if (flip[i] != 0 && flip[i] != 1) throw std::invalid_argument("flip must be 0 or 1");
    g.perm_[i] = static_cast<std::uint8_t>(perm[i]);
    g.rot_[i] = static_cast<std::uint8_t>(rot[i]);
    g.flip_[i] = static_cast<std::uint8_t>(flip[i]);
  }
  return g;
}

bool WreathElement::is_identity() const { return *this == identity(sites_, m_); }

bool WreathElement::is_permutation() const {
  for (int i = 0; i < sites_; ++i) {
    if (rot_[i] != 0 || flip_[i] != 0) return false;
  }
  return true;
}

WreathElement WreathElement::operator*(const WreathElement& h) const {
  if (sites_ != h.sites_ || m_ != h.m_) throw std::invalid_argument("compose: size/order mismatch");
  // (L1 P_s)(L2 P_t) = L1 (P_s L2 P_s^-1) P_{s t}; conjugation moves site i to s(i),
  // and K Q^b = Q^-b K within a site.
  WreathElement r = *this;
  for (int i = 0; i < sites_; ++i) {
    const int site = perm_[i];
    const int b = h.rot_[i];
    const int signed_b = flip_[site] ? (m_ - b) % m_ : b;
    r.rot_[site] = static_cast<std::uint8_t>((rot_[site] + signed_b) % m_);
    r.flip_[site] = static_cast<std::uint8_t>(flip_[site] ^ h.flip_[i]);
  }
  for (int i = 0; i < sites_; ++i) r.perm_[i] = perm_[h.perm_[i]];
  return r;
}

WreathElement WreathElement::inverse() const {
  // (L P_s)^-1 = (P_{s^-1} L^-1 P_s) P_{s^-1}; per site (Q^r K^e)^-1 = Q^{e ? r : -r} K^e.
  WreathElement r = identity(sites_, m_);
  for (int i = 0; i < sites_; ++i) r.perm_[perm_[i]] = static_cast<std::uint8_t>(i);
  for (int i = 0; i < sites_; ++i) {
    const int site = r.perm_[i];
    r.rot_[site] = static_cast<std::uint8_t>(flip_[i] ? rot_[i] : (m_ - rot_[i]) % m_);
    r.flip_[site] = flip_[i];
  }
  return r;
}

WreathElement WreathElement::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  WreathElement r = identity(sites_, m_);
  for (int k = 0; k < e; ++k) r = r * *this;
  return r;
}

std::size_t WreathElement::hash() const {
  std::size_t h = sites_ * 131u + m_;
  for (int i = 0; i < sites_; ++i) {
    h = h * 1000003u + (perm_[i] * 65536u + rot_[i] * 2u + flip_[i]);
  }
  return h;
}

std::string WreathElement::str() const {
  std::ostringstream os;
  bool any = false;
  for (int i = 0; i < sites_; ++i) {
    if (rot_[i] != 0) {
      os << (any ? " " : "") << "Q" << i + 1;
      if (rot_[i] != 1) os << "^" << int(rot_[i]);
      any = true;
    }
    if (flip_[i] != 0) {
      os << (any ? " " : "") << "K" << i + 1;
      any = true;
    }
  }
  bool trivial = true;
  for (int i = 0; i < sites_; ++i) trivial = trivial && perm_[i] == i;
  if (!trivial) {
    os << (any ? " " : "") << "P[";
    for (int i = 0; i < sites_; ++i) os << (i ? "," : "") << perm_[i] + 1;
    os << "]";
    any = true;
  }
  if (!any) os << "1";
  return os.str();
}

void GroupSpec::validate() const {
  if (sites < 1 || sites > kMaxSites) throw std::invalid_argument("N must be in 1..8");
  if (m < 1) throw std::invalid_argument("m must be positive");
  if (family == GroupFamily::imprimitive && (p < 1 || m % p != 0)) {
    throw std::invalid_argument("p must divide m for G(m,p,N)");
  }
}

std::string GroupSpec::name() const {
  const std::string n = std::to_string(sites), ms = std::to_string(m);
  switch (family) {
    case GroupFamily::symmetric: return "S_" + n;
    case GroupFamily::cyclic: return "G(" + ms + ",1," + n + ")";
    case GroupFamily::imprimitive: return "G(" + ms + "," + std::to_string(p) + "," + n + ")";
    case GroupFamily::wreath: return "W(" + ms + "," + n + ")";
  }
  return "?";
}

std::uint64_t GroupSpec::cardinality() const {
  validate();
  unsigned __int128 fact = 1;
  for (int i = 2; i <= sites; ++i) fact *= static_cast<unsigned>(i);
  unsigned __int128 local = 1;
  const unsigned base = family == GroupFamily::symmetric ? 1u
                        : family == GroupFamily::wreath  ? 2u * static_cast<unsigned>(m)
                                                         : static_cast<unsigned>(m);
  for (int i = 0; i < sites; ++i) local *= base;
  unsigned __int128 total = fact * local;
  if (family == GroupFamily::imprimitive) total /= static_cast<unsigned>(p);
  if (total > static_cast<unsigned __int128>(INT64_MAX)) throw std::overflow_error("group order overflow");
  return static_cast<std::uint64_t>(total);
}

bool GroupSpec::contains(const WreathElement& g) const {
  if (g.sites() != sites || g.order() != m) return false;
  int rot_sum = 0;
  for (int i = 0; i < sites; ++i) {
    if (family != GroupFamily::wreath && g.flips(i)) return false;
    if (family == GroupFamily::symmetric && g.rot(i) != 0) return false;
    rot_sum += g.rot(i);
  }
  if (family == GroupFamily::imprimitive) return rot_sum % p == 0;
  return true;
}

WreathElement generator(const GroupSpec& spec, Generator which, int i, int j) {
  spec.validate();
  const int n = spec.sites, m = spec.m;
  auto e = [&](int k) {
    if (k < 0 || k >= n - 1) throw std::out_of_range("e_i index out of range");
    return WreathElement::transposition(n, m, k, k + 1);
  };
  auto check_index = [&](int k) {
    if (k < 0 || k >= n) throw std::out_of_range("site index out of range");
  };
  auto P = [&](int a, int b) {
    check_index(a);
    check_index(b);
    if (a == b) throw std::invalid_argument("P_ij needs i != j");
    if (a > b) std::swap(a, b);
    WreathElement w = WreathElement::identity(n, m);
    for (int k = a; k < b; ++k) w = w * e(k);
    for (int k = b - 2; k >= a; --k) w = w * e(k);
    if (w != WreathElement::transposition(n, m, a, b)) {
      throw std::logic_error("word for P_ij does not normalize to the transposition");
    }
    return w;
  };
  auto conj_site = [&](int site, const WreathElement& at_first) {
    check_index(site);
    if (site == 0) return at_first;
    WreathElement t = P(site, 0);
    return t * at_first * t;
  };
  const bool has_k = spec.family == GroupFamily::wreath;
  const bool has_a = spec.family != GroupFamily::symmetric;
  switch (which) {
    case Generator::e: return e(i);
    case Generator::P: return P(i, j);
    case Generator::a:
    case Generator::Q: {
      if (!has_a) throw std::invalid_argument("rotation generator not in family " + spec.name());
      if (spec.family == GroupFamily::imprimitive && spec.p != 1) {
        throw std::invalid_argument("a is not in G(m,p,N) for p > 1; use a^p");
      }
      WreathElement a = WreathElement::rotation(n, m, 0);
      if (which == Generator::a) return a;
      WreathElement q = conj_site(i, a);
      if (q != WreathElement::rotation(n, m, i)) throw std::logic_error("Q_i word mismatch");
      return q;
    }
    case Generator::k:
    case Generator::K: {
      if (!has_k) throw std::invalid_argument("reflection generator not in family " + spec.name());
      WreathElement k = WreathElement::reflection(n, m, 0);
      if (which == Generator::k) return k;
      WreathElement kk = conj_site(i, k);
      if (kk != WreathElement::reflection(n, m, i)) throw std::logic_error("K_i word mismatch");
      return kk;
    }
  }
  throw std::invalid_argument("unknown generator");
}

std::vector<WreathElement> enumerate_subgroup(const GroupSpec& spec, std::uint64_t cap) {
  spec.validate();
  const std::uint64_t total = spec.cardinality();
  if (total > cap) {
    throw std::length_error(spec.name() + " has " + std::to_string(total) + " elements, above cap " +
                            std::to_string(cap));
  }
  const int n = spec.sites, m = spec.m;
  const int rot_base = spec.family == GroupFamily::symmetric ? 1 : m;
  const int flip_base = spec.family == GroupFamily::wreath ? 2 : 1;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<WreathElement> out;
  out.reserve(total);
  std::uint64_t local_count = 1;
  for (int i = 0; i < n; ++i) local_count *= static_cast<std::uint64_t>(rot_base * flip_base);
  do {
    for (std::uint64_t code = 0; code < local_count; ++code) {
      std::vector<int> rot(n), flip(n);
      std::uint64_t c = code;
      for (int i = 0; i < n; ++i) {
        rot[i] = static_cast<int>(c % rot_base);
        c /= rot_base;
        flip[i] = static_cast<int>(c % flip_base);
        c /= flip_base;
      }
      WreathElement g = WreathElement::from_parts(m, perm, rot, flip);
      if (spec.contains(g)) out.push_back(g);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (out.size() != total) throw std::logic_error("enumeration count mismatch for " + spec.name());
  return out;
}

bool RelationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const RelationCheck& c) { return c.pass; });
}

std::vector<RelationCheck> RelationReport::failures() const {
  std::vector<RelationCheck> out;
  for (const auto& c : checks) {
    if (!c.pass) out.push_back(c);
  }
  return out;
}

RelationReport relation_suite(const GroupSpec& spec, const ComposeFn& compose_in) {
  spec.validate();
  const ComposeFn compose =
      compose_in ? compose_in : [](const WreathElement& a, const WreathElement& b) { return a * b; };
  const int n = spec.sites, m = spec.m;
  RelationReport report{spec.name(), {}};
  const WreathElement id = WreathElement::identity(n, m);
  auto word = [&](std::initializer_list<WreathElement> w) {
    WreathElement r = id;
    for (const auto& x : w) r = compose(r, x);
    return r;
  };
  auto power = [&](const WreathElement& x, int e) {
    WreathElement r = id;
    for (int k = 0; k < e; ++k) r = compose(r, x);
    return r;
  };
  auto add = [&](std::string name, const WreathElement& lhs, const WreathElement& rhs) {
    RelationCheck c{std::move(name), lhs == rhs, ""};
    if (!c.pass) c.witness = word_str(lhs, rhs);
    report.checks.push_back(std::move(c));
  };
  auto idx = [](int i) { return std::to_string(i + 1); };

  // Direct constructions; the relations are then checked through `compose`.
  auto e = [&](int i) { return WreathElement::transposition(n, m, i, i + 1); };
  auto P = [&](int i, int j) { return WreathElement::transposition(n, m, i, j); };
  auto Q = [&](int i) { return WreathElement::rotation(n, m, i); };
  auto K = [&](int i) { return WreathElement::reflection(n, m, i); };
  const bool has_a = spec.family != GroupFamily::symmetric;
  const bool has_k = spec.family == GroupFamily::wreath;

  // Presentation relations on e_i.
  for (int i = 0; i + 1 < n; ++i) {
    add("e" + idx(i) + "^2 = 1", word({e(i), e(i)}), id);
    if (i + 2 < n) {
      add("e" + idx(i) + " e" + idx(i + 1) + " e" + idx(i) + " = e" + idx(i + 1) + " e" + idx(i) + " e" +
              idx(i + 1),
          word({e(i), e(i + 1), e(i)}), word({e(i + 1), e(i), e(i + 1)}));
    }
    for (int j = i + 2; j + 1 < n; ++j) {
      add("e" + idx(i) + " e" + idx(j) + " = e" + idx(j) + " e" + idx(i) + " (|i-j|>=2)",
          word({e(i), e(j)}), word({e(j), e(i)}));
    }
  }
  if (has_a && n >= 1) {
    const WreathElement a = Q(0);
    add("a^m = 1", power(a, m), id);
    if (n >= 2) add("a e1 a e1 = e1 a e1 a", word({a, e(0), a, e(0)}), word({e(0), a, e(0), a}));
    for (int j = 1; j + 1 < n; ++j) add("a e" + idx(j) + " = e" + idx(j) + " a", word({a, e(j)}), word({e(j), a}));
  }
  if (has_k) {
    const WreathElement a = Q(0), k = K(0);
    add("k a = a^-1 k", word({k, a}), word({power(a, m - 1), k}));
    add("k^2 = 1", word({k, k}), id);
    if (n >= 2) add("k e1 k e1 = e1 k e1 k", word({k, e(0), k, e(0)}), word({e(0), k, e(0), k}));
    for (int j = 1; j + 1 < n; ++j) add("k e" + idx(j) + " = e" + idx(j) + " k", word({k, e(j)}), word({e(j), k}));
  }

  // Word definitions against direct constructions.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      WreathElement w = id;
      for (int k = i; k < j; ++k) w = compose(w, e(k));
      for (int k = j - 2; k >= i; --k) w = compose(w, e(k));
      add("P" + idx(i) + idx(j) + " word = transposition", w, P(i, j));
    }
    if (i > 0 && has_a) add("Q" + idx(i) + " = P" + idx(i) + "1 a P" + idx(i) + "1", word({P(i, 0), Q(0), P(i, 0)}), Q(i));
    if (i > 0 && has_k) add("K" + idx(i) + " = P" + idx(i) + "1 k P" + idx(i) + "1", word({P(i, 0), K(0), P(i, 0)}), K(i));
  }

  // Derived relations on P_ij, Q_i, K_i (all indices distinct).
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const std::string ij = idx(i) + idx(j);
      if (i < j) add("P" + ij + "^2 = 1", word({P(i, j), P(i, j)}), id);
      if (has_a) add("P" + ij + " Q" + idx(i) + " = Q" + idx(j) + " P" + ij, word({P(i, j), Q(i)}), word({Q(j), P(i, j)}));
      if (has_k) add("P" + ij + " K" + idx(i) + " = K" + idx(j) + " P" + ij, word({P(i, j), K(i)}), word({K(j), P(i, j)}));
      if (has_a && i < j) add("Q" + idx(i) + " Q" + idx(j) + " = Q" + idx(j) + " Q" + idx(i), word({Q(i), Q(j)}), word({Q(j), Q(i)}));
      if (has_k && i < j) add("K" + idx(i) + " K" + idx(j) + " = K" + idx(j) + " K" + idx(i), word({K(i), K(j)}), word({K(j), K(i)}));
      if (has_k) add("K" + idx(i) + " Q" + idx(j) + " = Q" + idx(j) + " K" + idx(i), word({K(i), Q(j)}), word({Q(j), K(i)}));
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const std::string jk = idx(j) + idx(k), ik = idx(i) + idx(k);
        add("P" + ij + " P" + jk + " = P" + ik + " P" + ij, word({P(i, j), P(j, k)}), word({P(i, k), P(i, j)}));
        add("P" + ik + " P" + ij + " = P" + jk + " P" + ik, word({P(i, k), P(i, j)}), word({P(j, k), P(i, k)}));
        if (has_a) add("P" + ij + " Q" + idx(k) + " = Q" + idx(k) + " P" + ij, word({P(i, j), Q(k)}), word({Q(k), P(i, j)}));
        if (has_k) add("P" + ij + " K" + idx(k) + " = K" + idx(k) + " P" + ij, word({P(i, j), K(k)}), word({K(k), P(i, j)}));
        for (int l = k + 1; l < n; ++l) {
          if (l == i || l == j || i > j) continue;
          const std::string kl = idx(k) + idx(l);
          add("P" + ij + " P" + kl + " = P" + kl + " P" + ij, word({P(i, j), P(k, l)}), word({P(k, l), P(i, j)}));
        }
      }
    }
    if (has_a) add("Q" + idx(i) + "^m = 1", power(Q(i), m), id);
    if (has_k) {
      add("K" + idx(i) + "^2 = 1", word({K(i), K(i)}), id);
      add("K" + idx(i) + " Q" + idx(i) + " = Q" + idx(i) + "^-1 K" + idx(i), word({K(i), Q(i)}),
          word({power(Q(i), m - 1), K(i)}));
    }
  }

  // Group axioms on the generators through compose.
  std::vector<WreathElement> gens;
  for (int i = 0; i + 1 < n; ++i) gens.push_back(e(i));
  if (has_a) gens.push_back(Q(0));
  if (has_k) gens.push_back(K(0));
  for (const auto& g : gens) add("g g^-1 = 1 for g = " + g.str(), compose(g, g.inverse()), id);

  if (spec.family == GroupFamily::imprimitive) {
    const int p = spec.p;
    GroupSpec parent{GroupFamily::cyclic, n, m, 1};
    std::vector<std::pair<std::string, WreathElement>> sub_gens{{"a^p", Q(0).pow(p)}};
    if (n >= 2) sub_gens.emplace_back("a^-1 e1 a", word({Q(0).inverse(), e(0), Q(0)}));
    for (int i = 0; i + 1 < n; ++i) sub_gens.emplace_back("e" + idx(i), e(i));
    for (const auto& [name, g] : sub_gens) {
      RelationCheck c{"generator " + name + " in " + spec.name(), spec.contains(g) && parent.contains(g), ""};
      if (!c.pass) c.witness = g.str();
      report.checks.push_back(c);
    }
    if (spec.cardinality() <= 20000) {
      auto elems = enumerate_subgroup(spec);
      std::set<WreathElement> set(elems.begin(), elems.end());
      RelationCheck closure{"closure under compose and inverse", true, ""};
      for (const auto& g : elems) {
        if (!set.count(g.inverse())) {
          closure = {closure.name, false, "inverse of " + g.str()};
          break;
        }
        for (const auto& [name, h] : sub_gens) {
          if (!set.count(compose(g, h))) {
            closure = {closure.name, false, g.str() + " * " + h.str()};
            break;
          }
        }
        if (!closure.pass) break;
      }
      report.checks.push_back(closure);
    }
  }
  return report;
}

json to_json(const WreathElement& g) {
  json perm = json::array(), rot = json::array(), flip = json::array();
  for (int i = 0; i < g.sites(); ++i) {
    perm.push_back(g.image(i) + 1);
    rot.push_back(g.rot(i));
    flip.push_back(g.flips(i) ? 1 : 0);
  }
  return json{{"perm", perm}, {"rot", rot}, {"flip", flip}};
}

WreathElement element_from_json(const json& j, int m) {
  std::vector<int> perm, rot, flip;
  for (const auto& v : j.at("perm")) perm.push_back(v.get<int>() - 1);
  for (const auto& v : j.at("rot")) rot.push_back(v.get<int>());
  for (const auto& v : j.at("flip")) flip.push_back(v.get<int>());
  return WreathElement::from_parts(m, perm, rot, flip);
}

json to_json(const RelationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"relation", c.name}, {"pass", c.pass}, {"witness", c.pass ? json(nullptr) : json(c.witness)}});
  }
  return json{{"group", r.group}, {"pass", r.pass()}, {"checks", checks}};
}

}  // namespace dunklab
