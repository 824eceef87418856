#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "dunklab/dunkl.hpp"
#include "dunklab/groups.hpp"
#include "dunklab/spinrep.hpp"
#include "dunklab/static.hpp"

using namespace dunklab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* kPiNote = "positions q_k = exp(2 pi i k/(m N)); the lattice as printed omits the factor pi";

json lattice_json_with_note(const LatticeConfig& lat) {
  json j = to_json(lat);
  if (lat.family == LatticeFamily::cyclic) j["note"] = kPiNote;
  return j;
}

struct Options {
  std::string family = "cyclic";
  int N = 2;
  int m = 1;
  int n = 2;
  std::string weights;
  std::string lambda = "0", mu = "0", rho = "0";
  std::string corrupt = "none";
  std::uint64_t seed = 1;
  std::string output;
  int kmax = 0;
  bool skip_spin = false;
  std::string backend = "exact";

  std::string label;
  int L = 0;
  std::string offset = "0";
  std::string beta2, gamma2, mu2;
  bool scan = false;
  int Lmin = 2, Lmax = 40, top = 20;

  bool x_display = false;
  int charges = 0;
  std::string object;
};

Rational rational_opt(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw ConfigError("--" + flag + ": not a rational: " + text);
  }
}

int workers() {
  if (const char* env = std::getenv("DUNKLAB_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs the tasks on a pool; results keep task order.
std::vector<json> run_pool(const std::vector<std::function<json()>>& tasks) {
  std::vector<json> out(tasks.size());
  std::vector<std::string> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) {
      try {
        out[i] = tasks[i]();
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const int w = std::min<int>(workers(), static_cast<int>(tasks.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < w; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < tasks.size(); ++i)
    if (!errors[i].empty()) throw std::runtime_error(errors[i]);
  return out;
}

json wrap(const json& suites, bool pass, const Options& o, const json& config) {
  return json{{"suite", suites}, {"pass", pass}, {"seed", o.seed}, {"version", DUNKLAB_VERSION}, {"config", config}};
}

void emit(const json& report, const Options& o) {
  if (o.output.empty()) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream f(o.output);
  if (!f) throw ConfigError("cannot write " + o.output);
  f << report.dump(2) << "\n";
}

json suite_json(const SuiteReport& r) {
  auto j = to_json(r);
  j["pass"] = r.pass();
  return j;
}

json relation_json(const RelationReport& r) {
  auto j = to_json(r);
  j["suite"] = "group relations";
  j["pass"] = r.pass();
  return j;
}

void print_failures(const json& suites) {
  for (const auto& s : suites) {
    if (s.value("pass", true)) continue;
    for (const auto& c : s["checks"]) {
      const bool ok = c.contains("pass") ? c["pass"].get<bool>() : true;
      if (ok) continue;
      std::cerr << "FAIL " << s.value("suite", s.value("group", "")) << ": " << c.value("relation", c.value("name", ""))
                << "\n  witness: " << c.value("witness", "") << "\n";
    }
  }
}

ModelParams model_params(const Options& o) {
  ModelParams p;
  static const std::map<std::string, ModelFamily> families{
      {"A", ModelFamily::A}, {"BC", ModelFamily::BC}, {"cyclic", ModelFamily::cyclic}, {"dihedral", ModelFamily::dihedral}};
  auto it = families.find(o.family);
  if (it == families.end()) throw ConfigError("--family must be one of A, BC, cyclic, dihedral");
  p.family = it->second;
  p.N = o.N;
  p.m = o.m;
  p.lambda = rational_opt("lambda", o.lambda);
  p.mu = rational_opt("mu", o.mu);
  p.rho = rational_opt("rho", o.rho);
  if ((p.family == ModelFamily::A || p.family == ModelFamily::cyclic) && (p.mu != 0 || p.rho != 0))
    throw ConfigError("--mu and --rho apply to the BC and dihedral families");
  try {
    p.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return p;
}

SpinRepData spin_rep(const Options& o, int N, int m) {
  std::vector<int> w;
  if (!o.weights.empty()) {
    std::stringstream ss(o.weights);
    for (std::string item; std::getline(ss, item, ',');) w.push_back(std::stoi(item));
  }
  try {
    return SpinRepData::make(N, m, o.n, w);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Options& o) {
  const auto p = model_params(o);
  Corruption corrupt = Corruption::none;
  if (o.corrupt == "drels") corrupt = Corruption::drels;
  else if (o.corrupt == "recursion") corrupt = Corruption::recursion;
  else if (o.corrupt != "none") throw ConfigError("--corrupt must be none, drels or recursion");
  const bool dihedral = p.family == ModelFamily::dihedral || p.family == ModelFamily::BC;
  const int kmax = o.kmax > 0 ? o.kmax : dihedral ? 2 : 3;
  if (kmax > 4) throw ConfigError("--kmax must be in 1..4");
  // A and BC coincide with the m = 1 cyclic and dihedral operators; the
  // Hamiltonian, projector and spin suites run on that counterpart.
  ModelParams q = p;
  if (p.family == ModelFamily::A) q.family = ModelFamily::cyclic;
  if (p.family == ModelFamily::BC) q.family = ModelFamily::dihedral;

  GroupSpec g;
  g.sites = p.N;
  g.m = p.m;
  g.family = p.family == ModelFamily::A ? GroupFamily::symmetric : dihedral ? GroupFamily::wreath : GroupFamily::cyclic;
  try {
    g.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }

  std::optional<SpinRepData> rep;
  if (!o.skip_spin) {
    rep = spin_rep(o, p.N, p.m);
    if (rep->dim() > 64) throw ConfigError("spin check dimension above 64; pass --skip-spin");
  }

  const auto seed = o.seed;
  std::vector<std::function<json()>> tasks{
      [=] { return relation_json(relation_suite(g)); },
      [=] { return suite_json(check_hecke_relations(p, corrupt, seed)); },
      [=] { return suite_json(check_recursion(p, corrupt, seed)); },
      [=] { return suite_json(reduction_check(q, seed)); },
      [=] { return suite_json(hamiltonian_check(q, seed)); },
      [=] { return suite_json(projector_check(q, seed)); },
      [=] { return suite_json(charge_check(p, std::min(kmax, 2), seed)); },
  };
  if (rep) {
    tasks.push_back([=] { return relation_json(spin_relation_suite(*rep, g.family == GroupFamily::symmetric
                                                                               ? GroupSpec{GroupFamily::cyclic, p.N, 1, 1}
                                                                               : g)); });
    tasks.push_back([=] { return suite_json(projector_identities(*rep, dihedral, seed)); });
    for (int k = 1; k <= kmax; ++k)
      tasks.push_back([=] { return suite_json(verify_agreement(q, *rep, k, SpinOrdering::reversed, seed)); });
  }
  const auto suites = run_pool(tasks);
  bool pass = true;
  for (const auto& s : suites) pass = pass && s["pass"].get<bool>();

  json config = to_json(p);
  config["corrupt"] = o.corrupt;
  config["kmax"] = kmax;
  if (rep) config["spin"] = {{"n", rep->n}, {"weights", rep->weights}};
  emit(wrap(suites, pass, o, config), o);
  if (!pass) print_failures(suites);
  std::cerr << (pass ? "verify: all checks pass" : "verify: some checks failed") << "\n";
  return pass ? kExitPass : kExitFail;
}

// --------------------------------------------------------------- lattice

LatticeFamily lattice_family(const Options& o) {
  std::string f = o.family;
  if (f == "dihedral") f = o.m % 2 ? "dihedral-odd" : "dihedral-even";
  try {
    return lattice_family_from_string(f);
  } catch (const std::exception&) {
    throw ConfigError("--family must be cyclic, dihedral-odd or dihedral-even");
  }
}

LatticeConfig lattice_from_options(const Options& o) {
  const auto family = lattice_family(o);
  if (family == LatticeFamily::dihedral_odd && o.m % 2 == 0) throw ConfigError("dihedral-odd needs odd m");
  if (family == LatticeFamily::dihedral_even && o.m % 2 == 1) throw ConfigError("dihedral-even needs even m");
  try {
    if (o.L > 0 || o.label == "custom") {
      if (o.L <= 0) throw ConfigError("custom lattices need --L");
      Rational a = 0, b = 0;
      if (family == LatticeFamily::dihedral_odd) {
        a = rational_opt("beta2", o.beta2.empty() ? "0" : o.beta2);
        b = rational_opt("gamma2", o.gamma2.empty() ? "0" : o.gamma2);
      } else if (family == LatticeFamily::dihedral_even) {
        a = rational_opt("mu2", o.mu2.empty() ? "0" : o.mu2);
      }
      return equidistant_lattice(family, o.N, o.m, o.L, rational_opt("offset", o.offset), a, b);
    }
    LatticeLabel label = LatticeLabel::qqk;
    if (!o.label.empty()) label = lattice_label_from_string(o.label);
    else if (family == LatticeFamily::dihedral_odd) label = LatticeLabel::L2Nm;
    else if (family == LatticeFamily::dihedral_even) throw ConfigError("dihedral-even has no table row; give --L or --scan");
    return build_lattice(family, o.N, o.m, label);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

int cmd_lattice(const Options& o) {
  json suites = json::array();
  json config{{"family", o.family}, {"N", o.N}, {"m", o.m}};
  bool pass = true;
  const auto family = lattice_family(o);
  if (o.N < 1 || o.N > 64 || o.m < 1) throw ConfigError("N or m out of range");

  if (!o.scan || !o.label.empty() || o.L > 0) {
    const auto lat = lattice_from_options(o);
    json j = lattice_json_with_note(lat);
    j["suite"] = "lattice";
    const bool zero = j["residual_max"] == "0";
    const bool labeled = lat.label != LatticeLabel::custom;
    j["pass"] = zero || !labeled;
    pass = pass && j["pass"].get<bool>();
    suites.push_back(std::move(j));
  }
  if (o.scan) {
    ScanOptions so;
    so.Lmin = o.Lmin;
    so.Lmax = o.Lmax;
    if (so.Lmin < 1 || so.Lmax < so.Lmin) throw ConfigError("bad --Lmin/--Lmax");
    const auto entries = scan_equidistant(family, o.N, o.m, so);
    json s{{"suite", "scan"}, {"count", entries.size()}, {"pass", true}};
    json top = json::array();
    for (std::size_t i = 0; i < entries.size() && static_cast<int>(i) < o.top; ++i) top.push_back(to_json(entries[i]));
    s["entries"] = top;
    if (!entries.empty()) s["min_residual"] = entries.front().residual;
    config["scan"] = {{"Lmin", so.Lmin}, {"Lmax", so.Lmax}};
    suites.push_back(std::move(s));
  }
  emit(wrap(suites, pass, o, config), o);
  if (!pass) std::cerr << "lattice: nonzero residual at a labeled lattice\n";
  return pass ? kExitPass : kExitFail;
}

// -------------------------------------------------------------- spectrum

std::vector<WreathElement> exchange_generators(const LatticeConfig& lat) {
  const int N = lat.N, m = lat.m;
  std::vector<WreathElement> out;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      for (int s = 0; s < m; ++s) {
        out.push_back(twisted_exchange(N, m, i, j, s));
        if (lat.family != LatticeFamily::cyclic) out.push_back(reflected_exchange(N, m, i, j, s));
      }
    }
  if (lat.family != LatticeFamily::cyclic)
    for (int i = 0; i < N; ++i)
      for (int s = 0; s < m; ++s)
        out.push_back(WreathElement::rotation(N, m, i, 2 * s) * WreathElement::reflection(N, m, i));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int cmd_spectrum(const Options& o) {
  const auto lat = lattice_from_options(o);
  const auto rep = spin_rep(o, lat.N, lat.m);
  if (rep.dim() > 4096) throw ConfigError("n^N above the dense cap 4096");
  const auto h = build_frozen_hamiltonian(lat);

  Eigen::MatrixXcd H;
  if (o.backend == "exact" && rep.dim() <= 64) H = frozen_spin_matrix(h, rep).to_complex();
  else if (o.backend == "exact" || o.backend == "numeric") H = frozen_spin_matrix_complex(h, rep);
  else throw ConfigError("--backend must be exact or numeric");

  json s{{"suite", "spectrum"}, {"dim", rep.dim()}};
  bool pass = true;
  try {
    const auto sp = diagonalize_hermitian(H);
    s.update(to_json(sp));
    pass = sp.hermiticity_residual < 1e-12 && sp.max_eigen_residual < 1e-10;
  } catch (const std::exception& e) {
    s["error"] = e.what();
    pass = false;
  }
  s["pass"] = pass;
  s["integrability_warning"] = h.warning;

  json sym = json::array();
  double worst = 0;
  for (const auto& g : exchange_generators(lat)) {
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(rep.dim(), rep.dim());
    add_spin_image(G, 1.0, rep, g);
    const double norm = (H * G - G * H).norm();
    worst = std::max(worst, norm);
    sym.push_back({{"element", g.str()}, {"commutator_norm", norm}});
  }
  json symmetry{{"suite", "symmetry"}, {"max_commutator_norm", worst}, {"generators", sym}};
  json suites = json::array({s, lattice_json_with_note(lat), symmetry});
  if (o.x_display) suites.push_back({{"suite", "x-display"}, {"couplings", x_display(h)}});
  if (o.charges > 0) suites.push_back({{"suite", "candidate charges"}, {"charges", candidate_spin_charges(h, rep, o.charges)}});

  json config{{"family", o.family}, {"N", lat.N}, {"m", lat.m}, {"n", rep.n}, {"weights", rep.weights}, {"backend", o.backend}};
  emit(wrap(suites, pass, o, config), o);
  return pass ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------- export

int cmd_export(const Options& o) {
  json out{{"object", o.object}};
  std::smatch mt;
  if (std::regex_match(o.object, mt, std::regex("([dZYD])([1-9][0-9]*)"))) {
    const auto p = model_params(o);
    const char which = mt[1].str()[0];
    const int i = std::stoi(mt[2]) - 1;
    if (i >= p.N) throw ConfigError("site index above N");
    MixedOperator op;
    if (which == 'd') {
      if (p.family != ModelFamily::cyclic) throw ConfigError("d_i needs --family cyclic");
      op = build_dunkl(p, i);
    } else if (which == 'D') {
      if (p.family != ModelFamily::dihedral) throw ConfigError("D_i needs --family dihedral");
      op = build_dunkl(p, i);
    } else if (which == 'Z') {
      if (p.family == ModelFamily::A) op = build_dunkl(p, i);
      else if (p.family == ModelFamily::cyclic) op = build_rational_parent(p, i);
      else throw ConfigError("Z_i needs --family A or cyclic");
    } else {
      if (p.family == ModelFamily::BC) op = build_dunkl(p, i);
      else if (p.family == ModelFamily::dihedral) op = build_rational_parent(p, i);
      else throw ConfigError("Y_i needs --family BC or dihedral");
    }
    out["params"] = to_json(p);
    out["operator"] = to_json(op);
  } else if (std::regex_match(o.object, mt, std::regex("([IJ])([1-9][0-9]*)"))) {
    const auto p = model_params(o);
    const int k = std::stoi(mt[2]);
    if (k > 4) throw ConfigError("charge power above 4");
    out["params"] = to_json(p);
    out["operator"] = to_json(build_charge(p, k));
  } else if (o.object == "H") {
    const auto p = model_params(o);
    ModelParams q = p;
    if (p.family == ModelFamily::A) q.family = ModelFamily::cyclic;
    if (p.family == ModelFamily::BC) q.family = ModelFamily::dihedral;
    const auto kind = q.family == ModelFamily::cyclic ? HamiltonianKind::ham
                      : q.m % 2                      ? HamiltonianKind::odd
                                                     : HamiltonianKind::even;
    out["params"] = to_json(p);
    out["operator"] = to_json(build_hamiltonian(q, kind));
  } else if (o.object == "Lambda" || o.object == "Lambda_b") {
    const auto rep = spin_rep(o, o.N, o.m);
    out["params"] = {{"N", rep.N}, {"m", rep.m}, {"n", rep.n}, {"weights", rep.weights}};
    const auto P = build_projector(rep, o.object == "Lambda" ? ProjectorKind::Lambda : ProjectorKind::Lambda_b);
    out["terms"] = P.size();
    out["operator"] = to_json(P);
  } else if (o.object == "Hbar" || o.object == "Hbar_spin" || o.object == "qk_lattice") {
    const auto lat = lattice_from_options(o);
    out["lattice"] = lattice_json_with_note(lat);
    if (o.object == "qk_lattice") {
      json pos = json::array();
      for (const auto& q : lat.reduced_positions()) pos.push_back(to_json(q));
      out["positions"] = pos;
    } else {
      const auto h = build_frozen_hamiltonian(lat);
      if (o.object == "Hbar") {
        out["operator"] = to_json(h.frozen);
      } else {
        const auto rep = spin_rep(o, lat.N, lat.m);
        if (rep.dim() > 64) throw ConfigError("exact spin export is limited to dimension 64");
        out["matrix"] = to_json(frozen_spin_matrix(h, rep));
      }
    }
  } else {
    throw ConfigError("unknown object " + o.object);
  }
  out["version"] = DUNKLAB_VERSION;
  out["seed"] = o.seed;
  emit(out, o);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for Dunkl operators of complex reflection groups and their spin chains"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--family", o.family, "A, BC, cyclic, dihedral (models) or cyclic, dihedral-odd, dihedral-even (lattices)");
    c->add_option("--N", o.N, "number of sites");
    c->add_option("--m", o.m, "order of the cyclic factor");
    c->add_option("--n", o.n, "local spin dimension");
    c->add_option("--weights", o.weights, "comma separated Q weights of the spin basis");
    c->add_option("--seed", o.seed, "seed for random evaluation points");
    c->add_option("--output,-o", o.output, "report path (default stdout)");
  };
  auto couplings = [&](CLI::App* c) {
    c->add_option("--lambda", o.lambda, "coupling, p/q");
    c->add_option("--mu", o.mu, "boundary coupling, p/q");
    c->add_option("--rho", o.rho, "boundary coupling, p/q");
  };
  auto lattice = [&](CLI::App* c) {
    c->add_option("--label", o.label, "qqk, L2Nm, L2NmPlusM_halfshift, L2NmPlusM_integer, L2Np1m, custom");
    c->add_option("--L", o.L, "equidistant lattice with L points");
    c->add_option("--offset", o.offset, "site offset, q_k = omega_L^(k - offset)");
    c->add_option("--beta2", o.beta2);
    c->add_option("--gamma2", o.gamma2);
    c->add_option("--mu2", o.mu2);
  };

  auto* verify = app.add_subcommand("verify", "run every identity check for a model");
  common(verify);
  couplings(verify);
  verify->add_option("--corrupt", o.corrupt, "none, drels, recursion");
  verify->add_option("--kmax", o.kmax, "highest charge for the spin agreement checks (default 3 cyclic, 2 dihedral)");
  verify->add_flag("--skip-spin", o.skip_spin, "leave out the spin layer");

  auto* lat = app.add_subcommand("lattice", "residuals of the static conditions");
  common(lat);
  lattice(lat);
  lat->add_flag("--scan", o.scan, "scan equidistant candidates");
  lat->add_option("--Lmin", o.Lmin);
  lat->add_option("--Lmax", o.Lmax);
  lat->add_option("--top", o.top, "scan entries to report");

  auto* spec = app.add_subcommand("spectrum", "diagonalize a frozen spin chain");
  common(spec);
  lattice(spec);
  spec->add_option("--backend", o.backend, "exact or numeric");
  spec->add_flag("--x-display", o.x_display, "couplings in the 1/sin^2 form");
  spec->add_option("--charges", o.charges, "commutator norms of the candidate charges up to this power");

  auto* exp = app.add_subcommand("export", "dump an operator as JSON");
  common(exp);
  couplings(exp);
  lattice(exp);
  exp->add_option("--object", o.object, "d1, Z1, Y1, D1, I2, J2, H, Lambda, Lambda_b, Hbar, Hbar_spin, qk_lattice")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*verify) return cmd_verify(o);
    if (*lat) return cmd_lattice(o);
    if (*spec) return cmd_spectrum(o);
    if (*exp) return cmd_export(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitConfig;
}
