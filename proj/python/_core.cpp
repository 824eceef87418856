#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dunklab/dunkl.hpp"
#include "dunklab/groups.hpp"
#include "dunklab/spinrep.hpp"
#include "dunklab/static.hpp"

namespace py = pybind11;
using namespace dunklab;

namespace {

ModelParams params(const std::string& family, int N, int m, const std::string& lambda, const std::string& mu,
                   const std::string& rho) {
  static const std::map<std::string, ModelFamily> families{
      {"A", ModelFamily::A}, {"BC", ModelFamily::BC}, {"cyclic", ModelFamily::cyclic}, {"dihedral", ModelFamily::dihedral}};
  auto it = families.find(family);
  if (it == families.end()) throw std::invalid_argument("unknown family " + family);
  ModelParams p;
  p.family = it->second;
  p.N = N;
  p.m = m;
  p.lambda = parse_rational(lambda);
  p.mu = parse_rational(mu);
  p.rho = parse_rational(rho);
  p.validate();
  return p;
}

Corruption corruption(const std::string& c) {
  if (c == "none") return Corruption::none;
  if (c == "drels") return Corruption::drels;
  if (c == "recursion") return Corruption::recursion;
  throw std::invalid_argument("unknown corruption " + c);
}

GroupSpec group_spec(const std::string& family, int N, int m, int p) {
  static const std::map<std::string, GroupFamily> families{{"symmetric", GroupFamily::symmetric},
                                                           {"cyclic", GroupFamily::cyclic},
                                                           {"imprimitive", GroupFamily::imprimitive},
                                                           {"wreath", GroupFamily::wreath}};
  auto it = families.find(family);
  if (it == families.end()) throw std::invalid_argument("unknown group family " + family);
  GroupSpec g{it->second, N, m, p};
  g.validate();
  return g;
}

std::string report(const SuiteReport& r) {
  auto j = to_json(r);
  j["pass"] = r.pass();
  return j.dump();
}

LatticeConfig lattice(const std::string& family, int N, int m, const std::string& label, int L, const std::string& offset,
                      const std::string& a, const std::string& b) {
  const auto f = lattice_family_from_string(family);
  if (L > 0) return equidistant_lattice(f, N, m, L, parse_rational(offset), parse_rational(a), parse_rational(b));
  if (!label.empty()) return build_lattice(f, N, m, lattice_label_from_string(label));
  return build_lattice(f, N, m, f == LatticeFamily::cyclic ? LatticeLabel::qqk : LatticeLabel::L2Nm);
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Exact Dunkl operator and spin chain checks";
  mod.attr("__version__") = DUNKLAB_VERSION;

  py::register_exception<std::domain_error>(mod, "DomainError", PyExc_ArithmeticError);

  py::class_<CycloScalar>(mod, "CycloScalar")
      .def(py::init([](const std::string& r) { return CycloScalar(parse_rational(r)); }), py::arg("value") = "0")
      .def_static("root_of_unity", &CycloScalar::root_of_unity, py::arg("n"), py::arg("k") = 1)
      .def_property_readonly("order", &CycloScalar::order)
      .def_property_readonly("coeffs",
                             [](const CycloScalar& s) {
                               std::vector<std::string> out;
                               for (const auto& c : s.coeffs()) out.push_back(to_string(c));
                               return out;
                             })
      .def("is_zero", &CycloScalar::is_zero)
      .def("conj", &CycloScalar::conj)
      .def("inverse", &CycloScalar::inverse)
      .def("pow", &CycloScalar::pow)
      .def("embedded", &CycloScalar::embedded)
      .def("to_complex", &CycloScalar::to_complex, py::arg("precision_bits") = 53)
      .def("__complex__", [](const CycloScalar& s) { return s.to_complex(); })
      .def("__add__", [](const CycloScalar& a, const CycloScalar& b) { return a + b; })
      .def("__sub__", [](const CycloScalar& a, const CycloScalar& b) { return a - b; })
      .def("__mul__", [](const CycloScalar& a, const CycloScalar& b) { return a * b; })
      .def("__truediv__", [](const CycloScalar& a, const CycloScalar& b) { return a / b; })
      .def("__neg__", [](const CycloScalar& a) { return -a; })
      .def("__eq__", [](const CycloScalar& a, const CycloScalar& b) { return a == b; })
      .def("__hash__", &CycloScalar::hash)
      .def("__repr__", [](const CycloScalar& s) { return "CycloScalar(" + s.str() + ")"; });

  mod.def(
      "relation_suite",
      [](const std::string& family, int N, int m, int p) {
        const auto r = relation_suite(group_spec(family, N, m, p));
        auto j = to_json(r);
        j["pass"] = r.pass();
        return j.dump();
      },
      py::arg("family"), py::arg("N"), py::arg("m") = 1, py::arg("p") = 1);
  mod.def(
      "group_order",
      [](const std::string& family, int N, int m, int p) {
        const auto g = group_spec(family, N, m, p);
        return std::pair<std::uint64_t, std::size_t>{g.cardinality(), enumerate_subgroup(g).size()};
      },
      py::arg("family"), py::arg("N"), py::arg("m") = 1, py::arg("p") = 1,
      "(formula order, enumerated order)");

  mod.def(
      "dunkl_operator",
      [](const std::string& family, int N, int m, const std::string& lambda, const std::string& mu,
         const std::string& rho, int i) { return to_json(build_dunkl(params(family, N, m, lambda, mu, rho), i)).dump(); },
      py::arg("family"), py::arg("N"), py::arg("m"), py::arg("lam") = "0", py::arg("mu") = "0", py::arg("rho") = "0",
      py::arg("site") = 0);

  auto suite = [&](const char* name, auto fn) {
    mod.def(
        name,
        [fn](const std::string& family, int N, int m, const std::string& lambda, const std::string& mu,
             const std::string& rho, std::uint64_t seed) { return report(fn(params(family, N, m, lambda, mu, rho), seed)); },
        py::arg("family"), py::arg("N"), py::arg("m"), py::arg("lam") = "0", py::arg("mu") = "0", py::arg("rho") = "0",
        py::arg("seed") = 1);
  };
  suite("reduction_check", [](const ModelParams& p, std::uint64_t s) { return reduction_check(p, s); });
  suite("projector_check", [](const ModelParams& p, std::uint64_t s) { return projector_check(p, s); });
  suite("hamiltonian_check", [](const ModelParams& p, std::uint64_t s) { return hamiltonian_check(p, s); });

  mod.def(
      "hecke_relations",
      [](const std::string& family, int N, int m, const std::string& lambda, const std::string& mu,
         const std::string& rho, const std::string& corrupt, std::uint64_t seed) {
        return report(check_hecke_relations(params(family, N, m, lambda, mu, rho), corruption(corrupt), seed));
      },
      py::arg("family"), py::arg("N"), py::arg("m"), py::arg("lam") = "0", py::arg("mu") = "0", py::arg("rho") = "0",
      py::arg("corrupt") = "none", py::arg("seed") = 1);
  mod.def(
      "recursion",
      [](const std::string& family, int N, int m, const std::string& lambda, const std::string& mu,
         const std::string& rho, const std::string& corrupt, std::uint64_t seed) {
        return report(check_recursion(params(family, N, m, lambda, mu, rho), corruption(corrupt), seed));
      },
      py::arg("family"), py::arg("N"), py::arg("m"), py::arg("lam") = "0", py::arg("mu") = "0", py::arg("rho") = "0",
      py::arg("corrupt") = "none", py::arg("seed") = 1);
  mod.def(
      "verify_agreement",
      [](const std::string& family, int N, int m, int n, const std::string& lambda, const std::string& mu,
         const std::string& rho, int k, std::uint64_t seed) {
        return report(verify_agreement(params(family, N, m, lambda, mu, rho), SpinRepData::make(N, m, n), k,
                                       SpinOrdering::reversed, seed));
      },
      py::arg("family"), py::arg("N"), py::arg("m"), py::arg("n") = 2, py::arg("lam") = "0", py::arg("mu") = "0",
      py::arg("rho") = "0", py::arg("k") = 2, py::arg("seed") = 1);
  mod.def(
      "projector_identities",
      [](int N, int m, int n, bool dihedral, std::uint64_t seed) {
        return report(projector_identities(SpinRepData::make(N, m, n), dihedral, seed));
      },
      py::arg("N"), py::arg("m"), py::arg("n") = 2, py::arg("dihedral") = false, py::arg("seed") = 1);

  mod.def(
      "lattice",
      [](const std::string& family, int N, int m, const std::string& label, int L, const std::string& offset,
         const std::string& a, const std::string& b) { return to_json(lattice(family, N, m, label, L, offset, a, b)).dump(); },
      py::arg("family"), py::arg("N"), py::arg("m"), py::arg("label") = "", py::arg("L") = 0, py::arg("offset") = "0",
      py::arg("a2") = "0", py::arg("b2") = "0");
  mod.def(
      "lattice_positions",
      [](const std::string& family, int N, int m, const std::string& label) {
        return lattice(family, N, m, label, 0, "0", "0", "0").reduced_positions();
      },
      py::arg("family"), py::arg("N"), py::arg("m"), py::arg("label") = "");
  mod.def(
      "scan",
      [](const std::string& family, int N, int m, int Lmin, int Lmax) {
        ScanOptions o;
        o.Lmin = Lmin;
        o.Lmax = Lmax;
        json out = json::array();
        for (const auto& e : scan_equidistant(lattice_family_from_string(family), N, m, o)) out.push_back(to_json(e));
        return out.dump();
      },
      py::arg("family"), py::arg("N"), py::arg("m"), py::arg("Lmin") = 2, py::arg("Lmax") = 40);
  mod.def(
      "frozen_chain",
      [](const std::string& family, int N, int m, int n, const std::string& label, int L, const std::string& offset,
         const std::string& a, const std::string& b) {
        const auto h = build_frozen_hamiltonian(lattice(family, N, m, label, L, offset, a, b));
        const auto rep = SpinRepData::make(N, m, n);
        const Eigen::MatrixXcd H = frozen_spin_matrix_complex(h, rep);
        std::vector<std::vector<std::complex<double>>> rows(H.rows(), std::vector<std::complex<double>>(H.cols()));
        for (int r = 0; r < H.rows(); ++r)
          for (int c = 0; c < H.cols(); ++c) rows[r][c] = H(r, c);
        return py::make_tuple(rows, h.warning);
      },
      py::arg("family"), py::arg("N"), py::arg("m"), py::arg("n") = 2, py::arg("label") = "", py::arg("L") = 0,
      py::arg("offset") = "0", py::arg("a2") = "0", py::arg("b2") = "0", "(matrix rows, integrability warning)");
  mod.def(
      "spectrum",
      [](const std::string& family, int N, int m, int n, const std::string& label) {
        const auto h = build_frozen_hamiltonian(lattice(family, N, m, label, 0, "0", "0", "0"));
        return to_json(diagonalize_hermitian(frozen_spin_matrix_complex(h, SpinRepData::make(N, m, n)))).dump();
      },
      py::arg("family"), py::arg("N"), py::arg("m"), py::arg("n") = 2, py::arg("label") = "");
}
