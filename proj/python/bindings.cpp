#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "coxtwist/battery.hpp"
#include "coxtwist/cells.hpp"
#include "coxtwist/homology.hpp"
#include "coxtwist/twisted.hpp"

namespace py = pybind11;
using namespace coxtwist;

namespace {

py::int_ big_to_py(const BigInt& v) { return py::int_(py::str(v.str())); }

py::list torsion_to_py(const std::vector<std::vector<BigInt>>& torsion) {
  py::list out;
  for (const auto& row : torsion) {
    py::list r;
    for (const auto& v : row) r.append(big_to_py(v));
    out.append(r);
  }
  return out;
}

BuildCaps make_caps(std::uint32_t element_cap, std::uint32_t root_cap) {
  BuildCaps caps;
  caps.element_cap = element_cap;
  caps.root_cap = root_cap;
  return caps;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "twisted involutions in finite Coxeter groups";

  py::register_exception<ParseError>(m, "SpecError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

  py::enum_<Side>(m, "Side").value("left", Side::left).value("right", Side::right);

  py::class_<CoxeterMatrix>(m, "CoxeterMatrix")
      .def_readonly("generators", &CoxeterMatrix::generators)
      .def_readonly("entries", &CoxeterMatrix::entries)
      .def("rank", &CoxeterMatrix::rank)
      .def("order_of", &CoxeterMatrix::order_of)
      .def("generator_index", &CoxeterMatrix::generator_index);

  py::class_<SystemSpec>(m, "SystemSpec")
      .def_readonly("matrix", &SystemSpec::matrix)
      .def_readonly("theta", &SystemSpec::theta);

  py::class_<DiagramAutomorphism>(m, "DiagramAutomorphism")
      .def_readonly("perm", &DiagramAutomorphism::perm)
      .def("is_identity", &DiagramAutomorphism::is_identity)
      .def("apply", &DiagramAutomorphism::apply);

  m.def("make_coxeter_matrix", &make_coxeter_matrix, py::arg("generators"), py::arg("entries"));
  m.def("parse_system_spec", &parse_system_spec, py::arg("text"));
  m.def("validate_automorphism", &validate_automorphism, py::arg("matrix"), py::arg("perm"));

  py::class_<GroupTable>(m, "GroupTable")
      .def("order", &GroupTable::order)
      .def("rank", &GroupTable::rank)
      .def("root_count", &GroupTable::root_count)
      .def("matrix", &GroupTable::matrix, py::return_value_policy::reference_internal)
      .def("identity", [](const GroupTable& g) { return g.identity().idx; })
      .def("longest", [](const GroupTable& g) { return g.longest().idx; })
      .def("length", [](const GroupTable& g, std::uint32_t w) { return g.length({w}); })
      .def("mult",
           [](const GroupTable& g, std::uint32_t w, int s, Side side) {
             return g.mult({w}, s, side).idx;
           },
           py::arg("w"), py::arg("s"), py::arg("side") = Side::right)
      .def("inverse", [](const GroupTable& g, std::uint32_t w) { return g.inverse({w}).idx; })
      .def("reduced_word",
           [](const GroupTable& g, std::uint32_t w) { return g.reduced_word({w}); })
      .def("descents",
           [](const GroupTable& g, std::uint32_t w, Side side) { return g.descents({w}, side); },
           py::arg("w"), py::arg("side") = Side::right)
      .def("evaluate_word",
           [](const GroupTable& g, const std::vector<int>& word) {
             return g.evaluate_word(word).idx;
           })
      .def("reduce_word",
           [](const GroupTable& g, const std::vector<int>& word) {
             auto [el, red] = g.reduce_word(word);
             return py::make_tuple(el.idx, red);
           })
      .def("bruhat_leq",
           [](const GroupTable& g, std::uint32_t v, std::uint32_t w) {
             return g.bruhat_leq({v}, {w});
           })
      .def("bruhat_poset", &GroupTable::bruhat_poset)
      .def("two_sided_weak_poset", &GroupTable::two_sided_weak_poset)
      .def("word_label", [](const GroupTable& g, std::uint32_t w) { return g.word_label({w}); });

  m.def("build_group",
        [](const CoxeterMatrix& cm, std::uint32_t element_cap, std::uint32_t root_cap) {
          return build_group(cm, make_caps(element_cap, root_cap));
        },
        py::arg("matrix"), py::arg("element_cap") = BuildCaps{}.element_cap,
        py::arg("root_cap") = BuildCaps{}.root_cap);

  m.def("is_twisted_involution",
        [](const GroupTable& g, const DiagramAutomorphism& theta, std::uint32_t w) {
          return is_twisted_involution(g, theta, {w});
        });
  m.def("underline_act",
        [](const GroupTable& g, const DiagramAutomorphism& theta, std::uint32_t w, int s,
           bool strict) { return underline_act(g, theta, {w}, s, strict).idx; },
        py::arg("group"), py::arg("theta"), py::arg("w"), py::arg("s"),
        py::arg("strict") = true);
  m.def("brute_force_twisted",
        [](const GroupTable& g, const DiagramAutomorphism& theta) {
          std::vector<std::uint32_t> out;
          for (auto e : brute_force_twisted(g, theta)) out.push_back(e.idx);
          return out;
        });

  py::class_<TwistedTable>(m, "TwistedTable")
      .def("size", &TwistedTable::size)
      .def("group", &TwistedTable::group, py::return_value_policy::reference_internal)
      .def("element", [](const TwistedTable& t, std::uint32_t m) { return t.element(m).idx; })
      .def("member_of",
           [](const TwistedTable& t, std::uint32_t idx) { return t.member_of({idx}); })
      .def("rho", &TwistedTable::rho)
      .def("underline_word",
           [](const TwistedTable& t, std::uint32_t m) { return t.underline_word(m); })
      .def("act", &TwistedTable::act)
      .def("evaluate_underline",
           [](const TwistedTable& t, const std::vector<int>& word) {
             return t.evaluate_underline(word);
           })
      .def("twisted_descent", &TwistedTable::twisted_descent)
      .def("twisted_descents",
           [](const TwistedTable& t, std::uint32_t m) {
             return genset_to_list(t.twisted_descent_set(m));
           })
      .def("top", &TwistedTable::top);

  m.def("enumerate_twisted", &enumerate_twisted, py::arg("group"), py::arg("theta"),
        py::keep_alive<0, 1>());

  py::class_<EulerianReport>(m, "EulerianReport")
      .def("ok", &EulerianReport::ok)
      .def_readonly("u", &EulerianReport::u)
      .def_readonly("v", &EulerianReport::v)
      .def_readonly("detail", &EulerianReport::detail);

  py::class_<SimplicialComplexData>(m, "SimplicialComplex")
      .def_readonly("vertex_count", &SimplicialComplexData::vertex_count)
      .def_readonly("faces", &SimplicialComplexData::faces)
      .def("dim", &SimplicialComplexData::dim)
      .def("facets", &SimplicialComplexData::facets);

  py::class_<FinitePoset>(m, "FinitePoset")
      .def("size", &FinitePoset::size)
      .def("leq", &FinitePoset::leq)
      .def("less", &FinitePoset::less)
      .def("covers", &FinitePoset::covers)
      .def("has_rank", &FinitePoset::has_rank)
      .def("rank_of", &FinitePoset::rank_of)
      .def("label", &FinitePoset::label)
      .def("minimal_elements", &FinitePoset::minimal_elements)
      .def("maximal_elements", &FinitePoset::maximal_elements)
      .def("interval", &FinitePoset::interval)
      .def("open_interval", &FinitePoset::open_interval)
      .def("mobius", &FinitePoset::mobius)
      .def("eulerian_report", &FinitePoset::eulerian_report)
      .def("order_complex", &FinitePoset::order_complex)
      .def("linear_extension", &FinitePoset::linear_extension, py::arg("seed") = kDefaultSeed)
      .def("is_linear_extension", &FinitePoset::is_linear_extension)
      .def("to_dot", &FinitePoset::to_dot)
      .def("to_text", &FinitePoset::to_text);

  py::class_<LabelledEdge>(m, "LabelledEdge")
      .def_readonly("u", &LabelledEdge::u)
      .def_readonly("v", &LabelledEdge::v)
      .def_readonly("label", &LabelledEdge::label);

  py::class_<GThetaGraph>(m, "ActionGraph")
      .def_readonly("vertices", &GThetaGraph::vertices)
      .def_readonly("edges", &GThetaGraph::edges);

  m.def("g_theta_graph", &g_theta_graph, py::arg("table"));
  m.def("bruhat_poset_twisted", &bruhat_poset_twisted, py::arg("table"));
  m.def("weak_poset_twisted", &weak_poset_twisted, py::arg("table"));

  py::class_<Polynomial>(m, "Polynomial")
      .def_readonly("coeff", &Polynomial::coeff)
      .def("degree", &Polynomial::degree)
      .def("at", &Polynomial::at)
      .def("eval", &Polynomial::eval)
      .def("__str__", &Polynomial::to_string)
      .def("__eq__", [](const Polynomial& a, const Polynomial& b) { return a == b; });

  py::class_<Cell>(m, "Cell")
      .def_property_readonly("labels", [](const Cell& c) { return genset_to_list(c.J); })
      .def_readonly("min_elem", &Cell::min_elem)
      .def_readonly("vertices", &Cell::vertices)
      .def_readonly("edges", &Cell::edges)
      .def_readonly("dim", &Cell::dim);

  py::class_<BooleanCheck>(m, "BooleanCheck")
      .def_readonly("ok", &BooleanCheck::ok)
      .def_readonly("detail", &BooleanCheck::detail);

  py::class_<ThinCheck>(m, "ThinCheck")
      .def_readonly("ok", &ThinCheck::ok)
      .def_readonly("detail", &ThinCheck::detail);

  py::class_<ShellingReport>(m, "ShellingReport")
      .def_readonly("ok", &ShellingReport::ok)
      .def_readonly("order_is_weak_extension", &ShellingReport::order_is_weak_extension)
      .def_readonly("restriction_dims", &ShellingReport::restriction_dims)
      .def_property_readonly("violation", [](const ShellingReport& r) -> py::object {
        if (!r.violation) return py::none();
        return py::make_tuple(r.violation->step, r.violation->cell, r.violation->what);
      });

  py::class_<FaceComplex>(m, "FaceComplex")
      .def("gen_count", &FaceComplex::gen_count)
      .def("cells", &FaceComplex::cells, py::return_value_policy::reference_internal)
      .def("cell_index",
           [](const FaceComplex& fc, const std::vector<int>& labels, std::uint32_t min_elem) {
             GenSet J = 0;
             for (int s : labels) J |= GenSet{1} << s;
             return fc.cell_index(J, min_elem);
           })
      .def("poset", &FaceComplex::poset, py::return_value_policy::reference_internal)
      .def("bottom", &FaceComplex::bottom)
      .def("facet_cell_by_member", &FaceComplex::facet_cell_by_member,
           py::return_value_policy::reference_internal)
      .def("min_of",
           [](const FaceComplex& fc, std::uint32_t member, const std::vector<int>& labels) {
             GenSet J = 0;
             for (int s : labels) J |= GenSet{1} << s;
             return fc.min_of(member, J);
           })
      .def("weak_poset", &FaceComplex::weak_poset, py::return_value_policy::reference_internal)
      .def("check_boolean_intervals", &FaceComplex::check_boolean_intervals)
      .def("check_thin", &FaceComplex::check_thin)
      .def("verify_shelling", &FaceComplex::verify_shelling, py::arg("facet_order"))
      .def("f_polynomial", &FaceComplex::f_polynomial)
      .def("h_polynomial", &FaceComplex::h_polynomial);

  m.def("build_face_poset", &build_face_poset, py::arg("table"), py::arg("graph"),
        py::keep_alive<0, 1>());
  m.def("descent_polynomial", &descent_polynomial, py::arg("table"));

  py::class_<HIdentityReport>(m, "HIdentityReport")
      .def_readonly("h_matches_descent", &HIdentityReport::h_matches_descent)
      .def_readonly("shelling_matches", &HIdentityReport::shelling_matches)
      .def_readonly("palindromic", &HIdentityReport::palindromic)
      .def_readonly("euler_ok", &HIdentityReport::euler_ok)
      .def_readonly("f", &HIdentityReport::f)
      .def_readonly("h", &HIdentityReport::h)
      .def_readonly("des", &HIdentityReport::des)
      .def("ok", &HIdentityReport::ok)
      .def("summary", &HIdentityReport::summary);

  m.def("check_h_identities", &check_h_identities, py::arg("complex"), py::arg("table"),
        py::arg("seed") = kDefaultSeed);

  py::class_<HomologyProfile>(m, "HomologyProfile")
      .def_readonly("betti", &HomologyProfile::betti)
      .def_property_readonly("torsion",
                             [](const HomologyProfile& p) { return torsion_to_py(p.torsion); })
      .def("trivial", &HomologyProfile::trivial)
      .def("is_sphere", &HomologyProfile::is_sphere)
      .def("__str__", &HomologyProfile::to_text);

  py::class_<SphereCheck>(m, "SphereCheck")
      .def_readonly("ok", &SphereCheck::ok)
      .def_readonly("vacuous", &SphereCheck::vacuous)
      .def_readonly("expected_dim", &SphereCheck::expected_dim)
      .def_readonly("profile", &SphereCheck::profile);

  m.def("reduced_homology", &reduced_homology, py::arg("complex"));
  m.def("verify_sphere_interval", &verify_sphere_interval, py::arg("poset"), py::arg("u"),
        py::arg("v"));
  m.def("smith_normal_form", [](const std::vector<std::vector<long long>>& rows) {
    IntMatrix mat = IntMatrix::zero(static_cast<int>(rows.size()),
                                    rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (int i = 0; i < mat.rows; ++i) {
      if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != mat.cols)
        throw std::invalid_argument("ragged matrix");
      for (int j = 0; j < mat.cols; ++j)
        mat.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    py::list out;
    for (const auto& d : smith_normal_form(std::move(mat)).factors) out.append(big_to_py(d));
    return out;
  });

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("instance", &CheckResult::instance)
      .def_readonly("check", &CheckResult::check)
      .def_readonly("ok", &CheckResult::ok)
      .def_readonly("detail", &CheckResult::detail)
      .def("__repr__", [](const CheckResult& r) {
        return (r.ok ? std::string("ok ") : std::string("FAIL ")) + r.instance + " " + r.check;
      });

  m.def("builtin_catalog", [] {
    py::list out;
    for (const auto& e : builtin_catalog()) out.append(py::make_tuple(e.name, e.json));
    return out;
  });
  m.def("run_battery",
        [](bool full, std::uint64_t seed, int samples) {
          BatterySettings s;
          s.full = full;
          s.seed = seed;
          s.shelling_samples = samples;
          return run_battery(s);
        },
        py::arg("full") = false, py::arg("seed") = kDefaultSeed, py::arg("samples") = 0);
  m.def("run_battery_on",
        [](const std::string& name, const std::string& json, bool full, std::uint64_t seed,
           int samples) {
          BatterySettings s;
          s.full = full;
          s.seed = seed;
          s.shelling_samples = samples;
          return run_battery_on(name, json, s);
        },
        py::arg("name"), py::arg("json"), py::arg("full") = false,
        py::arg("seed") = kDefaultSeed, py::arg("samples") = 0);
}
