// Python bindings. Reports come back as plain dicts with the same keys as the
// CLI's JSON output.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "radproj/harness.hpp"

namespace py = pybind11;
using namespace radproj;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Rational rat(const py::object& v) {
  if (py::isinstance<py::int_>(v)) return Rational(v.cast<std::int64_t>());
  return parse_rational(py::str(v).cast<std::string>());
}

PointSet make_set(const Space& s, const std::vector<Coords>& pts) { return PointSet::from_coords(s, pts); }

std::vector<Coords> coords_of(const PointSet& e) {
  std::vector<Coords> out;
  for (PointId x : e.members()) out.push_back(e.space().unpack(x));
  return out;
}

SweepConfig config_from(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Radial projections over finite fields";
  m.attr("__version__") = RADPROJ_VERSION;

  py::register_exception<FieldError>(m, "FieldError", PyExc_ValueError);
  py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
  py::register_exception<GenerationError>(m, "GenerationError", PyExc_RuntimeError);
  py::register_exception<PreflightError>(m, "PreflightError", PyExc_ValueError);

  py::class_<Field>(m, "Field")
      .def(py::init(&Field::create), py::arg("p"), py::arg("e") = 1)
      .def_property_readonly("p", &Field::p)
      .def_property_readonly("e", &Field::e)
      .def_property_readonly("q", &Field::q)
      .def_property_readonly("modulus", [](const Field& f) { return std::vector<std::uint32_t>(f.modulus().begin(), f.modulus().end()); })
      .def("add", &Field::add)
      .def("sub", &Field::sub)
      .def("mul", &Field::mul)
      .def("neg", &Field::neg)
      .def("inv", &Field::inv)
      .def("div", &Field::div)
      .def("__repr__", [](const Field& f) { return "Field(" + f.label() + ")"; });

  py::class_<Space>(m, "Space")
      .def(py::init<Field, unsigned>(), py::arg("field"), py::arg("d"))
      .def_property_readonly("q", &Space::q)
      .def_property_readonly("d", &Space::dim)
      .def_property_readonly("num_points", &Space::num_points)
      .def_property_readonly("num_lines", &Space::num_lines)
      .def_property_readonly("qbinom", &Space::qbinom)
      .def("pack", [](const Space& s, const Coords& c) { return s.pack(c); })
      .def("unpack", &Space::unpack)
      .def("line_through", [](const Space& s, const Coords& a, const Coords& b) {
        const Line l = s.line_through(a, b);
        return py::make_tuple(l.dir.vec, l.base);
      })
      .def("line_points", [](const Space& s, const Coords& a, const Coords& b) {
        std::vector<Coords> out;
        for (PointId x : s.line_points(s.line_through(a, b))) out.push_back(s.unpack(x));
        return out;
      })
      .def("pencil_size", [](const Space& s, const Coords& y) { return s.lines_through(y).size(); });

  py::class_<PointSet>(m, "PointSet")
      .def(py::init(&make_set), py::arg("space"), py::arg("points"))
      .def("__len__", &PointSet::size)
      .def("points", &coords_of)
      .def("__eq__", [](const PointSet& a, const PointSet& b) { return a == b; })
      .def("to_json", [](const PointSet& e) { return to_py(pointset_to_json(e)); });

  m.def("projection_size", [](const PointSet& e, const Coords& y) {
    return projection_size(e, e.space().pack(y));
  });
  m.def("projection_size_oracle", [](const PointSet& e, const Coords& y) {
    return projection_size_oracle(e, e.space().pack(y));
  });
  m.def("exceptional_set", [](const PointSet& e, const py::object& threshold, bool strict) {
    return exceptional_set(e, rat(threshold), strict ? Cmp::below : Cmp::at_most);
  }, py::arg("set"), py::arg("threshold"), py::arg("strict") = false);

  m.def("random_set", [](const Space& s, std::uint64_t n, std::uint64_t seed, std::optional<std::uint32_t> cap) {
    return random_set(s, n, seed, cap);
  }, py::arg("space"), py::arg("n"), py::arg("seed"), py::arg("max_collinear") = py::none());
  m.def("subfield_subplane", &subfield_subplane, py::arg("p"));
  m.def("generate", [](const Space& s, const std::string& family, std::uint64_t seed) {
    const FamilySpec spec = FamilySpec::parse(family);
    spec.validate(s);
    return generate(s, spec, seed);
  }, py::arg("space"), py::arg("family"), py::arg("seed") = 0);

  auto rep = [](const BoundReport& r) { return to_py(to_json(r, false)); };
  m.def("line_sum_identity", [rep](const PointSet& e) { return rep(verify_line_sum_identity(e)); });
  m.def("variance_bound", [rep](const PointSet& e) { return rep(verify_variance_bound(e)); });
  m.def("incidence_sums", [rep](const PointSet& e, std::uint64_t mm) {
    py::list out;
    for (const auto& r : verify_et_inequalities(e, mm)) out.append(rep(r));
    return out;
  });
  m.def("just_cs", [rep](const PointSet& e, const py::object& c) { return rep(check_just_cs(e, rat(c))); });
  m.def("large_e", [rep](const PointSet& e, std::uint64_t mm) { return rep(check_large_e_general(e, mm)); });
  m.def("large_t", [rep](const PointSet& e, std::uint64_t mm) { return rep(check_large_t_general(e, mm)); });
  m.def("four_m_squared", [rep](const PointSet& e, const py::object& mm) {
    return rep(check_four_m_squared(e, rat(mm)));
  });
  m.def("unique_bad_point", [rep](const PointSet& e) { return rep(check_unique_bad_point(e)); });
  m.def("conjecture_check", [rep](const PointSet& e, unsigned k) { return rep(conjecture_check(e, k)); });

  m.def("verify", [](const std::string& config_text) {
    const VerifyResult r = run_verify(config_from(config_text));
    return to_py(verify_json(r, false));
  }, py::arg("config_text"), "Run a verify sweep from flat key = value config text.");
  m.def("smoke_config", [] { return to_config_text(smoke_config()); });
}
