#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sarg/argzeros.hpp"
#include "sarg/audit.hpp"
#include "sarg/characters.hpp"
#include "sarg/error.hpp"
#include "sarg/explicit_formula.hpp"
#include "sarg/lfunc.hpp"

namespace py = pybind11;
using namespace sarg;

namespace {

py::dict report_dict(const ResidualReport& r) {
  py::dict d;
  d["check"] = r.check;
  d["character"] = r.character;
  d["inputs"] = r.inputs;
  d["value"] = r.value;
  d["residual"] = r.residual;
  d["tail_estimate"] = r.tail_estimate;
  d["threshold"] = r.threshold;
  d["pass"] = r.pass;
  d["margins"] = r.margins;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = SARG_VERSION;

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<PrecisionError>(m, "PrecisionError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<CertificationError>(m, "CertificationError", base.ptr());

  py::class_<DirichletCharacter>(m, "Character")
      .def_property_readonly("modulus", &DirichletCharacter::modulus)
      .def_property_readonly("label", &DirichletCharacter::label)
      .def_property_readonly("conductor", &DirichletCharacter::conductor)
      .def_property_readonly("parity", &DirichletCharacter::parity)
      .def_property_readonly("primitive", &DirichletCharacter::is_primitive)
      .def_property_readonly("real", &DirichletCharacter::is_real)
      .def("conj", &DirichletCharacter::conj)
      .def("__call__", [](const DirichletCharacter& c, std::int64_t n) { return c(n); })
      .def("__repr__", [](const DirichletCharacter& c) { return "<Character " + c.label() + ">"; });

  py::class_<ZeroList>(m, "ZeroList")
      .def_readonly("modulus", &ZeroList::modulus)
      .def_readonly("label", &ZeroList::label)
      .def_readonly("height", &ZeroList::height)
      .def_readonly("ordinates", &ZeroList::ordinates)
      .def_property_readonly("certified", &ZeroList::certified);

  m.def("characters", &characters, py::arg("q"));
  m.def("primitive_characters", &primitive_characters, py::arg("q"));
  m.def("parse_character", [](const std::string& label) { return parse_character_label(label); }, py::arg("label"));

  m.def("l_value", [](const DirichletCharacter& chi, double sigma, double t) { return l_value({sigma, t}, chi); },
        py::arg("chi"), py::arg("sigma"), py::arg("t"));
  m.def("hardy_z", &hardy_z, py::arg("t"), py::arg("chi"));
  m.def("s_value", [](double t, const DirichletCharacter& chi) { return s_value(t, chi).s_value; }, py::arg("t"),
        py::arg("chi"));

  m.def("count_zeros", &count_zeros, py::arg("chi"), py::arg("t1"), py::arg("t2"));
  m.def("find_zeros", &find_zeros, py::arg("chi"), py::arg("height"));

  m.def("theorem_constant", &theorem_constant);
  m.def("envelope", &envelope, py::arg("q"), py::arg("t"), py::arg("constant") = kRoundedConstant);
  m.def(
      "m_decomposition",
      [](double t, const DirichletCharacter& chi, double x) {
        const auto d = m_decomposition(t, chi, x);
        py::dict out;
        out["m1"] = d.m1;
        out["m2"] = d.m2;
        out["m3"] = d.m3;
        out["s_from_parts"] = d.s_from_parts;
        out["s_direct"] = d.s_direct;
        return out;
      },
      py::arg("t"), py::arg("chi"), py::arg("x"));

  m.def(
      "verify_lemma2",
      [](const DirichletCharacter& chi, double sigma, double t, double x, double height, double window) {
        return report_dict(verify_lemma2({sigma, t}, chi, x, zero_set(chi, height), window));
      },
      py::arg("chi"), py::arg("sigma"), py::arg("t"), py::arg("x"), py::arg("height") = 60.0,
      py::arg("window") = kDefaultZeroWindow);
  m.def(
      "verify_eq3",
      [](const DirichletCharacter& chi, double t, double x, double height, double window) {
        return report_dict(verify_eq3(t, chi, x, zero_set(chi, height), window));
      },
      py::arg("chi"), py::arg("t"), py::arg("x"), py::arg("height") = 60.0, py::arg("window") = kDefaultZeroWindow);
}
