#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dvr/duval.hpp"
#include "dvr/parse.hpp"
#include "job.hpp"

namespace py = pybind11;
using namespace dvr;

namespace {

RingPtr ring_for(const std::string& ambient, const std::string& field) {
  return AmbientSpace::make(parse_ambient_kind(ambient), parse_field_spec(field)).ring;
}

py::dict germ_dict(const SurfaceGermVerdict& v, int milnor) {
  py::dict d;
  d["name"] = v.name();
  d["index"] = v.index;
  d["du_val"] = v.family != AdeFamily::NotDuVal;
  d["milnor_number"] = milnor;
  d["blowups"] = v.blowups;
  if (!v.reason.empty()) d["reason"] = v.reason;
  return d;
}

}  // namespace

PYBIND11_MODULE(dvrmodels, m) {
  m.doc() = "Models of Del Pezzo fibrations over a discrete valuation ring";
  m.attr("REPORT_VERSION") = kReportVersion;

  // Translators run newest first, so the most derived class is registered last.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<Unresolved>(m, "Unresolved", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def(
      "canonical",
      [](const std::string& eq, const std::string& ambient, const std::string& field) {
        return parse_poly(eq, ring_for(ambient, field)).to_string();
      },
      py::arg("equation"), py::arg("ambient") = "P3", py::arg("field") = "q",
      "Canonical printed form of an equation.");

  m.def(
      "run_job",
      [](const std::string& eq, const std::string& mode, const std::string& ambient, const std::string& field,
         uint64_t seed, int max_steps, int truncation, bool verify, const std::string& point, int count, int box) {
        JobSpec s;
        s.equation = eq;
        s.mode = mode;
        s.ambient = ambient;
        s.field = field;
        s.seed = seed;
        s.cap = max_steps;
        s.truncation = truncation;
        s.verify = verify;
        s.point = point;
        s.count = count;
        s.box = box;
        JobResult r;
        {
          py::gil_scoped_release release;
          r = run_job(s);
        }
        return py::make_tuple(report_text(r.report), r.exit_code);
      },
      py::arg("equation"), py::arg("mode") = "cubic", py::arg("ambient") = "P3", py::arg("field") = "q",
      py::arg("seed") = 1, py::arg("max_steps") = 25, py::arg("truncation") = 12, py::arg("verify") = false,
      py::arg("point") = "", py::arg("count") = 100, py::arg("box") = 10,
      "Run a job; returns (JSON report, exit code) exactly as the command-line tool does.");

  m.def(
      "classify_surface_germ",
      [](const std::string& eq, const std::string& field) {
        RingPtr r = Ring::make(parse_field_spec(field), {"x", "y"});
        Poly f = parse_poly(eq, r);
        SurfaceGermVerdict v = classify_surface_germ(f);
        int mu = v.family == AdeFamily::NotDuVal ? -1 : milnor_number(f);
        return germ_dict(v, mu);
      },
      py::arg("equation"), py::arg("field") = "q",
      "Du Val type of a surface germ at the origin in variables x, y, t.");

  m.def(
      "classify_threefold_germ",
      [](const std::string& eq, uint64_t seed, const std::string& field) {
        RingPtr r = Ring::make(parse_field_spec(field), {"x", "y", "z"});
        CdvVerdict v = classify_threefold_germ(parse_poly(eq, r), seed);
        return v.name();
      },
      py::arg("equation"), py::arg("seed") = 1, py::arg("field") = "q",
      "cDV type of a threefold germ at the origin in variables x, y, z, t.");

  m.def(
      "axial_multiplicity",
      [](const std::string& eq, int truncation) {
        int k = axial_multiplicity(parse_poly(eq, ring_for("WP2111", "q")), truncation);
        return k == kAxialInfinite ? py::object(py::none()) : py::object(py::int_(k));
      },
      py::arg("equation"), py::arg("truncation") = 12, "k with t^k u^2 in F; None when absent.");
}
