#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "utm/cli.hpp"
#include "utm/contour.hpp"
#include "utm/error.hpp"
#include "utm/estimate_auditor.hpp"
#include "utm/global_relation.hpp"
#include "utm/linear_evaluator.hpp"
#include "utm/nonlinear_solver.hpp"
#include "utm/problem.hpp"
#include "utm/reference_fd.hpp"

namespace py = pybind11;
using namespace utm;

namespace {

py::array_t<cd> field_values(const SolutionField& f) {
  py::array_t<cd> a({f.nt(), f.nx()});
  std::copy(f.values.begin(), f.values.end(), a.mutable_data());
  return a;
}

py::dict audit_dict(const AuditReport& r) {
  py::dict d;
  d["inequality"] = r.inequality_id;
  d["parameters"] = r.parameters;
  d["samples"] = r.samples;
  d["value"] = r.value;
  d["worst_location"] = r.worst_location;
  d["stability_delta"] = r.stability_delta;
  d["growth_exponent"] = r.growth_exponent;
  d["growth_flagged"] = r.growth_flagged;
  d["bounded"] = r.bounded;
  d["seed"] = r.seed;
  d["note"] = r.note;
  return d;
}

AuditOptions options(int samples, std::uint64_t seed, double radius, bool sweep) {
  AuditOptions o;
  o.samples = samples;
  o.seed = seed;
  o.radius = radius;
  o.sweep = sweep;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Half-line dispersive IBVP solver (unified transform) with a finite-difference reference and estimate audits";

  auto base = py::register_exception<Error>(m, "UTMError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<AccuracyError>(m, "AccuracyError", base.ptr());

  py::class_<DataHandle>(m, "DataHandle")
      .def(py::init<>())
      .def_static("builtin", &DataHandle::builtin, py::arg("name"), py::arg("params") = std::map<std::string, double>{})
      .def_static("sampled", &DataHandle::sampled, py::arg("x"), py::arg("v"))
      .def_static("parse", &parse_handle, py::arg("text"))
      .def_static("catalog", &DataHandle::catalog)
      .def("__call__", py::overload_cast<double>(&DataHandle::operator(), py::const_))
      .def("derivative", &DataHandle::derivative, py::arg("order"), py::arg("x"))
      .def("is_zero", &DataHandle::is_zero)
      .def("describe", &DataHandle::describe)
      .def("__repr__", &DataHandle::describe);

  py::class_<ForcingHandle>(m, "ForcingHandle")
      .def(py::init<>())
      .def_static("separable", &ForcingHandle::separable, py::arg("space"), py::arg("time"))
      .def_static("sampled", &ForcingHandle::sampled, py::arg("x"), py::arg("t"), py::arg("values"))
      .def("__call__", &ForcingHandle::operator());

  py::class_<ProblemSpec>(m, "ProblemSpec")
      .def(py::init<>())
      .def_readwrite("m", &ProblemSpec::m)
      .def_readwrite("T", &ProblemSpec::T)
      .def_readwrite("s", &ProblemSpec::s)
      .def_readwrite("u0", &ProblemSpec::u0)
      .def_readwrite("g", &ProblemSpec::g)
      .def_readwrite("f", &ProblemSpec::f)
      .def_readwrite("nonlinear", &ProblemSpec::nonlinear);

  py::class_<ValidatedSpec>(m, "ValidatedSpec")
      .def_readonly("spec", &ValidatedSpec::spec)
      .def_readonly("j", &ValidatedSpec::j)
      .def_readonly("warnings", &ValidatedSpec::warnings);
  m.def("validated", &validated, py::arg("spec"));

  py::class_<QuadratureConfig>(m, "QuadratureConfig")
      .def(py::init<>())
      .def_readwrite("truncation_radius", &QuadratureConfig::truncation_radius)
      .def_readwrite("panels", &QuadratureConfig::panels)
      .def_readwrite("rel_tol", &QuadratureConfig::rel_tol)
      .def_readwrite("time_subpanels", &QuadratureConfig::time_subpanels)
      .def_readwrite("contour_radius", &QuadratureConfig::contour_radius)
      .def_readwrite("contour_panels", &QuadratureConfig::contour_panels)
      .def_readwrite("gauss_order", &QuadratureConfig::gauss_order)
      .def_readwrite("pole_terms", &QuadratureConfig::pole_terms)
      .def_readwrite("model_shift", &QuadratureConfig::model_shift)
      .def_readwrite("model_terms", &QuadratureConfig::model_terms)
      .def("validate", &QuadratureConfig::validate);

  py::class_<FDConfig>(m, "FDConfig")
      .def(py::init<>())
      .def_readwrite("L", &FDConfig::L)
      .def_readwrite("Nx", &FDConfig::Nx)
      .def_readwrite("Nt", &FDConfig::Nt)
      .def_readwrite("theta", &FDConfig::theta);

  py::class_<Grid>(m, "Grid")
      .def(py::init<>())
      .def(py::init([](std::vector<double> x, std::vector<double> t) { return Grid{std::move(x), std::move(t)}; }),
           py::arg("x"), py::arg("t"))
      .def_static("uniform", &Grid::uniform, py::arg("x0"), py::arg("x1"), py::arg("nx"), py::arg("t0"), py::arg("t1"),
                  py::arg("nt"))
      .def_readwrite("x", &Grid::x)
      .def_readwrite("t", &Grid::t);

  py::class_<SolutionField>(m, "SolutionField")
      .def_readonly("x", &SolutionField::x)
      .def_readonly("t", &SolutionField::t)
      .def_property_readonly("values", &field_values, "complex array of shape (nt, nx)")
      .def_property_readonly("provenance", [](const SolutionField& f) { return to_string(f.provenance); })
      .def("max_abs", &SolutionField::max_abs)
      .def("max_imag", &SolutionField::max_imag);
  m.def("l2_norm", &l2_norm);
  m.def("relative_l2", &relative_l2);

  m.def("rotation_numbers", &rotation_numbers, py::arg("m"), py::arg("p"));
  m.def(
      "solve_constants",
      [](int mm) {
        auto c = solve_constants(mm);
        py::dict d;
        d["C"] = c.C;
        d["Cprime"] = c.Cprime;
        d["condition_numbers"] = c.condition_numbers;
        d["residual"] = residual_check(c, default_samples(mm));
        return d;
      },
      py::arg("m"));

  m.def(
      "evaluate_linear",
      [](const ProblemSpec& s, const Grid& g, const QuadratureConfig& q) {
        return evaluate_linear(validated(s), solve_constants(s.m), g, q);
      },
      py::arg("spec"), py::arg("grid"), py::arg("quad") = QuadratureConfig{});
  m.def(
      "picard_solve",
      [](const ProblemSpec& s, const Grid& g, const QuadratureConfig& q, int max_iter, double tol) {
        auto r = picard_solve(validated(s), solve_constants(s.m), g, q, max_iter, tol, false);
        py::dict st;
        st["diff_norms"] = r.state.diff_norms;
        st["contraction_ratios"] = r.state.contraction_ratios;
        st["converged"] = r.state.converged;
        st["warnings"] = r.state.warnings;
        return py::make_tuple(r.field, st);
      },
      py::arg("spec"), py::arg("grid"), py::arg("quad") = QuadratureConfig{}, py::arg("max_iter") = 25,
      py::arg("tol") = 1e-8);
  m.def(
      "solve_fd", [](const ProblemSpec& s, const FDConfig& fd, const Grid& g) { return solve_fd(validated(s), fd, g); },
      py::arg("spec"), py::arg("fd"), py::arg("grid"));
  m.def("wholeline_oracle", &wholeline_oracle, py::arg("u0"), py::arg("m"), py::arg("grid"),
        py::arg("quad") = QuadratureConfig{});
  m.def("pde_residual", &pde_residual, py::arg("field"), py::arg("m"));

  m.def("beta", &beta, py::arg("s"), py::arg("m"));
  m.def(
      "parameter_window",
      [](double s, int mm) {
        auto w = parameter_window(s, mm);
        py::dict d;
        d["s"] = w.s;
        d["beta"] = w.beta;
        d["b"] = w.b;
        d["b1"] = w.b1;
        d["alpha"] = w.alpha;
        d["alpha1"] = w.alpha1;
        return d;
      },
      py::arg("s"), py::arg("m"));

  m.def("dm", &dm, py::arg("m"), py::arg("xi"), py::arg("xi1"));
  m.def(
      "audit_dm_bound",
      [](int mm, const std::string& weight, int samples, std::uint64_t seed) {
        if (weight != "xi" && weight != "xi1") throw ConfigError("weight must be 'xi' or 'xi1'");
        return audit_dict(audit_dm_bound(mm, weight == "xi" ? DmWeight::xi : DmWeight::xi1,
                                         options(samples, seed, 1.0, false)));
      },
      py::arg("m"), py::arg("weight") = "xi", py::arg("samples") = 2000, py::arg("seed") = 20240601);
  m.def("calc_ratio", &calc_ratio, py::arg("which"), py::arg("l"), py::arg("l2"), py::arg("a"), py::arg("c"));
  m.def(
      "audit_calc_inequality",
      [](int which, int samples, std::uint64_t seed) {
        return audit_dict(audit_calc_inequality(which, options(samples, seed, 1.0, false)));
      },
      py::arg("which"), py::arg("samples") = 2000, py::arg("seed") = 20240601);
  m.def(
      "audit_theta4",
      [](int mm, double b, double b1, double alpha1, int samples, std::uint64_t seed) {
        return audit_dict(audit_theta4({mm, b, b1, alpha1}, options(samples, seed, 1.0, false)));
      },
      py::arg("m") = 3, py::arg("b") = 0.45, py::arg("b1") = 0.45, py::arg("alpha1") = 0.55, py::arg("samples") = 2000,
      py::arg("seed") = 20240601);
  m.def(
      "audit_microlocal_theta",
      [](int which, int mm, double b, double b1, double alpha1, int samples, std::uint64_t seed) {
        return audit_dict(audit_microlocal_theta(which, {mm, b, b1, alpha1}, options(samples, seed, 1.0, true)));
      },
      py::arg("which"), py::arg("m") = 3, py::arg("b") = 0.45, py::arg("b1") = 0.45, py::arg("alpha1") = 0.55,
      py::arg("samples") = 2000, py::arg("seed") = 20240601);
  m.def(
      "audit_G",
      [](int which, double s, double b, int mm, int l, std::vector<double> grid) {
        return audit_dict(audit_G(which, s, b, mm, l, grid));
      },
      py::arg("which"), py::arg("s"), py::arg("b"), py::arg("m"), py::arg("l"), py::arg("tau_grid"));
  m.def("log_tau_grid", &log_tau_grid, py::arg("tau_max"), py::arg("n"));
  m.def("discrete_bourgain_norm", &discrete_bourgain_norm, py::arg("field"), py::arg("m"), py::arg("s"), py::arg("b"),
        py::arg("alpha"), py::arg("y_norm") = false);

  m.def(
      "parse_config", [](const std::string& text) { return emit_config(parse_config(text)); }, py::arg("text"),
      "Validates a configuration and returns its canonical text.");
  m.def(
      "run_config",
      [](const std::string& text) {
        std::ostringstream err;
        const int code = run(parse_config(text), err);
        return py::make_tuple(code, err.str());
      },
      py::arg("text"), "Runs a configuration; returns (exit_code, error_text).");
  m.def("read_field_csv", &read_field_csv, py::arg("path"));
}
