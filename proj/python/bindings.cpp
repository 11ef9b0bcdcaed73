// Python module `dynent._core`: closed-form model quantities, concurrence,
// thermal and spin-gas steady states, and config-driven runs.
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dynent/config.hpp"
#include "dynent/errors.hpp"
#include "dynent/lindblad.hpp"
#include "dynent/model.hpp"
#include "dynent/quantum.hpp"
#include "dynent/run.hpp"
#include "dynent/spin_gas.hpp"

namespace py = pybind11;
using namespace dynent;

namespace {

Mat4 density(const Mat4& m) { return DensityMatrix::from_matrix(m).matrix(); }

py::dict run_result(const RunResult& r) {
  py::dict out;
  out["files"] = r.files;
  out["max_concurrence"] = r.max_concurrence;
  out["periods"] = r.periods;
  out["residual"] = r.residual;
  out["wall_time_s"] = r.wall_time_s;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entanglement dynamics of a two-spin molecule coupled to thermal baths.";
  py::register_exception<Error>(m, "Error");

  m.def("version", [] { return std::string(version()); });

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](double B0, double B1, double sigma_field, double J0) {
             ModelParams p{B0, B1, sigma_field, J0};
             p.validate();
             return p;
           }),
           py::arg("B0") = 1.3, py::arg("B1") = 2.4, py::arg("sigma_field") = 120.0, py::arg("J0") = 1.0e4)
      .def_readonly("B0", &ModelParams::B0)
      .def_readonly("B1", &ModelParams::B1)
      .def_readonly("sigma_field", &ModelParams::sigma_field)
      .def_readonly("J0", &ModelParams::J0);

  m.def(
      "point_at_distance",
      [](double d, const ModelParams& p) {
        const HamiltonianPoint h = point_at_distance(d, p);
        return py::make_tuple(h.J, h.B);
      },
      py::arg("d"), py::arg("params") = ModelParams{}, "(J, B) at spin distance d.");

  m.def(
      "hamiltonian", [](double J, double B) { return hamiltonian({J, B}); }, py::arg("J"), py::arg("B"));

  m.def(
      "spectrum",
      [](double J, double B) {
        const Spectrum s = spectrum({J, B});
        Mat4 states;
        for (int k = 0; k < 4; ++k) states.col(k) = s.states[k].vector();
        py::dict out;
        out["energies"] = std::vector<double>(s.eps.begin(), s.eps.end());
        out["states"] = states;
        out["eta"] = s.eta;
        out["E"] = s.E;
        return out;
      },
      py::arg("J"), py::arg("B"), "Ascending energies and eigenvectors as columns.");

  m.def(
      "ground_state_concurrence", [](double J, double B) { return ground_state_concurrence({J, B}); },
      py::arg("J"), py::arg("B"));

  m.def(
      "concurrence", [](const Mat4& rho) { return wootters_concurrence(DensityMatrix::from_matrix(rho)); },
      py::arg("rho"), "Wootters concurrence of a two-qubit density matrix.");

  m.def(
      "trace_distance", [](const Mat4& a, const Mat4& b) { return trace_distance(density(a), density(b)); },
      py::arg("a"), py::arg("b"));

  m.def(
      "thermal_state", [](double J, double B, double beta) { return thermal_state({J, B}, beta).matrix(); },
      py::arg("J"), py::arg("B"), py::arg("beta"));

  m.def(
      "thermal_concurrence", [](double J, double B, double beta) { return thermal_concurrence({J, B}, beta); },
      py::arg("J"), py::arg("B"), py::arg("beta"));

  m.def(
      "rate", [](double omega, double kappa, double beta) { return rate_gamma(omega, {kappa, beta}); },
      py::arg("omega"), py::arg("kappa"), py::arg("beta"), "Bosonic transition rate at frequency omega.");

  m.def(
      "spin_gas_steady_state",
      [](double J, double B, double gamma, double s) {
        return steady_state_closed_form({J, B}, {gamma, s}).rho.matrix();
      },
      py::arg("J"), py::arg("B"), py::arg("gamma"), py::arg("s"));

  m.def(
      "critical_s", [](double J, double B, double gamma) { return critical_s({J, B}, gamma); }, py::arg("J"),
      py::arg("B"), py::arg("gamma"));

  m.def(
      "canonical_config",
      [](const std::string& path) { return to_config_text(resolve_config(ConfigDocument::read_file(path))); },
      py::arg("path"), "Validated config file rewritten with every key resolved.");

  m.def(
      "run_config",
      [](const std::string& path, const std::string& out_dir) {
        const RunConfig c = resolve_config(ConfigDocument::read_file(path));
        RunResult r;
        {
          py::gil_scoped_release release;
          r = run(c, {out_dir});
        }
        return run_result(r);
      },
      py::arg("path"), py::arg("out_dir") = ".", "Runs a single-run/cycle/scan/brf config and writes its artifacts.");
}
