#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "holo/control.hpp"
#include "holo/device.hpp"
#include "holo/hamiltonians.hpp"
#include "holo/propagation.hpp"
#include "holo/qec.hpp"
#include "holo/report.hpp"
#include "holo/sector.hpp"
#include "holo/sweeps.hpp"

namespace py = pybind11;
using namespace holo;

namespace {

CodeKind code_kind(const std::string& s) {
  if (s == "css") return CodeKind::ToricCSS;
  if (s == "xzzx") return CodeKind::ToricXZZX;
  if (s == "planar") return CodeKind::PlanarXZZX;
  throw ConfigError("code kind must be css, xzzx or planar, got '" + s + "'");
}

PlatformParams platform(const std::string& s) {
  if (s == "nv") return nv_params();
  if (s == "sic3c") return sic3c_params();
  if (s == "siv") return siv_params();
  throw ConfigError("platform must be nv, sic3c or siv, got '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_holo, m) {
  m.doc() = "Holonomic qutrit gate simulator";
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("run_sweep_json", [](const std::string& config) {
    const json cj = json::parse(config);
    const SweepConfig c = resolve(sweep_config_from_json(cj));
    py::gil_scoped_release unlock;
    return report_json(to_json(c), run_sweep(c)).dump();
  }, py::arg("config"));

  m.def("noiseless_metrics_json",
        [](const std::string& kind, double T_gate, double alpha_cd, double omega_m, int n_steps) {
          GateSetup g;
          g.traj.kind = protocol_from_string(kind);
          g.traj.T_gate = T_gate;
          g.traj.n_samples = n_steps;
          g.ham.alpha_cd = alpha_cd;
          g.ham.omega_m = omega_m;
          return to_json(noiseless_metrics(g)).dump();
        },
        py::arg("kind") = "composite", py::arg("T_gate") = 1.833, py::arg("alpha_cd") = 1.0,
        py::arg("omega_m") = 2.22, py::arg("n_steps") = 2000);

  m.def("qec_point_json",
        [](const std::string& kind, int d_r, int d_c, double s, long trials, std::uint64_t seed,
           double p_era, double p_Z, double p_dep, double p_XY, int workers) {
          QecChannel ch;
          ch.p_era = p_era;
          ch.p_Z = p_Z;
          ch.p_dep = p_dep;
          ch.p_XY = p_XY;
          py::gil_scoped_release unlock;
          return to_json(run_qec_point({code_kind(kind), d_r, d_c}, ch, s, trials, seed, workers)).dump();
        },
        py::arg("kind"), py::arg("d_r"), py::arg("d_c"), py::arg("s"), py::arg("trials"), py::arg("seed"),
        py::arg("p_era") = 0.0047, py::arg("p_Z") = 0.00168, py::arg("p_dep") = 0.00012,
        py::arg("p_XY") = 0.0, py::arg("workers") = 1);

  m.def("device_report", []() { return device_report(); });

  m.def("stark_delta_ac_khz", [](double omega_m, const std::string& p) {
    return dq_stark_scale(omega_m, platform(p)).delta_ac_khz;
  }, py::arg("omega_m"), py::arg("platform") = "nv");

  m.def("overhead", []() {
    const OverheadReport r = overhead_model(OverheadInputs{});
    auto row = [](const OverheadRow& w) {
      return py::dict(py::arg("ratio") = w.ratio, py::arg("d") = w.d, py::arg("qubits") = w.qubits,
                      py::arg("saving") = w.saving);
    };
    return py::dict(py::arg("p_eff") = r.p_eff, py::arg("baseline_qubits") = r.baseline_qubits,
                    py::arg("rabi") = row(r.rabi), py::arg("erasure_css") = row(r.erasure_css),
                    py::arg("xzzx") = row(r.xzzx));
  });

  m.def("sector_split", [](const std::string& sector) {
    const auto r = sector_injection(sector_from_string(sector));
    return py::dict(py::arg("f0") = r.f0, py::arg("fB") = r.fB, py::arg("slope_W0") = r.slope_W0,
                    py::arg("slope_WB") = r.slope_WB, py::arg("slope_phase_1") = r.slope_phase_1,
                    py::arg("slope_phase_n") = r.slope_phase_n);
  }, py::arg("sector"));

  m.def("spurion", [](double delta_over_omega, double amp, double phase) {
    const auto r = spurion_robustness(delta_over_omega, amp, phase);
    return py::dict(py::arg("f0") = r.f0, py::arg("fB") = r.fB);
  }, py::arg("delta_over_omega") = 0.0, py::arg("amp") = 0.0, py::arg("phase") = 0.0);

  m.def("single_shot_gate", [](double vartheta, double phi_axis, double alpha, double omega_max, int steps) {
    const SingleShotCommand c = single_shot_controls(vartheta, phi_axis, alpha, omega_max, Envelope::Sin2);
    return Mat(q_block(propagate_unitary(single_shot_hamiltonian(c), {steps, 1e-12, 1e-10})));
  }, py::arg("vartheta"), py::arg("phi_axis"), py::arg("alpha"), py::arg("omega_max") = 2.22,
        py::arg("steps") = 4000);

  m.def("su2_gate", [](std::array<double, 3> n, double gamma) { return su2_gate(n, gamma); },
        py::arg("n"), py::arg("gamma"));
  m.def("unitary_avg_fidelity", &unitary_avg_fidelity, py::arg("U"), py::arg("V"));
}
