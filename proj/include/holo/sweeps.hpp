#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "holo/hamiltonians.hpp"
#include "holo/propagation.hpp"
#include "holo/qec.hpp"
#include "holo/tomography.hpp"

namespace holo {

// One Z(pi) gate implementation on the qutrit.
struct GateSetup {
  TrajectoryParams traj;
  ProtocolHamiltonian ham;
  Platform platform = Platform::NV;
  // Resonant 2 pi Rabi cycle on |0> <-> |+1> at omega_m / 2 (dynamical Z(pi)).
  bool rabi_baseline = false;
};

PlatformParams platform_params(Platform p);
Assembly gate_assembly(const GateSetup& g);
double rabi_baseline_duration(double omega_m);

struct GateRunConfig {
  NoiseModel noise;
  int n_traj = 100;
  PropagationGrid grid{1000, 1e-10, 1e-8};
  int bootstrap = 2000;
  int workers = 1;
};

struct GatePoint {
  ProcessMetrics m;
  std::uint64_t seed = 0;  // point seed; trajectory k uses child_seed(master, sweep, point, k)
  long events = 0;
  int n_traj = 0;
};

GatePoint run_gate(const GateSetup& g, const GateRunConfig& rc, const RunIds& ids);
ProcessMetrics noiseless_metrics(const GateSetup& g, const PropagationGrid& grid = {2000, 1e-11, 1e-9});

struct SweepConfig {
  int sweep = 7;
  std::vector<double> grid, grid2;  // empty: sweep defaults
  int n_traj = 100;
  int n_steps = 1000;
  bool paper_scale = false;
  std::uint64_t seed = 20240607;
  int workers = 1;
  double T_gate = 1.833;
  double omega_m = 2.22;
  double alpha_cd = 1.0;
  double tau_c = 0.010;  // us
  double T1 = 1000.0, T1rho = 500.0;
  bool bath = true, lindblad = true;
  int bootstrap = 2000;
  std::string platform = "nv";
};

// Fills default grids and applies paper-scale settings; throws ConfigError on invalid input.
SweepConfig resolve(SweepConfig c);
std::vector<double> default_grid(int sweep);
std::vector<double> default_grid2(int sweep);

struct ResultRecord {
  std::string sweep;
  std::string label;
  std::map<std::string, double> params;
  bool has_metrics = false;
  ProcessMetrics m;
  bool has_qec = false;
  QecPoint q;
  std::uint64_t seed = 0;
  long events = 0;
};

std::vector<ResultRecord> run_sweep(const SweepConfig& cfg);

// SiV Regime C: Lambda legs only (no CD), T1 = 143 ns, gate time scanned.
struct SiVScan {
  std::vector<double> T_ns, F_cond, leakage;
  double best_T_ns = 0, best_F = 0;
};
SiVScan siv_regime_c_scan(const std::vector<double>& T_ns, double omega_m_MHz = 300.0,
                          const std::string& regime = "mK");

}  // namespace holo
