#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace holo {

// CODATA values, SI.
inline constexpr double kEps0Vac = 8.8541878128e-12;  // F/m
inline constexpr double kMu0 = 1.25663706212e-6;      // N/A^2
inline constexpr double kMuB = 9.2740100783e-24;      // J/T

enum class Boundary { SimplySupported, Clamped };

struct MembraneSpec {
  double L_um = 10.0;
  double h_nm = 200.0;
  double Y_GPa = 1050.0;
  double nu = 0.104;
  double rho = 3515.0;  // kg/m^3
  Boundary boundary = Boundary::SimplySupported;
};

inline constexpr double kClampedStiffnessRatio = 2.21;

struct MembraneModes {
  double D_bend;  // J
  std::vector<std::pair<int, int>> nm;
  std::vector<double> f_MHz;
  double f0_MHz;  // (1,2)/(2,1) doublet
  double m_eff_pg;
  double k;  // N/m, boundary-dependent
  double k_ss;
};

MembraneModes membrane_modes(const MembraneSpec& s,
                             const std::vector<std::pair<int, int>>& nm = {{1, 1}, {1, 2}, {2, 2}});

struct TuningResult {
  double df_MHz;
  double V_req;
  double headroom;  // V_bd - V_req
  bool exceeds_breakdown;
};

// Delta f / f0 = 0.6 delta; the stiffer mode is softened by k_el = -eps0 A V^2 / g^3.
TuningResult electrostatic_tuning(double delta, const MembraneSpec& s, double gap_nm,
                                  double coverage = 1.0, double V_bd = 35.0);
// omega(V) / omega0 for a given bias.
double tuned_frequency_ratio(double V, const MembraneSpec& s, double gap_nm, double coverage = 1.0);

struct HbarSpec {
  double h_d_um = 23.4;
  double radius_um = 25.0;
  double v_T = 12822.0;  // m/s
  double h_AlN_um = 1.0;
  double Q_L = 1e4;
  double eta_sh = 1e-3;
  double d33_pm_per_V = 5.5;
  double R_mot = 50.0;  // ohm
  double kappa = 2200.0;  // W/m/K
};

struct HbarDesign {
  double fsr_MHz;
  double Bz_matched_G;
  std::vector<int> n;
  std::vector<double> f_MHz;
  int n_minus, n_plus;  // overtones nearest D-, D+
  double D_minus, D_plus;
};

HbarDesign hbar_design(const HbarSpec& s, double gamma_e, double D_MHz, int n_max = 12);

struct HbarBudgetRow {
  double eps0, V_rf, omega_m_kHz, power_mW, delta_T_K;
};

struct HbarBudget {
  std::vector<HbarBudgetRow> rows;
  double Q_max;
  double pre_ring_us;
  double bandwidth_MHz;
};

HbarBudget hbar_budget(const HbarSpec& s, const std::vector<double>& eps0, double h26,
                       double T_gate_us, double f0_MHz = 2870.0);

// Flat key/value report for the default designs and the NV/3C-SiC Stark ratio.
std::map<std::string, double> device_report(const MembraneSpec& m = {}, const HbarSpec& h = {},
                                            double delta = 0.01, double gap_nm = 200.0,
                                            double T_gate_us = 7.0);

}  // namespace holo
