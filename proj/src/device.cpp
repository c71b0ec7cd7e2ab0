#include "holo/device.hpp"

#include <cmath>

#include "holo/core.hpp"
#include "holo/hamiltonians.hpp"

namespace holo {

namespace {

void check(const MembraneSpec& s) {
  if (!(s.L_um > 0 && s.h_nm > 0 && s.Y_GPa > 0 && s.rho > 0))
    throw ConfigError("membrane dimensions must be positive");
  if (!(s.nu > 0 && s.nu < 0.5)) throw ConfigError("Poisson ratio must lie in (0, 0.5)");
}

void check(const HbarSpec& s) {
  if (!(s.h_d_um > 0 && s.v_T > 0 && s.h_AlN_um > 0 && s.radius_um > 0))
    throw ConfigError("HBAR dimensions must be positive");
  if (s.Q_L < 1) throw ConfigError("Q_L must be at least 1");
  if (!(s.eta_sh > 0 && s.eta_sh <= 1)) throw ConfigError("eta_sh must lie in (0, 1]");
}

}  // namespace

MembraneModes membrane_modes(const MembraneSpec& s, const std::vector<std::pair<int, int>>& nm) {
  check(s);
  const double L = s.L_um * 1e-6, h = s.h_nm * 1e-9, Y = s.Y_GPa * 1e9;
  MembraneModes m;
  m.D_bend = Y * h * h * h / (12 * (1 - s.nu * s.nu));
  const double base = kPi / (2 * L * L) * std::sqrt(m.D_bend / (s.rho * h));
  m.nm = nm;
  for (const auto& [a, b] : nm) m.f_MHz.push_back(base * (a * a + b * b) * 1e-6);
  m.f0_MHz = base * 5 * 1e-6;
  const double m_eff = s.rho * L * L * h / 4;
  m.m_eff_pg = m_eff * 1e15;
  const double w0 = 2 * kPi * m.f0_MHz * 1e6;
  m.k_ss = m_eff * w0 * w0;
  m.k = s.boundary == Boundary::Clamped ? kClampedStiffnessRatio * m.k_ss : m.k_ss;
  return m;
}

double tuned_frequency_ratio(double V, const MembraneSpec& s, double gap_nm, double coverage) {
  const MembraneModes m = membrane_modes(s);
  const double A = coverage * std::pow(s.L_um * 1e-6, 2), g = gap_nm * 1e-9;
  const double x = kEps0Vac * A * V * V / (m.k * g * g * g);
  if (x >= 1) throw ConfigError("bias beyond electrostatic pull-in");
  return std::sqrt(1 - x);
}

TuningResult electrostatic_tuning(double delta, const MembraneSpec& s, double gap_nm,
                                  double coverage, double V_bd) {
  if (!(gap_nm > 0)) throw ConfigError("gap must be positive");
  if (!(coverage > 0 && coverage <= 1)) throw ConfigError("coverage must lie in (0, 1]");
  const MembraneModes m = membrane_modes(s);
  TuningResult r;
  const double rel = 0.6 * std::abs(delta);
  r.df_MHz = rel * m.f0_MHz;
  const double A = coverage * std::pow(s.L_um * 1e-6, 2), g = gap_nm * 1e-9;
  const double need = 1 - (1 - rel) * (1 - rel);
  r.V_req = std::sqrt(need * m.k * g * g * g / (kEps0Vac * A));
  r.headroom = V_bd - r.V_req;
  r.exceeds_breakdown = r.V_req > V_bd;
  return r;
}

HbarDesign hbar_design(const HbarSpec& s, double gamma_e, double D_MHz, int n_max) {
  check(s);
  HbarDesign d;
  d.fsr_MHz = s.v_T / (2 * s.h_d_um * 1e-6) * 1e-6;
  d.Bz_matched_G = d.fsr_MHz / (2 * gamma_e);
  d.D_minus = D_MHz - gamma_e * d.Bz_matched_G;
  d.D_plus = D_MHz + gamma_e * d.Bz_matched_G;
  d.n_minus = d.n_plus = 1;
  for (int n = 1; n <= n_max; ++n) {
    d.n.push_back(n);
    d.f_MHz.push_back(n * d.fsr_MHz);
    if (std::abs(n * d.fsr_MHz - d.D_minus) < std::abs(d.n_minus * d.fsr_MHz - d.D_minus))
      d.n_minus = n;
    if (std::abs(n * d.fsr_MHz - d.D_plus) < std::abs(d.n_plus * d.fsr_MHz - d.D_plus)) d.n_plus = n;
  }
  return d;
}

HbarBudget hbar_budget(const HbarSpec& s, const std::vector<double>& eps0, double h26,
                       double T_gate_us, double f0_MHz) {
  check(s);
  if (!(T_gate_us > 0 && f0_MHz > 0)) throw ConfigError("gate time and carrier must be positive");
  HbarBudget b;
  const double gain = s.eta_sh * s.Q_L * s.d33_pm_per_V * 1e-12 / (s.h_AlN_um * 1e-6);
  const double area = kPi * std::pow(s.radius_um * 1e-6, 2);
  for (double e : eps0) {
    if (!(e > 0)) throw ConfigError("strain targets must be positive");
    HbarBudgetRow r;
    r.eps0 = e;
    r.V_rf = e / gain;
    r.omega_m_kHz = std::abs(h26) * e * 1e3;
    const double P = r.V_rf * r.V_rf / (2 * s.R_mot);
    r.power_mW = P * 1e3;
    r.delta_T_K = P * s.h_d_um * 1e-6 / (s.kappa * area);
    b.rows.push_back(r);
  }
  const double f0 = f0_MHz * 1e6;
  b.Q_max = f0 * T_gate_us * 1e-6 / 2;
  b.pre_ring_us = 3 * s.Q_L / (kPi * f0) * 1e6;
  b.bandwidth_MHz = f0_MHz / s.Q_L;
  return b;
}

std::map<std::string, double> device_report(const MembraneSpec& ms, const HbarSpec& hs,
                                            double delta, double gap_nm, double T_gate_us) {
  std::map<std::string, double> r;
  MembraneSpec ss = ms;
  ss.boundary = Boundary::SimplySupported;
  MembraneSpec cl = ms;
  cl.boundary = Boundary::Clamped;
  const MembraneModes m = membrane_modes(ss);
  r["membrane.D_bend_J"] = m.D_bend;
  r["membrane.f12_MHz"] = m.f0_MHz;
  r["membrane.f11_MHz"] = m.f_MHz[0];
  r["membrane.m_eff_pg"] = m.m_eff_pg;
  r["membrane.k_ss_N_per_m"] = m.k_ss;
  r["membrane.k_clamped_N_per_m"] = membrane_modes(cl).k;
  const TuningResult full = electrostatic_tuning(delta, ss, gap_nm, 1.0);
  const TuningResult half = electrostatic_tuning(delta, ss, gap_nm, 0.5);
  r["tuning.df_MHz"] = full.df_MHz;
  r["tuning.V_req_full_V"] = full.V_req;
  r["tuning.V_req_half_V"] = half.V_req;
  r["tuning.headroom_full_V"] = full.headroom;
  const PlatformParams nv = nv_params();
  const HbarDesign hd = hbar_design(hs, nv.gamma_e, nv.D);
  r["hbar.fsr_MHz"] = hd.fsr_MHz;
  r["hbar.Bz_matched_G"] = hd.Bz_matched_G;
  r["hbar.n_minus"] = hd.n_minus;
  r["hbar.n_plus"] = hd.n_plus;
  r["hbar.f_n_minus_MHz"] = hd.f_MHz[hd.n_minus - 1];
  r["hbar.f_n_plus_MHz"] = hd.f_MHz[hd.n_plus - 1];
  const HbarBudget hb = hbar_budget(hs, {1e-6, 1e-5, 5e-5}, nv.h26, T_gate_us, nv.D);
  const char* tag[3] = {"conservative", "moderate", "optimistic"};
  for (int i = 0; i < 3; ++i) {
    const std::string k = std::string("hbar.") + tag[i] + ".";
    r[k + "eps0"] = hb.rows[i].eps0;
    r[k + "V_rf_V"] = hb.rows[i].V_rf;
    r[k + "omega_m_kHz"] = hb.rows[i].omega_m_kHz;
    r[k + "power_mW"] = hb.rows[i].power_mW;
    r[k + "delta_T_K"] = hb.rows[i].delta_T_K;
  }
  r["hbar.Q_max"] = hb.Q_max;
  r["hbar.pre_ring_us"] = hb.pre_ring_us;
  r["hbar.bandwidth_MHz"] = hb.bandwidth_MHz;
  const double om = 2.22;
  const double ac_nv = dq_stark_scale(om, nv).delta_ac_khz;
  const double ac_sic = dq_stark_scale(om, sic3c_params()).delta_ac_khz;
  r["stark.delta_ac_nv_kHz"] = ac_nv;
  r["stark.delta_ac_sic3c_kHz"] = ac_sic;
  r["stark.nv_over_sic3c"] = ac_nv / ac_sic;
  return r;
}

}  // namespace holo
