// Acceptance gate: one PASS/FAIL line per criterion, item detail indented below.
#include <algorithm>
#include <array>
#include <cstdarg>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "holo/control.hpp"
#include "holo/device.hpp"
#include "holo/hamiltonians.hpp"
#include "holo/matching.hpp"
#include "holo/propagation.hpp"
#include "holo/qec.hpp"
#include "holo/sector.hpp"
#include "holo/sweeps.hpp"

using namespace holo;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::vector<std::pair<bool, std::string>> items;
  std::vector<std::string> notes;

  void check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
  bool pass() const {
    return std::all_of(items.begin(), items.end(), [](const auto& i) { return i.first; });
  }
};

void Criterion::check(bool ok, const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  items.emplace_back(ok, buf);
}

bool within(double x, double target, double tol) { return std::abs(x - target) <= tol; }

int g_workers = 1;

void print(const Criterion& c, double seconds) {
  std::printf("%s  %2d  %s  (%.1f s)\n", c.pass() ? "PASS" : "FAIL", c.id, c.title.c_str(), seconds);
  for (const auto& [ok, text] : c.items) std::printf("        [%s] %s\n", ok ? " ok " : "red ", text.c_str());
  for (const auto& n : c.notes) std::printf("        note: %s\n", n.c_str());
  std::fflush(stdout);
}

GateSetup composite(double alpha) {
  GateSetup g;
  g.traj.n_samples = 2000;
  g.ham.alpha_cd = alpha;
  return g;
}

Criterion c1() {
  Criterion c{1, "noiseless coherent benchmarks", {}, {}};
  const ProcessMetrics sat = noiseless_metrics(composite(1.0));
  const ProcessMetrics bare = noiseless_metrics(composite(0.0));
  GateSetup os = composite(1.0);
  os.traj.kind = ProtocolKind::OrangeSlice;
  const ProcessMetrics os1 = noiseless_metrics(os);
  os.ham.alpha_cd = 0.0;
  const ProcessMetrics os0 = noiseless_metrics(os);
  c.check(within(sat.F_avg_unc, 0.9976, 0.0010), "composite NGQC+SATD F = %.3f%% (target 99.76 +- 0.10)",
          100 * sat.F_avg_unc);
  c.check(within(bare.F_avg_unc, 0.2292, 0.02), "bare composite F = %.2f%% (target 22.92 +- 2)",
          100 * bare.F_avg_unc);
  c.check(within(os1.F_avg_unc, 0.9907, 0.003), "Orange Slice lambda = 1 F = %.2f%% (target 99.07 +- 0.30)",
          100 * os1.F_avg_unc);
  c.check(within(os0.F_avg_unc, 0.9867, 0.003), "Orange Slice bare F = %.2f%% (target 98.67 +- 0.30)",
          100 * os0.F_avg_unc);
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "composite: conditional F_avg = %.4f%%, leakage = %.3f%%; the shortfall is |+1> population "
                "cycling through |0> (bright-state phase), while the dark path has F_leg = %.6f",
                100 * sat.F_avg, 100 * sat.leakage, sat.F_leg);
  c.notes.push_back(buf);
  std::snprintf(buf, sizeof buf,
                "Orange Slice (T = 1.833 us, dphi = pi/2): conditional F_avg = %.2f%% / %.2f%%, leakage = "
                "%.2f%% / %.2f%%; the two-leg path leaves the bright state off-cycle at this T",
                100 * os1.F_avg, 100 * os0.F_avg, 100 * os1.leakage, 100 * os0.leakage);
  c.notes.push_back(buf);
  return c;
}

Criterion c2() {
  Criterion c{2, "alpha_CD scan (noiseless)", {}, {}};
  std::vector<double> grid;
  for (int k = 0; k <= 40; ++k) grid.push_back(0.05 * k);
  for (int k = -30; k <= 30; ++k) grid.push_back(1.0 + 0.001 * k);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             grid.end());
  std::vector<double> F(grid.size());
  parallel_for(static_cast<int>(grid.size()), g_workers,
               [&](int i) { F[i] = noiseless_metrics(composite(grid[i])).F_avg_unc; });
  const auto best = std::max_element(F.begin(), F.end()) - F.begin();
  auto at = [&](double a) {
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (std::abs(grid[i] - a) < 1e-12) return F[i];
    return -1.0;
  };
  c.check(within(grid[best], 1.0, 0.01), "global maximum at alpha = %.3f (F = %.4f%%)", grid[best], 100 * F[best]);
  c.check(at(0.0) < 0.35 && at(2.0) < 0.35, "F(0) = %.2f%%, F(2) = %.2f%% (both < 35%%)", 100 * at(0.0),
          100 * at(2.0));
  double widest = 0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (F[i] > 0.99) widest = std::max(widest, std::abs(grid[i] - 1.0));
  c.check(widest < 0.02, "F > 99%% only for |alpha - 1| < 0.02: widest |alpha - 1| with F > 99%% is %.3f "
                         "(F(0.98) = %.3f%%, F(1.02) = %.3f%%)",
          widest, 100 * at(0.98), 100 * at(1.02));
  if (widest >= 0.02)
    c.notes.push_back("the peak is smooth and quadratic: the residual Rabi-type error grows as (alpha - 1)^2, "
                      "so a 2% miscalibration costs about 0.3 pp here rather than the > 0.7 pp the sharp-peak "
                      "claim needs");
  return c;
}

Criterion c3() {
  Criterion c{3, "analytic formula pins", {}, {}};
  const double nv = dq_stark_scale(2.22, nv_params()).delta_ac_khz;
  const double sic = dq_stark_scale(2.22, sic3c_params()).delta_ac_khz;
  c.check(within(nv, 20.72, 0.01), "delta_AC(NV) = %.4f kHz (20.72 +- 0.01)", nv);
  c.check(within(nv / sic, 39.76, 0.1), "NV/3C-SiC ratio = %.4f (39.76 +- 0.1)", nv / sic);
  const double j0 = stark_lune_average();
  c.check(within(j0, -0.304, 0.001), "J0(pi) trajectory integral = %.6f (-0.304 +- 0.001)", j0);
  const double f12 = membrane_modes(MembraneSpec{}).f0_MHz;
  c.check(within(f12, 78.8, 0.1), "membrane f12 = %.3f MHz (78.8 +- 0.1)", f12);
  const double fsr = hbar_design(HbarSpec{}, 2.8, 2870).fsr_MHz;
  c.check(within(fsr, 274, 1), "HBAR FSR = %.3f MHz (274 +- 1)", fsr);
  const double qmax = hbar_budget(HbarSpec{}, {5e-5}, 2830, 7.0).Q_max;
  c.check(within(qmax, 1.0e4, 100), "Q_max(7 us) = %.1f (1.0e4 +- 1%%)", qmax);
  const double peff = overhead_model(OverheadInputs{}).p_eff;
  c.check(within(peff, 0.0028, 0.00005), "p_eff = %.4f%% (0.28 +- 0.005 pp)", 100 * peff);
  const double v = electrostatic_tuning(0.01, MembraneSpec{}, 200).V_req;
  c.check(within(v, 21.6, 0.2), "V_req = %.3f V (21.6 +- 0.2)", v);
  return c;
}

Criterion c4() {
  Criterion c{4, "sector-injection suite", {}, {}};
  const auto a2 = sector_injection(Sector::A2);
  const auto ex = sector_injection(Sector::Ex);
  const auto ey = sector_injection(Sector::Ey);
  c.check(std::abs(a2.f0 - 1) < 1e-6, "f0(Sz) = %.9f", a2.f0);
  c.check(std::abs(ex.fB - 1) < 1e-6 && std::abs(ey.fB - 1) < 1e-6, "fB(Sx) = %.9f, fB(Sy) = %.9f", ex.fB, ey.fB);
  c.check(within(a2.slope_W0, 2, 0.05) && within(ex.slope_WB, 2, 0.05) && within(ey.slope_WB, 2, 0.05),
          "weight slopes: A2 %.4f, Ex %.4f, Ey %.4f (2.00 +- 0.05)", a2.slope_W0, ex.slope_WB, ey.slope_WB);
  c.check(within(ex.slope_phase_1, 1, 0.1) && within(ey.slope_phase_1, 1, 0.1) && ex.slope_phase_n >= 2.8 &&
              ey.slope_phase_n >= 2.8,
          "E phase slopes one lune -> two lunes: Ex %.4f -> %.4f, Ey %.4f -> %.4f", ex.slope_phase_1,
          ex.slope_phase_n, ey.slope_phase_1, ey.slope_phase_n);
  std::vector<double> al, be;
  for (int k = 0; k <= 12; ++k) al.push_back(kPi / 2 * k / 12);
  for (int k = 0; k < 8; ++k) be.push_back(2 * kPi * k / 8);
  const auto mix = mixed_sector_scan(al, be, 1e-3);
  c.check(mix.max_dev_f0 < 1e-9, "mixed-scan max |f0 - cos^2 alpha| = %.3e (< 1e-9)", mix.max_dev_f0);
  const auto sd = spurion_robustness(0.10, 0, 0);
  const auto sa = spurion_robustness(0, 0.10, 0);
  const auto sp = spurion_robustness(0, 0, 10 * kPi / 180);
  c.check(within(sd.fB, 0.038462, 5e-4), "spurion detuning 0.10: fB = %.6f (0.038462)", sd.fB);
  c.check(within(sa.fB, 0.010032, 5e-4), "spurion amplitude 10%%: fB = %.6f (0.010032)", sa.fB);
  c.check(within(sp.fB, 0.029587, 5e-4), "spurion phase 10 deg: fB = %.6f (0.029587)", sp.fB);
  const auto all = spurion_robustness(0.10, 0.10, 10 * kPi / 180);
  char buf[320];
  std::snprintf(buf, sizeof buf, "combined (0.10, 10%%, 10 deg): f0 = %.6f (table 0.905407)", all.f0);
  c.notes.push_back(buf);
  if (std::abs(sa.fB - 0.010032) > 5e-4 || std::abs(sp.fB - 0.029587) > 5e-4)
    c.notes.push_back("leg skew only rotates the dark/bright pair; the first-order correction then lies in "
                      "span{|0>, B'} with equal and opposite bright-eigenstate energies, and those two terms "
                      "cancel the B' part exactly. Projected on the nominal bright state the response stays "
                      "on |0>, so fB ~ 0. The tabulated a^2 and sin^2(dphi) forms need a different "
                      "response definition, and this repo does not guess one");
  return c;
}

Criterion c5() {
  Criterion c{5, "noisy Regime-A headline (100 trajectories)", {}, {}};
  SweepConfig cfg;
  cfg.sweep = 7;
  cfg.grid = {1.833};
  cfg.n_traj = 100;
  cfg.n_steps = 1000;
  cfg.workers = g_workers;
  const auto r = run_sweep(cfg).at(0).m;
  c.check(r.F_avg >= 0.996 && r.F_avg <= 0.9995, "conditional F_avg = %.3f%% [%.3f, %.3f] (99.6 .. 99.95)",
          100 * r.F_avg, 100 * r.F_avg_ci_lo, 100 * r.F_avg_ci_hi);
  c.check(r.leakage >= 0.003 && r.leakage <= 0.007, "leakage = %.3f%% (0.30 .. 0.70)", 100 * r.leakage);
  c.check(r.F_eff >= 0.990 && r.F_eff <= 0.997, "F_eff = %.3f%% (99.0 .. 99.7)", 100 * r.F_eff);
  return c;
}

Criterion c6() {
  Criterion c{6, "sweep-2 geometric robustness (50 trajectories per point)", {}, {}};
  SweepConfig cfg;
  cfg.sweep = 2;
  cfg.n_traj = 50;
  cfg.n_steps = 1000;
  cfg.bootstrap = 200;
  cfg.workers = g_workers;
  const auto recs = run_sweep(cfg);
  std::vector<double> hol, dyn, rate;
  for (const auto& r : recs) {
    if (r.label == "holonomic") {
      hol.push_back(1 - r.m.F_avg);
      rate.push_back(r.params.at("hop_rate_Hz"));
    } else {
      dyn.push_back(1 - r.m.F_avg);
    }
  }
  const double p2p = *std::max_element(hol.begin(), hol.end()) - *std::min_element(hol.begin(), hol.end());
  const double p2p_dyn = *std::max_element(dyn.begin(), dyn.end()) - *std::min_element(dyn.begin(), dyn.end());
  c.check(p2p < 0.001, "holonomic error peak-to-peak = %.4f pp (< 0.1 pp)", 100 * p2p);
  bool below = true;
  std::string row;
  for (std::size_t i = 0; i < hol.size(); ++i) {
    below = below && hol[i] < dyn[i];
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s%.0e: %.3f%% vs %.3f%%", i ? "; " : "", rate[i], 100 * hol[i], 100 * dyn[i]);
    row += buf;
  }
  c.check(below, "holonomic below dynamical baseline at every rate (%s)", row.c_str());
  char buf[128];
  std::snprintf(buf, sizeof buf, "dynamical baseline peak-to-peak = %.4f pp (%.1fx the holonomic spread)",
                100 * p2p_dyn, p2p_dyn / p2p);
  c.notes.push_back(buf);
  if (!below)
    c.notes.push_back("the 2 pi Rabi baseline at omega_m/2 lasts 2/omega_m = 0.90 us against 1.833 us for the "
                      "two-lune gate, so it sees half the T1 and T1rho exposure. The holonomic plateau, the "
                      "baseline's wider spread and its motional-narrowing trend reproduce; the absolute "
                      "ordering does not");
  return c;
}

Criterion c7() {
  Criterion c{7, "QEC Monte Carlo (5000 trials)", {}, {}};
  const long trials = 5000;
  const QecChannel ch;
  auto sigma3 = [&](const QecPoint& p, double target) {
    return std::abs(p.p_L - target) <= 3 * std::sqrt(target * (1 - target) / trials);
  };
  const QecPoint css11 = run_qec_point({CodeKind::ToricCSS, 11, 11}, ch, 50, trials, 701, g_workers);
  const QecPoint xz11 = run_qec_point({CodeKind::ToricXZZX, 11, 11}, ch, 50, trials, 702, g_workers);
  const QecPoint css3 = run_qec_point({CodeKind::ToricCSS, 3, 3}, ch, 50, trials, 703, g_workers);
  const QecPoint xz3 = run_qec_point({CodeKind::ToricXZZX, 3, 3}, ch, 50, trials, 704, g_workers);
  c.check(sigma3(css11, 0.671), "CSS toric d11 s50: p_L = %.4f [%.4f, %.4f] (0.671, 3 sigma)", css11.p_L,
          css11.ci_lo, css11.ci_hi);
  c.check(sigma3(xz11, 0.0034), "XZZX toric d11 s50: p_L = %.4f [%.4f, %.4f] (0.0034, 3 sigma)", xz11.p_L,
          xz11.ci_lo, xz11.ci_hi);
  auto sep = [&](const QecPoint& hi, const QecPoint& lo) {
    const double s = std::sqrt(hi.p_L * (1 - hi.p_L) / trials + lo.p_L * (1 - lo.p_L) / trials);
    return hi.p_L - lo.p_L > 3 * s;
  };
  c.check(sep(css11, css3) && sep(xz3, xz11),
          "opposite d-scaling at s50: CSS d3 %.4f -> d11 %.4f (up), XZZX d3 %.4f -> d11 %.4f (down)", css3.p_L,
          css11.p_L, xz3.p_L, xz11.p_L);
  std::string rect;
  bool zero = true;
  for (double s : {1.0, 10.0, 50.0, 100.0}) {
    const QecPoint p = run_qec_point({CodeKind::PlanarXZZX, 3, 7}, ch, s, trials, 710 + static_cast<int>(s),
                                     g_workers);
    zero = zero && p.failures == 0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%ss%g: %ld fails, bound %.2e", rect.empty() ? "" : "; ", s, p.failures, p.ci_hi);
    rect += buf;
  }
  c.check(zero, "rect 3x7 zero failures at s in {1,10,50,100} (%s)", rect.c_str());
  const OverheadReport ov = overhead_model(OverheadInputs{});
  c.check(ov.xzzx.d == 9 && ov.xzzx.qubits == 81 && within(ov.xzzx.saving, 0.64, 0.005),
          "overhead XZZX: d%d / %d qubits / %.1f%% saving (9 / 81 / 64%%)", ov.xzzx.d, ov.xzzx.qubits,
          100 * ov.xzzx.saving);
  c.check(ov.erasure_css.d == 11 && ov.erasure_css.qubits == 121 && within(ov.erasure_css.saving, 0.46, 0.005),
          "overhead erasure-only CSS: d%d / %d qubits / %.1f%% saving (11 / 121 / 46%%)", ov.erasure_css.d,
          ov.erasure_css.qubits, 100 * ov.erasure_css.saving);
  if (!sigma3(xz11, 0.0034) || !zero) {
    QecChannel lk = ch;
    lk.weights = EdgeWeights::Likelihood;
    const QecPoint xl = run_qec_point({CodeKind::ToricXZZX, 11, 11}, lk, 50, 2000, 705, g_workers);
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "XZZX under s = 50 scaling (p_era %.3f, p_Z %.3f) is above its code-capacity threshold for a "
                  "uniform-weight MWPM decoder; likelihood edge weights give p_L = %.3f (2000 trials). The "
                  "tabulated 0.0034 and the zero-failure rectangle need a decoder prior this repo does not "
                  "reconstruct",
                  50 * ch.p_era, 50 * ch.p_Z, xl.p_L);
    c.notes.push_back(buf);
  }
  return c;
}

Criterion c8() {
  Criterion c{8, "decoder oracle equivalence", {}, {}};
  int checked = 0, mismatches = 0;
  std::uint64_t seed = 9001;
  for (const auto& code : {build_toric(3, CodeKind::ToricCSS), build_toric(5, CodeKind::ToricXZZX),
                           build_rect_planar(3, 5), build_rect_planar(5, 5)}) {
    QecChannel ch;
    ch.p_era = 0.1;
    ch.p_Z = 0.05;
    ch.p_dep = 0.05;
    ch.p_XY = 0.02;
    int here = 0;
    while (here < 50) {
      Rng rng(seed++);
      const NoiseDraw nd = sample_noise(code, ch, 1.0, rng);
      for (int sec = 0; sec < 2 && here < 50; ++sec) {
        const auto def = syndrome(code, sec, nd.error);
        if (def.empty() || def.size() > 10) continue;
        const MatchingInstance mi = matching_instance(code, sec, def, nd.erased);
        mismatches += decode_mwpm(code, sec, def, nd.erased).weight !=
                      brute_force_matching_weight(mi.cost, mi.boundary);
        ++here;
        ++checked;
      }
    }
  }
  c.check(checked == 200 && mismatches == 0, "%d instances, %d mismatches", checked, mismatches);
  return c;
}

std::array<double, 3> bloch(double vt, double ph) {
  return {std::sin(vt) * std::cos(ph), std::sin(vt) * std::sin(ph), std::cos(vt)};
}

Mat logical_gate(const SingleShotCommand& c) {
  return q_block(propagate_unitary(single_shot_hamiltonian(c), {8000, 1e-12, 1e-11}));
}

double rotation_angle(const Mat& u, const std::array<double, 3>& n) {
  const Mat v = u / std::sqrt(u.determinant());
  Mat sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, -kI, kI, 0;
  sz << 1, 0, 0, -1;
  const double co = 0.5 * v.trace().real();
  const double si = -0.5 * (n[0] * (v * sx).trace().imag() + n[1] * (v * sy).trace().imag() +
                            n[2] * (v * sz).trace().imag());
  return std::fmod(2 * std::atan2(si, co) + 4 * kPi, 2 * kPi);
}

Criterion c9() {
  Criterion c{9, "single-shot suite", {}, {}};
  double worst = 0;
  for (double a : {-1.2, -0.6, -0.2, 0.0, 0.3, 0.8, 1.3}) {
    const auto n = bloch(0.7, 0.4);
    const Mat u = logical_gate(single_shot_controls(0.7, 0.4, a, 2.22, Envelope::Sin2));
    const double want = std::fmod(kPi * (1 + std::sin(a)), 2 * kPi);
    worst = std::max(worst, std::abs(std::remainder(rotation_angle(u, n) - want, 2 * kPi)));
  }
  c.check(worst < 1e-9, "max |gamma - pi(1 + sin alpha)| over 7 alphas = %.2e (< 1e-9)", worst);
  const auto xz = su2_gate_and_commutator({1, 0, 0}, kPi / 2, {0, 0, 1}, kPi / 2);
  c.check(std::abs(xz.avg_fidelity - 0.5) < 1e-9, "X(pi/2)Z(pi/2) vs reverse: F = %.12f (0.5 +- 1e-9)",
          xz.avg_fidelity);
  const Mat ua = logical_gate(single_shot_controls(1.1, -0.3, 0.4, 2.22, Envelope::Sin2));
  const Mat ub = logical_gate(single_shot_controls(1.1, -0.3, 0.4, 3.0, Envelope::FlatTop));
  const cplx tr = (ua.adjoint() * ub).trace();
  const double dist = (ua * (tr / std::abs(tr)) - ub).norm();
  c.check(dist < 1e-8, "sin^2 vs flat-top envelope of equal area: distance = %.2e (< 1e-8)", dist);
  return c;
}

Criterion c10() {
  Criterion c{10, "projector-bus identity", {}, {}};
  const ProjectorBus b = projector_bus_unitary(2.0, 2.0, 4.0);
  c.check(std::abs(b.chi - kPi) < 1e-12, "chi(f = delta/2) - pi = %.2e", b.chi - kPi);
  double worst = 0;
  for (const auto& [f1, f2, d] : std::vector<std::array<double, 3>>{
           {2.0, 2.0, 4.0}, {1.0, 1.5, 5.0}, {0.7, 0.0, 3.0}, {1.2, 0.8, 6.0}}) {
    const ProjectorBus cf = projector_bus_unitary(f1, f2, d);
    const ProjectorBus nu = projector_bus_numeric(f1, f2, d);
    for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(std::remainder(nu.phase[k] - cf.phase[k], 2 * kPi)));
  }
  c.check(worst < 1e-8, "driven-oscillator vs closed-form branch phases, 4 points: max diff = %.2e (< 1e-8)",
          worst);
  return c;
}

Criterion c11() {
  Criterion c{11, "SiV Regime-C sanity", {}, {}};
  std::vector<double> T;
  for (double t = 20; t <= 120 + 1e-9; t += 2) T.push_back(t);
  const SiVScan s = siv_regime_c_scan(T);
  c.check(s.best_F >= 0.94 && s.best_F <= 0.98, "best conditional F_avg = %.2f%% at %.1f ns (94 .. 98)",
          100 * s.best_F, s.best_T_ns);
  return c;
}

}  // namespace

int main() {
  g_workers = std::max(1u, std::thread::hardware_concurrency());
  int red = 0;
  for (auto f : {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11}) {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c;
    try {
      c = f();
    } catch (const std::exception& e) {
      c.id = 0;
      c.title = "exception";
      c.check(false, "%s", e.what());
    }
    print(c, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    red += !c.pass();
  }
  std::printf("%d of 11 criteria red\n", red);
  return red ? 1 : 0;
}
