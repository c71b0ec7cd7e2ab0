#include "holo/sweeps.hpp"

#include <algorithm>
#include <cmath>

namespace holo {

PlatformParams platform_params(Platform p) {
  switch (p) {
    case Platform::NV: return nv_params();
    case Platform::SiC3C: return sic3c_params();
    case Platform::SiV: return siv_params();
  }
  return nv_params();
}

double rabi_baseline_duration(double omega_m) {
  if (!(omega_m > 0)) throw ConfigError("omega_m must be positive");
  return 2.0 / omega_m;  // 2 pi at Rabi rate omega_m / 2
}

Assembly gate_assembly(const GateSetup& g) {
  if (g.rabi_baseline) {
    Assembly a;
    a.dim = 3;
    a.t0 = 0;
    a.n = std::max(1, g.traj.n_samples);
    a.dt = rabi_baseline_duration(g.ham.omega_m) / a.n;
    a.static_part = g.ham.delta0 * outer(3, kZ, kZ);
    const double amp = 0.5 * 0.5 * g.ham.omega_m;
    a.terms = {Term{outer(3, kZ, kP) + outer(3, kP, kZ), std::vector<double>(a.n + 1, amp)}};
    return a;
  }
  const Trajectory tr(g.traj);
  return assemble_lambda_protocol(sample(tr), g.ham, platform_params(g.platform));
}

GatePoint run_gate(const GateSetup& g, const GateRunConfig& rc, const RunIds& ids) {
  const Assembly a = gate_assembly(g);
  const int n_traj = (rc.noise.bath ? rc.n_traj : 1);
  const ChannelRun run = monte_carlo_channel(a, rc.noise, ic_states(), n_traj, ids, rc.grid, rc.workers);
  GatePoint p;
  p.m = channel_metrics(run, z_pi_target(), rc.bootstrap,
                        child_seed(ids.master, ids.sweep, ids.point, ~1ULL));
  p.seed = child_seed(ids.master, ids.sweep, ids.point, ~0ULL);
  p.events = run.trace_events;
  p.n_traj = n_traj;
  return p;
}

ProcessMetrics noiseless_metrics(const GateSetup& g, const PropagationGrid& grid) {
  const Assembly a = gate_assembly(g);
  return process_metrics(propagate(a, {}, ic_states(), grid), z_pi_target());
}

std::vector<double> default_grid(int sweep) {
  switch (sweep) {
    case 1: return {0.1, 0.5, 1.0, 1.5, 2.0, 2.22, 2.5};               // omega_m MHz
    case 2: return {1e6, 1e7, 1e8, 1e9, 1e10};                         // hop rate Hz
    case 3: return {0, 100, 200, 300, 400, 500};                       // detuning kHz
    case 4: return {0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.22};             // omega_m MHz
    case 5: return {0, 0.5, 0.9, 1.0, 1.1, 1.5, 2.0};                  // lambda
    case 6: return {0, 0.5, 0.9, 0.95, 0.98, 0.99, 1.0, 1.01, 1.02, 1.05, 1.1, 1.5, 2.0};
    case 7: return {1.0, 1.333, 1.833, 2.0};                           // T_gate us
    case 8: return {0, 1, 5, 10, 20, 50, 100, 200};                    // alpha_S
    case 9: return {2.83, 28.3, 141.5};                                // omega_m kHz
    case 10: return {0.90, 0.95, 1.0, 1.05, 1.10};                     // amplitude ratio r
  }
  throw ConfigError("unknown sweep id " + std::to_string(sweep));
}

std::vector<double> default_grid2(int sweep) {
  if (sweep == 9) return {2.0};                        // T_gate us
  if (sweep == 10) return {-10, -5, 0, 5, 10};         // phase error deg
  return {};
}

SweepConfig resolve(SweepConfig c) {
  if (c.sweep < 1 || c.sweep > 10) throw ConfigError("unknown sweep id " + std::to_string(c.sweep));
  if (c.grid.empty()) c.grid = default_grid(c.sweep);
  if (c.grid2.empty()) c.grid2 = default_grid2(c.sweep);
  if (c.paper_scale) {
    c.n_traj = 500;
    c.n_steps = 2000;
  }
  if (c.n_traj < 1) throw ConfigError("trajectory count must be at least 1");
  if (c.n_steps < 500) throw ConfigError("n_steps must be at least 500");
  if (c.workers < 1) throw ConfigError("workers must be at least 1");
  if (!(c.T_gate > 0 && c.omega_m > 0 && c.tau_c > 0)) throw ConfigError("times and rates must be positive");
  if (c.platform != "nv" && c.platform != "sic3c") throw ConfigError("platform must be nv or sic3c");
  if ((c.sweep == 9 || c.sweep == 10) && c.grid2.empty()) throw ConfigError("second grid is empty");
  return c;
}

namespace {

struct Ctx {
  const SweepConfig& c;
  std::vector<ResultRecord> out;
  int point = 0;

  GateSetup base() const {
    GateSetup g;
    g.traj.T_gate = c.T_gate;
    g.traj.n_samples = c.n_steps;
    g.ham.omega_m = c.omega_m;
    g.ham.alpha_cd = c.alpha_cd;
    g.platform = c.platform == "sic3c" ? Platform::SiC3C : Platform::NV;
    return g;
  }

  GateRunConfig runcfg(bool noisy = true) const {
    GateRunConfig r;
    r.noise.bath = noisy && c.bath;
    r.noise.lindblad = noisy && c.lindblad;
    r.noise.bath_cfg.tau_c = c.tau_c;
    r.noise.T1 = c.T1;
    r.noise.T1rho = c.T1rho;
    r.noise.platform = c.platform == "sic3c" ? Platform::SiC3C : Platform::NV;
    r.n_traj = c.n_traj;
    r.grid.n_steps = c.n_steps;
    r.bootstrap = c.bootstrap;
    r.workers = c.workers;
    return r;
  }

  void add(const std::string& label, std::map<std::string, double> params, const GateSetup& g,
           const GateRunConfig& rc) {
    const RunIds ids{c.seed, static_cast<std::uint64_t>(c.sweep), static_cast<std::uint64_t>(point++)};
    const GatePoint p = run_gate(g, rc, ids);
    ResultRecord r;
    r.sweep = std::to_string(c.sweep);
    r.label = label;
    r.params = std::move(params);
    r.params["n_traj"] = p.n_traj;
    r.has_metrics = true;
    r.m = p.m;
    r.seed = p.seed;
    r.events = p.events;
    out.push_back(std::move(r));
  }
};

}  // namespace

std::vector<ResultRecord> run_sweep(const SweepConfig& cfg_in) {
  const SweepConfig c = resolve(cfg_in);
  Ctx x{c, {}, 0};
  const double kClampedMax = 1.004;  // MHz, clamped-edge Rabi ceiling at x0 = 5 nm
  switch (c.sweep) {
    case 1:
      for (double om : c.grid) {
        GateSetup g = x.base();
        g.ham.omega_m = om;
        x.add("holonomic", {{"omega_m_MHz", om}, {"T_gate_us", c.T_gate}}, g, x.runcfg());
      }
      break;
    case 2:
      for (double rate : c.grid) {
        if (!(rate > 0)) throw ConfigError("hop rate must be positive");
        SweepConfig cc = c;
        cc.tau_c = 1e6 / rate;
        Ctx y{cc, {}, x.point};
        GateSetup g = y.base();
        y.add("holonomic", {{"hop_rate_Hz", rate}, {"tau_c_us", cc.tau_c}}, g, y.runcfg());
        GateSetup b = y.base();
        b.rabi_baseline = true;
        y.add("rabi_baseline",
              {{"hop_rate_Hz", rate}, {"tau_c_us", cc.tau_c},
               {"T_gate_us", rabi_baseline_duration(c.omega_m)}},
              b, y.runcfg());
        x.point = y.point;
        for (auto& r : y.out) x.out.push_back(std::move(r));
      }
      break;
    case 3:
      for (double khz : c.grid) {
        GateSetup g = x.base();
        g.ham.delta0 = khz * 1e-3;
        x.add("holonomic", {{"detuning_kHz", khz}}, g, x.runcfg());
      }
      break;
    case 4:
      for (double om : c.grid)
        for (int clamped = 0; clamped < 2; ++clamped)
          for (int drag = 1; drag >= 0; --drag) {
            GateSetup g = x.base();
            g.ham.omega_m = clamped ? std::min(om, kClampedMax) : om;
            g.ham.alpha_cd = drag ? c.alpha_cd : 0.0;
            x.add(std::string(clamped ? "clamped" : "simply_supported") + (drag ? "" : "_bare"),
                  {{"omega_m_request_MHz", om}, {"omega_m_MHz", g.ham.omega_m}, {"alpha_cd", g.ham.alpha_cd}},
                  g, x.runcfg());
          }
      break;
    case 5:
      for (double lam : c.grid)
        for (int noisy = 0; noisy < 2; ++noisy) {
          GateSetup g = x.base();
          g.ham.alpha_cd = lam;
          x.add(noisy ? "noisy" : "noiseless", {{"lambda", lam}}, g, x.runcfg(noisy));
        }
      break;
    case 6:
      for (double a : c.grid) {
        GateSetup g = x.base();
        g.ham.alpha_cd = a;
        x.add("noiseless", {{"alpha_cd", a}}, g, x.runcfg(false));
      }
      break;
    case 7:
      for (double T : c.grid) {
        GateSetup g = x.base();
        g.traj.T_gate = T;
        x.add("holonomic", {{"T_gate_us", T}}, g, x.runcfg());
      }
      break;
    case 8:
      for (double as : c.grid) {
        GateSetup g = x.base();
        g.ham.stark_compensated = false;
        g.ham.stark_scale = as;
        const double dac = dq_stark_scale(g.ham.omega_m, platform_params(g.platform)).delta_ac_khz;
        x.add("uncompensated", {{"alpha_S", as}, {"delta_ac_eff_kHz", as * dac}}, g, x.runcfg());
      }
      break;
    case 9:
      for (double khz : c.grid)
        for (double T : c.grid2) {
          GateSetup g = x.base();
          g.ham.omega_m = khz * 1e-3;
          g.traj.T_gate = T;
          x.add("hbar", {{"omega_m_kHz", khz}, {"T_gate_us", T}}, g, x.runcfg());
        }
      break;
    case 10:
      for (double r : c.grid)
        for (double deg : c.grid2) {
          GateSetup g = x.base();
          const double dp = deg * kPi / 180;
          const cplx k = 0.5 * (1.0 + r * std::exp(-kI * dp));
          g.ham.skew = LegSkew{std::abs(k) - 1.0, std::arg(k)};
          x.add("quadrature", {{"r", r}, {"dphi_deg", deg}}, g, x.runcfg());
        }
      break;
  }
  return x.out;
}

SiVScan siv_regime_c_scan(const std::vector<double>& T_ns, double omega_m_MHz,
                          const std::string& regime) {
  const SiVPlatform sp = siv_platform(omega_m_MHz, regime);
  SiVScan s;
  for (double t : T_ns) {
    GateSetup g;
    g.platform = Platform::SiV;
    g.traj.T_gate = t * 1e-3;
    g.ham.omega_m = sp.omega_m;
    g.ham.alpha_cd = sp.alpha_cd;
    GateRunConfig rc;
    rc.noise.bath = false;
    rc.noise.lindblad = true;
    rc.noise.T1 = sp.T1_orb;
    rc.noise.T1rho = 0;
    rc.noise.platform = Platform::SiV;
    rc.grid = {2000, 1e-11, 1e-9};
    rc.bootstrap = 0;
    const GatePoint p = run_gate(g, rc, RunIds{0, 11, 0});
    s.T_ns.push_back(t);
    s.F_cond.push_back(p.m.F_avg);
    s.leakage.push_back(p.m.leakage);
    if (p.m.F_avg > s.best_F) {
      s.best_F = p.m.F_avg;
      s.best_T_ns = t;
    }
  }
  return s;
}

}  // namespace holo
