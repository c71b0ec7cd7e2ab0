#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "holo/device.hpp"
#include "holo/report.hpp"
#include "holo/sector.hpp"

namespace fs = std::filesystem;
using namespace holo;

namespace {

struct Common {
  std::string config;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int workers = 0;
  std::string out;
  std::string format = "json";
  bool paper_scale = false;
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config '" + path + "'");
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

std::uint64_t parse_seed(const std::string& s, const char* what) {
  try {
    // stoull accepts a sign and wraps negatives.
    if (s.empty() || !std::isdigit(static_cast<unsigned char>(s[0]))) throw std::invalid_argument(s);
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string(what) + " is not an unsigned integer: '" + s + "'");
  }
}

// Flag beats environment, environment beats config file.
std::uint64_t resolve_seed(const Common& c, std::uint64_t from_config) {
  if (c.seed_set) return c.seed;
  if (const char* e = std::getenv("HOLO_SEED")) return parse_seed(e, "HOLO_SEED");
  return from_config;
}

std::string resolve_out(const Common& c) {
  std::string out = c.out;
  if (out.empty())
    if (const char* e = std::getenv("HOLO_OUT_DIR")) out = e;
  if (out.empty()) out = "out";
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw ConfigError("cannot create output directory '" + out + "': " + ec.message());
  return out;
}

std::string ext(Format f) { return f == Format::Json ? ".json" : ".csv"; }

void emit_flat(const std::map<std::string, double>& kv, const json& config, const std::string& path,
               Format f) {
  if (f == Format::Json) {
    json j = json::object();
    for (const auto& [k, v] : kv) j[k] = v;
    json doc{{"config", config}, {"report", j}};
    write_text_file(path, doc.dump(2) + "\n");
    return;
  }
  std::ostringstream os;
  os << "key,value\n";
  for (const auto& [k, v] : kv) os << k << "," << format_double(v) << "\n";
  write_text_file(path, os.str());
}

template <class T>
T get_or(const json& j, const char* key, T def) {
  if (!j.contains(key)) return def;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

void check_keys(const json& j, const std::set<std::string>& known, const char* what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + " config must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ConfigError(std::string("unknown ") + what + " config key '" + k + "'");
}

int cmd_sweep(const Common& c, int sweep_id, bool waveform, bool trace) {
  const json cj = load_config(c.config);
  SweepConfig cfg = sweep_config_from_json(cj);
  if (sweep_id) cfg.sweep = sweep_id;
  cfg.seed = resolve_seed(c, cfg.seed);
  if (c.workers) cfg.workers = c.workers;
  if (c.paper_scale) cfg.paper_scale = true;
  const Format f = format_from_string(c.format);
  cfg = resolve(cfg);
  const std::string out = resolve_out(c);
  const std::string stem = out + "/sweep" + std::to_string(cfg.sweep);
  if (waveform) {
    TrajectoryParams tp;
    tp.T_gate = cfg.T_gate;
    tp.n_samples = cfg.n_steps;
    const TrajectorySamples s = sample(Trajectory(tp));
    std::ostringstream os;
    write_waveform_csv(os, s, satd_waveform(s, cfg.alpha_cd));
    write_text_file(stem + "_waveform.csv", os.str());
  }
  if (trace) {
    SurfaceBathConfig bc;
    bc.tau_c = cfg.tau_c;
    Rng geo(child_seed(cfg.seed, cfg.sweep, 0, ~0ULL));
    const BathGeometry g = sample_bath_geometry(bc, geo);
    Rng rng(child_seed(cfg.seed, cfg.sweep, 0, 0));
    const FieldTrace tr = kmc_field_trace(g, bc, sample_initial_spins(bc, rng), cfg.T_gate, rng);
    std::ostringstream os;
    write_trace_csv(os, tr);
    write_text_file(stem + "_trace.csv", os.str());
  }
  const auto records = run_sweep(cfg);
  emit_report(records, to_json(cfg), stem + ext(f), f);
  std::cerr << "sweep " << cfg.sweep << ": " << records.size() << " records -> " << stem + ext(f)
            << "\n";
  return 0;
}

CodeKind code_kind(const std::string& s) {
  if (s == "css") return CodeKind::ToricCSS;
  if (s == "xzzx") return CodeKind::ToricXZZX;
  if (s == "planar") return CodeKind::PlanarXZZX;
  throw ConfigError("code kind must be css, xzzx or planar, got '" + s + "'");
}

int cmd_qec(const Common& c) {
  const json cj = load_config(c.config);
  check_keys(cj, {"codes", "scales", "trials", "seed", "workers", "channel", "erasure_includes_identity",
              "edge_weights"},
             "qec");
  std::vector<QecSpec> specs;
  if (cj.contains("codes")) {
    for (const auto& e : cj.at("codes")) {
      check_keys(e, {"kind", "d", "d_r", "d_c"}, "qec code");
      const CodeKind k = code_kind(get_or<std::string>(e, "kind", ""));
      const int d = get_or(e, "d", 0);
      specs.push_back({k, get_or(e, "d_r", d), get_or(e, "d_c", d)});
    }
  } else {
    specs = {{CodeKind::ToricCSS, 3, 3}, {CodeKind::ToricCSS, 5, 5}, {CodeKind::ToricXZZX, 3, 3},
             {CodeKind::ToricXZZX, 5, 5}, {CodeKind::PlanarXZZX, 3, 7}};
  }
  if (specs.empty()) throw ConfigError("qec code list is empty");
  const auto scales = get_or<std::vector<double>>(cj, "scales", {1.0, 10.0, 50.0});
  if (scales.empty()) throw ConfigError("qec scale list is empty");
  long trials = get_or<long>(cj, "trials", 1000);
  if (c.paper_scale) trials = 5000;
  const std::uint64_t seed = resolve_seed(c, get_or<std::uint64_t>(cj, "seed", 20240607));
  const int workers = c.workers ? c.workers : get_or(cj, "workers", 1);
  if (workers < 1) throw ConfigError("workers must be at least 1");
  QecChannel ch;
  if (cj.contains("channel")) {
    const json& q = cj.at("channel");
    check_keys(q, {"p_era", "p_Z", "p_dep", "p_XY"}, "qec channel");
    ch.p_era = get_or(q, "p_era", ch.p_era);
    ch.p_Z = get_or(q, "p_Z", ch.p_Z);
    ch.p_dep = get_or(q, "p_dep", ch.p_dep);
    ch.p_XY = get_or(q, "p_XY", ch.p_XY);
  }
  ch.erasure_includes_identity = get_or(cj, "erasure_includes_identity", false);
  const std::string wmode = get_or<std::string>(cj, "edge_weights", "uniform");
  if (wmode == "likelihood")
    ch.weights = EdgeWeights::Likelihood;
  else if (wmode != "uniform")
    throw ConfigError("edge_weights must be uniform or likelihood");
  const Format f = format_from_string(c.format);
  const std::string out = resolve_out(c);

  const auto points = run_threshold_sweep(specs, scales, ch, trials, seed, workers);
  std::vector<ResultRecord> recs;
  for (const auto& p : points) {
    ResultRecord r;
    r.sweep = "qec";
    r.label = p.code + "_" + p.variant + "_" + p.dims;
    r.params = {{"s", p.s}};
    r.has_qec = true;
    r.q = p;
    r.seed = p.seed;
    recs.push_back(r);
  }
  json echo{{"codes", json::array()},
            {"scales", scales},
            {"trials", trials},
            {"seed", seed},
            {"workers", workers},
            {"channel", {{"p_era", ch.p_era}, {"p_Z", ch.p_Z}, {"p_dep", ch.p_dep}, {"p_XY", ch.p_XY}}},
            {"erasure_includes_identity", ch.erasure_includes_identity},
            {"edge_weights", wmode}};
  for (const auto& s : specs)
    echo["codes"].push_back({{"kind", s.kind == CodeKind::ToricCSS    ? "css"
                                      : s.kind == CodeKind::ToricXZZX ? "xzzx"
                                                                      : "planar"},
                             {"d_r", s.d_r},
                             {"d_c", s.d_c}});
  emit_report(recs, echo, out + "/qec" + ext(f), f);
  for (const auto& p : points)
    std::cerr << p.code << " " << p.variant << " " << p.dims << " s=" << p.s << " p_L=" << p.p_L
              << " (" << p.failures << "/" << p.trials << ")\n";
  return 0;
}

int cmd_sector(const Common& c) {
  const json cj = load_config(c.config);
  check_keys(cj, {"omega_m", "n_lunes", "sigma"}, "sector");
  SectorInjectionOptions o;
  o.omega_m = get_or(cj, "omega_m", o.omega_m);
  o.n_lunes = get_or(cj, "n_lunes", o.n_lunes);
  const double sigma = get_or(cj, "sigma", 1e-3);
  const Format f = format_from_string(c.format);
  const std::string out = resolve_out(c);
  std::map<std::string, double> kv;
  for (Sector s : {Sector::A1, Sector::A2, Sector::Ex, Sector::Ey}) {
    const auto r = sector_injection(s, o);
    const std::string k = "injection." + to_string(s) + ".";
    kv[k + "f0"] = r.f0;
    kv[k + "fB"] = r.fB;
    kv[k + "coupled"] = r.coupled;
    if (!r.coupled) continue;
    // Slopes of the populated direction only; the empty one is numerical noise.
    if (r.f0 > 0.5) kv[k + "slope_W0"] = r.slope_W0;
    if (r.fB > 0.5) {
      kv[k + "slope_WB"] = r.slope_WB;
      kv[k + "slope_phase_1"] = r.slope_phase_1;
      kv[k + "slope_phase_n"] = r.slope_phase_n;
    }
  }
  std::vector<double> alpha, beta;
  for (int i = 0; i <= 8; ++i) alpha.push_back(i * kPi / 16);
  for (int i = 0; i < 8; ++i) beta.push_back(i * kPi / 4);
  const auto m = mixed_sector_scan(alpha, beta, sigma);
  kv["mixed.max_dev_f0"] = m.max_dev_f0;
  kv["mixed.max_dev_fB"] = m.max_dev_fB;
  kv["mixed.max_dev_single_point"] = m.max_dev_single;
  const struct {
    const char* tag;
    double x, a, p;
  } sp[] = {{"detuning", 0.10, 0, 0}, {"amplitude", 0, 0.10, 0}, {"phase", 0, 0, kPi / 18},
            {"combined", 0.10, 0.10, kPi / 18}};
  for (const auto& e : sp) {
    const auto r = spurion_robustness(e.x, e.a, e.p);
    const std::string k = std::string("spurion.") + e.tag + ".";
    kv[k + "f0"] = r.f0;
    kv[k + "fB"] = r.fB;
    kv[k + "fB_analytic_detuning"] = r.fB_analytic_delta;
    kv[k + "fB_analytic_amplitude"] = r.fB_analytic_amp;
    kv[k + "fB_analytic_phase"] = r.fB_analytic_phase;
  }
  json echo{{"omega_m", o.omega_m}, {"n_lunes", o.n_lunes}, {"sigma", sigma}};
  emit_flat(kv, echo, out + "/sector" + ext(f), f);
  return 0;
}

int cmd_device(const Common& c) {
  const json cj = load_config(c.config);
  check_keys(cj, {"delta", "gap_nm", "T_gate_us", "L_um", "h_nm", "h_d_um", "Q_L", "eta_sh"}, "device");
  MembraneSpec ms;
  ms.L_um = get_or(cj, "L_um", ms.L_um);
  ms.h_nm = get_or(cj, "h_nm", ms.h_nm);
  HbarSpec hs;
  hs.h_d_um = get_or(cj, "h_d_um", hs.h_d_um);
  hs.Q_L = get_or(cj, "Q_L", hs.Q_L);
  hs.eta_sh = get_or(cj, "eta_sh", hs.eta_sh);
  const double delta = get_or(cj, "delta", 0.01), gap = get_or(cj, "gap_nm", 200.0),
               T = get_or(cj, "T_gate_us", 7.0);
  const Format f = format_from_string(c.format);
  const std::string out = resolve_out(c);
  const auto kv = device_report(ms, hs, delta, gap, T);
  if (f == Format::Json) {
    json j = json::object();
    for (const auto& [k, v] : kv) j[k] = v;
    write_text_file(out + "/device.json", j.dump(2) + "\n");
  } else {
    emit_flat(kv, {}, out + "/device.csv", f);
  }
  return 0;
}

int cmd_overhead(const Common& c) {
  const json cj = load_config(c.config);
  check_keys(cj, {"p_era", "p_Z", "p_dep", "p_XY", "p_dep_rabi", "p_XY_scan"}, "overhead");
  OverheadInputs in;
  in.nominal.p_era = get_or(cj, "p_era", in.nominal.p_era);
  in.nominal.p_Z = get_or(cj, "p_Z", in.nominal.p_Z);
  in.nominal.p_dep = get_or(cj, "p_dep", in.nominal.p_dep);
  in.nominal.p_XY = get_or(cj, "p_XY", in.nominal.p_XY);
  in.p_dep_rabi = get_or(cj, "p_dep_rabi", in.p_dep_rabi);
  const auto scan = get_or<std::vector<double>>(cj, "p_XY_scan", {});
  const Format f = format_from_string(c.format);
  const std::string out = resolve_out(c);
  std::map<std::string, double> kv;
  auto put = [&](const std::string& pre, const OverheadReport& r) {
    kv[pre + "p_eff"] = r.p_eff;
    for (const OverheadRow* row : {&r.rabi, &r.erasure_css, &r.xzzx}) {
      const std::string k = pre + row->label + ".";
      kv[k + "ratio"] = row->ratio;
      kv[k + "d"] = row->d;
      kv[k + "qubits"] = row->qubits;
      kv[k + "saving"] = row->saving;
    }
  };
  put("", overhead_model(in));
  for (std::size_t i = 0; i < scan.size(); ++i) {
    OverheadInputs s = in;
    s.nominal.p_XY = scan[i];
    const std::string pre = "p_XY_scan." + std::to_string(i) + ".";
    kv[pre + "p_XY"] = scan[i];
    put(pre, overhead_model(s));
  }
  json echo{{"p_era", in.nominal.p_era}, {"p_Z", in.nominal.p_Z},  {"p_dep", in.nominal.p_dep},
            {"p_XY", in.nominal.p_XY},   {"p_dep_rabi", in.p_dep_rabi}, {"p_XY_scan", scan}};
  emit_flat(kv, echo, out + "/overhead" + ext(f), f);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holonomic qutrit gate simulator"};
  app.require_subcommand(1);
  Common c;
  std::string seed_str;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--config", c.config, "JSON configuration file");
    s->add_option("--seed", seed_str, "Master seed (overrides HOLO_SEED and config)");
    s->add_option("--workers", c.workers, "Worker threads");
    s->add_option("--out", c.out, "Output directory (overrides HOLO_OUT_DIR)");
    s->add_option("--format", c.format, "json or csv");
    s->add_flag("--paper-scale", c.paper_scale, "Full trajectory, step and trial counts");
  };
  int sweep_id = 0;
  bool waveform = false, trace = false;
  auto* sw = app.add_subcommand("sweep", "Run one numbered sweep");
  add_common(sw);
  sw->add_option("--id", sweep_id, "Sweep number 1-10");
  sw->add_flag("--waveform", waveform, "Also write the control waveform CSV");
  sw->add_flag("--trace", trace, "Also write one surface-spin field trace CSV");
  auto* qec = app.add_subcommand("qec", "Code-capacity QEC Monte Carlo");
  add_common(qec);
  auto* sec = app.add_subcommand("sector", "Sector-injection, mixed-sector and spurion diagnostics");
  add_common(sec);
  auto* dev = app.add_subcommand("device", "Membrane, tuning and HBAR device report");
  add_common(dev);
  auto* ovh = app.add_subcommand("overhead", "Surface-code overhead extrapolation");
  add_common(ovh);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (!seed_str.empty()) {
      c.seed = parse_seed(seed_str, "--seed");
      c.seed_set = true;
    }
    if (c.workers < 0) throw ConfigError("workers must be at least 1");
    if (*sw) return cmd_sweep(c, sweep_id, waveform, trace);
    if (*qec) return cmd_qec(c);
    if (*sec) return cmd_sector(c);
    if (*dev) return cmd_device(c);
    if (*ovh) return cmd_overhead(c);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
