#include "holo/report.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace holo {

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

json to_json(const SweepConfig& c) {
  return json{{"sweep", c.sweep},         {"grid", c.grid},         {"grid2", c.grid2},
              {"n_traj", c.n_traj},       {"n_steps", c.n_steps},   {"paper_scale", c.paper_scale},
              {"seed", c.seed},           {"workers", c.workers},   {"T_gate", c.T_gate},
              {"omega_m", c.omega_m},     {"alpha_cd", c.alpha_cd}, {"tau_c", c.tau_c},
              {"T1", c.T1},               {"T1rho", c.T1rho},       {"bath", c.bath},
              {"lindblad", c.lindblad},   {"bootstrap", c.bootstrap}, {"platform", c.platform}};
}

namespace {

template <class T>
void take(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

SweepConfig sweep_config_from_json(const json& j, SweepConfig c) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {
      "sweep", "grid", "grid2", "n_traj", "n_steps", "paper_scale", "seed", "workers", "T_gate",
      "omega_m", "alpha_cd", "tau_c", "T1", "T1rho", "bath", "lindblad", "bootstrap", "platform"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ConfigError("unknown sweep config key '" + k + "'");
  take(j, "sweep", c.sweep);
  take(j, "grid", c.grid);
  take(j, "grid2", c.grid2);
  take(j, "n_traj", c.n_traj);
  take(j, "n_steps", c.n_steps);
  take(j, "paper_scale", c.paper_scale);
  take(j, "seed", c.seed);
  take(j, "workers", c.workers);
  take(j, "T_gate", c.T_gate);
  take(j, "omega_m", c.omega_m);
  take(j, "alpha_cd", c.alpha_cd);
  take(j, "tau_c", c.tau_c);
  take(j, "T1", c.T1);
  take(j, "T1rho", c.T1rho);
  take(j, "bath", c.bath);
  take(j, "lindblad", c.lindblad);
  take(j, "bootstrap", c.bootstrap);
  take(j, "platform", c.platform);
  return c;
}

json to_json(const ProcessMetrics& m) {
  return json{{"F_leg", m.F_leg},
              {"F_e", m.F_e},
              {"F_avg", m.F_avg},
              {"F_avg_unc", m.F_avg_unc},
              {"leakage", m.leakage},
              {"p_surv", m.p_surv},
              {"F_eff", m.F_eff},
              {"F_avg_ci_lo", m.F_avg_ci_lo},
              {"F_avg_ci_hi", m.F_avg_ci_hi},
              {"leakage_ci_lo", m.leakage_ci_lo},
              {"leakage_ci_hi", m.leakage_ci_hi}};
}

ProcessMetrics metrics_from_json(const json& j) {
  ProcessMetrics m;
  m.F_leg = j.at("F_leg").get<double>();
  m.F_e = j.at("F_e").get<double>();
  m.F_avg = j.at("F_avg").get<double>();
  m.F_avg_unc = j.at("F_avg_unc").get<double>();
  m.leakage = j.at("leakage").get<double>();
  m.p_surv = j.at("p_surv").get<double>();
  m.F_eff = j.at("F_eff").get<double>();
  m.F_avg_ci_lo = j.at("F_avg_ci_lo").get<double>();
  m.F_avg_ci_hi = j.at("F_avg_ci_hi").get<double>();
  m.leakage_ci_lo = j.at("leakage_ci_lo").get<double>();
  m.leakage_ci_hi = j.at("leakage_ci_hi").get<double>();
  return m;
}

json to_json(const QecPoint& q) {
  return json{{"code", q.code},     {"variant", q.variant},   {"dims", q.dims},
              {"s", q.s},           {"trials", q.trials},     {"failures", q.failures},
              {"p_L", q.p_L},       {"ci_lo", q.ci_lo},       {"ci_hi", q.ci_hi},
              {"seed", q.seed}};
}

QecPoint qec_point_from_json(const json& j) {
  QecPoint q;
  q.code = j.at("code").get<std::string>();
  q.variant = j.at("variant").get<std::string>();
  q.dims = j.at("dims").get<std::string>();
  q.s = j.at("s").get<double>();
  q.trials = j.at("trials").get<long>();
  q.failures = j.at("failures").get<long>();
  q.p_L = j.at("p_L").get<double>();
  q.ci_lo = j.at("ci_lo").get<double>();
  q.ci_hi = j.at("ci_hi").get<double>();
  q.seed = j.at("seed").get<std::uint64_t>();
  return q;
}

json to_json(const ResultRecord& r) {
  json j{{"sweep", r.sweep}, {"label", r.label}, {"params", r.params}, {"seed", r.seed}};
  if (r.has_metrics) {
    j["metrics"] = to_json(r.m);
    j["trace_events"] = r.events;
  }
  if (r.has_qec) j["qec"] = to_json(r.q);
  return j;
}

ResultRecord record_from_json(const json& j) {
  ResultRecord r;
  r.sweep = j.at("sweep").get<std::string>();
  r.label = j.at("label").get<std::string>();
  r.params = j.at("params").get<std::map<std::string, double>>();
  r.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("metrics")) {
    r.has_metrics = true;
    r.m = metrics_from_json(j.at("metrics"));
    r.events = j.value("trace_events", 0L);
  }
  if (j.contains("qec")) {
    r.has_qec = true;
    r.q = qec_point_from_json(j.at("qec"));
  }
  return r;
}

Format format_from_string(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw ConfigError("format must be json or csv, got '" + s + "'");
}

void write_records_csv(std::ostream& os, const std::vector<ResultRecord>& records) {
  bool qec = false, metrics = false;
  std::set<std::string> keys;
  for (const auto& r : records) {
    qec |= r.has_qec;
    metrics |= r.has_metrics;
    for (const auto& [k, v] : r.params) keys.insert(k);
  }
  if (qec && metrics) throw ConfigError("CSV output cannot mix QEC and process records");
  if (qec) {
    for (std::size_t i = 0; i < kQecColumns.size(); ++i) os << (i ? "," : "") << kQecColumns[i];
    os << "\n";
    for (const auto& r : records) {
      const QecPoint& q = r.q;
      os << q.code << "," << q.variant << "," << q.dims << "," << format_double(q.s) << ","
         << q.trials << "," << q.failures << "," << format_double(q.p_L) << ","
         << format_double(q.ci_lo) << "," << format_double(q.ci_hi) << "\n";
    }
    return;
  }
  os << "sweep,label";
  for (const auto& k : keys) os << "," << k;
  for (const auto& c : kMetricColumns) os << "," << c;
  os << ",seed\n";
  for (const auto& r : records) {
    os << r.sweep << "," << r.label;
    for (const auto& k : keys) {
      const auto it = r.params.find(k);
      os << "," << (it == r.params.end() ? "" : format_double(it->second));
    }
    const json m = to_json(r.m);
    for (const auto& c : kMetricColumns) os << "," << format_double(m.at(c).get<double>());
    os << "," << r.seed << "\n";
  }
}

json report_json(const json& config, const std::vector<ResultRecord>& records) {
  json recs = json::array();
  for (const auto& r : records) recs.push_back(to_json(r));
  return json{{"config", config}, {"records", recs}};
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
  f.close();
  if (!f) throw ConfigError("write failed for '" + path + "'");
}

void emit_report(const std::vector<ResultRecord>& records, const json& config,
                 const std::string& path, Format f) {
  if (records.empty()) throw ConfigError("no records to emit");
  if (f == Format::Json) {
    write_text_file(path, report_json(config, records).dump(2) + "\n");
    return;
  }
  std::ostringstream os;
  write_records_csv(os, records);
  write_text_file(path, os.str());
}

}  // namespace holo
