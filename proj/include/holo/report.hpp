#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "holo/sweeps.hpp"
#include "json.hpp"

namespace holo {

using json = nlohmann::ordered_json;

json to_json(const SweepConfig& c);
// Unknown keys and type mismatches throw ConfigError.
SweepConfig sweep_config_from_json(const json& j, SweepConfig base = {});

json to_json(const ProcessMetrics& m);
ProcessMetrics metrics_from_json(const json& j);
json to_json(const QecPoint& q);
QecPoint qec_point_from_json(const json& j);
json to_json(const ResultRecord& r);
ResultRecord record_from_json(const json& j);

enum class Format { Json, Csv };
Format format_from_string(const std::string& s);

// Fixed metric columns following the sorted union of point parameters.
inline const std::vector<std::string> kMetricColumns = {
    "F_leg", "F_e", "F_avg", "F_avg_unc", "leakage", "p_surv", "F_eff",
    "F_avg_ci_lo", "F_avg_ci_hi", "leakage_ci_lo", "leakage_ci_hi"};
inline const std::vector<std::string> kQecColumns = {
    "code", "variant", "dims", "s", "trials", "failures", "p_L", "ci_lo", "ci_hi"};

void write_records_csv(std::ostream& os, const std::vector<ResultRecord>& records);
json report_json(const json& config, const std::vector<ResultRecord>& records);

// Writes path as JSON (config echo + records) or CSV; throws ConfigError when unwritable.
void emit_report(const std::vector<ResultRecord>& records, const json& config,
                 const std::string& path, Format f);

// Throws ConfigError on failure.
void write_text_file(const std::string& path, const std::string& text);
std::string format_double(double v);

}  // namespace holo
