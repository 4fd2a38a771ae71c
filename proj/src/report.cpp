// Copyright 2026 The Catlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "catlab/report.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

namespace catlab {

nlohmann::json ReportEnvelope::to_json() const {
  return {{"schema_version", kSchemaVersion},
          {"tool", "catlab"},
          {"tool_version", kToolVersion},
          {"command", command},
          {"config", config},
          {"timestamp", timestamp},
          {"results", results},
          {"pass", pass},
          {"summary", summary}};
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ReportEnvelope make_report(std::string command, nlohmann::json config, nlohmann::json results, bool pass,
                           std::string summary) {
  return {std::move(command), std::move(config), std::move(results), pass, std::move(summary), utc_timestamp()};
}

namespace {

std::string csv_cell(const nlohmann::json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

std::string to_csv(const ReportEnvelope& report) {
  if (!report.results.contains("table") || !report.results["table"].is_array())
    throw FormatError("csv output is only available for tabular results (" + report.command + " is not tabular)");
  const auto& rows = report.results["table"];
  std::ostringstream out;
  if (rows.empty()) return "";
  std::vector<std::string> keys;
  for (const auto& [k, v] : rows.front().items()) keys.push_back(k);
  for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
  out << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << (r.contains(keys[i]) ? csv_cell(r[keys[i]]) : "");
    out << "\n";
  }
  return out.str();
}

std::string render(const ReportEnvelope& report, const std::string& format) {
  if (format == "json") return report.to_json().dump(2) + "\n";
  if (format == "csv") return to_csv(report);
  throw FormatError("unknown format '" + format + "' (json, csv)");
}

}  // namespace catlab
