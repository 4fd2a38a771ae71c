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

#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

namespace catlab {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One command, one report.
struct ReportEnvelope {
  std::string command;
  nlohmann::json config;
  nlohmann::json results;
  bool pass = false;
  std::string summary;
  /// UTC, ISO 8601; the only nondeterministic field.
  std::string timestamp;

  nlohmann::json to_json() const;
};

ReportEnvelope make_report(std::string command, nlohmann::json config, nlohmann::json results, bool pass,
                           std::string summary);

std::string utc_timestamp();

/// CSV of a tabular payload: `results["table"]` must be an array of flat objects.
std::string to_csv(const ReportEnvelope& report);

/// "json" or "csv".
std::string render(const ReportEnvelope& report, const std::string& format);

}  // namespace catlab
