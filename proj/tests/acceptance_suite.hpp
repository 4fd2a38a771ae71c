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

#include <ostream>
#include <string>
#include <vector>

namespace catlab::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  double seconds = 0;
};

/// Runs the listed criteria (all of 1..9 when empty).
std::vector<CriterionResult> run(const std::vector<int>& only = {});

/// One line per criterion; returns true iff all passed.
bool print(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace catlab::acceptance
