/***********************************************************************
*  Copyright 2026 the nsk authors
*
*  Licensed under the Apache License, Version 2.0 (the "License");
*  you may not use this file except in compliance with the License.
*  You may obtain a copy of the License at
*
*      http://www.apache.org/licenses/LICENSE-2.0
*
*  Unless required by applicable law or agreed to in writing, software
*  distributed under the License is distributed on an "AS IS" BASIS,
*  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
*  implied. See the License for the specific language governing
*  permissions and limitations under the License.
***********************************************************************/

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nsk {

/// One named verification suite with its pinned desk-scale configuration.
/// `details` is a JSON object text with the measured quantities.
struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string details;
  double seconds = 0.0;
};

const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name);

/// Runs every suite, prints one pass/fail line each, returns the number of
/// failures and (optionally) the verdict JSON text.
int run_all_suites(std::ostream& out, std::string* verdict_json);

}  // namespace nsk
