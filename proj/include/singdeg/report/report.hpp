/*
   Copyright 2026 The singdeg Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "singdeg/halburd/halburd.hpp"

namespace singdeg {

inline constexpr const char* kReportFormat = "singdeg-report/1";

struct ReportOptions {
    int max_n = 0;  // 0: largest n <= 20 whose full-method degree stays within 8000
    OracleMode mode = OracleMode::Modp;
    std::uint64_t seed = 1;
    std::size_t max_pattern_length = 24;
    std::vector<std::string> orbit_seeds;
    double tolerance = 0.02;
    bool oracle = true;
    HalburdOptions halburd;  // carries the pattern test hook
};

/// One compared pair of quantities.
struct CheckRow {
    std::string name;
    std::string lhs, rhs;  // what is compared
    std::string tolerance;
    bool pass = false;
    std::string detail;
};

struct AnalysisReport {
    nlohmann::json json;
    std::string summary;
    std::vector<CheckRow> checks;
    int exit_code = 0;  // 0 ok, 2 unresolved pattern, 3 consistency failure
};

/// Singularity analysis, calculus and (optionally) the oracle, with checks.
/// Unresolved patterns and inconsistent balances are reported, not thrown.
AnalysisReport build_report(const MappingSpec& spec, const ReportOptions& opts);

/// Plain-text table of the check rows.
std::string check_table(const std::vector<CheckRow>& rows);

/// Every confined family has a confined family of the inverse with the
/// reversed signatures; detail names the first missing one.
bool inverse_reversal(const MappingSpec& spec, const SingularityAnalysis& a, const TraceOptions& opts, std::string& detail);

/// Largest n <= cap with d_n <= budget on the full-method sequence.
int auto_max_n(const std::vector<long>& degrees, int cap = 20, long budget = 8000);

}  // namespace singdeg
