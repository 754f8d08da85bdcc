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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "singdeg/algebra/param_field.hpp"
#include "singdeg/algebra/prime_field.hpp"
#include "singdeg/mapping/mapping.hpp"

namespace singdeg {

enum class OracleMode { Exact, Modp, Recurrence };

std::string to_string(OracleMode m);
std::optional<OracleMode> parse_oracle_mode(std::string_view s);

/// Degrees d_0..d_N of the iterates started at x_0 = u, x_1 = z.
struct DegreeSequence {
    std::vector<long> values;
    OracleMode mode = OracleMode::Exact;
    std::vector<int> votes;  // agreeing primes per entry (modp mode only)
    bool truncated = false;  // stopped early by a resource cap
    std::string truncation_reason;

    std::size_t size() const { return values.size(); }
};

struct OracleConfig {
    std::uint64_t seed = 1;
    int primes = 3;
    int max_redraws = 3;
    long max_degree = 5000;
    std::size_t max_coef_bits = 1000000;
    double time_budget_s = 60.0;
};

class UnstableSpecialization : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Fully symbolic iterates over Q(params, u)(z). Entry n is x_n as a reduced
/// fraction; stops early (truncated = true) when the degree in z exceeds
/// `max_degree` or the time budget runs out.
struct SymbolicIterates {
    std::vector<ParamField> values;
    bool truncated = false;
};
SymbolicIterates iterate_symbolic(const MappingSpec& spec, int N, long max_degree = 200, double time_budget_s = 60.0);

/// Degree in z of a symbolic iterate.
long z_degree(const ParamField& x);

DegreeSequence degree_sequence(const MappingSpec& spec, int N, OracleMode mode, const OracleConfig& cfg = {});

/// Degrees over one prime field without any gcd cancellation.
std::vector<long> unreduced_degrees(const MappingSpec& spec, int N, std::uint64_t seed = 1);

/// First n + 1 violating d_{n+1} <= d1*d_n + d0*d_{n-1}, if any.
std::optional<std::size_t> degree_bound_violation(const MappingSpec& spec, const std::vector<long>& d);

/// CSV with columns n,d_n,mode,votes.
std::string to_csv(const DegreeSequence& seq);

struct LambdaEstimate {
    double lambda = 1.0;
    std::size_t window_begin = 0, window_end = 0;  // inclusive n range used by the fit
    double ratio_min = 0, ratio_max = 0;           // successive ratios d_{n+1}/d_n in the window
    bool polynomial = false;                       // growth fits a power of n better
    int polynomial_order = 0;
    double residual = 0;                           // RSS of the chosen fit
    bool below_one = false;                        // sanity flag
};

/// Least-squares fit of log d_n on the trailing window (default: last half).
LambdaEstimate estimate_lambda(const DegreeSequence& seq, std::optional<std::size_t> window_begin = std::nullopt);

}  // namespace singdeg
