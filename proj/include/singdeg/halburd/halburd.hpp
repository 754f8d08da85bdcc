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

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "singdeg/oracle/degree_oracle.hpp"
#include "singdeg/singularity/singularity.hpp"

namespace singdeg {

class HalburdError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
/// The counted value occurs in no pattern.
class EmptyCensus : public HalburdError {
public:
    using HalburdError::HalburdError;
};
/// The two censuses count different occurrence sequences.
class NotComparable : public HalburdError {
public:
    using HalburdError::HalburdError;
};
class UnsupportedTail : public HalburdError {
public:
    using HalburdError::HalburdError;
};
/// Forward substitution produced a negative or fractional count, or two
/// censuses disagree. Usually a wrong or missing pattern.
class InconsistentBalance : public HalburdError {
public:
    InconsistentBalance(const std::string& what, long n) : HalburdError(what), n_(n) {}
    long index() const { return n_; }

private:
    long n_;
};

/// Spontaneous occurrences Z_0 .. Z_N of one family value; Z_n = 0 for n <= 0.
struct OccurrenceSeq {
    std::string label;  // "Z" or "U"
    ProjPoint value;
    std::vector<long> values;

    long at(long n) const;  // throws std::out_of_range past the solved range
};

/// One residue-class table: value values[n mod period] for n >= start.
struct PeriodicComponent {
    long period = 1;
    long start = 0;
    std::vector<mpq_class> values;
};

struct DeltaComponent {
    long index = 0;
    mpq_class value;
};

/// g(start + j) = order_at(j) of a linear recurrence; zero before start.
struct ExponentialComponent {
    long start = 0;
    std::vector<long> recurrence;
    std::vector<long> seeds;
    long sign = 1;

    mpz_class at(long n) const;
};

struct SourceTerm {
    std::vector<PeriodicComponent> periodic;
    std::vector<DeltaComponent> deltas;
    std::vector<ExponentialComponent> exponential;

    mpq_class at(long n) const;
    bool empty() const { return periodic.empty() && deltas.empty() && exponential.empty(); }
    bool growing() const { return !exponential.empty(); }
    SourceTerm negated() const;
    SourceTerm operator+(const SourceTerm& o) const;
    std::string to_string() const;
};

struct LagTerm {
    long lag = 0;
    long coefficient = 1;
};

/// coefficient * sum_{l >= 0} Z_{n - start - l * step}
struct LagTail {
    long start = 0;
    long step = 1;
    long coefficient = 1;
};

/// Number of preimages of `value` at step n:
/// sum of lag terms and tails on one occurrence sequence, plus a source.
struct Census {
    ProjPoint value;
    std::string label;
    std::vector<LagTerm> lags;
    std::vector<LagTail> tails;
    SourceTerm source;

    bool has_occurrences() const { return !lags.empty() || !tails.empty(); }
    mpq_class evaluate(const OccurrenceSeq& z, long n) const;
    std::string to_string() const;
};

/// lhs lags = rhs lags + source, on one occurrence sequence.
struct BalanceEquation {
    ProjPoint w1, w2;
    std::string label;
    std::vector<LagTerm> lhs, rhs;
    std::vector<LagTail> lhs_tails, rhs_tails;
    SourceTerm source;
    Census census1, census2;

    std::string to_string() const;
};

/// Integer polynomial in lambda, coefficients lowest degree first.
struct CharPoly {
    std::vector<mpz_class> coefficients;
    std::string provenance = "finite-pattern";  // or "generating-function"
    long clearing_period = 0;                   // p of the factor (1 - lambda^-p), 0 if none

    long degree() const { return static_cast<long>(coefficients.size()) - 1; }
    std::string to_string() const;           // expanded
    std::string factored_string() const;     // linear factors over Q split off
    bool operator==(const CharPoly& o) const { return coefficients == o.coefficients; }
};

/// Product of integer polynomials, each given lowest degree first.
CharPoly char_poly_product(const std::vector<std::vector<long>>& factors);

struct RootResult {
    double value = 0;
    bool caution = false;  // no real root >= 1
};

struct DynamicalDegreeResult {
    double lambda = 1;
    std::string winner;  // "characteristic-root", "anticonfined-growth" or "tie"
    double char_root = 0;
    std::vector<double> anticonfined_rates;
    std::string closed_form;  // "phi", "phi^2", "plastic" when recognized
    bool caution = false;
};

struct HalburdOptions {
    /// Test hook: edits the patterns before any census is built.
    std::function<void(SingularityAnalysis&)> pattern_hook;
};

/// Label of the occurrence sequence of each family (mirror families share one).
std::vector<std::string> family_labels(const SingularityAnalysis& a);

Census preimage_census(const SingularityAnalysis& a, const ProjPoint& w);
BalanceEquation build_balance(const Census& c1, const Census& c2);
/// Homogeneous part with sources dropped; periodic lag tails are summed as
/// geometric series and cleared.
CharPoly express_char_poly(const BalanceEquation& b);

struct ForwardSolution {
    OccurrenceSeq z;
    DegreeSequence degrees;  // mode Recurrence
};
/// Z_1 from d_1 = 1 through census1, then Z_n from the balance for n >= 2;
/// d_n from census1 and checked against census2.
ForwardSolution solve_balance_forward(const BalanceEquation& b, int N);

/// Largest real root (Sturm isolation, bisection to 1e-12), skipping roots of
/// the recorded clearing factor.
RootResult largest_root(const CharPoly& p);
DynamicalDegreeResult dynamical_degree(const CharPoly& c, const SingularityAnalysis& a);

/// Every special value with a nonempty census.
std::vector<Census> all_censuses(const SingularityAnalysis& a);
/// Default pairing: (pattern-initial value, infinity) unless the infinity
/// census has a growing source; then the most frequent other pattern value.
std::pair<ProjPoint, ProjPoint> choose_pair(const SingularityAnalysis& a);

struct CensusCheck {
    ProjPoint value;
    bool ok = true;
    long first_mismatch = -1;
};
/// Each census evaluated on the solved sequence against the degrees.
std::vector<CensusCheck> census_duality(const std::vector<Census>& censuses, const ForwardSolution& s);

struct HalburdResult {
    std::vector<Census> censuses;
    BalanceEquation balance;
    CharPoly char_poly;
    std::vector<double> char_roots_real;
    DynamicalDegreeResult degree;
    std::optional<ForwardSolution> forward;
    std::vector<CensusCheck> duality;
    bool express_extrapolated = false;  // the forward solve rests on unconfined patterns
    std::string forward_error;
};

/// Full pipeline on a finished singularity analysis.
HalburdResult run_halburd(SingularityAnalysis a, int N, const HalburdOptions& opts = {});

nlohmann::json to_json(const SourceTerm& s);
nlohmann::json to_json(const Census& c);
nlohmann::json to_json(const BalanceEquation& b);
nlohmann::json to_json(const CharPoly& p);
nlohmann::json to_json(const DynamicalDegreeResult& r);

}  // namespace singdeg
