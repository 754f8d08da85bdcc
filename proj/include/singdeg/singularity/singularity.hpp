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

#include <json.hpp>

#include "singdeg/mapping/mapping.hpp"
#include "singdeg/singularity/laurent.hpp"

namespace singdeg {

/// Limit of one iterate as eps -> 0.
struct PatternEntry {
    ProjPoint value;
    long order = 0;             // |valuation| for 0 and infinity, else 0
    bool depends_on_u = false;  // decided on the reduced limit
    long multiplicity = 0;      // preimage multiplicity of `value`; -1 if unknown
    bool generic = false;       // value not recorded (orbit traces): "G" or a u-free non-special value

    bool is_zero() const { return !value.is_infinite() && value.value().is_zero(); }
    bool is_infinite() const { return value.is_infinite(); }
    bool is_singular() const { return order > 0; }
    std::string to_string() const;  // "0", "inf^2", "-c^2", ...
};

enum class PatternKind { Confined, Unconfined, Cyclic, Anticonfined, Transient };
std::string to_string(PatternKind k);

/// Orders of a run of 0 or infinity entries obeying
/// o_k = r[0] o_{k-1} + ... + r[L-1] o_{k-L}.
struct OrderGrowth {
    std::vector<long> recurrence;
    std::size_t start = 0;    // entry index of the first order in `orders`
    std::vector<long> orders; // computed orders from `start` on
    bool infinite = true;     // the run is infinity (else zero)

    /// Order of tail element j (0-based), extrapolated by the recurrence.
    long order_at(std::size_t j) const;
    /// Largest real root of the recurrence's characteristic polynomial.
    double growth_rate() const;
};

struct SingularityPattern {
    PatternKind kind = PatternKind::Transient;
    ProjPoint seed;
    std::string seed_description;
    int direction = 1;
    std::vector<PatternEntry> entries;   // x_n, x_{n+1}, ... from the seed on
    std::vector<PatternEntry> backward;  // x_{n-2}, x_{n-3}, ... (orbits)
    bool backward_traced = false;
    std::optional<std::size_t> tail_start, period;  // periodic forward tail
    std::optional<OrderGrowth> growth;              // forward order growth
    std::optional<std::size_t> backward_tail_start, backward_period;
    std::optional<OrderGrowth> backward_growth;
    bool inverse_unconfined = false;  // backward tail is an unconfined pattern of the inverse
    long depth_used = 0;
};

struct TraceOptions {
    std::size_t max_pattern_length = 24;
    std::size_t max_orbit_length = 20;
    long initial_depth = 1;
    long max_depth = 128;
    std::uint64_t seed = 1;  // prime and residues for orbit traces
};

class UnresolvedPattern : public std::runtime_error {
public:
    UnresolvedPattern(const std::string& what, SingularityPattern partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    const SingularityPattern& partial() const { return partial_; }

private:
    SingularityPattern partial_;
};

struct SingularValues {
    std::vector<ProjPoint> values;
    std::vector<std::string> unsolved;  // factors in x1 whose roots lie outside the parameter field
};

/// Values v of x_n for which x_{n+1} does not depend on x_{n-1}.
SingularValues find_singular_values(const MappingSpec& spec);

/// True when x_{n+1} = v can arise from a curve in (x_{n-1}, x_n) rather than
/// only from a fixed value of x_n or x_{n-1}.
bool is_spontaneous(const MappingSpec& spec, const ProjPoint& v);

/// Image of (s_prev, s_cur) under the update at index n.
LaurentSeries series_step(const MappingSpec& spec, const LaurentSeries& s_prev, const LaurentSeries& s_cur,
                          const ParamField& n, long depth);

/// Seeds x_{n-1} = u, x_n = v + eps (1/eps for infinity) and iterates until
/// the limit depends on u (confined) or a periodic tail shows (unconfined).
SingularityPattern trace_confinement(const MappingSpec& spec, const ProjPoint& v, const TraceOptions& opts = {});
SingularityPattern trace_confinement(const MappingSpec& spec, const ProjPoint& v, const TraceOptions& opts,
                                     const std::vector<ProjPoint>& special);

/// Orbit through x_{n-1} = u, x_n = w, forward and (when invertible) backward.
/// Orbits run modulo a random prime with two independent draws of u; an entry
/// depends on u when the two leading coefficients differ.
SingularityPattern trace_orbit(const MappingSpec& spec, const ProjPoint& w, const TraceOptions& opts = {});
SingularityPattern trace_orbit(const MappingSpec& spec, const ProjPoint& w, const TraceOptions& opts,
                               const std::vector<ProjPoint>& special);

struct SingularityAnalysis {
    SingularValues singular;
    std::vector<bool> spontaneous;             // parallel to singular.values
    std::vector<ProjPoint> special;            // 0, infinity and the singular values
    std::vector<SingularityPattern> families;  // one per spontaneous singular value
    std::vector<SingularityPattern> orbits;    // one per orbit seed
    std::vector<std::size_t> distinct_orbits;  // indices into orbits, shifts removed
};

SingularityAnalysis full_singularity_analysis(const MappingSpec& spec, const TraceOptions& opts = {},
                                              const std::vector<ProjPoint>& extra_seeds = {});

/// Signature used for tail and cycle detection: "0^m", "inf^m", "=v^m" for
/// finite special values, "reg" for other u-free values, "G" for u-dependent.
std::string signature(const PatternEntry& e, const std::vector<ProjPoint>& special);

/// Smallest start, then smallest period, such that sigs[start..] has that
/// period and covers it at least twice.
std::optional<std::pair<std::size_t, std::size_t>> find_periodic_tail(const std::vector<std::string>& sigs);

/// Fit a growing linear recurrence (length 1 or 2, integer coefficients) to
/// the trailing run of 0 or infinity entries; the fit must predict the last
/// two orders, which it does not see.
std::optional<OrderGrowth> fit_order_growth(const std::vector<PatternEntry>& entries);

nlohmann::json to_json(const PatternEntry& e);
nlohmann::json to_json(const SingularityPattern& p);

/// Parse "inf", "oo" or an expression in the parameters.
ProjPoint parse_point(const std::string& text);

}  // namespace singdeg
