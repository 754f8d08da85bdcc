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

#include "singdeg/oracle/degree_oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "singdeg/algebra/zpoly.hpp"

namespace singdeg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct ZOps {
    ZPoly zero() const { return {}; }
    ZPoly one() const { return {mpz_class(1)}; }
    ZPoly add(const ZPoly& x, const ZPoly& y) const { return zp::add(x, y); }
    ZPoly mul(const ZPoly& x, const ZPoly& y) const { return zp::mul(x, y); }
};

struct FpOps {
    const PrimeField* F;
    FpPoly zero() const { return {}; }
    FpPoly one() const { return {1}; }
    FpPoly add(const FpPoly& x, const FpPoly& y) const { return fp::add(*F, x, y); }
    FpPoly mul(const FpPoly& x, const FpPoly& y) const { return fp::mul(*F, x, y); }
};

// One prime-field run; throws BadSpecialization on a (0 : 0) iterate.
std::vector<long> modp_run(const MappingSpec& spec, int N, const PrimeFieldConfig& cfg, bool reduce) {
    const PrimeField F(cfg.modulus);
    const FpOps ops{&F};
    std::vector<long> d{0, 1};
    FpPoly p0{cfg.assignment.at(sym::u())}, q0{1}, p1{0, 1}, q1{1};
    fp::trim(p0);
    for (int k = 1; k < N; ++k) {
        auto sf = specialize_form<FpPoly>(spec.form, [&](const MPoly& c) {
            FpPoly v{specialize(c, cfg, k)};
            fp::trim(v);
            return v;
        });
        auto [A, B] = bihom_eval(sf, p0, q0, p1, q1, ops);
        if (A.empty() && B.empty()) throw BadSpecialization("iterate " + std::to_string(k + 1) + " is (0 : 0)");
        if (reduce) {
            FpPoly g = fp::gcd(F, A, B);
            if (fp::degree(g) > 0) {
                A = fp::divexact(F, A, g);
                B = fp::divexact(F, B, g);
            }
        }
        d.push_back(std::max(fp::degree(A), fp::degree(B)));
        p0 = std::move(p1);
        q0 = std::move(q1);
        p1 = std::move(A);
        q1 = std::move(B);
    }
    d.resize(static_cast<std::size_t>(N) + 1);
    return d;
}

PrimeFieldConfig draw_for(const MappingSpec& spec, std::uint64_t seed) {
    std::vector<VarId> syms = spec.param_ids();
    syms.push_back(sym::u());
    return draw_prime_config(syms, seed);
}

DegreeSequence modp_sequence(const MappingSpec& spec, int N, const OracleConfig& cfg) {
    std::vector<std::vector<long>> runs;
    int draws = 0;
    const int max_draws = cfg.primes + cfg.max_redraws;
    std::uint64_t next_seed = cfg.seed * 7919u + 1;
    auto add_run = [&] {
        while (draws < max_draws) {
            ++draws;
            try {
                runs.push_back(modp_run(spec, N, draw_for(spec, next_seed++), true));
                return true;
            } catch (const BadSpecialization&) {
            }
        }
        return false;
    };
    for (int i = 0; i < cfg.primes; ++i)
        if (!add_run()) throw UnstableSpecialization("too many bad specializations");
    while (true) {
        DegreeSequence seq;
        seq.mode = OracleMode::Modp;
        bool stable = true;
        for (int n = 0; n <= N; ++n) {
            long best = 0;
            for (const auto& r : runs) best = std::max(best, r[n]);
            int votes = 0;
            for (const auto& r : runs) votes += r[n] == best;
            seq.values.push_back(best);
            seq.votes.push_back(votes);
            if (votes < 2) stable = false;
        }
        if (stable) return seq;
        if (!add_run())
            throw UnstableSpecialization("prime-field degrees disagree after " + std::to_string(draws) + " draws");
    }
}

DegreeSequence exact_sequence(const MappingSpec& spec, int N, const OracleConfig& cfg) {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(cfg.seed);
    std::map<VarId, mpz_class> point;
    for (VarId v : spec.param_ids()) point[v] = mpz_class(static_cast<unsigned long>((rng() >> 34) + (1ul << 20)));
    const mpz_class u_val(static_cast<unsigned long>((rng() >> 34) + (1ul << 20)));

    DegreeSequence seq;
    seq.mode = OracleMode::Exact;
    seq.values = {0, 1};
    ZPoly p0{u_val}, q0{1}, p1{0, 1}, q1{1};
    const ZOps ops;
    for (int k = 1; k < N; ++k) {
        auto sf = specialize_form<ZPoly>(spec.form, [&](const MPoly& c) {
            ZPoly v{c.evaluate<mpz_class>(
                [&](VarId v) { return v == sym::n() ? mpz_class(k) : point.at(v); },
                [](const mpz_class& x) { return x; })};
            zp::trim(v);
            return v;
        });
        auto [A, B] = bihom_eval(sf, p0, q0, p1, q1, ops);
        if (A.empty() && B.empty()) throw UnstableSpecialization("exact iterate is (0 : 0) at the sample point");
        ZPoly g = zp::gcd(A, B);
        if (zp::degree(g) > 0 || (g.size() == 1 && g[0] != 1)) {
            A = *zp::try_divexact(A, g);
            B = *zp::try_divexact(B, g);
        }
        const long d = std::max(zp::degree(A), zp::degree(B));
        seq.values.push_back(d);
        p0 = std::move(p1);
        q0 = std::move(q1);
        p1 = std::move(A);
        q1 = std::move(B);
        if (k + 1 == N) break;
        if (d > cfg.max_degree) {
            seq.truncated = true;
            seq.truncation_reason = "degree cap " + std::to_string(cfg.max_degree);
        } else if (std::max(zp::max_bits(p1), zp::max_bits(q1)) > cfg.max_coef_bits) {
            seq.truncated = true;
            seq.truncation_reason = "coefficient size cap " + std::to_string(cfg.max_coef_bits) + " bits";
        } else if (seconds_since(t0) > cfg.time_budget_s) {
            seq.truncated = true;
            seq.truncation_reason = "time budget";
        }
        if (seq.truncated) break;
    }
    seq.values.resize(std::min<std::size_t>(seq.values.size(), static_cast<std::size_t>(N) + 1));
    return seq;
}

}  // namespace

std::string to_string(OracleMode m) {
    switch (m) {
        case OracleMode::Exact:
            return "exact";
        case OracleMode::Modp:
            return "modp";
        case OracleMode::Recurrence:
            return "recurrence";
    }
    return "?";
}

std::optional<OracleMode> parse_oracle_mode(std::string_view s) {
    if (s == "exact") return OracleMode::Exact;
    if (s == "modp") return OracleMode::Modp;
    if (s == "recurrence") return OracleMode::Recurrence;
    return std::nullopt;
}

long z_degree(const ParamField& x) {
    return std::max(x.num().degree(sym::z()), x.den().degree(sym::z()));
}

SymbolicIterates iterate_symbolic(const MappingSpec& spec, int N, long max_degree, double time_budget_s) {
    const auto t0 = Clock::now();
    SymbolicIterates out;
    out.values = {ParamField::symbol(sym::u()), ParamField::symbol(sym::z())};
    for (int k = 1; k < N; ++k) {
        auto sf = specialize_form<MPoly>(spec.form, [&](const MPoly& c) { return c.substitute(sym::n(), MPoly(k)); });
        const ParamField& x0 = out.values[k - 1];
        const ParamField& x1 = out.values[k];
        auto [A, B] = bihom_eval(sf, x0.num(), x0.den(), x1.num(), x1.den(), OperatorOps<MPoly>{});
        out.values.push_back(ParamField::normalize(A, B));
        if (k + 1 < N && (z_degree(out.values.back()) > max_degree || seconds_since(t0) > time_budget_s)) {
            out.truncated = true;
            break;
        }
    }
    out.values.resize(std::min<std::size_t>(out.values.size(), static_cast<std::size_t>(N) + 1));
    return out;
}

DegreeSequence degree_sequence(const MappingSpec& spec, int N, OracleMode mode, const OracleConfig& cfg) {
    if (N < 1) throw std::invalid_argument("N must be at least 1");
    switch (mode) {
        case OracleMode::Exact:
            return exact_sequence(spec, N, cfg);
        case OracleMode::Modp:
            return modp_sequence(spec, N, cfg);
        case OracleMode::Recurrence:
            break;
    }
    throw std::invalid_argument("the oracle computes exact or modp sequences only");
}

std::vector<long> unreduced_degrees(const MappingSpec& spec, int N, std::uint64_t seed) {
    return modp_run(spec, N, draw_for(spec, seed), false);
}

std::optional<std::size_t> degree_bound_violation(const MappingSpec& spec, const std::vector<long>& d) {
    for (std::size_t n = 1; n + 1 < d.size(); ++n) {
        const long bound = static_cast<long>(spec.form.d1) * d[n] + static_cast<long>(spec.form.d0) * d[n - 1];
        if (d[n + 1] > bound) return n + 1;
    }
    return std::nullopt;
}

std::string to_csv(const DegreeSequence& seq) {
    std::ostringstream os;
    os << "n,d_n,mode,votes\n";
    for (std::size_t n = 0; n < seq.values.size(); ++n) {
        os << n << ',' << seq.values[n] << ',' << to_string(seq.mode) << ',';
        if (n < seq.votes.size()) os << seq.votes[n];
        os << '\n';
    }
    return os.str();
}

LambdaEstimate estimate_lambda(const DegreeSequence& seq, std::optional<std::size_t> window_begin) {
    const auto& d = seq.values;
    if (d.size() < 6) throw DegenerateInput("need at least 6 degrees to estimate lambda");
    if (std::all_of(d.begin() + 1, d.end(), [&](long x) { return x == d[1]; }))
        throw DegenerateInput("degree sequence is constant");
    LambdaEstimate est;
    est.window_end = d.size() - 1;
    est.window_begin = window_begin.value_or(est.window_end / 2);
    std::vector<double> xs, ls, ys;
    for (std::size_t n = std::max<std::size_t>(est.window_begin, 1); n <= est.window_end; ++n) {
        if (d[n] <= 0) continue;
        xs.push_back(static_cast<double>(n));
        ls.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(static_cast<double>(d[n])));
    }
    if (xs.size() < 3) throw DegenerateInput("too few positive degrees in the window");
    auto fit = [&](const std::vector<double>& x) {
        const double m = static_cast<double>(x.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sx += x[i];
            sy += ys[i];
            sxx += x[i] * x[i];
            sxy += x[i] * ys[i];
        }
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        const double icpt = (sy - slope * sx) / m;
        double rss = 0;
        for (std::size_t i = 0; i < x.size(); ++i) rss += std::pow(ys[i] - icpt - slope * x[i], 2);
        return std::pair{slope, rss};
    };
    const auto [exp_slope, exp_rss] = fit(xs);
    const auto [pow_slope, pow_rss] = fit(ls);
    est.ratio_min = 1e300;
    est.ratio_max = 0;
    for (std::size_t n = est.window_begin; n < est.window_end; ++n) {
        if (d[n] <= 0) continue;
        const double r = static_cast<double>(d[n + 1]) / static_cast<double>(d[n]);
        est.ratio_min = std::min(est.ratio_min, r);
        est.ratio_max = std::max(est.ratio_max, r);
    }
    if (pow_rss < exp_rss) {
        est.polynomial = true;
        est.polynomial_order = static_cast<int>(std::lround(pow_slope));
        est.lambda = 1.0;
        est.residual = pow_rss;
    } else {
        est.lambda = std::exp(exp_slope);
        est.residual = exp_rss;
    }
    est.below_one = est.lambda < 1.0 - 1e-9;
    return est;
}

}  // namespace singdeg
