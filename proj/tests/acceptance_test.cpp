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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "singdeg/halburd/halburd.hpp"
#include "singdeg/oracle/degree_oracle.hpp"
#include "singdeg/report/report.hpp"
#include "singdeg/singularity/singularity.hpp"

using namespace singdeg;

namespace {

constexpr double kSeconds = 60.0;      // per oracle run
constexpr double kRootTol = 1e-9;      // lambda against the closed value
constexpr double kEstimateTol = 0.02;  // oracle fit against the express lambda

using Seq = std::vector<long>;

MappingSpec fixture(const std::string& name) { return load_mapping(std::string(SINGDEG_FIXTURE_DIR) + "/" + name + ".map"); }

SingularityAnalysis analysis(const std::string& name) { return full_singularity_analysis(fixture(name)); }

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            detail << "[" << what << "] ";
            pass = false;
        }
    }
};

std::string join(const Seq& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

Seq dp1_closed(int N) {
    Seq d;
    for (long n = 0; n <= N; ++n) d.push_back((2 * n * n + 1 - (n % 2 ? -1 : 1)) / 4);
    return d;
}

// d_1 = 1 from the initial data, 2(n - 1) afterwards.
Seq lin_closed(int N) {
    Seq d{0, 1};
    for (long n = 2; n <= N; ++n) d.push_back(2 * (n - 1));
    return d;
}

// Frozen oracle values.
struct Expected {
    const char* name;
    int N;
    Seq degrees;
};

const std::vector<Expected>& expected() {
    static const std::vector<Expected> e{
        {"dp1", 10, dp1_closed(10)},
        {"hv", 6, {0, 1, 3, 8, 23, 61, 160}},
        {"bk", 21, {0, 1, 1, 1, 2, 2, 3, 4, 5, 7, 9, 12, 16, 21, 28, 37, 49, 65, 86, 114, 151, 200}},
        {"lin", 20, lin_closed(20)},
        {"tsuda", 14, {0, 1, 2, 4, 8, 14, 24, 40, 66, 108, 176, 286, 464, 752, 1218}},
    };
    return e;
}

std::vector<std::string> texts(const std::vector<PatternEntry>& es) {
    std::vector<std::string> out;
    for (const auto& e : es) out.push_back(e.depends_on_u ? "G" : e.to_string());
    return out;
}

const SingularityPattern* family(const SingularityAnalysis& a, const std::string& seed) {
    for (const auto& f : a.families)
        if (f.seed == parse_point(seed)) return &f;
    return nullptr;
}

void modp_sequences(Outcome& o) {
    for (const auto& e : expected()) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto s = degree_sequence(fixture(e.name), e.N, OracleMode::Modp);
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.require(s.values == e.degrees, std::string(e.name) + " got " + join(s.values));
        o.require(dt < kSeconds, std::string(e.name) + " took " + std::to_string(dt) + " s");
        o.detail << e.name << " n<=" << e.N << " " << static_cast<int>(dt * 1000) << " ms  ";
    }
}

void patterns(Outcome& o) {
    using S = std::vector<std::string>;
    auto check = [&](const std::string& name, const std::string& seed, const S& want, PatternKind kind) {
        const auto a = analysis(name);
        const auto* f = family(a, seed);
        if (!f) return o.require(false, name + ": no family from " + seed);
        auto got = texts(f->entries);
        if (kind == PatternKind::Unconfined) got.resize(std::min(got.size(), want.size()));
        o.require(got == want && f->kind == kind, name + " from " + seed);
    };
    check("dp1", "0", {"0", "inf^2", "0", "G"}, PatternKind::Confined);
    check("hv", "0", {"0", "inf^2", "inf^2", "0", "G"}, PatternKind::Confined);
    check("lin", "1", {"1", "0", "-1", "G"}, PatternKind::Confined);
    check("lin", "-1", {"-1", "0", "1", "G"}, PatternKind::Confined);
    check("tsuda", "1", {"1", "0", "inf", "-1", "G"}, PatternKind::Confined);
    check("tsuda", "-1", {"-1", "0", "inf", "1", "G"}, PatternKind::Confined);
    check("bk", "1", {"1", "0", "inf", "inf", "-c^2", "0", "c/(c^2 + 1)"}, PatternKind::Unconfined);
    for (int k : {3, 5}) {
        const std::string inf = "inf^" + std::to_string(k);
        check("hv_ext_k" + std::to_string(k), "0", {"0", inf, inf, "0", inf, inf, "0"}, PatternKind::Unconfined);
    }
    o.detail << "dP1, H-V, BK, linearisable, Tsuda, k=3, k=5";
}

void char_polys(Outcome& o) {
    const std::vector<std::pair<std::string, CharPoly>> want{
        {"dp1", char_poly_product({{-1, 1}, {-1, 1}})},
        {"hv", char_poly_product({{1, 1}, {1, -3, 1}})},
        {"bk", char_poly_product({{-1, -1, 0, 1}})},
        {"hv_ext_k3", char_poly_product({{-3, -3, 1}})},
        {"hv_ext_k5", char_poly_product({{-5, -5, 1}})},
    };
    for (const auto& [name, p] : want) {
        const auto got = run_halburd(analysis(name), 2).char_poly;
        o.require(got == p, name + " got " + got.factored_string());
        o.detail << name << ": " << got.factored_string() << "  ";
    }
}

void lambdas(Outcome& o) {
    const std::vector<std::pair<std::string, double>> want{
        {"dp1", 1.0}, {"hv", 2.618033988749895}, {"bk", 1.324717957244746},
        {"hv_ext_k3", 3.791287847477920}, {"lin", 1.0}, {"tsuda", 1.618033988749895},
    };
    char buf[96];
    for (const auto& [name, lambda] : want) {
        const double got = run_halburd(analysis(name), 4).degree.lambda;
        o.require(std::fabs(got - lambda) <= kRootTol, name + " lambda off");
        std::snprintf(buf, sizeof buf, "%s %.15f  ", name.c_str(), got);
        o.detail << buf;
    }
}

void forward_solve(Outcome& o) {
    for (const auto& e : expected()) {
        const auto r = run_halburd(analysis(e.name), e.N);
        o.require(r.forward.has_value(), std::string(e.name) + ": no forward solution");
        if (!r.forward) continue;
        o.require(r.forward->degrees.values == e.degrees, std::string(e.name) + " got " + join(r.forward->degrees.values));
        if (std::string(e.name) == "lin")
            for (long n = 1; n <= e.N; ++n) o.require(r.forward->z.at(n) == n, "U_n != n at " + std::to_string(n));
    }
    if (o.pass) o.detail << "closed forms (2n^2+1-(-1)^n)/4 and U_n = n hold";
}

void properties(Outcome& o) {
    const char* all[] = {"dp1", "hv", "bk", "lin", "tsuda", "hv_ext_k3", "hv_ext_k5"};
    std::size_t duals = 0;
    for (const char* name : all) {
        const auto r = run_halburd(analysis(name), 12);
        for (const auto& c : r.duality) {
            o.require(c.ok, std::string("duality ") + name + " " + c.value.to_string());
            ++duals;
        }
    }
    for (const char* name : {"dp1", "hv", "lin", "tsuda"}) {
        std::string why;
        const auto spec = fixture(name);
        o.require(inverse_reversal(spec, full_singularity_analysis(spec), {}, why), std::string("reversal ") + name + ": " + why);
    }
    const std::vector<std::pair<const char*, int>> exact_windows{
        {"dp1", 10}, {"hv", 6}, {"bk", 15}, {"lin", 12}, {"tsuda", 10}, {"hv_ext_k3", 5}, {"hv_ext_k5", 4}};
    for (const auto& [name, N] : exact_windows) {
        const auto a = degree_sequence(fixture(name), N, OracleMode::Exact).values;
        const auto b = degree_sequence(fixture(name), N, OracleMode::Modp).values;
        o.require(a == b, std::string("exact vs modp ") + name);
    }
    const std::vector<std::pair<const char*, int>> fit_windows{
        {"hv", 10}, {"hv_ext_k3", 7}, {"hv_ext_k5", 6}, {"tsuda", 14}, {"bk", 21}};
    double worst = 0;
    for (const auto& [name, N] : fit_windows) {
        const double est = estimate_lambda(degree_sequence(fixture(name), N, OracleMode::Modp)).lambda;
        const double diff = std::fabs(est - run_halburd(analysis(name), 2).degree.lambda);
        worst = std::max(worst, diff);
        o.require(diff <= kEstimateTol, std::string("lambda estimate ") + name + " off by " + std::to_string(diff));
    }
    const auto a = analysis("tsuda");
    const auto main = solve_balance_forward(build_balance(preimage_census(a, parse_point("1")), preimage_census(a, parse_point("0"))), 14);
    const auto alt = solve_balance_forward(build_balance(preimage_census(a, parse_point("1")), preimage_census(a, ProjPoint::infinity())), 14);
    o.require(main.z.values == alt.z.values && main.degrees.values == alt.degrees.values, "Tsuda infinity census disagrees");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%zu censuses dual, worst lambda gap %.4f", duals, worst);
    o.detail << buf;
}

void negative_control(Outcome& o) {
    HalburdOptions opts;
    opts.pattern_hook = [](SingularityAnalysis& a) { a.families[0].entries[0].order = 2; };
    try {
        run_halburd(analysis("dp1"), 10, opts);
        o.require(false, "corrupted pattern was accepted");
    } catch (const InconsistentBalance& e) {
        o.detail << "inconsistent balance at n = " << e.index();
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"1 modp degree sequences", modp_sequences},
        {"2 singularity patterns", patterns},
        {"3 characteristic polynomials", char_polys},
        {"4 dynamical degrees (tol 1e-9)", lambdas},
        {"5 forward balance solve", forward_solve},
        {"6 property suites (estimate tol 0.02)", properties},
        {"7 negative control", negative_control},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.str().c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed ? 1 : 0;
}
