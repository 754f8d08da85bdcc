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

#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "singdeg/halburd/halburd.hpp"

using namespace singdeg;

namespace {

MappingSpec fixture(const std::string& name) { return load_mapping(std::string(SINGDEG_FIXTURE_DIR) + "/" + name + ".map"); }

const SingularityAnalysis& analysis(const std::string& name) {
    static std::map<std::string, SingularityAnalysis> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, full_singularity_analysis(fixture(name))).first;
    return it->second;
}

Census census(const std::string& name, const std::string& w) { return preimage_census(analysis(name), parse_point(w)); }

std::vector<long> census_values(const Census& c, const OccurrenceSeq& z, long N) {
    std::vector<long> out;
    for (long n = 1; n <= N; ++n) out.push_back(c.evaluate(z, n).get_num().get_si());
    return out;
}

const ProjPoint kInf = ProjPoint::infinity();

}  // namespace

TEST(Census, DP1) {
    auto zero = census("dp1", "0");
    EXPECT_EQ(zero.to_string(), "Z[n] + Z[n-2]");
    auto inf = census("dp1", "inf");
    EXPECT_EQ(inf.to_string(), "2*Z[n-1] + periodic(n mod 2 -> [0,1], n >= 1)");
    for (long n = 1; n < 8; ++n) EXPECT_EQ(inf.source.at(n), (1 - (n % 2 == 0 ? 1 : -1)) / 2) << n;
}

TEST(Census, HVCubeRootsOfUnityAsResidues) {
    auto inf = census("hv", "inf");
    ASSERT_EQ(inf.lags.size(), 2u);
    EXPECT_EQ(inf.lags[0].lag, 1);
    EXPECT_EQ(inf.lags[0].coefficient, 2);
    EXPECT_EQ(inf.lags[1].lag, 2);
    EXPECT_EQ(inf.lags[1].coefficient, 2);
    // (2 - j^n - j^2n)/3 is 0 for n = 0 mod 3 and 1 otherwise
    for (long n = 1; n < 10; ++n) EXPECT_EQ(inf.source.at(n), n % 3 == 0 ? 0 : 1) << n;
}

TEST(Census, InfiniteTails) {
    for (int k : {3, 5}) {
        const std::string name = "hv_ext_k" + std::to_string(k);
        auto zero = census(name, "0");
        EXPECT_TRUE(zero.lags.empty());
        ASSERT_EQ(zero.tails.size(), 1u);
        EXPECT_EQ(zero.tails[0].start, 0);
        EXPECT_EQ(zero.tails[0].step, 3);
        auto inf = census(name, "inf");
        ASSERT_EQ(inf.tails.size(), 2u);
        EXPECT_EQ(inf.tails[0].coefficient, k);
        EXPECT_EQ(inf.tails[1].start, 2);
    }
}

TEST(Census, MirrorFamiliesShareOneSequence) {
    EXPECT_EQ(family_labels(analysis("lin")), (std::vector<std::string>{"U", "U"}));
    EXPECT_EQ(census("lin", "0").to_string(), "2*U[n-1] + delta(n,1)");
    EXPECT_EQ(census("lin", "1").to_string(), "U[n] + U[n-2]");
    EXPECT_EQ(family_labels(analysis("tsuda")), (std::vector<std::string>{"U", "U"}));
}

TEST(Census, BedfordKim) {
    EXPECT_EQ(census("bk", "inf").to_string(), "U[n-2] + U[n-3] + delta(n,1) + delta(n,2)");
    EXPECT_EQ(census("bk", "0").to_string(), "U[n-1] + U[n-5] + delta(n,1) + delta(n,4)");
}

TEST(Census, ValueOutsideEveryPattern) {
    EXPECT_THROW(preimage_census(analysis("dp1"), parse_point("7")), EmptyCensus);
}

TEST(Balance, Examples) {
    auto b = build_balance(census("dp1", "0"), census("dp1", "inf"));
    EXPECT_EQ(b.to_string(), "Z[n] + Z[n-2] = 2*Z[n-1] + periodic(n mod 2 -> [0,1], n >= 1)");
    b = build_balance(census("tsuda", "1"), census("tsuda", "0"));
    EXPECT_EQ(b.to_string(), "U[n] + U[n-3] = 2*U[n-1] + delta(n,1)");
    b = build_balance(census("bk", "1"), census("bk", "inf"));
    EXPECT_EQ(b.to_string(), "U[n] = U[n-2] + U[n-3] + delta(n,1) + delta(n,2)");
}

TEST(Balance, PairChoice) {
    auto pair = [](const std::string& name) {
        auto [a, b] = choose_pair(analysis(name));
        return a.to_string() + "," + b.to_string();
    };
    EXPECT_EQ(pair("dp1"), "0,inf");
    EXPECT_EQ(pair("hv"), "0,inf");
    EXPECT_EQ(pair("bk"), "1,inf");
    // the infinity census grows through anticonfined orders
    EXPECT_EQ(pair("lin"), "1,0");
    EXPECT_EQ(pair("tsuda"), "1,0");
}

TEST(Balance, NotComparable) {
    Census a, b;
    a.label = "U";
    a.lags = {{0, 1}};
    b.label = "Z";
    b.lags = {{1, 2}};
    EXPECT_THROW(build_balance(a, b), NotComparable);
}

TEST(CharPolyTest, ExpressPolynomials) {
    auto express = [](const std::string& name) {
        auto [w1, w2] = choose_pair(analysis(name));
        return express_char_poly(build_balance(preimage_census(analysis(name), w1), preimage_census(analysis(name), w2)));
    };
    EXPECT_EQ(express("dp1"), char_poly_product({{-1, 1}, {-1, 1}}));
    EXPECT_EQ(express("dp1").factored_string(), "(lambda - 1)^2");
    EXPECT_EQ(express("hv"), char_poly_product({{1, 1}, {1, -3, 1}}));
    EXPECT_EQ(express("hv").factored_string(), "(lambda + 1)(lambda^2 - 3*lambda + 1)");
    EXPECT_EQ(express("bk"), char_poly_product({{-1, -1, 0, 1}}));
    for (long k : {3L, 5L}) {
        const auto p = express("hv_ext_k" + std::to_string(k));
        EXPECT_EQ(p, char_poly_product({{-k, -k, 1}})) << k;
        EXPECT_EQ(p.provenance, "generating-function");
        EXPECT_EQ(p.clearing_period, 3);
    }
}

TEST(CharPolyTest, LargestRoot) {
    EXPECT_NEAR(largest_root(char_poly_product({{1, -3, 1}})).value, 2.618033988749895, 1e-12);
    EXPECT_NEAR(largest_root(char_poly_product({{-1, -1, 0, 1}})).value, 1.324717957244746, 1e-12);
    EXPECT_NEAR(largest_root(char_poly_product({{-3, -3, 1}})).value, 3.791287847477920, 1e-12);
    EXPECT_NEAR(largest_root(char_poly_product({{-5, -5, 1}})).value, (5 + 3 * std::sqrt(5.0)) / 2, 1e-12);
    EXPECT_NEAR(largest_root(char_poly_product({{-1, 1}, {-1, 1}})).value, 1.0, 1e-12);
    const auto none = largest_root(char_poly_product({{1, 0, 1}}));
    EXPECT_TRUE(none.caution);
    EXPECT_EQ(none.value, 0.0);
}

TEST(CharPolyTest, ClearingFactorRootsAreSkipped) {
    CharPoly p = char_poly_product({{-1, 1}, {-2, 0, 1}});  // (lambda - 1)(lambda^2 - 2)
    p.clearing_period = 3;
    EXPECT_NEAR(largest_root(p).value, std::sqrt(2.0), 1e-12);
    CharPoly q = char_poly_product({{-1, 1}, {1, 1}});
    q.clearing_period = 2;
    EXPECT_TRUE(largest_root(q).caution);
}

TEST(Forward, ClosedForms) {
    const auto dp1 = run_halburd(analysis("dp1"), 20);
    for (long n = 1; n <= 20; ++n) {
        EXPECT_EQ(dp1.forward->degrees.values[static_cast<std::size_t>(n)], (2 * n * n + 1 - (n % 2 ? -1 : 1)) / 4) << n;
        // Z_n = n^2/4 + n/2 + (1 - (-1)^n)/8
        EXPECT_EQ(8 * dp1.forward->z.values[static_cast<std::size_t>(n)], 2 * n * n + 4 * n + (n % 2 ? 2 : 0)) << n;
    }
    const auto lin = run_halburd(analysis("lin"), 20);
    for (long n = 1; n <= 20; ++n) EXPECT_EQ(lin.forward->z.values[static_cast<std::size_t>(n)], n);
    for (long n = 2; n <= 20; ++n) EXPECT_EQ(lin.forward->degrees.values[static_cast<std::size_t>(n)], 2 * (n - 1));
}

TEST(Forward, FrozenSequences) {
    EXPECT_EQ(run_halburd(analysis("hv"), 12).forward->degrees.values,
              (std::vector<long>{0, 1, 3, 8, 23, 61, 160, 421, 1103, 2888, 7563, 19801, 51840}));
    EXPECT_EQ(run_halburd(analysis("bk"), 21).forward->degrees.values,
              (std::vector<long>{0, 1, 1, 1, 2, 2, 3, 4, 5, 7, 9, 12, 16, 21, 28, 37, 49, 65, 86, 114, 151, 200}));
    EXPECT_EQ(run_halburd(analysis("tsuda"), 14).forward->degrees.values,
              (std::vector<long>{0, 1, 2, 4, 8, 14, 24, 40, 66, 108, 176, 286, 464, 752, 1218}));
    EXPECT_EQ(run_halburd(analysis("hv_ext_k3"), 7).forward->degrees.values,
              (std::vector<long>{0, 1, 4, 15, 58, 220, 834, 3163}));
    EXPECT_EQ(run_halburd(analysis("hv_ext_k5"), 6).forward->degrees.values,
              (std::vector<long>{0, 1, 6, 35, 206, 1206, 7060}));
    EXPECT_TRUE(run_halburd(analysis("bk"), 3).express_extrapolated);
    EXPECT_FALSE(run_halburd(analysis("hv"), 3).express_extrapolated);
}

TEST(Forward, CensusDualityOnAllFixtures) {
    for (const char* name : {"dp1", "hv", "bk", "lin", "tsuda", "hv_ext_k3", "hv_ext_k5"}) {
        const auto r = run_halburd(analysis(name), 12);
        EXPECT_GE(r.duality.size(), 2u) << name;
        for (const auto& c : r.duality) EXPECT_TRUE(c.ok) << name << " " << c.value.to_string();
    }
}

TEST(Forward, TsudaInfinityCensusIsCompatible) {
    const auto inf = census("tsuda", "inf");
    EXPECT_EQ(inf.lags.size(), 1u);
    EXPECT_EQ(inf.lags[0].lag, 2);
    EXPECT_EQ(inf.lags[0].coefficient, 2);
    ASSERT_EQ(inf.source.exponential.size(), 2u);
    const auto alt = solve_balance_forward(build_balance(census("tsuda", "1"), inf), 14);
    const auto main = solve_balance_forward(build_balance(census("tsuda", "1"), census("tsuda", "0")), 14);
    EXPECT_EQ(alt.z.values, main.z.values);
    EXPECT_EQ(census_values(inf, main.z, 14), std::vector<long>(main.degrees.values.begin() + 1, main.degrees.values.end()));
}

TEST(DynamicalDegree, Winners) {
    auto r = run_halburd(analysis("tsuda"), 2).degree;
    EXPECT_NEAR(r.lambda, 1.618033988749895, 1e-9);
    EXPECT_EQ(r.winner, "tie");
    r = run_halburd(analysis("lin"), 2).degree;
    EXPECT_NEAR(r.lambda, 1.0, 1e-9);
    r = run_halburd(analysis("dp1"), 2).degree;
    EXPECT_NEAR(r.lambda, 1.0, 1e-9);
    EXPECT_EQ(r.winner, "characteristic-root");
    r = run_halburd(analysis("hv"), 2).degree;
    EXPECT_EQ(r.closed_form, "phi^2");
}

TEST(NegativeControl, CorruptedOrderIsInconsistent) {
    HalburdOptions opts;
    opts.pattern_hook = [](SingularityAnalysis& a) { a.families[0].entries[0].order = 2; };
    EXPECT_THROW(run_halburd(analysis("dp1"), 10, opts), InconsistentBalance);
}

TEST(NegativeControl, MissingCyclicPatternIsInconsistent) {
    HalburdOptions opts;
    opts.pattern_hook = [](SingularityAnalysis& a) { a.orbits.clear(); };
    try {
        run_halburd(analysis("dp1"), 10, opts);
        FAIL() << "expected InconsistentBalance";
    } catch (const InconsistentBalance& e) {
        EXPECT_EQ(e.index(), 1);
    }
}

TEST(Json, BalanceAndPolynomial) {
    const auto r = run_halburd(analysis("hv"), 4);
    const auto b = to_json(r.balance);
    EXPECT_EQ(b["values"][1], "inf");
    EXPECT_EQ(b["lhs"]["lags"][1]["lag"], 3);
    EXPECT_EQ(b["source"]["periodic"][0]["period"], 3);
    const auto p = to_json(r.char_poly);
    EXPECT_EQ(p["coefficients"], (std::vector<std::string>{"1", "-2", "-2", "1"}));
    EXPECT_EQ(to_json(r.degree)["winner"], "characteristic-root");
}
