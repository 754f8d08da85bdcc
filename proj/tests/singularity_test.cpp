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

#include <algorithm>

#include <gtest/gtest.h>

#include "singdeg/singularity/singularity.hpp"

using namespace singdeg;

namespace {

MappingSpec fixture(const std::string& name) { return load_mapping(std::string(SINGDEG_FIXTURE_DIR) + "/" + name + ".map"); }

ParamField F(const std::string& text) { return parse_point(text).value(); }
ParamField U() { return ParamField::symbol(sym::u()); }
LaurentSeries eps(long e) { return LaurentSeries::monomial(1, e); }

std::vector<std::string> sigs(const std::vector<PatternEntry>& es, const std::vector<ProjPoint>& special) {
    std::vector<std::string> out;
    for (const auto& e : es) out.push_back(signature(e, special));
    return out;
}

// Entries as text, with u-dependent limits shown as "G".
std::vector<std::string> texts(const std::vector<PatternEntry>& es) {
    std::vector<std::string> out;
    for (const auto& e : es) out.push_back(e.depends_on_u ? "G" : e.to_string());
    return out;
}

std::vector<std::string> head(const std::vector<PatternEntry>& es, std::size_t k) {
    auto t = texts(es);
    t.resize(std::min(k, t.size()));
    return t;
}

using Strings = std::vector<std::string>;

const SingularityPattern& family(const SingularityAnalysis& a, const std::string& seed) {
    for (const auto& f : a.families)
        if (f.seed == parse_point(seed)) return f;
    throw std::runtime_error("no family for " + seed);
}

const SingularityPattern& orbit(const SingularityAnalysis& a, const std::string& seed) {
    for (const auto& o : a.orbits)
        if (o.seed == parse_point(seed)) return o;
    throw std::runtime_error("no orbit for " + seed);
}

}  // namespace

TEST(Series, StepExamples) {
    const ParamField n = ParamField::symbol(sym::n());
    // dP1 from (u, eps): a double pole.
    auto s = series_step(fixture("dp1"), LaurentSeries::constant(U()), eps(1), n, 8);
    EXPECT_EQ(s.valuation(), -2);
    EXPECT_EQ(s.leading(), ParamField(1));

    // H-V from (u, 1/eps): two steps later the limit is -u.
    const auto hv = fixture("hv");
    auto a = series_step(hv, LaurentSeries::constant(U()), eps(-1), n, 8);
    EXPECT_EQ(a.valuation(), -1);
    auto b = series_step(hv, eps(-1), a, n + ParamField(1), 8);
    EXPECT_EQ(b.valuation(), 0);
    EXPECT_EQ(b.leading(), -U());

    // Linearisable from (u, 1 + eps): 2 eps / u.
    auto c = series_step(fixture("lin"), LaurentSeries::constant(U()), LaurentSeries::constant(1) + eps(1), n, 8);
    EXPECT_EQ(c.valuation(), 1);
    EXPECT_EQ(c.leading(), ParamField(2) / U());
}

TEST(Series, ProductThenQuotient) {
    const ParamField c = ParamField::symbol("c");
    const LaurentSeries a = LaurentSeries::from_terms(-1, {c, ParamField(3), U()}, LaurentSeries::kExact);
    const LaurentSeries b = LaurentSeries::from_terms(2, {ParamField(2), -c}, LaurentSeries::kExact);
    const LaurentSeries q = divide(a * b, b, 6);
    EXPECT_EQ(q.valuation(), -1);
    for (long e = -1; e < q.precision(); ++e) EXPECT_EQ(q.coef(e), a.coef(e)) << e;
    EXPECT_GE(q.precision(), 4);
}

TEST(Series, UnknownLeadingTermNeedsDepth) {
    const LaurentSeries s = LaurentSeries::big_o(3);
    EXPECT_THROW(s.inverse(4), InsufficientDepth);
    EXPECT_THROW(LaurentSeries().inverse(4), std::domain_error);
}

TEST(SingularValues, PerFixture) {
    auto values = [](const std::string& name) {
        Strings out;
        for (const auto& v : find_singular_values(fixture(name)).values) out.push_back(v.to_string());
        std::sort(out.begin(), out.end());
        return out;
    };
    EXPECT_EQ(values("dp1"), (Strings{"0"}));
    EXPECT_EQ(values("hv"), (Strings{"0", "inf"}));
    EXPECT_EQ(values("bk"), (Strings{"1", "inf"}));
    EXPECT_EQ(values("lin"), (Strings{"-1", "1", "inf"}));
    EXPECT_EQ(values("tsuda"), (Strings{"-1", "0", "1", "inf"}));
    EXPECT_EQ(values("hv_ext_k3"), (Strings{"0", "inf"}));
}

TEST(SingularValues, Spontaneity) {
    EXPECT_TRUE(is_spontaneous(fixture("dp1"), ProjPoint::finite(0)));
    EXPECT_TRUE(is_spontaneous(fixture("bk"), ProjPoint::finite(1)));
    EXPECT_FALSE(is_spontaneous(fixture("bk"), ProjPoint::infinity()));
    EXPECT_FALSE(is_spontaneous(fixture("tsuda"), ProjPoint::finite(0)));
    EXPECT_TRUE(is_spontaneous(fixture("tsuda"), ProjPoint::finite(-1)));
    EXPECT_FALSE(is_spontaneous(fixture("hv"), ProjPoint::infinity()));
}

TEST(Patterns, ConfinedFamilies) {
    auto a = full_singularity_analysis(fixture("dp1"));
    ASSERT_EQ(a.families.size(), 1u);
    EXPECT_EQ(a.families[0].kind, PatternKind::Confined);
    EXPECT_EQ(texts(a.families[0].entries), (Strings{"0", "inf^2", "0", "G"}));

    a = full_singularity_analysis(fixture("hv"));
    EXPECT_EQ(texts(family(a, "0").entries), (Strings{"0", "inf^2", "inf^2", "0", "G"}));

    a = full_singularity_analysis(fixture("lin"));
    EXPECT_EQ(texts(family(a, "1").entries), (Strings{"1", "0", "-1", "G"}));
    EXPECT_EQ(texts(family(a, "-1").entries), (Strings{"-1", "0", "1", "G"}));

    a = full_singularity_analysis(fixture("tsuda"));
    ASSERT_EQ(a.families.size(), 2u);
    EXPECT_EQ(texts(family(a, "1").entries), (Strings{"1", "0", "inf", "-1", "G"}));
    EXPECT_EQ(texts(family(a, "-1").entries), (Strings{"-1", "0", "inf", "1", "G"}));
    for (const auto& f : a.families) EXPECT_EQ(f.kind, PatternKind::Confined);
}

TEST(Patterns, BkUnconfinedPrefix) {
    const auto a = full_singularity_analysis(fixture("bk"));
    const auto& f = family(a, "1");
    EXPECT_EQ(f.kind, PatternKind::Unconfined);
    const Strings prefix{"1", "0", "inf", "inf", "-c^2", "0", "c/(c^2 + 1)"};
    const auto t = texts(f.entries);
    ASSERT_GE(t.size(), 8u);
    EXPECT_EQ(Strings(t.begin(), t.begin() + 7), prefix);
    EXPECT_EQ(f.entries[7].value.value(), F("c*(c^2 - c + 1)/(c^2 + 1)"));
    EXPECT_EQ(f.entries[2].order, 1);
    EXPECT_EQ(f.entries[3].order, 1);
    // from the seventh entry on only u-free regular values remain
    EXPECT_EQ(f.tail_start, 6u);
    EXPECT_EQ(f.period, 1u);
}

TEST(Patterns, PeriodicTailsOfTheExtension) {
    for (int k : {3, 5}) {
        const auto a = full_singularity_analysis(fixture("hv_ext_k" + std::to_string(k)));
        const auto& f = family(a, "0");
        EXPECT_EQ(f.kind, PatternKind::Unconfined);
        ASSERT_TRUE(f.period.has_value());
        EXPECT_EQ(*f.period, 3u);
        const std::string inf = "inf^" + std::to_string(k);
        const auto t = texts(f.entries);
        for (std::size_t i = *f.tail_start; i < t.size(); ++i) EXPECT_EQ(t[i], (i % 3 == 0 ? "0" : inf)) << k << " " << i;
    }
}

TEST(Orbits, CyclicInfinity) {
    auto a = full_singularity_analysis(fixture("dp1"));
    auto o = orbit(a, "inf");
    EXPECT_EQ(o.kind, PatternKind::Cyclic);
    EXPECT_EQ(o.period, 2u);

    a = full_singularity_analysis(fixture("hv"));
    o = orbit(a, "inf");
    EXPECT_EQ(o.kind, PatternKind::Cyclic);
    EXPECT_EQ(o.period, 3u);
    EXPECT_EQ(head(o.entries, 6),
              (Strings{"inf", "inf", "G", "inf", "inf", "G"}));
}

TEST(Orbits, AnticonfinedGrowth) {
    auto a = full_singularity_analysis(fixture("lin"));
    auto o = orbit(a, "0");
    EXPECT_EQ(o.kind, PatternKind::Anticonfined);
    ASSERT_TRUE(o.growth.has_value());
    EXPECT_EQ(o.growth->recurrence, (std::vector<long>{2, -1}));
    EXPECT_DOUBLE_EQ(o.growth->growth_rate(), 1.0);
    for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(o.growth->order_at(j), static_cast<long>(j + 1));

    a = full_singularity_analysis(fixture("tsuda"));
    o = orbit(a, "0");
    EXPECT_EQ(o.kind, PatternKind::Anticonfined);
    ASSERT_TRUE(o.growth.has_value());
    EXPECT_EQ(o.growth->recurrence, (std::vector<long>{1, 1}));
    EXPECT_NEAR(o.growth->growth_rate(), 1.618033988749895, 1e-12);
    EXPECT_EQ(head(o.entries, 6),
              (Strings{"0", "inf", "G", "inf", "inf", "inf^2"}));
    ASSERT_TRUE(o.backward_growth.has_value());
    EXPECT_FALSE(o.backward_growth->infinite);
}

TEST(Orbits, BkInfinityLeadsBackIntoTheUnconfinedPattern) {
    const auto a = full_singularity_analysis(fixture("bk"));
    const auto& o = orbit(a, "inf");
    EXPECT_EQ(o.kind, PatternKind::Transient);
    EXPECT_TRUE(o.inverse_unconfined);
    EXPECT_EQ(head(o.entries, 5), (Strings{"inf", "inf", "G", "0", "G"}));
}

TEST(Orbits, StableUnderReseeding) {
    for (const char* name : {"dp1", "hv", "lin", "tsuda", "bk"}) {
        const auto spec = fixture(name);
        TraceOptions o1, o2;
        o2.seed = 987654321;
        const auto a = trace_orbit(spec, ProjPoint::infinity(), o1);
        const auto b = trace_orbit(spec, ProjPoint::infinity(), o2);
        EXPECT_EQ(texts(a.entries), texts(b.entries)) << name;
        EXPECT_EQ(texts(a.backward), texts(b.backward)) << name;
        EXPECT_EQ(a.kind, b.kind) << name;
    }
}

TEST(Patterns, InverseMappingReversesConfinedPatterns) {
    for (const char* name : {"dp1", "hv", "lin", "tsuda"}) {
        const auto spec = fixture(name);
        const auto fwd = full_singularity_analysis(spec);
        const auto bwd = full_singularity_analysis(invert(spec));
        for (const auto& f : fwd.families) {
            ASSERT_EQ(f.kind, PatternKind::Confined);
            auto s = sigs(f.entries, fwd.special);
            s.pop_back();
            std::reverse(s.begin(), s.end());
            bool found = false;
            for (const auto& g : bwd.families) {
                auto t = sigs(g.entries, bwd.special);
                t.pop_back();
                found = found || (g.kind == PatternKind::Confined && t == s);
            }
            EXPECT_TRUE(found) << name << " " << f.seed.to_string();
        }
    }
}

TEST(Patterns, PeriodicTailSearch) {
    EXPECT_EQ(find_periodic_tail({"a", "b", "c", "b", "c", "b", "c"}), (std::pair<std::size_t, std::size_t>{1, 2}));
    EXPECT_EQ(find_periodic_tail({"a", "b", "c"}), std::nullopt);
    EXPECT_EQ(find_periodic_tail({"a", "b", "c", "d", "e"}), std::nullopt);
}

TEST(Patterns, OrderGrowthFit) {
    auto inf = [](long m) {
        PatternEntry e;
        e.value = ProjPoint::infinity();
        e.order = e.multiplicity = m;
        return e;
    };
    std::vector<PatternEntry> es{inf(1), inf(1), inf(2), inf(3), inf(5), inf(8), inf(13)};
    auto g = fit_order_growth(es);
    ASSERT_TRUE(g.has_value());
    EXPECT_EQ(g->recurrence, (std::vector<long>{1, 1}));
    EXPECT_EQ(g->order_at(g->orders.size()), 21);
    // constant orders do not grow
    EXPECT_FALSE(fit_order_growth({inf(2), inf(2), inf(2), inf(2), inf(2)}).has_value());
    // a broken last value is rejected
    es.back() = inf(14);
    EXPECT_FALSE(fit_order_growth(es).has_value());
}

TEST(Patterns, UnresolvedWhenTooShort) {
    TraceOptions o;
    o.max_pattern_length = 3;
    try {
        trace_confinement(fixture("bk"), ProjPoint::finite(1), o);
        FAIL() << "expected UnresolvedPattern";
    } catch (const UnresolvedPattern& e) {
        EXPECT_EQ(e.partial().entries.size(), 3u);
    }
}

TEST(Patterns, JsonShape) {
    const auto a = full_singularity_analysis(fixture("dp1"));
    const auto j = to_json(a.families[0]);
    EXPECT_EQ(j["kind"], "confined");
    EXPECT_EQ(j["entries"][1]["value"], "inf^2");
    EXPECT_EQ(j["entries"][1]["order"], 2);
    EXPECT_TRUE(j["entries"][3]["depends_on_u"].get<bool>());
    EXPECT_EQ(parse_point("oo"), ProjPoint::infinity());
}
