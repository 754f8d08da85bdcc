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

#include <random>

#include <gtest/gtest.h>

#include "singdeg/algebra/prime_field.hpp"
#include "singdeg/mapping/mapping.hpp"

using namespace singdeg;

namespace {

ParamField S(const char* s) { return ParamField::symbol(s); }

MappingSpec hv() { return make_mapping("hv", {}, "x1 + 1/x1^2 - x0"); }
MappingSpec bk() { return make_mapping("bk", {"c"}, "c*(x1-1)/(x0-1)"); }
MappingSpec dp1() { return make_mapping("dp1", {"alpha", "beta"}, "(alpha+beta*n)/x1 + 1/x1^2 - x0"); }
MappingSpec lin() { return make_mapping("lin", {}, "(x1^2-1)/x0"); }
MappingSpec tsuda() { return make_mapping("tsuda", {}, "x0*(x1-1/x1)"); }

}  // namespace

TEST(Expr, PrintParseRoundTrip) {
    const char* cases[] = {"x1 + 1/x1^2 - x0",  "c*(x1-1)/(x0-1)", "-(a+b)^3",  "a - -b",       "(x^2)^3",
                           "a/(b/c)",           "a/b/c",           "2^(-3)",    "-x^2",          "x1^(-2)*x0",
                           "(alpha+beta*n)/x1", "a-(b-c)",         "((((7))))", "x0*(x1-1/x1)"};
    for (const char* c : cases) {
        ExprPtr e = parse_expression(c);
        std::string printed = to_string(*e);
        ExprPtr again = parse_expression(printed);
        EXPECT_TRUE(*e == *again) << c << " -> " << printed;
        EXPECT_EQ(to_string(*again), printed);
    }
}

TEST(Expr, Precedence) {
    EXPECT_EQ(to_field(*parse_expression("2+3*4^2")), ParamField(50));
    EXPECT_EQ(to_field(*parse_expression("-2^2")), ParamField(-4));
    EXPECT_EQ(to_field(*parse_expression("8/2/2")), ParamField(2));
    EXPECT_EQ(to_field(*parse_expression("2^-2")), ParamField(mpq_class(1, 4)));
}

TEST(Expr, SyntaxErrorsReportPosition) {
    try {
        parse_expression("x1 + * x0");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1u);
        EXPECT_EQ(e.column(), 6u);
    }
    EXPECT_THROW(parse_expression("(x1"), ParseError);
    EXPECT_THROW(parse_expression("x1^y"), ParseError);
    EXPECT_THROW(parse_expression(""), ParseError);
}

TEST(Mapping, ParseDocument) {
    MappingSpec s = parse_mapping("# comment\nname = hv\nupdate = x1 + 1/x1^2 - x0   # trailing\n");
    EXPECT_EQ(s.name, "hv");
    EXPECT_TRUE(s.params.empty());
    EXPECT_EQ(s.update_field, S("x1") + ParamField(1) / S("x1").pow(2) - S("x0"));
    EXPECT_EQ(s.form.d0, 1u);
    EXPECT_EQ(s.form.d1, 3u);
}

TEST(Mapping, ParseWithParameter) {
    MappingSpec s = parse_mapping("name = bk\nparams = c\nupdate = c*(x1-1)/(x0-1)\n");
    EXPECT_EQ(s.params, std::vector<std::string>{"c"});
    EXPECT_EQ(s.update_field, S("c") * (S("x1") - 1) / (S("x0") - 1));
}

TEST(Mapping, Rejections) {
    EXPECT_THROW(parse_mapping("name = t\nupdate = x1\n"), ParseError);
    EXPECT_THROW(parse_mapping("name = t\nupdate = x1*x0/x0\n"), ParseError);
    try {
        parse_mapping("name = t\nupdate = x1 + q*x0\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 15u);
    }
    EXPECT_THROW(parse_mapping("name = t\nparams = n\nupdate = x0\n"), ParseError);
    EXPECT_THROW(parse_mapping("name = t\nupdate = x0 + x2\n"), ParseError);
    EXPECT_THROW(parse_mapping("name = t\nupdate = x0\ninverse = x2 + 1\n"), ParseError);
    EXPECT_THROW(parse_mapping("name = t\nfoo = 1\nupdate = x0\n"), ParseError);
    EXPECT_THROW(parse_mapping("name = t\n"), ParseError);
}

TEST(Mapping, DocumentRoundTrip) {
    for (const MappingSpec& s : {hv(), bk(), dp1(), lin(), tsuda()}) {
        MappingSpec again = parse_mapping(to_document(s));
        EXPECT_TRUE(*again.update == *s.update) << s.name;
        EXPECT_EQ(again.params, s.params);
    }
}

TEST(Mapping, StepExamples) {
    const ProjPoint u = ProjPoint::finite(S("u"));
    const ProjPoint inf = ProjPoint::infinity();
    EXPECT_EQ(*step(dp1(), u, inf, 3), ProjPoint::finite(-S("u")));
    EXPECT_EQ(*step(hv(), u, inf, 3), inf);
    EXPECT_EQ(*step(lin(), u, ProjPoint::finite(0), 3), ProjPoint::finite(ParamField(-1) / S("u")));
    // indeterminate: Bedford-Kim at (1, 1)
    EXPECT_FALSE(step(bk(), ProjPoint::finite(1), ProjPoint::finite(1), 0).has_value());
    // symbolic n stays symbolic
    auto r = step(dp1(), ProjPoint::finite(0), ProjPoint::finite(1), S("n"));
    EXPECT_EQ(r->value(), S("alpha") + S("beta") * S("n") + 1);
}

TEST(Mapping, InvertExamples) {
    MappingSpec h = invert(hv());
    EXPECT_EQ(h.direction, -1);
    EXPECT_EQ(h.update_field, hv().update_field);
    EXPECT_EQ(invert(bk()).update_field, to_field(*parse_expression("1 + c*(x1-1)/x0")));
    EXPECT_EQ(invert(tsuda()).update_field, to_field(*parse_expression("x0/(x1-1/x1)")));
    EXPECT_EQ(invert(invert(bk())).update_field, bk().update_field);
    MappingSpec hv5 = make_mapping("hv5", {}, "x1 + 1/x1^5 - x0");
    EXPECT_EQ(invert(hv5).update_field, hv5.update_field);
    EXPECT_THROW(invert(make_mapping("q", {}, "x0^2 + x1")), MappingError);
    EXPECT_THROW(make_mapping("q", {}, "x0^3 + x1", "(x2 - x1)^3"), ParseError);
}

TEST(Mapping, ExplicitInverseAccepted) {
    MappingSpec s = make_mapping("bk", {"c"}, "c*(x1-1)/(x0-1)", "1 + c*(x1-1)/x2");
    EXPECT_EQ(invert(s).update_field, invert(bk()).update_field);
}

TEST(Mapping, InverseUndoesStepOverPrimeField) {
    const std::uint64_t p = random_prime_near_2_62(11);
    const PrimeField F(p);
    struct Ops {
        const PrimeField* F;
        std::uint64_t zero() const { return 0; }
        std::uint64_t one() const { return 1; }
        std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return F->add(a, b); }
        std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return F->mul(a, b); }
    } ops{&F};
    std::mt19937_64 rng(7);
    for (const MappingSpec& s : {hv(), bk(), dp1(), lin(), tsuda()}) {
        const MappingSpec inv = invert(s);
        PrimeFieldConfig cfg;
        cfg.modulus = p;
        for (VarId v : s.param_ids()) cfg.assignment[v] = rng() % p;
        int checked = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            const long n = static_cast<long>(rng() % 50);
            const std::uint64_t x0 = rng() % p, x1 = rng() % p;
            auto coef = [&](long nv) {
                return [&, nv](const MPoly& c) { return specialize(c, cfg, nv); };
            };
            auto fwd = specialize_form<std::uint64_t>(s.form, coef(n));
            auto [A, B] = bihom_eval(fwd, x0, std::uint64_t(1), x1, std::uint64_t(1), ops);
            if (B == 0) continue;
            const std::uint64_t x2 = F.mul(A, F.inv(B));
            auto bwd = specialize_form<std::uint64_t>(inv.form, coef(n));
            auto [C, D] = bihom_eval(bwd, x2, std::uint64_t(1), x1, std::uint64_t(1), ops);
            if (D == 0) continue;
            EXPECT_EQ(F.mul(C, F.inv(D)), x0) << s.name;
            ++checked;
        }
        EXPECT_GE(checked, 990) << s.name;
    }
}
