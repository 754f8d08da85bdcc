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

#include "singdeg/algebra/mpoly.hpp"
#include "singdeg/algebra/param_field.hpp"
#include "singdeg/algebra/prime_field.hpp"
#include "singdeg/algebra/unipoly.hpp"
#include "singdeg/algebra/zpoly.hpp"

namespace singdeg {
namespace {

MPoly V(const char* name) { return MPoly::var(intern(name)); }
ParamField P(const char* name) { return ParamField::symbol(name); }

MPoly random_poly(std::mt19937_64& rng, const std::vector<VarId>& vars, int terms, int max_exp) {
    std::uniform_int_distribution<int> e(0, max_exp), c(-9, 9);
    std::vector<MPoly::Term> ts;
    for (int i = 0; i < terms; ++i) {
        std::vector<Monomial::Power> pw;
        for (VarId v : vars) pw.emplace_back(v, e(rng));
        ts.push_back({Monomial(pw), mpz_class(c(rng))});
    }
    return MPoly::from_terms(ts);
}

TEST(FieldNormalize, CancelsCommonFactor) {
    const MPoly c = V("c");
    EXPECT_EQ(field_normalize(c * c - 1, c - 1), ParamField(c + 1));
    EXPECT_TRUE(field_normalize(MPoly(0), c).is_zero());
    const MPoly n1 = MPoly::var(sym::n()) + 1;
    EXPECT_EQ(field_normalize(n1 * n1, n1), ParamField(n1));
}

TEST(FieldNormalize, ZeroDenominatorThrows) {
    EXPECT_THROW(field_normalize(V("c"), MPoly(0)), DivisionByZero);
}

TEST(FieldNormalize, DenominatorSignIsCanonical) {
    const MPoly c = V("c");
    const ParamField a = field_normalize(MPoly(1), MPoly(1) - c);
    const ParamField b = field_normalize(MPoly(-1), c - 1);
    EXPECT_EQ(a, b);
    EXPECT_GT(a.den().leading_coef(), 0);
}

TEST(FieldNormalize, IdempotentAndInvariantUnderCommonFactor) {
    std::mt19937_64 rng(7);
    const std::vector<VarId> vars = {intern("c"), sym::u(), sym::n()};
    for (int i = 0; i < 20; ++i) {
        MPoly a = random_poly(rng, vars, 3, 2);
        MPoly b = random_poly(rng, vars, 3, 2);
        MPoly g = random_poly(rng, vars, 2, 1);
        if (b.is_zero() || g.is_zero()) continue;
        const ParamField f = field_normalize(a, b);
        EXPECT_EQ(field_normalize(f.num(), f.den()), f);
        EXPECT_EQ(field_normalize(a * g, b * g), f);
    }
}

TEST(MPolyGcd, RandomTriplesRecoverCommonFactor) {
    std::mt19937_64 rng(11);
    const std::vector<VarId> vars = {intern("c"), sym::u(), sym::z()};
    for (int i = 0; i < 25; ++i) {
        MPoly a = random_poly(rng, vars, 3, 2);
        MPoly b = random_poly(rng, vars, 3, 2);
        MPoly g = random_poly(rng, vars, 3, 2);
        if (a.is_zero() || b.is_zero() || g.is_zero()) continue;
        const MPoly lhs = gcd(a * g, b * g);
        const MPoly rhs = g * gcd(a, b);
        // associates: equal up to sign
        EXPECT_TRUE(lhs == rhs || lhs == -rhs) << lhs << " vs " << rhs;
    }
}

TEST(PolyGcd, Examples) {
    using Q = UniPoly<ParamField>;
    const ParamField c = P("c");
    EXPECT_EQ(poly_gcd(Q{-1, 0, 1}, Q{-1, 1}), (Q{-1, 1}));
    EXPECT_EQ(poly_gcd(Q{0, 0, 0, 1}, Q{0, 0, 1}), (Q{0, 0, 1}));
    EXPECT_EQ(poly_gcd(Q{c, c + 1, 1}, Q{1, 1}), (Q{1, 1}));
    EXPECT_TRUE(poly_gcd(Q{}, Q{}).is_zero());
}

TEST(PolyGcd, MonicAndDividesBoth) {
    using Q = UniPoly<ParamField>;
    const ParamField c = P("c");
    const Q a = Q{c, 1} * Q{2, c} * Q{1, 0, 1};
    const Q b = Q{c, 1} * Q{-1, 1};
    const Q g = poly_gcd(a, b);
    EXPECT_TRUE(g.leading().is_one());
    EXPECT_TRUE(a.divmod(g).second.is_zero());
    EXPECT_TRUE(b.divmod(g).second.is_zero());
    EXPECT_EQ(g.degree(), 1);
}

TEST(ShiftN, Examples) {
    const ParamField n = ParamField::symbol(sym::n());
    const ParamField al = P("alpha"), be = P("beta");
    EXPECT_EQ(shift_n(al + be * n), al + be * (n + 1));
    EXPECT_EQ(shift_n(P("c")), P("c"));
    EXPECT_EQ(shift_n(n * n), n * n + ParamField(2) * n + 1);
}

TEST(ShiftN, RepeatedEqualsDirectSubstitution) {
    const ParamField n = ParamField::symbol(sym::n());
    const ParamField e = (n * n + P("c")) / (n + 3);
    ParamField s = e;
    for (int m = 1; m <= 5; ++m) {
        s = shift_n(s);
        EXPECT_EQ(s, e.substitute(sym::n(), n + m));
        EXPECT_EQ(s, shift_n(e, m));
    }
}

TEST(Specialize, Examples) {
    PrimeFieldConfig cfg;
    cfg.modulus = 101;
    cfg.assignment[intern("c")] = 5;
    EXPECT_EQ(specialize(P("c"), cfg, 0), 5u);
    cfg.assignment[intern("c")] = 1;
    EXPECT_THROW(specialize(ParamField(1) / (P("c") - 1), cfg, 0), BadSpecialization);
    cfg.assignment[intern("alpha")] = 2;
    cfg.assignment[intern("beta")] = 3;
    const ParamField a = P("alpha") + P("beta") * ParamField::symbol(sym::n());
    EXPECT_EQ(specialize(a, cfg, 4), 14u);
}

TEST(Specialize, CommutesWithArithmetic) {
    std::mt19937_64 rng(3);
    const std::vector<VarId> vars = {intern("c"), sym::u(), sym::n()};
    const PrimeFieldConfig cfg = draw_prime_config({intern("c"), sym::u()}, 99);
    const PrimeField F(cfg.modulus);
    for (int i = 0; i < 20; ++i) {
        const ParamField e1 = field_normalize(random_poly(rng, vars, 3, 2), random_poly(rng, vars, 2, 2) + 17);
        const ParamField e2 = field_normalize(random_poly(rng, vars, 3, 2), random_poly(rng, vars, 2, 2) + 23);
        try {
            EXPECT_EQ(specialize(e1 * e2, cfg, 7), F.mul(specialize(e1, cfg, 7), specialize(e2, cfg, 7)));
            EXPECT_EQ(specialize(e1 + e2, cfg, 7), F.add(specialize(e1, cfg, 7), specialize(e2, cfg, 7)));
        } catch (const BadSpecialization&) {
        }
    }
}

TEST(PrimeField, DrawsPrimesNearTwoToThe62) {
    for (std::uint64_t s = 1; s <= 3; ++s) {
        const auto p = random_prime_near_2_62(s);
        EXPECT_TRUE(is_prime_u64(p));
        EXPECT_GT(p, (std::uint64_t{1} << 62) - (std::uint64_t{1} << 40));
        EXPECT_LT(p, std::uint64_t{1} << 62);
    }
    EXPECT_FALSE(is_prime_u64(561));
}

TEST(PrimeField, MulMatchesWideArithmetic) {
    const PrimeField F(random_prime_near_2_62(5));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 1000; ++i) {
        std::uint64_t a = rng() % F.modulus(), b = rng() % F.modulus();
        EXPECT_EQ(F.mul(a, b), static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % F.modulus()));
    }
}

TEST(FpPoly, GcdOfProducts) {
    const PrimeField F(random_prime_near_2_62(8));
    const FpPoly g = {3, 0, 1};
    const FpPoly a = fp::mul(F, g, FpPoly{1, 1});
    const FpPoly b = fp::mul(F, g, FpPoly{5, 0, 0, 2});
    EXPECT_EQ(fp::gcd(F, a, b), fp::monic(F, g));
    EXPECT_TRUE(fp::gcd(F, {}, {}).empty());
}

TEST(ZPoly, ModularGcdMatchesConstruction) {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<long> c(-1000000, 1000000);
    for (int trial = 0; trial < 10; ++trial) {
        auto rnd = [&](int deg) {
            ZPoly p(deg + 1);
            for (auto& x : p) x = c(rng);
            if (p.back() == 0) p.back() = 1;
            return p;
        };
        const ZPoly g = zp::primitive(rnd(5));
        const ZPoly a = zp::mul(g, rnd(7));
        const ZPoly b = zp::mul(g, rnd(6));
        const ZPoly r = zp::gcd(a, b);
        ASSERT_EQ(zp::degree(r), 5);
        EXPECT_TRUE(zp::try_divexact(r, g).has_value());
        EXPECT_TRUE(zp::try_divexact(g, r).has_value());
    }
}

}  // namespace
}  // namespace singdeg
