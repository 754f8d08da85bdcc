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

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "singdeg/algebra/symbols.hpp"

namespace singdeg {

/// Power product of interned symbols, kept sorted by variable id.
class Monomial {
public:
    using Power = std::pair<VarId, std::uint32_t>;

    Monomial() = default;
    explicit Monomial(std::vector<Power> powers);
    static Monomial var(VarId v, std::uint32_t e = 1);

    const std::vector<Power>& powers() const { return powers_; }
    std::uint32_t total_degree() const { return total_; }
    std::uint32_t degree(VarId v) const;
    bool is_one() const { return powers_.empty(); }
    bool contains(VarId v) const { return degree(v) != 0; }

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    /// Requires divides(o) in the reverse sense: returns *this / o.
    Monomial operator/(const Monomial& o) const;
    Monomial without(VarId v) const;
    static Monomial gcd(const Monomial& a, const Monomial& b);

    bool operator==(const Monomial& o) const { return powers_ == o.powers_; }

private:
    std::vector<Power> powers_;
    std::uint32_t total_ = 0;
};

/// Graded lexicographic order; lower variable ids are more significant.
int compare_grlex(const Monomial& a, const Monomial& b);

/// Sparse multivariate polynomial with integer coefficients.
/// Terms are stored in strictly decreasing graded-lex order with nonzero
/// coefficients, so structural equality is polynomial equality.
class MPoly {
public:
    struct Term {
        Monomial mono;
        mpz_class coef;
    };

    MPoly() = default;
    MPoly(const mpz_class& c);  // NOLINT(google-explicit-constructor)
    MPoly(long c) : MPoly(mpz_class(c)) {}  // NOLINT(google-explicit-constructor)
    static MPoly var(VarId v, std::uint32_t e = 1);
    static MPoly from_terms(std::vector<Term> terms);  // any order, duplicates summed

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    bool is_one() const { return is_constant() && !is_zero() && terms_[0].coef == 1; }
    /// Value of a constant polynomial (0 for the zero polynomial).
    mpz_class constant_value() const;
    const Term& leading() const { return terms_.front(); }
    const mpz_class& leading_coef() const { return terms_.front().coef; }
    std::uint32_t degree(VarId v) const;
    std::uint32_t total_degree() const;
    bool contains(VarId v) const { return degree(v) != 0; }
    std::set<VarId> variables() const;
    /// Smallest variable id present, if any.
    std::optional<VarId> main_variable() const;

    MPoly operator-() const;
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    MPoly scaled(const mpz_class& c) const;
    MPoly times_monomial(const Monomial& m, const mpz_class& c) const;
    MPoly pow(unsigned e) const;

    /// Exact quotient; throws std::domain_error when o does not divide *this.
    MPoly divexact(const MPoly& o) const;
    /// Quotient if o divides *this exactly.
    std::optional<MPoly> try_divexact(const MPoly& o) const;
    MPoly divexact(const mpz_class& c) const;

    bool operator==(const MPoly& o) const;

    /// Coefficients with respect to v: result[i] is the coefficient of v^i.
    std::vector<MPoly> coefficients_in(VarId v) const;
    static MPoly from_coefficients(VarId v, const std::vector<MPoly>& coeffs);

    /// gcd of all integer coefficients (nonnegative; 0 for the zero polynomial).
    mpz_class integer_content() const;

    MPoly substitute(VarId v, const MPoly& value) const;
    MPoly substitute(const std::map<VarId, MPoly>& values) const;

    /// Evaluate every variable through `value`; unmapped variables throw.
    template <class R, class Lookup, class FromInt>
    R evaluate(Lookup&& value, FromInt&& from_int) const;

    std::string to_string() const;

private:
    std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const MPoly& p);

/// Greatest common divisor with positive leading coefficient (0 if both zero).
/// Recursive content / primitive-part scheme over the fixed variable order.
MPoly gcd(const MPoly& a, const MPoly& b);

/// Content with respect to v (gcd of the coefficients of powers of v).
MPoly content_in(const MPoly& p, VarId v);

/// Pseudo-remainder of a by b, both viewed as polynomials in v.
MPoly pseudo_remainder(const MPoly& a, const MPoly& b, VarId v);

template <class R, class Lookup, class FromInt>
R MPoly::evaluate(Lookup&& value, FromInt&& from_int) const {
    R acc = from_int(mpz_class(0));
    for (const auto& t : terms_) {
        R term = from_int(t.coef);
        for (const auto& [v, e] : t.mono.powers()) {
            R base = value(v);
            for (std::uint32_t i = 0; i < e; ++i) term = term * base;
        }
        acc = acc + term;
    }
    return acc;
}

}  // namespace singdeg
