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

#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "singdeg/algebra/mpoly.hpp"

namespace singdeg {

class DivisionByZero : public std::domain_error {
public:
    DivisionByZero() : std::domain_error("division by zero") {}
};

/// Element of Q(p_1, ..., p_m): a reduced fraction of integer polynomials.
///
/// Invariants: gcd(num, den) = 1 (including integer content), den != 0 and
/// den has a positive leading coefficient in graded-lex order. Equality is
/// therefore structural.
class ParamField {
public:
    ParamField() : num_(), den_(1) {}
    ParamField(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
    ParamField(const mpz_class& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
    ParamField(const mpq_class& q);  // NOLINT(google-explicit-constructor)
    ParamField(const MPoly& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
    static ParamField symbol(VarId v) { return ParamField(MPoly::var(v)); }
    static ParamField symbol(std::string_view name) { return symbol(intern(name)); }

    /// Reduce num/den to canonical form; throws DivisionByZero if den == 0.
    static ParamField normalize(const MPoly& num, const MPoly& den);

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_rational_constant() const { return num_.is_constant() && den_.is_constant(); }
    mpq_class rational_value() const;
    bool contains(VarId v) const { return num_.contains(v) || den_.contains(v); }

    ParamField operator-() const;
    ParamField operator+(const ParamField& o) const;
    ParamField operator-(const ParamField& o) const;
    ParamField operator*(const ParamField& o) const;
    ParamField operator/(const ParamField& o) const;
    ParamField& operator+=(const ParamField& o) { return *this = *this + o; }
    ParamField& operator-=(const ParamField& o) { return *this = *this - o; }
    ParamField& operator*=(const ParamField& o) { return *this = *this * o; }
    ParamField& operator/=(const ParamField& o) { return *this = *this / o; }
    ParamField inverse() const;
    ParamField pow(long e) const;

    bool operator==(const ParamField& o) const { return num_ == o.num_ && den_ == o.den_; }

    /// Substitute v -> value (a field homomorphism on the v-free part).
    ParamField substitute(VarId v, const ParamField& value) const;
    ParamField substitute(const std::map<VarId, ParamField>& values) const;

    /// Text in the mapping-expression grammar, e.g. "(c^2 - 1)/(c + 1)".
    std::string to_string() const;

    static ParamField zero() { return {}; }
    static ParamField one() { return ParamField(1); }

private:
    ParamField(MPoly num, MPoly den, int /*already reduced*/) : num_(std::move(num)), den_(std::move(den)) {}

    MPoly num_;
    MPoly den_;
};

std::ostream& operator<<(std::ostream& os, const ParamField& f);

/// field_normalize: canonical reduced fraction.
inline ParamField field_normalize(const MPoly& num, const MPoly& den) { return ParamField::normalize(num, den); }

/// shift_n: substitute n -> n + steps.
ParamField shift_n(const ParamField& e, long steps = 1);

}  // namespace singdeg
