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

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "singdeg/algebra/param_field.hpp"

namespace singdeg {

/// A leading coefficient fell outside the computed window.
class InsufficientDepth : public std::runtime_error {
public:
    InsufficientDepth() : std::runtime_error("insufficient series depth") {}
};

/// Truncated Laurent series in eps over Q(params, u, n).
///
/// Terms with exponent >= precision() are unknown; precision() == kExact
/// means the listed terms are the whole series. A series whose known terms
/// are all zero has no valuation (unless it is the exact zero).
class LaurentSeries {
public:
    static constexpr long kExact = std::numeric_limits<long>::max();

    LaurentSeries() = default;  // exact zero
    static LaurentSeries constant(const ParamField& c) { return monomial(c, 0); }
    static LaurentSeries monomial(const ParamField& c, long e);
    /// Terms c_i eps^(val + i), known below `precision`.
    static LaurentSeries from_terms(long val, std::vector<ParamField> coefs, long precision);
    /// O(eps^precision).
    static LaurentSeries big_o(long precision) { return from_terms(0, {}, precision); }

    bool is_exact() const { return prec_ == kExact; }
    bool is_exact_zero() const { return coefs_.empty() && is_exact(); }
    /// At least one known nonzero term.
    bool has_leading() const { return !coefs_.empty(); }
    long valuation() const;  // throws InsufficientDepth without a known leading term
    const ParamField& leading() const;
    long precision() const { return prec_; }
    /// Coefficient of eps^e; throws InsufficientDepth beyond the precision.
    ParamField coef(long e) const;
    const std::vector<ParamField>& terms() const { return coefs_; }

    LaurentSeries operator-() const;
    LaurentSeries operator+(const LaurentSeries& o) const;
    LaurentSeries operator-(const LaurentSeries& o) const;
    LaurentSeries operator*(const LaurentSeries& o) const;
    LaurentSeries scaled(const ParamField& c) const;
    /// 1/s with at most `depth` known terms; throws InsufficientDepth when
    /// the leading term is unknown and std::domain_error for the exact zero.
    LaurentSeries inverse(long depth) const;
    /// Drop terms at or beyond eps^abs_prec.
    LaurentSeries truncated(long abs_prec) const;
    /// Map every coefficient through f.
    template <class F>
    LaurentSeries map_coefficients(F&& f) const {
        LaurentSeries r = *this;
        for (auto& c : r.coefs_) c = f(c);
        r.normalize();
        return r;
    }

    bool operator==(const LaurentSeries& o) const {
        return val_ == o.val_ && prec_ == o.prec_ && coefs_ == o.coefs_;
    }
    std::string to_string() const;

private:
    void normalize();
    long lower() const;  // valuation if known, else precision

    long val_ = 0;
    std::vector<ParamField> coefs_;
    long prec_ = kExact;
};

/// a / b keeping at most `depth` known terms of 1/b.
LaurentSeries divide(const LaurentSeries& a, const LaurentSeries& b, long depth);

}  // namespace singdeg
