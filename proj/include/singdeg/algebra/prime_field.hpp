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
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "singdeg/algebra/param_field.hpp"

namespace singdeg {

/// Arithmetic modulo a prime p < 2^62.
class PrimeField {
public:
    explicit PrimeField(std::uint64_t p);

    std::uint64_t modulus() const { return p_; }
    std::uint64_t reduce(std::int64_t x) const;
    std::uint64_t reduce(const mpz_class& x) const;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
    std::uint64_t neg(std::uint64_t a) const { return a ? p_ - a : 0; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        // long-double quotient estimate; exact for p < 2^62
        auto q = static_cast<std::uint64_t>(static_cast<long double>(a) * b / p_);
        auto r = static_cast<std::int64_t>(a * b - q * p_);
        if (r < 0) r += static_cast<std::int64_t>(p_);
        if (r >= static_cast<std::int64_t>(p_)) r -= static_cast<std::int64_t>(p_);
        return static_cast<std::uint64_t>(r);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    /// Throws DivisionByZero for a == 0.
    std::uint64_t inv(std::uint64_t a) const;

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
    std::uint64_t p_;
};

bool is_prime_u64(std::uint64_t n);

/// A prime in [2^62 - 2^40, 2^62) drawn from `seed`.
std::uint64_t random_prime_near_2_62(std::uint64_t seed);

class BadSpecialization : public std::runtime_error {
public:
    explicit BadSpecialization(const std::string& what) : std::runtime_error(what) {}
};

/// A prime modulus together with residues for the free symbols.
struct PrimeFieldConfig {
    std::uint64_t modulus = 0;
    std::map<VarId, std::uint64_t> assignment;
    std::uint64_t seed = 0;

    std::string describe_assignment() const;
};

/// Draw a prime and residues for `symbols` from `seed`.
PrimeFieldConfig draw_prime_config(const std::vector<VarId>& symbols, std::uint64_t seed);

/// Image of e under the assignment and n -> n_value (mod p).
/// Throws BadSpecialization if the denominator vanishes.
std::uint64_t specialize(const ParamField& e, const PrimeFieldConfig& cfg, long n_value);
std::uint64_t specialize(const MPoly& e, const PrimeFieldConfig& cfg, long n_value);

// ------------------------------------------------------------ F_p[z]

/// Dense univariate polynomial over F_p; coefficient i multiplies z^i.
/// The zero polynomial is empty and has degree -1.
using FpPoly = std::vector<std::uint64_t>;

namespace fp {

void trim(FpPoly& a);
long degree(const FpPoly& a);
FpPoly add(const PrimeField& F, const FpPoly& a, const FpPoly& b);
FpPoly sub(const PrimeField& F, const FpPoly& a, const FpPoly& b);
FpPoly scale(const PrimeField& F, const FpPoly& a, std::uint64_t c);
FpPoly mul(const PrimeField& F, const FpPoly& a, const FpPoly& b);
/// Quotient and remainder; throws DivisionByZero for b == 0.
std::pair<FpPoly, FpPoly> divmod(const PrimeField& F, const FpPoly& a, const FpPoly& b);
FpPoly divexact(const PrimeField& F, const FpPoly& a, const FpPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
FpPoly gcd(const PrimeField& F, FpPoly a, FpPoly b);
FpPoly monic(const PrimeField& F, FpPoly a);
std::uint64_t eval(const PrimeField& F, const FpPoly& a, std::uint64_t x);

}  // namespace fp
}  // namespace singdeg
