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

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "singdeg/algebra/prime_field.hpp"

namespace singdeg {

/// Dense polynomial in one variable over Z; index = degree, trailing zeros trimmed.
using ZPoly = std::vector<mpz_class>;

namespace zp {

void trim(ZPoly& a);
long degree(const ZPoly& a);
ZPoly add(const ZPoly& a, const ZPoly& b);
ZPoly sub(const ZPoly& a, const ZPoly& b);
ZPoly mul(const ZPoly& a, const ZPoly& b);
ZPoly scale(const ZPoly& a, const mpz_class& c);
mpz_class content(const ZPoly& a);
/// Divide out the content and make the leading coefficient positive.
ZPoly primitive(const ZPoly& a);
std::optional<ZPoly> try_divexact(const ZPoly& a, const ZPoly& b);
FpPoly reduce(const ZPoly& a, const PrimeField& F);
/// Largest coefficient bit length.
std::size_t max_bits(const ZPoly& a);

/// gcd over Z[z] with positive leading coefficient, by multi-modular
/// reconstruction verified with exact trial division.
ZPoly gcd(const ZPoly& a, const ZPoly& b);

}  // namespace zp
}  // namespace singdeg
