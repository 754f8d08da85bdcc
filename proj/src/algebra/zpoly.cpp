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

#include "singdeg/algebra/zpoly.hpp"

#include <stdexcept>

namespace singdeg::zp {

void trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

long degree(const ZPoly& a) { return static_cast<long>(a.size()) - 1; }

ZPoly add(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    trim(r);
    return r;
}

ZPoly sub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] -= b[i];
    }
    trim(r);
    return r;
}

ZPoly mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    trim(r);
    return r;
}

ZPoly scale(const ZPoly& a, const mpz_class& c) {
    if (c == 0) return {};
    ZPoly r = a;
    for (auto& x : r) x *= c;
    return r;
}

mpz_class content(const ZPoly& a) {
    mpz_class g = 0;
    for (const auto& x : a) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

ZPoly primitive(const ZPoly& a) {
    ZPoly r = a;
    trim(r);
    if (r.empty()) return r;
    mpz_class c = content(r);
    if (r.back() < 0) c = -c;
    if (c != 1)
        for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    return r;
}

std::optional<ZPoly> try_divexact(const ZPoly& a, const ZPoly& b) {
    if (b.empty()) throw DivisionByZero();
    ZPoly r = a;
    trim(r);
    if (r.empty()) return ZPoly{};
    if (r.size() < b.size()) return std::nullopt;
    ZPoly q(r.size() - b.size() + 1);
    const mpz_class& lb = b.back();
    for (std::size_t k = q.size(); k-- > 0;) {
        mpz_class& top = r[k + b.size() - 1];
        if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
        mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
        if (q[k] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) mpz_submul(r[k + j].get_mpz_t(), q[k].get_mpz_t(), b[j].get_mpz_t());
    }
    for (std::size_t i = 0; i + 1 < b.size() && i < r.size(); ++i)
        if (r[i] != 0) return std::nullopt;
    trim(q);
    return q;
}

FpPoly reduce(const ZPoly& a, const PrimeField& F) {
    FpPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mpz_fdiv_ui(a[i].get_mpz_t(), F.modulus());
    fp::trim(r);
    return r;
}

std::size_t max_bits(const ZPoly& a) {
    std::size_t b = 0;
    for (const auto& x : a) b = std::max(b, mpz_sizeinbase(x.get_mpz_t(), 2));
    return b;
}

ZPoly gcd(const ZPoly& a0, const ZPoly& b0) {
    ZPoly a = a0, b = b0;
    trim(a);
    trim(b);
    if (a.empty()) {
        if (!b.empty() && b.back() < 0) b = scale(b, -1);
        return b;
    }
    if (b.empty()) {
        if (a.back() < 0) a = scale(a, -1);
        return a;
    }
    mpz_class ca = content(a), cb = content(b), c;
    mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    a = primitive(a);
    b = primitive(b);
    if (a.size() == 1 || b.size() == 1) return {c};

    mpz_class gamma;
    mpz_gcd(gamma.get_mpz_t(), a.back().get_mpz_t(), b.back().get_mpz_t());

    long best_deg = std::min(degree(a), degree(b)) + 1;
    ZPoly H;
    mpz_class M = 0;
    ZPoly last_lift;
    for (std::uint64_t seed = 1;; ++seed) {
        const std::uint64_t p = random_prime_near_2_62(0x5eedull * 1000003ull + seed);
        const PrimeField F(p);
        if (mpz_fdiv_ui(a.back().get_mpz_t(), p) == 0 || mpz_fdiv_ui(b.back().get_mpz_t(), p) == 0) continue;
        FpPoly g = fp::gcd(F, reduce(a, F), reduce(b, F));
        const long d = fp::degree(g);
        if (d == 0) return {c};
        if (d > best_deg) continue;  // unlucky prime
        g = fp::scale(F, g, mpz_fdiv_ui(gamma.get_mpz_t(), p));
        const mpz_class P(static_cast<unsigned long>(p));
        if (d < best_deg) {
            best_deg = d;
            H.assign(g.begin(), g.end());
            for (std::size_t i = 0; i < g.size(); ++i) H[i] = static_cast<unsigned long>(g[i]);
            M = P;
            last_lift.clear();
        } else {
            // H <- H + M * ((g - H) * M^{-1} mod p)
            const std::uint64_t minv = F.inv(mpz_fdiv_ui(M.get_mpz_t(), p));
            for (std::size_t i = 0; i < H.size(); ++i) {
                const std::uint64_t hi = mpz_fdiv_ui(H[i].get_mpz_t(), p);
                const std::uint64_t t = F.mul(F.sub(i < g.size() ? g[i] : 0, hi), minv);
                mpz_addmul_ui(H[i].get_mpz_t(), M.get_mpz_t(), static_cast<unsigned long>(t));
            }
            M *= P;
        }
        // symmetric lift
        ZPoly lift = H;
        const mpz_class half = M / 2;
        for (auto& x : lift) {
            mpz_mod(x.get_mpz_t(), x.get_mpz_t(), M.get_mpz_t());
            if (x > half) x -= M;
        }
        if (lift == last_lift) {
            ZPoly G = primitive(lift);
            if (try_divexact(a, G) && try_divexact(b, G)) return scale(G, c);
        }
        last_lift = std::move(lift);
    }
}

}  // namespace singdeg::zp
