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

#include "singdeg/algebra/prime_field.hpp"

#include <random>
#include <sstream>

namespace singdeg {

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
    if (p < 2 || p >= (std::uint64_t{1} << 62)) throw std::invalid_argument("modulus out of range");
}

std::uint64_t PrimeField::reduce(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
}

std::uint64_t PrimeField::reduce(const mpz_class& x) const {
    mpz_class r;
    mpz_class pm;
    mpz_import(pm.get_mpz_t(), 1, 1, sizeof(p_), 0, 0, &p_);
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), pm.get_mpz_t());
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, r.get_mpz_t());
    return out;
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1 % p_;
    while (e) {
        if (e & 1u) r = mul(r, a);
        a = mul(a, a);
        e >>= 1u;
    }
    return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
    if (a % p_ == 0) throw DivisionByZero();
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p_), nr = static_cast<std::int64_t>(a % p_);
    while (nr) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    return reduce(t);
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1u) == 0) {
        d >>= 1u;
        ++s;
    }
    auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1u) r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1u;
        }
        return r;
    };
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t random_prime_near_2_62(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::uint64_t top = std::uint64_t{1} << 62;
    std::uniform_int_distribution<std::uint64_t> dist(top - (std::uint64_t{1} << 40), top - 1);
    while (true) {
        std::uint64_t c = dist(rng) | 1u;
        if (is_prime_u64(c)) return c;
    }
}

std::string PrimeFieldConfig::describe_assignment() const {
    std::ostringstream os;
    os << "p=" << modulus;
    for (const auto& [v, r] : assignment) os << ", " << symbol_name(v) << "=" << r;
    return os.str();
}

PrimeFieldConfig draw_prime_config(const std::vector<VarId>& symbols, std::uint64_t seed) {
    PrimeFieldConfig cfg;
    cfg.seed = seed;
    cfg.modulus = random_prime_near_2_62(seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<std::uint64_t> dist(2, cfg.modulus - 1);
    for (VarId v : symbols) cfg.assignment[v] = dist(rng);
    return cfg;
}

std::uint64_t specialize(const MPoly& e, const PrimeFieldConfig& cfg, long n_value) {
    const PrimeField F(cfg.modulus);
    std::uint64_t acc = 0;
    for (const auto& t : e.terms()) {
        std::uint64_t term = F.reduce(t.coef);
        for (const auto& [v, ex] : t.mono.powers()) {
            std::uint64_t base;
            if (v == sym::n()) {
                base = F.reduce(static_cast<std::int64_t>(n_value));
            } else {
                auto it = cfg.assignment.find(v);
                if (it == cfg.assignment.end())
                    throw BadSpecialization("no residue assigned to symbol " + symbol_name(v));
                base = it->second;
            }
            term = F.mul(term, F.pow(base, ex));
        }
        acc = F.add(acc, term);
    }
    return acc;
}

std::uint64_t specialize(const ParamField& e, const PrimeFieldConfig& cfg, long n_value) {
    const PrimeField F(cfg.modulus);
    const std::uint64_t d = specialize(e.den(), cfg, n_value);
    if (d == 0)
        throw BadSpecialization("denominator " + e.den().to_string() + " vanishes at " + cfg.describe_assignment() +
                                ", n=" + std::to_string(n_value));
    return F.mul(specialize(e.num(), cfg, n_value), F.inv(d));
}

// ------------------------------------------------------------ F_p[z]

namespace fp {

void trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

long degree(const FpPoly& a) { return static_cast<long>(a.size()) - 1; }

FpPoly add(const PrimeField& F, const FpPoly& a, const FpPoly& b) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

FpPoly sub(const PrimeField& F, const FpPoly& a, const FpPoly& b) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

FpPoly scale(const PrimeField& F, const FpPoly& a, std::uint64_t c) {
    if (c == 0) return {};
    FpPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
    return r;
}

FpPoly mul(const PrimeField& F, const FpPoly& a, const FpPoly& b) {
    if (a.empty() || b.empty()) return {};
    const std::uint64_t p = F.modulus();
    // accumulate 128-bit sums; each product < 2^124 so 8 may be summed safely
    std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
    std::vector<unsigned> count(acc.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        const unsigned __int128 ai = a[i];
        for (std::size_t j = 0; j < b.size(); ++j) {
            auto& s = acc[i + j];
            s += ai * b[j];
            if (++count[i + j] == 8) {
                s %= p;
                count[i + j] = 0;
            }
        }
    }
    FpPoly r(acc.size());
    for (std::size_t k = 0; k < acc.size(); ++k) r[k] = static_cast<std::uint64_t>(acc[k] % p);
    trim(r);
    return r;
}

FpPoly monic(const PrimeField& F, FpPoly a) {
    trim(a);
    if (a.empty() || a.back() == 1) return a;
    return scale(F, a, F.inv(a.back()));
}

std::pair<FpPoly, FpPoly> divmod(const PrimeField& F, const FpPoly& a, const FpPoly& b) {
    FpPoly bb = b;
    trim(bb);
    if (bb.empty()) throw DivisionByZero();
    FpPoly r = a;
    trim(r);
    if (r.size() < bb.size()) return {{}, r};
    const std::uint64_t linv = F.inv(bb.back());
    FpPoly q(r.size() - bb.size() + 1, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
        const std::uint64_t c = F.mul(r[k + bb.size() - 1], linv);
        q[k] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < bb.size(); ++j) r[k + j] = F.sub(r[k + j], F.mul(c, bb[j]));
    }
    r.resize(bb.size() - 1);
    trim(r);
    trim(q);
    return {q, r};
}

FpPoly divexact(const PrimeField& F, const FpPoly& a, const FpPoly& b) {
    auto [q, r] = divmod(F, a, b);
    if (!r.empty()) throw std::domain_error("F_p polynomial division is not exact");
    return q;
}

FpPoly gcd(const PrimeField& F, FpPoly a, FpPoly b) {
    trim(a);
    trim(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        // in-place remainder of a by monic-scaled b
        const std::uint64_t linv = F.inv(b.back());
        while (a.size() >= b.size()) {
            const std::uint64_t c = F.mul(a.back(), linv);
            const std::size_t shift = a.size() - b.size();
            for (std::size_t j = 0; j + 1 < b.size(); ++j) a[shift + j] = F.sub(a[shift + j], F.mul(c, b[j]));
            a.pop_back();
            trim(a);
        }
        std::swap(a, b);
    }
    return monic(F, a);
}

std::uint64_t eval(const PrimeField& F, const FpPoly& a, std::uint64_t x) {
    std::uint64_t acc = 0;
    for (std::size_t i = a.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a[i]);
    return acc;
}

}  // namespace fp
}  // namespace singdeg
