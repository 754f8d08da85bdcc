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

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace singdeg {

/// Dense univariate polynomial over a field K, indexed by degree.
///
/// K needs +, -, *, /, == and is_zero(); K(0) and K(1) must be the
/// additive and multiplicative identities. The zero polynomial has degree -1.
template <class K>
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
    UniPoly(std::initializer_list<K> coeffs) : c_(coeffs) { trim(); }
    static UniPoly constant(const K& k) { return UniPoly(std::vector<K>{k}); }
    static UniPoly monomial(const K& k, std::size_t deg) {
        std::vector<K> c(deg + 1, K(0));
        c[deg] = k;
        return UniPoly(std::move(c));
    }

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<K>& coeffs() const { return c_; }
    K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K(0); }
    const K& leading() const { return c_.back(); }

    UniPoly operator+(const UniPoly& o) const {
        std::vector<K> r(std::max(c_.size(), o.c_.size()), K(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
        return UniPoly(std::move(r));
    }
    UniPoly operator-(const UniPoly& o) const {
        std::vector<K> r(std::max(c_.size(), o.c_.size()), K(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
        return UniPoly(std::move(r));
    }
    UniPoly operator*(const UniPoly& o) const {
        if (is_zero() || o.is_zero()) return {};
        std::vector<K> r(c_.size() + o.c_.size() - 1, K(0));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
        }
        return UniPoly(std::move(r));
    }
    UniPoly scaled(const K& k) const {
        std::vector<K> r = c_;
        for (auto& x : r) x = x * k;
        return UniPoly(std::move(r));
    }
    bool operator==(const UniPoly& o) const { return c_ == o.c_; }

    /// Euclidean division; throws std::domain_error for a zero divisor.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& b) const {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<K> r = c_;
        if (r.size() < b.c_.size()) return {UniPoly(), *this};
        std::vector<K> q(r.size() - b.c_.size() + 1, K(0));
        const K lb = b.leading();
        for (std::size_t k = q.size(); k-- > 0;) {
            K c = r[k + b.c_.size() - 1] / lb;
            q[k] = c;
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[k + j] = r[k + j] - c * b.c_[j];
        }
        r.resize(b.c_.size() - 1);
        return {UniPoly(std::move(q)), UniPoly(std::move(r))};
    }

    UniPoly monic() const { return is_zero() ? *this : scaled(K(1) / leading()); }

    template <class X>
    X evaluate(const X& x) const {
        X acc = X(K(0));
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + X(c_[i]);
        return acc;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<K> c_;
};

/// Monic greatest common divisor; poly_gcd(0, 0) = 0.
template <class K>
UniPoly<K> poly_gcd(UniPoly<K> a, UniPoly<K> b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

}  // namespace singdeg
