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

#include "singdeg/algebra/param_field.hpp"

namespace singdeg {

namespace {

bool needs_parens(const MPoly& p) { return p.size() > 1 || (p.size() == 1 && p.leading_coef() < 0); }

std::string wrap(const MPoly& p) {
    return needs_parens(p) ? "(" + p.to_string() + ")" : p.to_string();
}

bool is_single_factor(const MPoly& p) {
    if (p.size() != 1) return false;
    const auto& t = p.leading();
    if (t.mono.is_one()) return t.coef > 0;
    return t.coef == 1 && t.mono.powers().size() == 1 && t.mono.powers()[0].second == 1;
}

}  // namespace

ParamField::ParamField(const mpq_class& q) : num_(q.get_num()), den_(q.get_den()) {}

ParamField ParamField::normalize(const MPoly& num, const MPoly& den) {
    if (den.is_zero()) throw DivisionByZero();
    if (num.is_zero()) return {};
    MPoly g = gcd(num, den);
    MPoly n = g.is_one() ? num : num.divexact(g);
    MPoly d = g.is_one() ? den : den.divexact(g);
    if (d.leading_coef() < 0) {
        n = -n;
        d = -d;
    }
    return {std::move(n), std::move(d), 0};
}

mpq_class ParamField::rational_value() const {
    if (!is_rational_constant()) throw std::domain_error("not a rational constant: " + to_string());
    mpq_class q(num_.constant_value(), den_.constant_value());
    q.canonicalize();
    return q;
}

ParamField ParamField::operator-() const { return {-num_, den_, 0}; }

ParamField ParamField::operator+(const ParamField& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_ == o.den_) return normalize(num_ + o.num_, den_);
    if (den_.is_one()) return {num_ * o.den_ + o.num_, o.den_, 0};
    if (o.den_.is_one()) return {num_ + o.num_ * den_, den_, 0};
    MPoly g = gcd(den_, o.den_);
    MPoly b1 = den_.divexact(g);
    MPoly d1 = o.den_.divexact(g);
    MPoly n = num_ * d1 + o.num_ * b1;
    if (n.is_zero()) return {};
    MPoly d = b1 * o.den_;
    if (g.is_one()) return {std::move(n), std::move(d), 0};
    MPoly h = gcd(n, g);
    if (!h.is_one()) {
        n = n.divexact(h);
        d = d.divexact(h);
    }
    if (d.leading_coef() < 0) {
        n = -n;
        d = -d;
    }
    return {std::move(n), std::move(d), 0};
}

ParamField ParamField::operator-(const ParamField& o) const { return *this + (-o); }

ParamField ParamField::operator*(const ParamField& o) const {
    if (is_zero() || o.is_zero()) return {};
    MPoly g1 = gcd(num_, o.den_);
    MPoly g2 = gcd(o.num_, den_);
    MPoly a = g1.is_one() ? num_ : num_.divexact(g1);
    MPoly d = g1.is_one() ? o.den_ : o.den_.divexact(g1);
    MPoly c = g2.is_one() ? o.num_ : o.num_.divexact(g2);
    MPoly b = g2.is_one() ? den_ : den_.divexact(g2);
    MPoly n = a * c;
    MPoly m = b * d;
    if (m.leading_coef() < 0) {
        n = -n;
        m = -m;
    }
    return {std::move(n), std::move(m), 0};
}

ParamField ParamField::inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (num_.leading_coef() < 0) return {-den_, -num_, 0};
    return {den_, num_, 0};
}

ParamField ParamField::operator/(const ParamField& o) const { return *this * o.inverse(); }

ParamField ParamField::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    return {num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), 0};
}

ParamField ParamField::substitute(VarId v, const ParamField& value) const {
    if (!contains(v)) return *this;
    return substitute(std::map<VarId, ParamField>{{v, value}});
}

ParamField ParamField::substitute(const std::map<VarId, ParamField>& values) const {
    auto image = [&](const MPoly& p) {
        ParamField acc;
        for (const auto& t : p.terms()) {
            ParamField term(t.coef);
            std::vector<Monomial::Power> keep;
            for (const auto& [v, e] : t.mono.powers()) {
                auto it = values.find(v);
                if (it == values.end())
                    keep.emplace_back(v, e);
                else
                    term *= it->second.pow(e);
            }
            term *= ParamField(MPoly(1).times_monomial(Monomial(std::move(keep)), 1));
            acc += term;
        }
        return acc;
    };
    return image(num_) / image(den_);
}

std::string ParamField::to_string() const {
    if (den_.is_one()) return num_.to_string();
    std::string d = is_single_factor(den_) ? den_.to_string() : "(" + den_.to_string() + ")";
    return wrap(num_) + "/" + d;
}

std::ostream& operator<<(std::ostream& os, const ParamField& f) { return os << f.to_string(); }

ParamField shift_n(const ParamField& e, long steps) {
    if (steps == 0 || !e.contains(sym::n())) return e;
    const MPoly shifted = MPoly::var(sym::n()) + MPoly(steps);
    return ParamField::normalize(e.num().substitute(sym::n(), shifted), e.den().substitute(sym::n(), shifted));
}

}  // namespace singdeg
