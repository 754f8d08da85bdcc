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

#include "singdeg/algebra/mpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace singdeg {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<Power> powers) : powers_(std::move(powers)) {
    std::sort(powers_.begin(), powers_.end());
    std::vector<Power> merged;
    merged.reserve(powers_.size());
    for (const auto& p : powers_) {
        if (p.second == 0) continue;
        if (!merged.empty() && merged.back().first == p.first)
            merged.back().second += p.second;
        else
            merged.push_back(p);
    }
    powers_ = std::move(merged);
    for (const auto& p : powers_) total_ += p.second;
}

Monomial Monomial::var(VarId v, std::uint32_t e) { return Monomial({{v, e}}); }

std::uint32_t Monomial::degree(VarId v) const {
    for (const auto& [w, e] : powers_) {
        if (w == v) return e;
        if (w > v) break;
    }
    return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.powers_.reserve(powers_.size() + o.powers_.size());
    auto i = powers_.begin();
    auto j = o.powers_.begin();
    while (i != powers_.end() || j != o.powers_.end()) {
        if (j == o.powers_.end() || (i != powers_.end() && i->first < j->first)) {
            r.powers_.push_back(*i++);
        } else if (i == powers_.end() || j->first < i->first) {
            r.powers_.push_back(*j++);
        } else {
            r.powers_.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    r.total_ = total_ + o.total_;
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    // true when *this divides o
    auto j = o.powers_.begin();
    for (const auto& [v, e] : powers_) {
        while (j != o.powers_.end() && j->first < v) ++j;
        if (j == o.powers_.end() || j->first != v || j->second < e) return false;
    }
    return true;
}

Monomial Monomial::operator/(const Monomial& o) const {
    Monomial r;
    auto j = o.powers_.begin();
    for (const auto& [v, e] : powers_) {
        std::uint32_t d = 0;
        while (j != o.powers_.end() && j->first < v) ++j;
        if (j != o.powers_.end() && j->first == v) d = j->second;
        if (d > e) throw std::domain_error("monomial division is not exact");
        if (e > d) r.powers_.emplace_back(v, e - d);
    }
    r.total_ = total_ - o.total_;
    return r;
}

Monomial Monomial::without(VarId v) const {
    Monomial r;
    for (const auto& p : powers_)
        if (p.first != v) {
            r.powers_.push_back(p);
            r.total_ += p.second;
        }
    return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    auto j = b.powers_.begin();
    for (const auto& [v, e] : a.powers_) {
        while (j != b.powers_.end() && j->first < v) ++j;
        if (j != b.powers_.end() && j->first == v) {
            const auto m = std::min(e, j->second);
            r.powers_.emplace_back(v, m);
            r.total_ += m;
        }
    }
    return r;
}

int compare_grlex(const Monomial& a, const Monomial& b) {
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree() ? -1 : 1;
    const auto& pa = a.powers();
    const auto& pb = b.powers();
    std::size_t i = 0, j = 0;
    while (i < pa.size() || j < pb.size()) {
        if (j == pb.size() || (i < pa.size() && pa[i].first < pb[j].first)) return 1;
        if (i == pa.size() || pb[j].first < pa[i].first) return -1;
        if (pa[i].second != pb[j].second) return pa[i].second < pb[j].second ? -1 : 1;
        ++i;
        ++j;
    }
    return 0;
}

// ------------------------------------------------------------------- MPoly

namespace {

bool term_greater(const MPoly::Term& a, const MPoly::Term& b) { return compare_grlex(a.mono, b.mono) > 0; }

std::vector<MPoly::Term> merge_terms(const std::vector<MPoly::Term>& a, const std::vector<MPoly::Term>& b,
                                     bool subtract) {
    std::vector<MPoly::Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int c;
        if (i == a.size())
            c = -1;
        else if (j == b.size())
            c = 1;
        else
            c = compare_grlex(a[i].mono, b[j].mono);
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back(b[j++]);
            if (subtract) out.back().coef = -out.back().coef;
        } else {
            mpz_class s = subtract ? mpz_class(a[i].coef - b[j].coef) : mpz_class(a[i].coef + b[j].coef);
            if (s != 0) out.push_back({a[i].mono, std::move(s)});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

MPoly::MPoly(const mpz_class& c) {
    if (c != 0) terms_.push_back({Monomial(), c});
}

MPoly MPoly::var(VarId v, std::uint32_t e) {
    MPoly p;
    p.terms_.push_back({Monomial::var(v, e), mpz_class(1)});
    return p;
}

MPoly MPoly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), term_greater);
    MPoly p;
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coef += t.coef;
            if (p.terms_.back().coef == 0) p.terms_.pop_back();
        } else if (t.coef != 0) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

mpz_class MPoly::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw std::domain_error("polynomial is not constant");
    return terms_[0].coef;
}

std::uint32_t MPoly::degree(VarId v) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree(v));
    return d;
}

std::uint32_t MPoly::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.total_degree(); }

std::set<VarId> MPoly::variables() const {
    std::set<VarId> s;
    for (const auto& t : terms_)
        for (const auto& p : t.mono.powers()) s.insert(p.first);
    return s;
}

std::optional<VarId> MPoly::main_variable() const {
    std::optional<VarId> best;
    for (const auto& t : terms_)
        if (!t.mono.powers().empty()) {
            VarId v = t.mono.powers().front().first;
            if (!best || v < *best) best = v;
        }
    return best;
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly r;
    r.terms_ = merge_terms(terms_, o.terms_, false);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
    MPoly r;
    r.terms_ = merge_terms(terms_, o.terms_, true);
    return r;
}

MPoly MPoly::times_monomial(const Monomial& m, const mpz_class& c) const {
    MPoly r;
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coef * c});
    return r;
}

MPoly MPoly::scaled(const mpz_class& c) const { return times_monomial(Monomial(), c); }

MPoly MPoly::operator*(const MPoly& o) const {
    if (is_zero() || o.is_zero()) return MPoly();
    if (terms_.size() == 1) return o.times_monomial(terms_[0].mono, terms_[0].coef);
    if (o.terms_.size() == 1) return times_monomial(o.terms_[0].mono, o.terms_[0].coef);
    const MPoly& big = terms_.size() >= o.terms_.size() ? *this : o;
    const MPoly& small = terms_.size() >= o.terms_.size() ? o : *this;
    std::vector<Term> prods;
    prods.reserve(big.terms_.size() * small.terms_.size());
    for (const auto& s : small.terms_)
        for (const auto& b : big.terms_) prods.push_back({b.mono * s.mono, b.coef * s.coef});
    return from_terms(std::move(prods));
}

MPoly MPoly::pow(unsigned e) const {
    MPoly result(1);
    MPoly base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return result;
}

std::optional<MPoly> MPoly::try_divexact(const MPoly& o) const {
    if (o.is_zero()) throw std::domain_error("division by zero polynomial");
    if (is_zero()) return MPoly();
    if (o.terms_.size() == 1) {
        const auto& [m, c] = o.terms_[0];
        MPoly q;
        q.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            if (!m.divides(t.mono) || !mpz_divisible_p(t.coef.get_mpz_t(), c.get_mpz_t())) return std::nullopt;
            mpz_class qc;
            mpz_divexact(qc.get_mpz_t(), t.coef.get_mpz_t(), c.get_mpz_t());
            q.terms_.push_back({t.mono / m, std::move(qc)});
        }
        return q;
    }
    std::vector<Term> quotient;
    MPoly r = *this;
    const auto& lt = o.terms_.front();
    while (!r.is_zero()) {
        const auto& rt = r.terms_.front();
        if (!lt.mono.divides(rt.mono) || !mpz_divisible_p(rt.coef.get_mpz_t(), lt.coef.get_mpz_t()))
            return std::nullopt;
        Monomial qm = rt.mono / lt.mono;
        mpz_class qc;
        mpz_divexact(qc.get_mpz_t(), rt.coef.get_mpz_t(), lt.coef.get_mpz_t());
        r = r - o.times_monomial(qm, qc);
        quotient.push_back({std::move(qm), std::move(qc)});
    }
    MPoly q;
    q.terms_ = std::move(quotient);  // generated in decreasing order
    return q;
}

MPoly MPoly::divexact(const MPoly& o) const {
    auto q = try_divexact(o);
    if (!q) throw std::domain_error("polynomial division is not exact");
    return std::move(*q);
}

MPoly MPoly::divexact(const mpz_class& c) const {
    MPoly r = *this;
    for (auto& t : r.terms_) {
        if (!mpz_divisible_p(t.coef.get_mpz_t(), c.get_mpz_t()))
            throw std::domain_error("integer division is not exact");
        mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), c.get_mpz_t());
    }
    return r;
}

bool MPoly::operator==(const MPoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].coef != o.terms_[i].coef || !(terms_[i].mono == o.terms_[i].mono)) return false;
    return true;
}

std::vector<MPoly> MPoly::coefficients_in(VarId v) const {
    std::vector<std::vector<Term>> buckets(degree(v) + 1);
    for (const auto& t : terms_) buckets[t.mono.degree(v)].push_back({t.mono.without(v), t.coef});
    std::vector<MPoly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
    return out;
}

MPoly MPoly::from_coefficients(VarId v, const std::vector<MPoly>& coeffs) {
    std::vector<Term> all;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const Monomial m = i ? Monomial::var(v, static_cast<std::uint32_t>(i)) : Monomial();
        for (const auto& t : coeffs[i].terms_) all.push_back({t.mono * m, t.coef});
    }
    return from_terms(std::move(all));
}

mpz_class MPoly::integer_content() const {
    mpz_class g = 0;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

MPoly MPoly::substitute(VarId v, const MPoly& value) const {
    if (!contains(v)) return *this;
    auto coeffs = coefficients_in(v);
    // Horner
    MPoly acc = coeffs.back();
    for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * value + coeffs[i];
    return acc;
}

MPoly MPoly::substitute(const std::map<VarId, MPoly>& values) const {
    MPoly acc;
    std::map<std::pair<VarId, std::uint32_t>, MPoly> cache;
    std::vector<Term> plain;
    for (const auto& t : terms_) {
        std::vector<Monomial::Power> keep;
        MPoly factor(t.coef);
        for (const auto& [v, e] : t.mono.powers()) {
            auto it = values.find(v);
            if (it == values.end()) {
                keep.emplace_back(v, e);
                continue;
            }
            auto key = std::make_pair(v, e);
            auto c = cache.find(key);
            if (c == cache.end()) c = cache.emplace(key, it->second.pow(e)).first;
            factor = factor * c->second;
        }
        acc += factor.times_monomial(Monomial(std::move(keep)), 1);
    }
    return acc;
}

std::string MPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        mpz_class c = t.coef;
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        bool need_star = false;
        if (c != 1 || t.mono.is_one()) {
            os << c.get_str();
            need_star = true;
        }
        for (const auto& [v, e] : t.mono.powers()) {
            if (need_star) os << "*";
            os << symbol_name(v);
            if (e != 1) os << "^" << e;
            need_star = true;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.to_string(); }

// --------------------------------------------------------------------- gcd

namespace {

using Dense = std::vector<MPoly>;  // coefficients in one variable, index = exponent

void trim(Dense& d) {
    while (!d.empty() && d.back().is_zero()) d.pop_back();
}

MPoly positive(MPoly p) {
    if (!p.is_zero() && p.leading_coef() < 0) p = -p;
    return p;
}

MPoly dense_content(const Dense& d) {
    MPoly g;
    // try the smallest coefficients first; they bound the gcd fastest
    std::vector<const MPoly*> order;
    for (const auto& c : d)
        if (!c.is_zero()) order.push_back(&c);
    std::sort(order.begin(), order.end(), [](const MPoly* a, const MPoly* b) { return a->size() < b->size(); });
    for (const MPoly* c : order) {
        g = gcd(g, *c);
        if (g.is_one()) break;
    }
    return g;
}

void dense_divide(Dense& d, const MPoly& c) {
    if (c.is_one()) return;
    for (auto& x : d)
        if (!x.is_zero()) x = x.divexact(c);
}

/// gcd of two polynomials primitive in v (as dense coefficient vectors).
Dense primitive_prs(Dense a, Dense b) {
    if (a.size() < b.size()) std::swap(a, b);
    while (true) {
        if (b.size() == 1) return {MPoly(1)};
        // pseudo-remainder a mod b
        const MPoly lb = b.back();
        while (a.size() >= b.size()) {
            const MPoly la = a.back();
            const std::size_t shift = a.size() - b.size();
            for (auto& x : a) x = x * lb;
            for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= la * b[i];
            trim(a);
            if (a.empty()) break;
        }
        if (a.empty()) return b;
        MPoly c = dense_content(a);
        dense_divide(a, c);
        std::swap(a, b);
    }
}

MPoly monomial_gcd(const MPoly& mono, const MPoly& p) {
    Monomial m = mono.leading().mono;
    mpz_class c = mono.leading_coef();
    for (const auto& t : p.terms()) {
        m = Monomial::gcd(m, t.mono);
        mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), t.coef.get_mpz_t());
    }
    return MPoly(abs(c)).times_monomial(m, 1);
}

mpz_class max_norm(const MPoly& p) {
    mpz_class m = 0;
    for (const auto& t : p.terms())
        if (abs(t.coef) > m) m = abs(t.coef);
    return m;
}

// Inverse of x -> xi substitution: read every integer coefficient as
// symmetric base-xi digits, digit i becoming the coefficient of x^i.
MPoly xi_adic_interpolate(const MPoly& h, const mpz_class& xi, VarId x) {
    std::vector<MPoly::Term> out;
    std::vector<MPoly::Term> cur = h.terms();
    const mpz_class half = xi / 2;
    for (std::uint32_t i = 0; !cur.empty(); ++i) {
        std::vector<MPoly::Term> next;
        for (auto& t : cur) {
            mpz_class d;
            mpz_fdiv_r(d.get_mpz_t(), t.coef.get_mpz_t(), xi.get_mpz_t());
            if (d > half) d -= xi;
            if (d != 0) out.push_back({t.mono * Monomial::var(x, i), d});
            mpz_class rest = t.coef - d;
            mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), xi.get_mpz_t());
            if (rest != 0) next.push_back({t.mono, std::move(rest)});
        }
        cur = std::move(next);
    }
    return MPoly::from_terms(std::move(out));
}

MPoly primitive_positive(const MPoly& p) {
    if (p.is_zero()) return p;
    mpz_class c = p.integer_content();
    if (p.leading_coef() < 0) c = -c;
    return c == 1 ? p : p.divexact(c);
}

// Heuristic gcd by evaluation at a large integer and xi-adic reconstruction;
// a result is returned only after both exact divisions succeed.
std::optional<MPoly> heuristic_gcd(const MPoly& f0, const MPoly& g0) {
    if (f0.is_constant() || g0.is_constant()) {
        mpz_class g;
        const mpz_class cf = f0.integer_content(), cg = g0.integer_content();
        mpz_gcd(g.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
        return MPoly(g);
    }
    mpz_class cf = f0.integer_content(), cg = g0.integer_content(), c;
    mpz_gcd(c.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
    const MPoly f = f0.divexact(cf), g = g0.divexact(cg);
    const VarId x = std::min(*f.main_variable(), *g.main_variable());

    const mpz_class nf = max_norm(f), ng = max_norm(g);
    const mpz_class B = 2 * std::min(nf, ng) + 29;
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), B.get_mpz_t());
    mpz_class xi = std::max(std::min(B, mpz_class(99 * root)),
                            mpz_class(2 * std::min(nf / abs(f.leading_coef()), ng / abs(g.leading_coef())) + 2));
    for (int attempt = 0; attempt < 6; ++attempt) {
        const MPoly ff = f.substitute(x, MPoly(xi)), gg = g.substitute(x, MPoly(xi));
        if (!ff.is_zero() && !gg.is_zero()) {
            auto h = heuristic_gcd(ff, gg);
            if (!h) return std::nullopt;
            MPoly cand = primitive_positive(xi_adic_interpolate(*h, xi, x));
            if (!cand.is_zero() && f.try_divexact(cand) && g.try_divexact(cand)) return cand.scaled(c);
            // the cofactor of f is sometimes the smaller reconstruction
            if (auto cff = ff.try_divexact(*h)) {
                MPoly cof = xi_adic_interpolate(*cff, xi, x);
                if (!cof.is_zero()) {
                    if (auto q = f.try_divexact(cof)) {
                        MPoly cand2 = primitive_positive(*q);
                        if (g.try_divexact(cand2)) return cand2.scaled(c);
                    }
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    return std::nullopt;
}

}  // namespace

MPoly content_in(const MPoly& p, VarId v) { return positive(dense_content(p.coefficients_in(v))); }

MPoly pseudo_remainder(const MPoly& a, const MPoly& b, VarId v) {
    Dense da = a.coefficients_in(v);
    Dense db = b.coefficients_in(v);
    trim(da);
    trim(db);
    if (db.empty()) throw std::domain_error("pseudo-remainder by zero");
    const MPoly lb = db.back();
    while (da.size() >= db.size()) {
        const MPoly la = da.back();
        const std::size_t shift = da.size() - db.size();
        for (auto& x : da) x = x * lb;
        for (std::size_t i = 0; i < db.size(); ++i) da[i + shift] -= la * db[i];
        trim(da);
    }
    return MPoly::from_coefficients(v, da);
}

MPoly gcd(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return positive(b);
    if (b.is_zero()) return positive(a);
    if (a.is_constant() || b.is_constant()) {
        mpz_class g;
        const mpz_class ca = a.integer_content();
        const mpz_class cb = b.integer_content();
        mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
        return MPoly(g);
    }
    if (a.size() == 1) return monomial_gcd(a, b);
    if (b.size() == 1) return monomial_gcd(b, a);
    if (a == b) return positive(a);
    if (auto h = heuristic_gcd(a, b)) return positive(*h);

    const VarId va = *a.main_variable();
    const VarId vb = *b.main_variable();
    const VarId v = std::min(va, vb);
    const bool in_a = a.contains(v);
    const bool in_b = b.contains(v);
    if (!in_a) return gcd(a, content_in(b, v));
    if (!in_b) return gcd(content_in(a, v), b);

    Dense da = a.coefficients_in(v);
    Dense db = b.coefficients_in(v);
    MPoly ca = dense_content(da);
    MPoly cb = dense_content(db);
    dense_divide(da, ca);
    dense_divide(db, cb);
    MPoly c = gcd(ca, cb);
    Dense g = primitive_prs(std::move(da), std::move(db));
    MPoly gc = dense_content(g);
    dense_divide(g, gc);
    return positive(c * MPoly::from_coefficients(v, g));
}

}  // namespace singdeg
