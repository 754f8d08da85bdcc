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

#include "singdeg/halburd/halburd.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace singdeg {

namespace {

// Preimage weight of entry e for the value w, zero when e is not w.
long entry_weight(const PatternEntry& e, const ProjPoint& w) {
    if (e.depends_on_u || e.generic) return 0;
    if (w.is_infinite()) return e.is_infinite() ? e.order : 0;
    if (e.is_infinite()) return 0;
    if (w.value().is_zero()) return e.order > 0 ? e.order : 0;
    if (e.order > 0 || e.value != w) return 0;
    return std::max(1L, e.multiplicity);
}

bool mirror_of(const SingularityPattern& f, const SingularityPattern& g) {
    if (f.kind != g.kind || f.entries.size() != g.entries.size()) return false;
    for (std::size_t i = 0; i < f.entries.size(); ++i) {
        const auto& a = f.entries[i];
        const auto& b = g.entries[i];
        if (a.depends_on_u != b.depends_on_u) return false;
        if (a.depends_on_u) continue;
        if (a.order != b.order || a.is_infinite() != b.is_infinite()) return false;
        if (!a.is_infinite() && a.order == 0 && b.value.value() != -a.value.value()) return false;
    }
    return true;
}

void add_lag(std::vector<LagTerm>& v, long lag, long c) {
    for (auto& t : v)
        if (t.lag == lag) {
            t.coefficient += c;
            return;
        }
    v.push_back({lag, c});
    std::sort(v.begin(), v.end(), [](const LagTerm& a, const LagTerm& b) { return a.lag < b.lag; });
}

std::string point_text(const ProjPoint& p) { return p.is_infinite() ? "inf" : p.value().to_string(); }

std::string index_text(const std::string& label, long shift) {
    if (shift == 0) return label + "[n]";
    return label + "[n-" + std::to_string(shift) + "]";
}

std::string lags_text(const std::string& label, const std::vector<LagTerm>& lags, const std::vector<LagTail>& tails) {
    std::vector<std::string> parts;
    for (const auto& t : lags) parts.push_back((t.coefficient == 1 ? "" : std::to_string(t.coefficient) + "*") + index_text(label, t.lag));
    for (const auto& t : tails)
        parts.push_back((t.coefficient == 1 ? "" : std::to_string(t.coefficient) + "*") + "sum_{l>=0} " + label + "[n-" +
                        (t.start ? std::to_string(t.start) + "-" : "") + std::to_string(t.step) + "l]");
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : " + ") + p;
    return out.empty() ? "0" : out;
}

mpq_class evaluate_side(const OccurrenceSeq& z, long n, const std::vector<LagTerm>& lags,
                        const std::vector<LagTail>& tails) {
    mpq_class s = 0;
    for (const auto& t : lags) s += mpq_class(t.coefficient) * z.at(n - t.lag);
    for (const auto& t : tails)
        for (long m = n - t.start; m > 0; m -= t.step) s += mpq_class(t.coefficient) * z.at(m);
    return s;
}

long lag0_coefficient(const std::vector<LagTerm>& lags, const std::vector<LagTail>& tails) {
    long c = 0;
    for (const auto& t : lags)
        if (t.lag == 0) c += t.coefficient;
    for (const auto& t : tails)
        if (t.start == 0) c += t.coefficient;
    return c;
}

// ---------------------------------------------------------------- Q[x]

using QPoly = std::vector<mpq_class>;  // lowest degree first

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

mpq_class eval(const QPoly& p, const mpq_class& x) {
    mpq_class r = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

QPoly derivative(const QPoly& p) {
    QPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
    QPoly q;
    trim(a);
    if (a.size() < b.size()) return {q, a};
    q.assign(a.size() - b.size() + 1, 0);
    for (long k = static_cast<long>(q.size()) - 1; k >= 0; --k) {
        const auto ku = static_cast<std::size_t>(k);
        const mpq_class c = a[ku + b.size() - 1] / b.back();
        q[ku] = c;
        for (std::size_t j = 0; j < b.size(); ++j) a[ku + j] -= c * b[j];
    }
    trim(a);
    trim(q);
    return {q, a};
}

QPoly gcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const mpq_class lc = a.back();
        for (auto& c : a) c /= lc;
    }
    return a;
}

int sign(const mpq_class& x) { return sgn(x); }

struct Sturm {
    std::vector<QPoly> chain;

    explicit Sturm(const QPoly& p) {
        chain.push_back(p);
        chain.push_back(derivative(p));
        while (chain.back().size() > 1) {
            auto r = divmod(chain[chain.size() - 2], chain.back()).second;
            if (r.empty()) break;
            for (auto& c : r) c = -c;
            chain.push_back(r);
        }
    }
    int variations(const mpq_class& x) const {
        int v = 0, last = 0;
        for (const auto& s : chain) {
            const int sg = sign(eval(s, x));
            if (sg == 0) continue;
            if (last != 0 && sg != last) ++v;
            last = sg;
        }
        return v;
    }
};

QPoly to_qpoly(const CharPoly& p) {
    QPoly q;
    for (const auto& c : p.coefficients) q.emplace_back(c);
    trim(q);
    return q;
}

// Square-free part with the clearing-factor roots removed.
QPoly root_search_poly(const CharPoly& p) {
    QPoly q = to_qpoly(p);
    if (q.size() < 2) throw std::invalid_argument("characteristic polynomial has no roots");
    const QPoly g = gcd(q, derivative(q));
    if (g.size() > 1) q = divmod(q, g).first;
    if (p.clearing_period > 0) {
        while (eval(q, 1) == 0) q = divmod(q, {-1, 1}).first;
        if (p.clearing_period % 2 == 0)
            while (eval(q, -1) == 0) q = divmod(q, {1, 1}).first;
    }
    return q;
}

mpq_class root_bound(const QPoly& q) {
    mpq_class m = 0;
    for (std::size_t i = 0; i + 1 < q.size(); ++i) m = std::max(m, mpq_class(abs(q[i] / q.back())));
    return m + 1;
}

void isolate(const Sturm& s, mpq_class lo, mpq_class hi, std::vector<double>& out) {
    const int count = s.variations(lo) - s.variations(hi);
    if (count == 0) return;
    if (count == 1) {
        const mpq_class tol(1, 1000000000000000L);
        while (hi - lo > tol) {
            mpq_class mid = (lo + hi) / 2;
            if (s.variations(mid) - s.variations(hi) > 0)
                lo = mid;
            else
                hi = mid;
        }
        out.push_back(hi.get_d());
        return;
    }
    const mpq_class mid = (lo + hi) / 2;
    isolate(s, lo, mid, out);
    isolate(s, mid, hi, out);
}

std::vector<double> real_roots(const CharPoly& p) {
    const QPoly q = root_search_poly(p);
    if (q.size() < 2) return {};
    const mpq_class b = root_bound(q);
    std::vector<double> out;
    isolate(Sturm(q), -b, b, out);
    std::sort(out.begin(), out.end());
    return out;
}

mpz_class content(const std::vector<mpz_class>& v) {
    mpz_class g = 0;
    for (const auto& c : v) g = gcd(g, c);
    return g;
}

std::string poly_text(const std::vector<mpz_class>& c) {
    std::string out;
    for (long i = static_cast<long>(c.size()) - 1; i >= 0; --i) {
        const mpz_class& a = c[static_cast<std::size_t>(i)];
        if (a == 0) continue;
        const bool neg = a < 0;
        const mpz_class m = abs(a);
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (m != 1 || i == 0) out += m.get_str();
        if (i > 0) out += (m != 1 ? "*" : std::string()) + "lambda" + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return out.empty() ? "0" : out;
}

std::vector<mpz_class> int_divisors(const mpz_class& n) {
    std::vector<mpz_class> out;
    const mpz_class a = abs(n);
    if (a == 0 || mpz_sizeinbase(a.get_mpz_t(), 2) > 40) return out;
    for (unsigned long d = 1; d * d <= a.get_ui(); ++d)
        if (a.get_ui() % d == 0) {
            out.emplace_back(d);
            if (d * d != a.get_ui()) out.emplace_back(a.get_ui() / d);
        }
    return out;
}

// Exact division of integer polynomial p by (q x - r); nullopt if it does not divide.
std::optional<std::vector<mpz_class>> divide_linear(const std::vector<mpz_class>& p, const mpz_class& q, const mpz_class& r) {
    QPoly a;
    for (const auto& c : p) a.emplace_back(c);
    auto [quo, rem] = divmod(a, {mpq_class(-r), mpq_class(q)});
    if (!rem.empty()) return std::nullopt;
    std::vector<mpz_class> out;
    for (auto& c : quo) {
        c.canonicalize();
        if (c.get_den() != 1) return std::nullopt;
        out.push_back(c.get_num());
    }
    return out;
}

}  // namespace

long OccurrenceSeq::at(long n) const {
    if (n <= 0) return 0;
    if (static_cast<std::size_t>(n) >= values.size()) throw std::out_of_range(label + "[" + std::to_string(n) + "] not solved");
    return values[static_cast<std::size_t>(n)];
}

mpz_class ExponentialComponent::at(long n) const {
    if (n < start) return 0;
    const auto j = static_cast<std::size_t>(n - start);
    std::vector<mpz_class> o(seeds.begin(), seeds.end());
    while (o.size() <= j) {
        mpz_class next = 0;
        for (std::size_t i = 0; i < recurrence.size(); ++i) next += recurrence[i] * o[o.size() - 1 - i];
        o.push_back(next);
    }
    return sign * o[j];
}

mpq_class SourceTerm::at(long n) const {
    mpq_class s = 0;
    for (const auto& p : periodic)
        if (n >= p.start) s += p.values[static_cast<std::size_t>(((n % p.period) + p.period) % p.period)];
    for (const auto& d : deltas)
        if (d.index == n) s += d.value;
    for (const auto& e : exponential) s += e.at(n);
    return s;
}

SourceTerm SourceTerm::negated() const {
    SourceTerm r = *this;
    for (auto& p : r.periodic)
        for (auto& v : p.values) v = -v;
    for (auto& d : r.deltas) d.value = -d.value;
    for (auto& e : r.exponential) e.sign = -e.sign;
    return r;
}

SourceTerm SourceTerm::operator+(const SourceTerm& o) const {
    SourceTerm r = *this;
    r.periodic.insert(r.periodic.end(), o.periodic.begin(), o.periodic.end());
    r.exponential.insert(r.exponential.end(), o.exponential.begin(), o.exponential.end());
    for (const auto& d : o.deltas) {
        auto it = std::find_if(r.deltas.begin(), r.deltas.end(), [&](const DeltaComponent& x) { return x.index == d.index; });
        if (it == r.deltas.end())
            r.deltas.push_back(d);
        else
            it->value += d.value;
    }
    r.deltas.erase(std::remove_if(r.deltas.begin(), r.deltas.end(), [](const DeltaComponent& d) { return d.value == 0; }),
                   r.deltas.end());
    return r;
}

std::string SourceTerm::to_string() const {
    std::vector<std::string> parts;
    for (const auto& p : periodic) {
        std::string v;
        for (std::size_t r = 0; r < p.values.size(); ++r) v += (r ? "," : "") + p.values[r].get_str();
        parts.push_back("periodic(n mod " + std::to_string(p.period) + " -> [" + v + "], n >= " + std::to_string(p.start) + ")");
    }
    for (const auto& d : deltas)
        parts.push_back((d.value == 1 ? std::string() : d.value.get_str() + "*") + "delta(n," + std::to_string(d.index) + ")");
    for (const auto& e : exponential) {
        std::string r;
        for (std::size_t i = 0; i < e.recurrence.size(); ++i) r += (i ? "," : "") + std::to_string(e.recurrence[i]);
        std::string s;
        for (std::size_t i = 0; i < e.seeds.size(); ++i) s += (i ? "," : "") + std::to_string(e.seeds[i]);
        parts.push_back(std::string(e.sign < 0 ? "-" : "") + "g(n-" + std::to_string(e.start - 1) + "; rec [" + r + "], g1.. = " + s + ")");
    }
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : " + ") + p;
    return out.empty() ? "0" : out;
}

mpq_class Census::evaluate(const OccurrenceSeq& z, long n) const { return evaluate_side(z, n, lags, tails) + source.at(n); }

std::string Census::to_string() const {
    std::string s = lags_text(label.empty() ? "Z" : label, lags, tails);
    if (!source.empty()) s = (has_occurrences() ? s + " + " : std::string()) + source.to_string();
    return s;
}

std::string BalanceEquation::to_string() const {
    std::string r = lags_text(label, rhs, rhs_tails);
    if (!source.empty()) r += " + " + source.to_string();
    return lags_text(label, lhs, lhs_tails) + " = " + r;
}

std::string CharPoly::to_string() const { return poly_text(coefficients); }

std::string CharPoly::factored_string() const {
    std::vector<mpz_class> rest = coefficients;
    std::vector<std::string> factors;
    bool progress = true;
    while (progress && rest.size() >= 2) {
        progress = false;
        for (const auto& r : int_divisors(rest.front())) {
            for (const auto& q : int_divisors(rest.back())) {
                for (int s : {1, -1}) {
                    if (auto quo = divide_linear(rest, q, s * r)) {
                        factors.push_back("(" + poly_text({mpz_class(-s * r), q}) + ")");
                        rest = *quo;
                        progress = true;
                        break;
                    }
                }
                if (progress) break;
            }
            if (progress) break;
        }
    }
    if (factors.empty()) return to_string();
    std::sort(factors.begin(), factors.end());
    std::string out;
    for (std::size_t i = 0; i < factors.size();) {
        std::size_t j = i;
        while (j < factors.size() && factors[j] == factors[i]) ++j;
        out += factors[i] + (j - i > 1 ? "^" + std::to_string(j - i) : "");
        i = j;
    }
    if (rest.size() > 1) out += "(" + poly_text(rest) + ")";
    else if (rest.size() == 1 && rest[0] != 1) out = rest[0].get_str() + "*" + out;
    return out;
}

CharPoly char_poly_product(const std::vector<std::vector<long>>& factors) {
    std::vector<mpz_class> acc{1};
    for (const auto& f : factors) {
        std::vector<mpz_class> next(acc.size() + f.size() - 1, 0);
        for (std::size_t i = 0; i < acc.size(); ++i)
            for (std::size_t j = 0; j < f.size(); ++j) next[i + j] += acc[i] * f[j];
        acc = next;
    }
    CharPoly p;
    p.coefficients = acc;
    return p;
}

std::vector<std::string> family_labels(const SingularityAnalysis& a) {
    std::vector<std::string> labels;
    int fresh = 0;
    for (std::size_t i = 0; i < a.families.size(); ++i) {
        std::string label;
        for (std::size_t j = 0; j < i && label.empty(); ++j)
            if (mirror_of(a.families[j], a.families[i])) label = labels[j];
        if (label.empty()) {
            const auto& s = a.families[i].seed;
            label = (!s.is_infinite() && s.value().is_zero()) ? "Z" : "U";
            if (fresh++ > 0) label += std::to_string(fresh);
        }
        labels.push_back(label);
    }
    return labels;
}

Census preimage_census(const SingularityAnalysis& a, const ProjPoint& w) {
    Census c;
    c.value = w;
    const auto labels = family_labels(a);
    for (std::size_t f = 0; f < a.families.size(); ++f) {
        const auto& fam = a.families[f];
        bool used = false;
        for (std::size_t j = 0; j < fam.entries.size(); ++j) {
            const long wt = entry_weight(fam.entries[j], w);
            if (wt == 0) continue;
            if (fam.tail_start && j >= *fam.tail_start) {
                if (j >= *fam.tail_start + *fam.period) continue;
                c.tails.push_back({static_cast<long>(j), static_cast<long>(*fam.period), wt});
            } else {
                add_lag(c.lags, static_cast<long>(j), wt);
            }
            used = true;
        }
        if (!used) continue;
        if (!c.label.empty() && c.label != labels[f])
            throw NotComparable("census of " + point_text(w) + " mixes " + c.label + " and " + labels[f]);
        c.label = labels[f];
    }

    for (const auto& o : a.orbits) {
        // Entries after a spontaneous value belong to that family's count.
        std::size_t end = o.entries.size();
        for (std::size_t k = 0; k < end; ++k)
            for (const auto& fam : a.families)
                if (entry_weight(o.entries[k], fam.seed) > 0) end = std::min(end, k);
        const std::size_t full = o.entries.size();
        const bool cut = end < full;

        std::vector<std::string> sigs;
        for (const auto& e : o.entries) sigs.push_back(signature(e, a.special));
        std::size_t prefix = end;
        if (!cut && o.growth && o.growth->start < end) {
            prefix = o.growth->start;
            if (o.growth->infinite == w.is_infinite() && (w.is_infinite() || w.value().is_zero())) {
                ExponentialComponent e;
                e.start = 1 + static_cast<long>(o.growth->start);
                e.recurrence = o.growth->recurrence;
                e.seeds.assign(o.growth->orders.begin(), o.growth->orders.begin() + static_cast<long>(e.recurrence.size()));
                c.source.exponential.push_back(e);
            }
        } else if (!cut) {
            auto tail = find_periodic_tail(sigs);
            if (!tail) throw HalburdError("orbit of " + point_text(o.seed) + " has no usable tail");
            prefix = tail->first;
            PeriodicComponent p;
            p.period = static_cast<long>(tail->second);
            p.start = 1 + static_cast<long>(tail->first);
            p.values.assign(tail->second, 0);
            bool any = false;
            for (std::size_t r = 0; r < tail->second; ++r) {
                const long wt = entry_weight(o.entries[tail->first + r], w);
                p.values[static_cast<std::size_t>((p.start + static_cast<long>(r)) % p.period)] = wt;
                any = any || wt != 0;
            }
            if (any) c.source.periodic.push_back(p);
        }
        for (std::size_t k = 0; k < prefix; ++k) {
            const long wt = entry_weight(o.entries[k], w);
            if (wt) c.source = c.source + SourceTerm{{}, {{1 + static_cast<long>(k), mpq_class(wt)}}, {}};
        }
    }
    if (!c.has_occurrences() && c.source.empty()) throw EmptyCensus(point_text(w) + " occurs in no pattern");
    return c;
}

BalanceEquation build_balance(const Census& c1, const Census& c2) {
    if (!c1.label.empty() && !c2.label.empty() && c1.label != c2.label)
        throw NotComparable("censuses count " + c1.label + " and " + c2.label);
    BalanceEquation b;
    b.label = c1.label.empty() ? c2.label : c1.label;
    if (b.label.empty()) throw NotComparable("neither census involves spontaneous occurrences");
    b.w1 = c1.value;
    b.w2 = c2.value;
    b.lhs = c1.lags;
    b.lhs_tails = c1.tails;
    b.rhs = c2.lags;
    b.rhs_tails = c2.tails;
    b.source = c2.source + c1.source.negated();
    b.census1 = c1;
    b.census2 = c2;
    b.census1.label = b.census2.label = b.label;
    return b;
}

CharPoly express_char_poly(const BalanceEquation& b) {
    // Work in mu = 1/lambda.
    std::map<long, mpz_class> finite;
    for (const auto& t : b.lhs) finite[t.lag] += t.coefficient;
    for (const auto& t : b.rhs) finite[t.lag] -= t.coefficient;
    std::vector<std::pair<LagTail, int>> tails;
    for (const auto& t : b.lhs_tails) tails.push_back({t, 1});
    for (const auto& t : b.rhs_tails) tails.push_back({t, -1});
    long P = 0;
    for (const auto& [t, s] : tails) {
        if (t.step <= 0) throw UnsupportedTail("lag tail with step " + std::to_string(t.step));
        P = P ? std::lcm(P, t.step) : t.step;
    }
    std::map<long, mpz_class> q;
    for (const auto& [e, c] : finite) {
        q[e] += c;
        if (P) q[e + P] -= c;
    }
    for (const auto& [t, s] : tails)
        for (long i = 0; i < P / t.step; ++i) q[t.start + i * t.step] += s * t.coefficient;

    CharPoly out;
    out.clearing_period = P;
    out.provenance = P ? "generating-function" : "finite-pattern";
    long D = 0;
    for (const auto& [e, c] : q)
        if (c != 0) D = std::max(D, e);
    std::vector<mpz_class> lam(static_cast<std::size_t>(D + 1), 0);
    for (const auto& [e, c] : q) lam[static_cast<std::size_t>(D - e)] += c;
    while (!lam.empty() && lam.back() == 0) lam.pop_back();
    if (lam.empty()) throw HalburdError("homogeneous balance is identically zero");
    std::size_t low = 0;
    while (lam[low] == 0) ++low;
    lam.erase(lam.begin(), lam.begin() + static_cast<long>(low));
    mpz_class g = content(lam);
    if (lam.back() < 0) g = -g;
    for (auto& c : lam) c /= g;
    out.coefficients = lam;
    return out;
}

ForwardSolution solve_balance_forward(const BalanceEquation& b, int N) {
    ForwardSolution s;
    s.z.label = b.label;
    s.z.value = b.w1;
    s.z.values.assign(static_cast<std::size_t>(std::max(N, 0) + 1), 0);
    s.degrees.mode = OracleMode::Recurrence;
    s.degrees.values.assign(s.z.values.size(), 0);
    auto fail = [&](const std::string& why, long n) {
        throw InconsistentBalance("inconsistent balance at n = " + std::to_string(n) + ": " + why, n);
    };
    auto set = [&](long n, const mpq_class& v) {
        if (v.get_den() != 1) fail(s.z.label + "[" + std::to_string(n) + "] = " + v.get_str() + " is not an integer", n);
        if (v < 0) fail(s.z.label + "[" + std::to_string(n) + "] = " + v.get_str() + " is negative", n);
        if (!v.get_num().fits_slong_p()) throw HalburdError("occurrence count overflows at n = " + std::to_string(n));
        s.z.values[static_cast<std::size_t>(n)] = v.get_num().get_si();
    };
    for (long n = 1; n <= N; ++n) {
        if (n == 1) {
            const long a0 = lag0_coefficient(b.census1.lags, b.census1.tails);
            if (a0 == 0) fail("census of " + point_text(b.w1) + " does not involve " + b.label + "[n]", n);
            set(n, (mpq_class(1) - b.census1.evaluate(s.z, n)) / a0);
        } else {
            const long net = lag0_coefficient(b.lhs, b.lhs_tails) - lag0_coefficient(b.rhs, b.rhs_tails);
            if (net == 0) fail("the balance does not determine " + b.label + "[n]", n);
            const mpq_class r = evaluate_side(s.z, n, b.rhs, b.rhs_tails) + b.source.at(n) -
                                evaluate_side(s.z, n, b.lhs, b.lhs_tails);
            set(n, r / net);
        }
        const mpq_class d1 = b.census1.evaluate(s.z, n);
        const mpq_class d2 = b.census2.evaluate(s.z, n);
        if (d1 != d2)
            fail("census of " + point_text(b.w1) + " gives " + d1.get_str() + ", census of " + point_text(b.w2) + " gives " +
                     d2.get_str(),
                 n);
        if (n == 1 && d1 != 1) fail("d_1 = " + d1.get_str(), n);
        s.degrees.values[static_cast<std::size_t>(n)] = d1.get_num().get_si();
    }
    return s;
}

RootResult largest_root(const CharPoly& p) {
    const auto roots = real_roots(p);
    RootResult r;
    r.value = roots.empty() ? 0.0 : std::max(0.0, roots.back());
    r.caution = r.value < 1 - 1e-12;
    return r;
}

DynamicalDegreeResult dynamical_degree(const CharPoly& c, const SingularityAnalysis& a) {
    DynamicalDegreeResult r;
    const RootResult root = largest_root(c);
    r.char_root = root.value;
    r.caution = root.caution;
    for (const auto& o : a.orbits) {
        if (o.kind != PatternKind::Anticonfined) continue;
        if (o.growth) r.anticonfined_rates.push_back(o.growth->growth_rate());
        if (o.backward_growth) r.anticonfined_rates.push_back(o.backward_growth->growth_rate());
    }
    double best_rate = 0;
    for (double g : r.anticonfined_rates) best_rate = std::max(best_rate, g);
    constexpr double kTie = 1e-9;
    if (r.anticonfined_rates.empty() || best_rate < r.char_root - kTie) {
        r.lambda = r.char_root;
        r.winner = "characteristic-root";
    } else if (best_rate > r.char_root + kTie) {
        r.lambda = best_rate;
        r.winner = "anticonfined-growth";
    } else {
        r.lambda = std::max(best_rate, r.char_root);
        r.winner = "tie";
    }
    r.lambda = std::max(r.lambda, 1.0);
    const double phi = (1 + std::sqrt(5.0)) / 2;
    if (std::abs(r.lambda - phi) < 1e-9) r.closed_form = "phi = (1+sqrt(5))/2";
    if (std::abs(r.lambda - phi * phi) < 1e-9) r.closed_form = "phi^2";
    if (std::abs(r.lambda - 1.324717957244746) < 1e-9) r.closed_form = "plastic constant";
    return r;
}

std::vector<Census> all_censuses(const SingularityAnalysis& a) {
    std::vector<ProjPoint> values = a.special;
    for (const auto& f : a.families)
        if (std::find(values.begin(), values.end(), f.seed) == values.end()) values.push_back(f.seed);
    std::vector<Census> out;
    for (const auto& w : values) {
        try {
            out.push_back(preimage_census(a, w));
        } catch (const EmptyCensus&) {
        }
    }
    return out;
}

std::pair<ProjPoint, ProjPoint> choose_pair(const SingularityAnalysis& a) {
    if (a.families.empty()) throw HalburdError("no spontaneous singular value; nothing to balance");
    const ProjPoint initial = a.families.front().seed;
    try {
        const Census inf = preimage_census(a, ProjPoint::infinity());
        if (initial != ProjPoint::infinity() && inf.has_occurrences() && !inf.source.growing())
            return {initial, ProjPoint::infinity()};
    } catch (const EmptyCensus&) {
    }
    const auto labels = family_labels(a);
    std::vector<ProjPoint> excluded{initial, ProjPoint::infinity()};
    for (std::size_t f = 0; f < a.families.size(); ++f)
        if (labels[f] == labels[0]) excluded.push_back(a.families[f].seed);
    std::vector<std::pair<ProjPoint, int>> counts;
    for (const auto& fam : a.families)
        for (const auto& e : fam.entries) {
            if (e.depends_on_u || e.generic) continue;
            const ProjPoint v = e.is_infinite() ? ProjPoint::infinity() : e.order > 0 ? ProjPoint::finite(0) : e.value;
            if (std::find(excluded.begin(), excluded.end(), v) != excluded.end()) continue;
            if (std::find(a.special.begin(), a.special.end(), v) == a.special.end()) continue;
            auto it = std::find_if(counts.begin(), counts.end(), [&](const auto& x) { return x.first == v; });
            if (it == counts.end())
                counts.push_back({v, 1});
            else
                ++it->second;
        }
    if (counts.empty()) return {initial, ProjPoint::infinity()};
    auto best = std::max_element(counts.begin(), counts.end(), [](const auto& x, const auto& y) { return x.second < y.second; });
    return {initial, best->first};
}

std::vector<CensusCheck> census_duality(const std::vector<Census>& censuses, const ForwardSolution& s) {
    std::vector<CensusCheck> out;
    for (auto c : censuses) {
        if (c.has_occurrences() && c.label != s.z.label) {
            out.push_back({c.value, false, 0});
            continue;
        }
        CensusCheck chk{c.value, true, -1};
        for (long n = 1; n < static_cast<long>(s.degrees.values.size()); ++n)
            if (c.evaluate(s.z, n) != s.degrees.values[static_cast<std::size_t>(n)]) {
                chk.ok = false;
                chk.first_mismatch = n;
                break;
            }
        out.push_back(chk);
    }
    return out;
}

HalburdResult run_halburd(SingularityAnalysis a, int N, const HalburdOptions& opts) {
    if (opts.pattern_hook) opts.pattern_hook(a);
    HalburdResult r;
    r.censuses = all_censuses(a);
    const auto [w1, w2] = choose_pair(a);
    r.balance = build_balance(preimage_census(a, w1), preimage_census(a, w2));
    r.char_poly = express_char_poly(r.balance);
    r.char_roots_real = real_roots(r.char_poly);
    r.degree = dynamical_degree(r.char_poly, a);
    for (const auto& f : a.families) r.express_extrapolated = r.express_extrapolated || f.kind == PatternKind::Unconfined;
    r.forward = solve_balance_forward(r.balance, N);
    r.duality = census_duality(r.censuses, *r.forward);
    return r;
}

nlohmann::json to_json(const SourceTerm& s) {
    nlohmann::json j;
    j["periodic"] = nlohmann::json::array();
    for (const auto& p : s.periodic) {
        std::vector<std::string> v;
        for (const auto& x : p.values) v.push_back(x.get_str());
        j["periodic"].push_back({{"period", p.period}, {"start", p.start}, {"values", v}});
    }
    j["delta"] = nlohmann::json::array();
    for (const auto& d : s.deltas) j["delta"].push_back({{"index", d.index}, {"value", d.value.get_str()}});
    j["exponential"] = nlohmann::json::array();
    for (const auto& e : s.exponential)
        j["exponential"].push_back({{"start", e.start}, {"recurrence", e.recurrence}, {"seeds", e.seeds}, {"sign", e.sign}});
    return j;
}

namespace {
nlohmann::json side_json(const std::vector<LagTerm>& lags, const std::vector<LagTail>& tails) {
    nlohmann::json j;
    j["lags"] = nlohmann::json::array();
    for (const auto& t : lags) j["lags"].push_back({{"lag", t.lag}, {"coefficient", t.coefficient}});
    j["tails"] = nlohmann::json::array();
    for (const auto& t : tails) j["tails"].push_back({{"start", t.start}, {"step", t.step}, {"coefficient", t.coefficient}});
    return j;
}
}  // namespace

nlohmann::json to_json(const Census& c) {
    nlohmann::json j = side_json(c.lags, c.tails);
    j["value"] = point_text(c.value);
    j["sequence"] = c.label;
    j["source"] = to_json(c.source);
    j["text"] = c.to_string();
    return j;
}

nlohmann::json to_json(const BalanceEquation& b) {
    return {{"values", {point_text(b.w1), point_text(b.w2)}},
            {"sequence", b.label},
            {"lhs", side_json(b.lhs, b.lhs_tails)},
            {"rhs", side_json(b.rhs, b.rhs_tails)},
            {"source", to_json(b.source)},
            {"text", b.to_string()}};
}

nlohmann::json to_json(const CharPoly& p) {
    std::vector<std::string> c;
    for (const auto& x : p.coefficients) c.push_back(x.get_str());
    nlohmann::json j = {{"coefficients", c}, {"provenance", p.provenance}, {"text", p.to_string()}, {"factored", p.factored_string()}};
    if (p.clearing_period) j["clearing_factor"] = "1 - lambda^-" + std::to_string(p.clearing_period);
    return j;
}

nlohmann::json to_json(const DynamicalDegreeResult& r) {
    nlohmann::json j = {{"lambda", r.lambda}, {"winner", r.winner}, {"char_root", r.char_root},
                        {"anticonfined_rates", r.anticonfined_rates}, {"caution", r.caution}};
    if (!r.closed_form.empty()) j["closed_form"] = r.closed_form;
    return j;
}

}  // namespace singdeg
