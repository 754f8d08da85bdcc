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

#include "singdeg/singularity/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "singdeg/algebra/prime_field.hpp"

namespace singdeg {

namespace {

MPoly derivative(const MPoly& p, VarId v) {
    auto c = p.coefficients_in(v);
    std::vector<MPoly> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i].scaled(mpz_class(static_cast<unsigned long>(i))));
    return MPoly::from_coefficients(v, d);
}

// Polynomial in x1 whose roots are the finite singular values.
MPoly singular_locus(const ParamField& f) {
    const VarId x0 = sym::x0();
    const MPoly& A = f.num();
    const MPoly& B = f.den();
    return content_in(derivative(A, x0) * B - A * derivative(B, x0), x0);
}

std::vector<mpz_class> divisors(mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> out;
    if (n == 0) return out;
    if (mpz_sizeinbase(n.get_mpz_t(), 2) > 40) return {mpz_class(1), n};  // keep trial division cheap
    const unsigned long v = n.get_ui();
    for (unsigned long d = 1; d * d <= v; ++d)
        if (v % d == 0) {
            out.emplace_back(d);
            if (d * d != v) out.emplace_back(v / d);
        }
    return out;
}

// Roots in the parameter field of g, a polynomial in x1.
void solve_x1(MPoly g, std::vector<ParamField>& roots, std::vector<std::string>& unsolved) {
    const VarId x1 = sym::x1();
    if (g.is_zero() || !g.contains(x1)) return;
    const MPoly X = MPoly::var(x1);
    if (auto q = g.try_divexact(X)) {
        roots.emplace_back(0);
        while (auto q2 = g.try_divexact(X)) g = *q2;
    }
    g = g.divexact(content_in(g, x1));
    while (g.degree(x1) > 0) {
        auto c = g.coefficients_in(x1);
        if (c.size() == 2) {
            roots.push_back(ParamField::normalize(-c[0], c[1]));
            return;
        }
        const bool numeric = std::all_of(c.begin(), c.end(), [](const MPoly& m) { return m.is_constant(); });
        bool found = false;
        if (numeric && !c[0].is_zero()) {
            for (const auto& p : divisors(c.front().constant_value())) {
                for (const auto& q : divisors(c.back().constant_value())) {
                    for (int sign : {1, -1}) {
                        const MPoly lin = X.scaled(q) - MPoly(mpz_class(sign * p));
                        if (auto quo = g.try_divexact(lin)) {
                            roots.emplace_back(mpq_class(sign * p, q));
                            g = *quo;
                            while (auto again = g.try_divexact(lin)) g = *again;
                            found = true;
                            break;
                        }
                    }
                    if (found) break;
                }
                if (found) break;
            }
        }
        if (!found) {
            unsolved.push_back(g.to_string());
            return;
        }
    }
}

bool contains_point(const std::vector<ProjPoint>& set, const ProjPoint& p) {
    return std::find(set.begin(), set.end(), p) != set.end();
}

LaurentSeries seed_series(const ProjPoint& v) {
    if (v.is_infinite()) return LaurentSeries::monomial(1, -1);
    return LaurentSeries::constant(v.value()) + LaurentSeries::monomial(1, 1);
}

PatternEntry make_entry(const LaurentSeries& s, const std::vector<ProjPoint>& special) {
    if (s.is_exact_zero()) throw std::domain_error("iterate collapsed to exactly zero");
    PatternEntry e;
    const long v = s.valuation();
    if (v < 0) {
        e.value = ProjPoint::infinity();
        e.order = e.multiplicity = -v;
        return e;
    }
    if (v > 0) {
        e.value = ProjPoint::finite(0);
        e.order = e.multiplicity = v;
        return e;
    }
    e.value = ProjPoint::finite(s.leading());
    e.depends_on_u = s.leading().contains(sym::u());
    if (e.depends_on_u) return e;
    const LaurentSeries d = s - LaurentSeries::constant(s.leading());
    if (d.has_leading())
        e.multiplicity = d.valuation();
    else if (!d.is_exact_zero() && contains_point(special, e.value))
        throw InsufficientDepth();
    else
        e.multiplicity = -1;
    return e;
}

struct SeriesOps {
    LaurentSeries zero() const { return {}; }
    LaurentSeries one() const { return LaurentSeries::constant(1); }
    LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b) const { return a + b; }
    LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b) const { return a * b; }
};

std::vector<std::string> signatures(const std::vector<PatternEntry>& es, const std::vector<ProjPoint>& special) {
    std::vector<std::string> out;
    for (const auto& e : es) out.push_back(signature(e, special));
    return out;
}

template <class F>
auto with_depth(const TraceOptions& opts, const std::string& what, F&& run) -> decltype(run(0L)) {
    for (long depth = opts.initial_depth; depth <= opts.max_depth; depth *= 2) {
        try {
            return run(depth);
        } catch (const InsufficientDepth&) {
        }
    }
    SingularityPattern partial;
    partial.seed_description = what;
    throw UnresolvedPattern(what + ": series depth " + std::to_string(opts.max_depth) + " exhausted", partial);
}

// Iterate from (prev, cur) collecting entries until `stop` says so or `limit` entries exist.
template <class Stop>
std::vector<PatternEntry> run_trace(const MappingSpec& spec, LaurentSeries prev, LaurentSeries cur, ParamField n,
                                    std::size_t limit, long depth, const std::vector<ProjPoint>& special,
                                    bool include_seed, Stop&& stop) {
    std::vector<PatternEntry> out;
    if (include_seed) out.push_back(make_entry(cur, special));
    for (long k = 0; out.size() < limit; ++k) {
        LaurentSeries next = series_step(spec, prev, cur, n + ParamField(spec.direction * k), depth);
        out.push_back(make_entry(next, special));
        if (stop(out.back())) break;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return out;
}

// Truncated Laurent series over F_p with the same precision rules as LaurentSeries.
struct FpSeries {
    static constexpr long kExact = LaurentSeries::kExact;
    long val = 0;
    std::vector<std::uint64_t> c;
    long prec = kExact;

    static FpSeries constant(std::uint64_t v) { return monomial(v, 0); }
    static FpSeries monomial(std::uint64_t v, long e) {
        FpSeries s;
        if (v) s.val = e, s.c = {v};
        return s;
    }
    bool is_exact_zero() const { return c.empty() && prec == kExact; }
    long lower() const { return c.empty() ? prec : val; }
    void normalize() {
        std::size_t k = 0;
        while (k < c.size() && c[k] == 0) ++k;
        c.erase(c.begin(), c.begin() + static_cast<long>(k));
        val += static_cast<long>(k);
        if (prec != kExact && !c.empty() && val + static_cast<long>(c.size()) > prec)
            c.resize(static_cast<std::size_t>(std::max(0L, prec - val)));
        while (!c.empty() && c.back() == 0) c.pop_back();
        if (c.empty()) val = 0;
    }
    std::uint64_t at(long e) const {
        if (c.empty() || e < val || e >= val + static_cast<long>(c.size())) return 0;
        return c[static_cast<std::size_t>(e - val)];
    }
    long end() const { return c.empty() ? std::numeric_limits<long>::min() : val + static_cast<long>(c.size()); }
};

long sat_add(long a, long b) { return (a == FpSeries::kExact || b == FpSeries::kExact) ? FpSeries::kExact : a + b; }

FpSeries fp_add(const PrimeField& F, const FpSeries& a, const FpSeries& b) {
    FpSeries r;
    r.prec = std::min(a.prec, b.prec);
    if (a.c.empty() && b.c.empty()) return r;
    r.val = a.c.empty() ? b.val : b.c.empty() ? a.val : std::min(a.val, b.val);
    long hi = std::min(r.prec, std::max(a.end(), b.end()));
    for (long e = r.val; e < hi; ++e) r.c.push_back(F.add(a.at(e), b.at(e)));
    r.normalize();
    return r;
}

FpSeries fp_neg(const PrimeField& F, FpSeries a) {
    for (auto& x : a.c) x = F.neg(x);
    return a;
}

FpSeries fp_mul(const PrimeField& F, const FpSeries& a, const FpSeries& b) {
    if (a.is_exact_zero() || b.is_exact_zero()) return {};
    FpSeries r;
    r.prec = std::min(sat_add(a.prec, b.lower()), sat_add(b.prec, a.lower()));
    if (a.c.empty() || b.c.empty()) return r;
    r.val = a.val + b.val;
    long len = static_cast<long>(a.c.size() + b.c.size() - 1);
    if (r.prec != FpSeries::kExact) len = std::min(len, r.prec - r.val);
    if (len <= 0) {
        r.c.clear();
        r.val = 0;
        return r;
    }
    r.c.assign(static_cast<std::size_t>(len), 0);
    for (std::size_t i = 0; i < a.c.size() && static_cast<long>(i) < len; ++i)
        for (std::size_t j = 0; j < b.c.size() && static_cast<long>(i + j) < len; ++j)
            r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
    r.normalize();
    return r;
}

FpSeries fp_inverse(const PrimeField& F, const FpSeries& b, long depth) {
    if (b.is_exact_zero()) throw std::domain_error("inverse of the exact zero series");
    if (b.c.empty()) throw InsufficientDepth();
    const bool exact_monomial = b.prec == FpSeries::kExact && b.c.size() == 1;
    long n = depth;
    if (b.prec != FpSeries::kExact) n = std::min(n, b.prec - b.val);
    const std::uint64_t inv0 = F.inv(b.c[0]);
    FpSeries r;
    r.val = -b.val;
    r.c.resize(static_cast<std::size_t>(n));
    r.c[0] = inv0;
    for (long k = 1; k < n; ++k) {
        std::uint64_t s = 0;
        for (long j = 1; j <= k && j < static_cast<long>(b.c.size()); ++j)
            s = F.add(s, F.mul(b.c[static_cast<std::size_t>(j)], r.c[static_cast<std::size_t>(k - j)]));
        r.c[static_cast<std::size_t>(k)] = F.neg(F.mul(inv0, s));
    }
    r.prec = exact_monomial ? FpSeries::kExact : r.val + n;
    r.normalize();
    return r;
}

struct FpSeriesOps {
    const PrimeField* F;
    FpSeries zero() const { return {}; }
    FpSeries one() const { return FpSeries::constant(1); }
    FpSeries add(const FpSeries& a, const FpSeries& b) const { return fp_add(*F, a, b); }
    FpSeries mul(const FpSeries& a, const FpSeries& b) const { return fp_mul(*F, a, b); }
};

// One modular image of an orbit trace.
struct ModularRun {
    PrimeFieldConfig cfg;
    PrimeField F;
    long n0;

    FpSeries seed(const ProjPoint& w) const {
        if (w.is_infinite()) return FpSeries::monomial(1, -1);
        return fp_add(F, FpSeries::constant(specialize(w.value(), cfg, n0)), FpSeries::monomial(1, 1));
    }
    FpSeries step(const MappingSpec& spec, const FpSeries& prev, const FpSeries& cur, long n, long depth) const {
        auto sf = specialize_form<FpSeries>(spec.form, [&](const MPoly& m) { return FpSeries::constant(specialize(m, cfg, n)); });
        const FpSeries one = FpSeries::constant(1);
        auto [A, B] = bihom_eval(sf, prev, one, cur, one, FpSeriesOps{&F});
        if (B.is_exact_zero()) throw std::domain_error("update denominator vanishes identically along the trace");
        FpSeries r = fp_mul(F, A, fp_inverse(F, B, depth));
        if (!r.c.empty() && r.prec > r.val + depth) {
            r.prec = r.val + depth;
            r.normalize();
        }
        return r;
    }
};

// Entries from two runs that differ only in u.
std::vector<PatternEntry> merge_runs(const std::vector<FpSeries>& ra, const std::vector<FpSeries>& rb,
                                     const ModularRun& a, const std::vector<ProjPoint>& special) {
    std::vector<PatternEntry> out;
    for (std::size_t k = 0; k < ra.size(); ++k) {
        const FpSeries& s = ra[k];
        const FpSeries& t = rb[k];
        if (s.is_exact_zero() || t.is_exact_zero()) throw std::domain_error("iterate collapsed to exactly zero");
        if (s.c.empty() || t.c.empty()) throw InsufficientDepth();
        PatternEntry e;
        if (s.val != t.val) {
            e.depends_on_u = e.generic = true;  // the order itself moves with u
        } else if (s.val < 0) {
            e.value = ProjPoint::infinity();
            e.order = e.multiplicity = -s.val;
        } else if (s.val > 0) {
            e.value = ProjPoint::finite(0);
            e.order = e.multiplicity = s.val;
        } else if (s.c[0] != t.c[0]) {
            e.depends_on_u = e.generic = true;
        } else {
            e.generic = true;
            for (const auto& v : special) {
                if (v.is_infinite() || v.value().is_zero()) continue;
                if (specialize(v.value(), a.cfg, a.n0) != s.c[0]) continue;
                const FpSeries d = fp_add(a.F, s, FpSeries::constant(a.F.neg(s.c[0])));
                if (d.c.empty() && !d.is_exact_zero()) throw InsufficientDepth();
                e.generic = false;
                e.value = v;
                e.multiplicity = d.is_exact_zero() ? -1 : d.val;
                break;
            }
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::string point_text(const ProjPoint& p) { return p.is_infinite() ? "inf" : p.value().to_string(); }

std::vector<ProjPoint> default_special(const MappingSpec& spec) {
    std::vector<ProjPoint> special{ProjPoint::finite(0), ProjPoint::infinity()};
    for (const auto& v : find_singular_values(spec).values)
        if (!contains_point(special, v)) special.push_back(v);
    return special;
}

bool has_singular_signature(const std::vector<std::string>& sigs, std::size_t from, std::size_t len) {
    for (std::size_t i = from; i < from + len && i < sigs.size(); ++i)
        if (sigs[i] != "G" && sigs[i] != "reg") return true;
    return false;
}

nlohmann::json growth_json(const OrderGrowth& g) {
    return {{"recurrence", g.recurrence}, {"start", g.start}, {"orders", g.orders}, {"value", g.infinite ? "inf" : "0"}};
}

}  // namespace

std::string PatternEntry::to_string() const {
    auto pw = [&](const char* base) { return order > 1 ? std::string(base) + "^" + std::to_string(order) : std::string(base); };
    if (generic) return depends_on_u ? "G" : "reg";
    if (is_infinite()) return pw("inf");
    if (order > 0) return pw("0");
    return value.value().to_string();
}

std::string to_string(PatternKind k) {
    switch (k) {
        case PatternKind::Confined:
            return "confined";
        case PatternKind::Unconfined:
            return "unconfined";
        case PatternKind::Cyclic:
            return "cyclic";
        case PatternKind::Anticonfined:
            return "anticonfined";
        case PatternKind::Transient:
            return "transient";
    }
    return "?";
}

long OrderGrowth::order_at(std::size_t j) const {
    std::vector<long> o = orders;
    while (o.size() <= j) {
        long next = 0;
        for (std::size_t i = 0; i < recurrence.size(); ++i) next += recurrence[i] * o[o.size() - 1 - i];
        o.push_back(next);
    }
    return o[j];
}

double OrderGrowth::growth_rate() const {
    if (recurrence.size() == 1) return static_cast<double>(recurrence[0]);
    const double a = static_cast<double>(recurrence[0]), b = static_cast<double>(recurrence[1]);
    return (a + std::sqrt(a * a + 4 * b)) / 2;
}

SingularValues find_singular_values(const MappingSpec& spec) {
    SingularValues out;
    std::vector<ParamField> roots;
    solve_x1(singular_locus(spec.update_field), roots, out.unsolved);
    for (auto& r : roots) {
        ProjPoint p = ProjPoint::finite(r);
        if (!contains_point(out.values, p)) out.values.push_back(p);
    }
    // infinity: x1 = 1/t with t stored in the z slot
    const ParamField at_inf = spec.update_field.substitute(sym::x1(), ParamField(1) / ParamField::symbol(sym::z()));
    const MPoly g = singular_locus(at_inf);
    if (g.substitute(sym::z(), MPoly(0)).is_zero()) out.values.push_back(ProjPoint::infinity());
    return out;
}

bool is_spontaneous(const MappingSpec& spec, const ProjPoint& v) {
    const MPoly& A = spec.update_field.num();
    const MPoly& B = spec.update_field.den();
    MPoly P = v.is_infinite() ? B : A * v.value().den() - B * v.value().num();
    if (P.is_zero()) return false;
    P = P.divexact(content_in(P, sym::x1()));
    P = P.divexact(content_in(P, sym::x0()));
    return P.contains(sym::x0()) && P.contains(sym::x1());
}

LaurentSeries series_step(const MappingSpec& spec, const LaurentSeries& s_prev, const LaurentSeries& s_cur,
                          const ParamField& n, long depth) {
    const auto sf = specialize_form_at(spec.form, n);
    SpecializedForm<LaurentSeries> ss;
    ss.d0 = sf.d0;
    ss.d1 = sf.d1;
    auto lift = [](const std::vector<std::vector<std::optional<ParamField>>>& m) {
        std::vector<std::vector<std::optional<LaurentSeries>>> out(m.size());
        for (std::size_t i = 0; i < m.size(); ++i)
            for (const auto& c : m[i])
                out[i].push_back(c ? std::optional<LaurentSeries>(LaurentSeries::constant(*c)) : std::nullopt);
        return out;
    };
    ss.a = lift(sf.a);
    ss.b = lift(sf.b);
    const LaurentSeries one = LaurentSeries::constant(1);
    auto [A, B] = bihom_eval(ss, s_prev, one, s_cur, one, SeriesOps{});
    if (B.is_exact_zero()) throw std::domain_error("update denominator vanishes identically along the trace");
    LaurentSeries r = divide(A, B, depth);
    if (r.has_leading()) r = r.truncated(r.valuation() + depth);
    return r;
}

std::string signature(const PatternEntry& e, const std::vector<ProjPoint>& special) {
    if (e.depends_on_u) return "G";
    if (e.generic) return "reg";
    if (e.is_infinite()) return "inf^" + std::to_string(e.order);
    if (e.order > 0) return "0^" + std::to_string(e.order);
    if (contains_point(special, e.value)) return "=" + e.value.value().to_string() + "^" + std::to_string(e.multiplicity);
    return "reg";
}

std::optional<std::pair<std::size_t, std::size_t>> find_periodic_tail(const std::vector<std::string>& sigs) {
    const std::size_t L = sigs.size();
    for (std::size_t s = 0; s < L; ++s) {
        for (std::size_t p = 1; 2 * p <= L - s; ++p) {
            if (L - s < 4) break;
            bool ok = true;
            for (std::size_t i = s; ok && i + p < L; ++i) ok = sigs[i] == sigs[i + p];
            if (ok) return std::pair{s, p};
        }
    }
    return std::nullopt;
}

std::optional<OrderGrowth> fit_order_growth(const std::vector<PatternEntry>& entries) {
    if (entries.empty() || !entries.back().is_singular()) return std::nullopt;
    const bool inf = entries.back().is_infinite();
    std::size_t run = entries.size();
    while (run > 0 && entries[run - 1].is_singular() && entries[run - 1].is_infinite() == inf) --run;
    for (std::size_t off = 0; off <= 3; ++off) {
        if (run + off >= entries.size()) break;
        std::vector<long> o;
        for (std::size_t i = run + off; i < entries.size(); ++i) o.push_back(entries[i].order);
        if (o.back() <= o.front()) return std::nullopt;
        OrderGrowth g;
        g.start = run + off;
        g.orders = o;
        g.infinite = inf;
        auto verify = [&](const std::vector<long>& r) {
            for (std::size_t k = r.size(); k < o.size(); ++k) {
                long pred = 0;
                for (std::size_t i = 0; i < r.size(); ++i) pred += r[i] * o[k - 1 - i];
                if (pred != o[k]) return false;
            }
            return true;
        };
        if (o.size() >= 4 && o[0] != 0 && o[1] % o[0] == 0 && verify({o[1] / o[0]})) {
            g.recurrence = {o[1] / o[0]};
            return g;
        }
        if (o.size() >= 6) {
            const long det = o[1] * o[1] - o[0] * o[2];
            if (det != 0) {
                const long an = o[2] * o[1] - o[0] * o[3], bn = o[1] * o[3] - o[2] * o[2];
                if (an % det == 0 && bn % det == 0 && verify({an / det, bn / det})) {
                    g.recurrence = {an / det, bn / det};
                    return g;
                }
            }
        }
    }
    return std::nullopt;
}

SingularityPattern trace_confinement(const MappingSpec& spec, const ProjPoint& v, const TraceOptions& opts) {
    return trace_confinement(spec, v, opts, default_special(spec));
}

SingularityPattern trace_confinement(const MappingSpec& spec, const ProjPoint& v, const TraceOptions& opts,
                                     const std::vector<ProjPoint>& special) {
    const std::string what = "confinement of " + point_text(v);
    return with_depth(opts, what, [&](long depth) {
        SingularityPattern p;
        p.seed = v;
        p.seed_description = "x[n-1] = u, x[n] = " + point_text(v) + (v.is_infinite() ? " (1/eps)" : " + eps");
        p.direction = spec.direction;
        p.depth_used = depth;
        p.entries = run_trace(spec, LaurentSeries::constant(ParamField::symbol(sym::u())), seed_series(v),
                              ParamField::symbol(sym::n()), opts.max_pattern_length, depth, special, true,
                              [](const PatternEntry& e) { return e.depends_on_u; });
        if (p.entries.back().depends_on_u) {
            p.kind = PatternKind::Confined;
            return p;
        }
        if (auto tail = find_periodic_tail(signatures(p.entries, special))) {
            p.kind = PatternKind::Unconfined;
            p.tail_start = tail->first;
            p.period = tail->second;
            return p;
        }
        throw UnresolvedPattern(what + ": no confinement and no periodic tail within " +
                                    std::to_string(opts.max_pattern_length) + " entries",
                                p);
    });
}

SingularityPattern trace_orbit(const MappingSpec& spec, const ProjPoint& w, const TraceOptions& opts) {
    return trace_orbit(spec, w, opts, default_special(spec));
}

SingularityPattern trace_orbit(const MappingSpec& spec, const ProjPoint& w, const TraceOptions& opts,
                               const std::vector<ProjPoint>& special) {
    std::optional<MappingSpec> inv;
    try {
        inv = invert(spec);
    } catch (const MappingError&) {
    }
    const std::string what = "orbit of " + point_text(w);
    std::vector<VarId> symbols = spec.param_ids();
    symbols.push_back(sym::u());
    const PrimeFieldConfig cfg = draw_prime_config(symbols, opts.seed);
    std::mt19937_64 rng(opts.seed * 7919 + 17);
    PrimeFieldConfig cfg_b = cfg;
    cfg_b.assignment[sym::u()] = rng() % cfg.modulus;
    const long n0 = static_cast<long>((rng() >> 24) + (1UL << 20));
    const ModularRun runs[2] = {{cfg, PrimeField(cfg.modulus), n0}, {cfg_b, PrimeField(cfg.modulus), n0}};
    return with_depth(opts, what, [&](long depth) {
        SingularityPattern p;
        p.seed = w;
        p.seed_description = "x[n-1] = u, x[n] = " + point_text(w);
        p.direction = spec.direction;
        p.depth_used = depth;
        auto trace = [&](const ModularRun& r, const MappingSpec& m, FpSeries prev, FpSeries cur, long n0,
                         bool include_seed) {
            std::vector<FpSeries> out;
            if (include_seed) out.push_back(cur);
            for (long k = 0; out.size() < opts.max_orbit_length; ++k) {
                FpSeries next = r.step(m, prev, cur, n0 + m.direction * k, depth);
                out.push_back(next);
                prev = std::move(cur);
                cur = std::move(next);
            }
            return out;
        };
        auto both = [&](const MappingSpec& m, bool forward) {
            std::vector<FpSeries> res[2];
            for (int i = 0; i < 2; ++i) {
                const ModularRun& r = runs[i];
                const FpSeries u = FpSeries::constant(r.cfg.assignment.at(sym::u()));
                res[i] = forward ? trace(r, m, u, r.seed(w), r.n0, true)
                                 : trace(r, m, r.seed(w), u, r.n0 - spec.direction, false);
            }
            return merge_runs(res[0], res[1], runs[0], special);
        };
        p.entries = both(spec, true);
        if (inv) {
            p.backward = both(*inv, false);
            p.backward_traced = true;
        }
        const auto fwd = signatures(p.entries, special);
        const auto bwd = signatures(p.backward, special);
        if (auto t = find_periodic_tail(fwd)) {
            p.tail_start = t->first;
            p.period = t->second;
        }
        if (auto t = find_periodic_tail(bwd)) {
            p.backward_tail_start = t->first;
            p.backward_period = t->second;
        }
        p.growth = fit_order_growth(p.entries);
        p.backward_growth = fit_order_growth(p.backward);

        std::vector<std::string> full(bwd.rbegin(), bwd.rend());
        full.push_back("G");
        full.insert(full.end(), fwd.begin(), fwd.end());
        auto whole = find_periodic_tail(full);
        if (whole && whole->first == 0) {
            p.kind = PatternKind::Cyclic;
            p.period = whole->second;
        } else if (p.growth || p.backward_growth) {
            p.kind = PatternKind::Anticonfined;
        } else {
            p.kind = PatternKind::Transient;
        }
        p.inverse_unconfined = p.kind != PatternKind::Cyclic && p.backward_period &&
                               has_singular_signature(bwd, *p.backward_tail_start, *p.backward_period);
        if (!p.tail_start && !p.growth)
            throw UnresolvedPattern(what + ": forward orbit shows neither a periodic tail nor order growth", p);
        return p;
    });
}

SingularityAnalysis full_singularity_analysis(const MappingSpec& spec, const TraceOptions& opts,
                                              const std::vector<ProjPoint>& extra_seeds) {
    SingularityAnalysis a;
    a.singular = find_singular_values(spec);
    a.special = {ProjPoint::finite(0), ProjPoint::infinity()};
    for (const auto& v : a.singular.values)
        if (!contains_point(a.special, v)) a.special.push_back(v);

    std::vector<ProjPoint> spontaneous_values;
    for (const auto& v : a.singular.values) {
        const bool s = is_spontaneous(spec, v);
        a.spontaneous.push_back(s);
        if (!s) continue;
        spontaneous_values.push_back(v);
        a.families.push_back(trace_confinement(spec, v, opts, a.special));
    }

    std::vector<ProjPoint> seeds;
    auto add_seed = [&](const ProjPoint& p) {
        if (!contains_point(spontaneous_values, p) && !contains_point(seeds, p)) seeds.push_back(p);
    };
    add_seed(ProjPoint::finite(0));
    add_seed(ProjPoint::infinity());
    for (const auto& v : a.singular.values) add_seed(v);
    for (const auto& p : extra_seeds) add_seed(p);
    for (const auto& w : seeds) a.orbits.push_back(trace_orbit(spec, w, opts, a.special));

    // Report each orbit once up to a shift along the orbit.
    std::vector<std::vector<std::string>> full;
    for (const auto& o : a.orbits) {
        auto bwd = signatures(o.backward, a.special);
        std::vector<std::string> f(bwd.rbegin(), bwd.rend());
        f.push_back("G");
        auto fwd = signatures(o.entries, a.special);
        f.insert(f.end(), fwd.begin(), fwd.end());
        full.push_back(std::move(f));
    }
    for (std::size_t j = 0; j < a.orbits.size(); ++j) {
        const auto fwd = signatures(a.orbits[j].entries, a.special);
        const std::size_t window = std::min<std::size_t>(8, fwd.size());
        bool dup = false;
        for (std::size_t i : a.distinct_orbits) {
            const auto& hay = full[i];
            dup = std::search(hay.begin(), hay.end(), fwd.begin(), fwd.begin() + static_cast<long>(window)) != hay.end() &&
                  a.orbits[i].kind == a.orbits[j].kind;
            if (dup) break;
        }
        if (!dup) a.distinct_orbits.push_back(j);
    }
    return a;
}

nlohmann::json to_json(const PatternEntry& e) {
    nlohmann::json j = {{"value", e.to_string()}, {"order", e.order}};
    if (e.depends_on_u) j["depends_on_u"] = true;
    if (!e.is_singular() && !e.depends_on_u && !e.generic) j["multiplicity"] = e.multiplicity;
    return j;
}

nlohmann::json to_json(const SingularityPattern& p) {
    nlohmann::json j;
    j["kind"] = to_string(p.kind);
    j["seed"] = point_text(p.seed);
    j["seed_description"] = p.seed_description;
    j["direction"] = p.direction;
    j["entries"] = nlohmann::json::array();
    for (const auto& e : p.entries) j["entries"].push_back(to_json(e));
    j["tail_start"] = p.tail_start ? nlohmann::json(*p.tail_start) : nlohmann::json();
    j["period"] = p.period ? nlohmann::json(*p.period) : nlohmann::json();
    j["growth"] = p.growth ? growth_json(*p.growth) : nlohmann::json();
    if (p.backward_traced) {
        j["backward"] = nlohmann::json::array();
        for (const auto& e : p.backward) j["backward"].push_back(to_json(e));
        j["backward_growth"] = p.backward_growth ? growth_json(*p.backward_growth) : nlohmann::json();
        j["inverse_unconfined"] = p.inverse_unconfined;
    }
    return j;
}

ProjPoint parse_point(const std::string& text) {
    if (text == "inf" || text == "oo" || text == "infinity") return ProjPoint::infinity();
    return ProjPoint::finite(to_field(*parse_expression(text)));
}

}  // namespace singdeg
