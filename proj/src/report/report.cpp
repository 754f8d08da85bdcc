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

#include "singdeg/report/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "singdeg/mapping/expr.hpp"

namespace singdeg {

namespace {

std::string fmt(double x, int digits = 15) {
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

std::string seq_text(const std::vector<long>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s;
}

std::vector<std::string> sigs_without_exit(const SingularityPattern& p, const std::vector<ProjPoint>& special) {
    std::vector<std::string> out;
    for (const auto& e : p.entries)
        if (!e.depends_on_u) out.push_back(signature(e, special));
    return out;
}

nlohmann::json mapping_json(const MappingSpec& spec) {
    nlohmann::json j = {{"name", spec.name}, {"params", spec.params}, {"update", to_string(*spec.update)}};
    j["inverse"] = spec.inverse ? nlohmann::json(to_string(*spec.inverse)) : nlohmann::json();
    j["document"] = to_document(spec);
    return j;
}

nlohmann::json check_json(const CheckRow& c) {
    return {{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"tolerance", c.tolerance}, {"pass", c.pass}, {"detail", c.detail}};
}

}  // namespace

int auto_max_n(const std::vector<long>& degrees, int cap, long budget) {
    int n = 1;
    for (int k = 1; k < static_cast<int>(degrees.size()) && k <= cap; ++k)
        if (degrees[static_cast<std::size_t>(k)] <= budget) n = k;
        else break;
    return n;
}

bool inverse_reversal(const MappingSpec& spec, const SingularityAnalysis& a, const TraceOptions& opts, std::string& detail) {
    std::vector<const SingularityPattern*> confined;
    for (const auto& f : a.families)
        if (f.kind == PatternKind::Confined) confined.push_back(&f);
    if (confined.empty()) {
        detail = "no confined family";
        return true;
    }
    const auto inv = full_singularity_analysis(invert(spec), opts);
    for (const auto* f : confined) {
        auto s = sigs_without_exit(*f, a.special);
        std::reverse(s.begin(), s.end());
        bool found = false;
        for (const auto& g : inv.families)
            found = found || (g.kind == PatternKind::Confined && sigs_without_exit(g, inv.special) == s);
        if (!found) {
            detail = "no reversed counterpart for the family of " + f->seed.to_string();
            return false;
        }
    }
    detail = std::to_string(confined.size()) + " confined famil" + (confined.size() == 1 ? "y" : "ies") + " reversed";
    return true;
}

std::string check_table(const std::vector<CheckRow>& rows) {
    std::ostringstream os;
    for (const auto& r : rows) {
        os << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.lhs << " vs " << r.rhs << " (tolerance " << r.tolerance << ")";
        if (!r.detail.empty()) os << " - " << r.detail;
        os << '\n';
    }
    return os.str();
}

AnalysisReport build_report(const MappingSpec& spec, const ReportOptions& opts) {
    AnalysisReport rep;
    auto& j = rep.json;
    j["format"] = kReportFormat;
    j["mapping"] = mapping_json(spec);
    std::ostringstream txt;
    txt << "mapping " << spec.name << ": x[n+1] = " << to_string(*spec.update) << '\n';

    TraceOptions topts;
    topts.max_pattern_length = opts.max_pattern_length;
    topts.seed = opts.seed;
    std::vector<ProjPoint> extra;
    for (const auto& s : opts.orbit_seeds) extra.push_back(parse_point(s));

    SingularityAnalysis a;
    try {
        a = full_singularity_analysis(spec, topts, extra);
    } catch (const UnresolvedPattern& e) {
        j["error"] = {{"kind", "unresolved-pattern"}, {"message", e.what()}, {"partial", to_json(e.partial())}};
        txt << "unresolved pattern: " << e.what() << '\n';
        rep.summary = txt.str();
        rep.exit_code = 2;
        return rep;
    }
    if (opts.halburd.pattern_hook) opts.halburd.pattern_hook(a);

    nlohmann::json sv = nlohmann::json::array();
    for (std::size_t i = 0; i < a.singular.values.size(); ++i)
        sv.push_back({{"value", a.singular.values[i].to_string()}, {"spontaneous", static_cast<bool>(a.spontaneous[i])}});
    j["singular_values"] = sv;
    j["unsolved_factors"] = a.singular.unsolved;
    j["families"] = nlohmann::json::array();
    for (const auto& f : a.families) j["families"].push_back(to_json(f));
    j["orbits"] = nlohmann::json::array();
    for (auto i : a.distinct_orbits) j["orbits"].push_back(to_json(a.orbits[i]));
    for (const auto& f : a.families) {
        txt << to_string(f.kind) << " pattern from " << f.seed.to_string() << ": {";
        for (std::size_t k = 0; k < f.entries.size() && k < 10; ++k)
            txt << (k ? ", " : "") << (f.entries[k].depends_on_u ? "G" : f.entries[k].to_string());
        txt << (f.entries.size() > 10 ? ", ...}" : "}") << '\n';
    }
    for (auto i : a.distinct_orbits) {
        const auto& o = a.orbits[i];
        txt << to_string(o.kind) << " orbit of " << o.seed.to_string();
        if (o.kind == PatternKind::Cyclic && o.period) txt << ", period " << *o.period;
        if (o.growth) txt << ", order growth rate " << fmt(o.growth->growth_rate(), 12);
        txt << '\n';
    }

    HalburdOptions hopts;  // hook already applied
    HalburdResult h;
    int N = opts.max_n;
    try {
        h = run_halburd(a, N > 0 ? N : 20, hopts);
        if (N <= 0) N = auto_max_n(h.forward->degrees.values);
    } catch (const InconsistentBalance& e) {
        j["error"] = {{"kind", "inconsistent-balance"}, {"message", e.what()}, {"index", e.index()}};
        txt << "inconsistent balance: " << e.what() << '\n';
        rep.checks.push_back({"balance", "forward solution", "nonnegative integers", "exact", false, e.what()});
        j["checks"] = {check_json(rep.checks.back())};
        rep.summary = txt.str() + check_table(rep.checks);
        rep.exit_code = 3;
        return rep;
    } catch (const HalburdError& e) {
        j["error"] = {{"kind", "calculus"}, {"message", e.what()}};
        txt << "calculus error: " << e.what() << '\n';
        rep.checks.push_back({"balance", "censuses", "balance equation", "exact", false, e.what()});
        j["checks"] = {check_json(rep.checks.back())};
        rep.summary = txt.str() + check_table(rep.checks);
        rep.exit_code = 3;
        return rep;
    }
    std::vector<long> full(h.forward->degrees.values.begin(), h.forward->degrees.values.begin() + N + 1);

    j["censuses"] = nlohmann::json::array();
    for (const auto& c : h.censuses) j["censuses"].push_back(to_json(c));
    j["balance"] = to_json(h.balance);
    j["char_poly"] = to_json(h.char_poly);
    j["char_roots"] = h.char_roots_real;
    j["dynamical_degree"] = to_json(h.degree);
    std::vector<long> z(h.forward->z.values.begin(), h.forward->z.values.begin() + N + 1);
    j["full_method"] = {{"max_n", N}, {"degrees", full}, {"occurrences", {{"label", h.forward->z.label}, {"values", z}}},
                        {"express_extrapolated", h.express_extrapolated}};
    txt << "balance: " << h.balance.to_string() << '\n';
    txt << "characteristic polynomial: " << h.char_poly.factored_string() << '\n';
    txt << "dynamical degree: " << fmt(h.degree.lambda) << " (" << h.degree.winner;
    if (!h.degree.closed_form.empty()) txt << ", " << h.degree.closed_form;
    txt << ")\n";
    txt << "full-method degrees n<=" << N << (h.express_extrapolated ? " (express-extrapolated)" : "") << ": "
        << seq_text(full) << '\n';

    const bool integrable = std::abs(h.degree.lambda - 1) <= 1e-9;
    nlohmann::json verdict = {{"class", integrable ? "integrable" : "nonintegrable"}, {"lambda", h.degree.lambda}};
    if (integrable) {
        DegreeSequence ds;
        ds.values = full;
        const auto est = estimate_lambda(ds);
        verdict["growth_order"] = est.polynomial ? est.polynomial_order : 0;
        txt << "verdict: integrable, degree growth of order " << (est.polynomial ? est.polynomial_order : 0) << '\n';
    } else {
        txt << "verdict: nonintegrable, lambda = " << fmt(h.degree.lambda) << '\n';
    }
    j["verdict"] = verdict;

    bool dual_ok = true;
    std::string dual_detail;
    for (const auto& c : h.duality) {
        if (!c.ok) {
            dual_ok = false;
            dual_detail += "census of " + c.value.to_string() + " differs at n = " + std::to_string(c.first_mismatch) + "; ";
        }
    }
    rep.checks.push_back({"census-duality", "d_n from each census", "d_n from the balance pair", "exact", dual_ok,
                          dual_ok ? std::to_string(h.duality.size()) + " censuses agree" : dual_detail});

    std::string rev_detail;
    const bool rev_ok = inverse_reversal(spec, a, topts, rev_detail);
    rep.checks.push_back({"inverse-reversal", "confined patterns", "reversed inverse patterns", "exact", rev_ok, rev_detail});

    if (opts.oracle) {
        OracleConfig cfg;
        cfg.seed = opts.seed;
        const auto seq = degree_sequence(spec, N, opts.mode, cfg);
        const auto est = estimate_lambda(seq);
        j["oracle"] = {{"mode", to_string(seq.mode)},
                       {"seed", opts.seed},
                       {"degrees", seq.values},
                       {"votes", seq.votes},
                       {"truncated", seq.truncated},
                       {"lambda_estimate",
                        {{"lambda", est.lambda},
                         {"window", {est.window_begin, est.window_end}},
                         {"polynomial", est.polynomial},
                         {"polynomial_order", est.polynomial_order}}}};
        txt << "oracle (" << to_string(seq.mode) << ") n<=" << seq.values.size() - 1 << ": " << seq_text(seq.values) << '\n';
        txt << "oracle lambda estimate: " << fmt(est.lambda, 6) << '\n';

        const std::size_t m = std::min(seq.values.size(), full.size());
        long first_bad = -1;
        for (std::size_t n = 0; n < m; ++n)
            if (seq.values[n] != full[n]) {
                first_bad = static_cast<long>(n);
                break;
            }
        rep.checks.push_back({"full-method-vs-oracle", "full-method d_n", "oracle d_n", "exact", first_bad < 0 && m == full.size(),
                              first_bad < 0 ? "n <= " + std::to_string(m - 1) + " agree"
                                            : "first difference at n = " + std::to_string(first_bad)});
        const double diff = std::abs(h.degree.lambda - est.lambda);
        rep.checks.push_back({"express-vs-oracle-lambda", "express lambda " + fmt(h.degree.lambda, 10),
                              "oracle estimate " + fmt(est.lambda, 10), fmt(opts.tolerance, 6), diff <= opts.tolerance,
                              "difference " + fmt(diff, 4)});
    } else {
        j["oracle"] = nullptr;
    }

    j["checks"] = nlohmann::json::array();
    for (const auto& c : rep.checks) {
        j["checks"].push_back(check_json(c));
        if (!c.pass) rep.exit_code = 3;
    }
    rep.summary = txt.str() + check_table(rep.checks);
    return rep;
}

}  // namespace singdeg
