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

#include "singdeg/mapping/mapping.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace singdeg {

namespace {

bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Where an expression came from, for error positions.
struct Source {
    std::string text;
    std::size_t line = 0;
    std::size_t column = 0;  // 0-based offset of text within its line
};

// 1-based column of the first whole-word occurrence of `word` in src.
std::size_t column_of(const Source& src, const std::string& word) {
    const std::string& t = src.text;
    for (std::size_t pos = t.find(word); pos != std::string::npos; pos = t.find(word, pos + 1)) {
        auto word_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
        bool left = pos == 0 || !word_char(t[pos - 1]);
        bool right = pos + word.size() >= t.size() || !word_char(t[pos + word.size()]);
        if (left && right) return src.column + pos + 1;
    }
    return src.column + 1;
}

ExprPtr parse_checked(const Source& src, const std::set<std::string>& allowed, const char* what) {
    ExprPtr e = parse_expression(src.text, src.line, src.column);
    for (const auto& s : symbols_of(*e))
        if (!allowed.count(s))
            throw ParseError("undeclared symbol '" + s + "' in " + what, src.line, column_of(src, s));
    return e;
}

MappingSpec build(std::string name, std::vector<std::string> params, ExprPtr update, ExprPtr inverse,
                  const Source& update_src, const Source& inverse_src) {
    MappingSpec spec;
    spec.name = std::move(name);
    spec.params = std::move(params);
    for (const auto& p : spec.params) intern(p);
    spec.update = std::move(update);
    spec.inverse = std::move(inverse);
    try {
        spec.update_field = to_field(*spec.update);
    } catch (const DivisionByZero&) {
        throw ParseError("update divides by zero", update_src.line, update_src.column + 1);
    }
    if (!spec.update_field.contains(sym::x0()))
        throw ParseError("update is independent of x0", update_src.line, update_src.column + 1);
    spec.form = BiForm::from_fraction(spec.update_field.num(), spec.update_field.den());
    if (spec.inverse) {
        bool ok = false;
        try {
            ParamField inv = to_field(*spec.inverse);
            ok = spec.update_field.substitute(sym::x0(), inv) == ParamField::symbol(sym::x2());
        } catch (const DivisionByZero&) {
            ok = false;
        }
        if (!ok) throw ParseError("inverse fails the round-trip check", inverse_src.line, inverse_src.column + 1);
    }
    return spec;
}

std::set<std::string> allowed_symbols(const std::vector<std::string>& params, const char* a, const char* b) {
    std::set<std::string> out(params.begin(), params.end());
    out.insert({a, b, "n"});
    return out;
}

std::vector<std::string> parse_params(const Source& src) {
    std::vector<std::string> out;
    std::size_t start = 0;
    const std::string& t = src.text;
    if (trim(t).empty()) return out;
    while (true) {
        std::size_t comma = t.find(',', start);
        std::string_view item = trim(std::string_view(t).substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        std::string name(item);
        const std::size_t col = src.column + start + 1;
        if (!is_identifier(name)) throw ParseError("invalid parameter name '" + name + "'", src.line, col);
        if (is_reserved_symbol(name)) throw ParseError("parameter name '" + name + "' is reserved", src.line, col);
        if (std::find(out.begin(), out.end(), name) != out.end())
            throw ParseError("duplicate parameter '" + name + "'", src.line, col);
        out.push_back(name);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

BiForm BiForm::from_fraction(const MPoly& num, const MPoly& den) {
    BiForm f;
    f.d0 = std::max(num.degree(sym::x0()), den.degree(sym::x0()));
    f.d1 = std::max(num.degree(sym::x1()), den.degree(sym::x1()));
    auto split = [&](const MPoly& p) {
        std::vector<std::vector<MPoly>> m(f.d0 + 1, std::vector<MPoly>(f.d1 + 1));
        auto rows = p.coefficients_in(sym::x0());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            auto cols = rows[i].coefficients_in(sym::x1());
            for (std::size_t j = 0; j < cols.size(); ++j) m[i][j] = cols[j];
        }
        return m;
    };
    f.a = split(num);
    f.b = split(den);
    return f;
}

std::vector<VarId> MappingSpec::param_ids() const {
    std::vector<VarId> out;
    for (const auto& p : params) out.push_back(intern(p));
    return out;
}

ParamField to_field(const Expr& e) {
    return evaluate<ParamField>(
        e, [](const std::string& s) { return ParamField::symbol(s); },
        [](const mpz_class& c) { return ParamField(c); });
}

MappingSpec parse_mapping(std::string_view text) {
    std::optional<std::string> name;
    std::optional<Source> params, update, inverse;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        start = end + 1;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no, 1);
        const std::string key(trim(line.substr(0, eq)));
        Source value;
        value.text = std::string(line.substr(eq + 1));
        value.line = line_no;
        value.column = eq + 1;
        auto once = [&](auto& slot) {
            if (slot) throw ParseError("duplicate key '" + key + "'", line_no, 1);
        };
        if (key == "name") {
            once(name);
            name = std::string(trim(value.text));
            if (name->empty()) throw ParseError("empty name", line_no, eq + 2);
        } else if (key == "params") {
            once(params);
            params = value;
        } else if (key == "update") {
            once(update);
            update = value;
        } else if (key == "inverse") {
            once(inverse);
            inverse = value;
        } else {
            throw ParseError("unknown key '" + key + "'", line_no, 1);
        }
        if (end == text.size()) break;
    }
    if (!update) throw ParseError("missing 'update'", line_no, 1);
    std::vector<std::string> ps = params ? parse_params(*params) : std::vector<std::string>{};
    ExprPtr up = parse_checked(*update, allowed_symbols(ps, "x0", "x1"), "update");
    ExprPtr inv = inverse ? parse_checked(*inverse, allowed_symbols(ps, "x1", "x2"), "inverse") : nullptr;
    return build(name.value_or("mapping"), std::move(ps), up, inv, *update, inverse.value_or(Source{}));
}

MappingSpec load_mapping(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MappingError("cannot read mapping file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_mapping(ss.str());
}

MappingSpec make_mapping(std::string name, std::vector<std::string> params, const std::string& update,
                         const std::string& inverse) {
    std::ostringstream doc;
    doc << "name = " << name << "\n";
    if (!params.empty()) {
        doc << "params = ";
        for (std::size_t i = 0; i < params.size(); ++i) doc << (i ? ", " : "") << params[i];
        doc << "\n";
    }
    doc << "update = " << update << "\n";
    if (!inverse.empty()) doc << "inverse = " << inverse << "\n";
    return parse_mapping(doc.str());
}

std::string to_document(const MappingSpec& spec) {
    std::ostringstream doc;
    doc << "name = " << spec.name << "\n";
    if (!spec.params.empty()) {
        doc << "params = ";
        for (std::size_t i = 0; i < spec.params.size(); ++i) doc << (i ? ", " : "") << spec.params[i];
        doc << "\n";
    }
    doc << "update = " << to_string(*spec.update) << "\n";
    if (spec.inverse) doc << "inverse = " << to_string(*spec.inverse) << "\n";
    return doc.str();
}

MappingSpec invert(const MappingSpec& spec) {
    ExprPtr new_update, new_inverse;
    if (spec.inverse) {
        new_update = rename_symbol(spec.inverse, "x2", "x0");
    } else {
        const MPoly& A = spec.update_field.num();
        const MPoly& B = spec.update_field.den();
        if (A.degree(sym::x0()) > 1 || B.degree(sym::x0()) > 1)
            throw MappingError("cannot auto-invert '" + spec.name + "': update is not Moebius in x0");
        auto ca = A.coefficients_in(sym::x0());
        auto cb = B.coefficients_in(sym::x0());
        ca.resize(2);
        cb.resize(2);
        // x2 = (a1 x0 + a0)/(b1 x0 + b0)  =>  x0 = (a0 - b0 x2)/(b1 x2 - a1)
        const MPoly x = MPoly::var(sym::x0());  // x2 renamed to x0 directly
        ParamField solved = ParamField::normalize(ca[0] - cb[0] * x, cb[1] * x - ca[1]);
        new_update = parse_expression(solved.to_string());
    }
    new_inverse = rename_symbol(spec.update, "x0", "x2");
    MappingSpec out;
    try {
        std::set<std::string> allowed_up = allowed_symbols(spec.params, "x0", "x1");
        for (const auto& s : symbols_of(*new_update))
            if (!allowed_up.count(s)) throw MappingError("inverse uses undeclared symbol '" + s + "'");
        out = build(spec.name + "_inv", spec.params, new_update, new_inverse, Source{}, Source{});
    } catch (const ParseError& e) {
        throw MappingError("cannot invert '" + spec.name + "': " + e.what());
    }
    out.direction = -spec.direction;
    return out;
}

std::optional<ProjPoint> ProjPoint::from_pair(const ParamField& num, const ParamField& den) {
    if (den.is_zero()) {
        if (num.is_zero()) return std::nullopt;
        return infinity();
    }
    return finite(num / den);
}

std::string ProjPoint::to_string() const { return is_infinite() ? "inf" : num_.to_string(); }

SpecializedForm<ParamField> specialize_form_at(const BiForm& f, const ParamField& n_value) {
    const bool symbolic = n_value == ParamField::symbol(sym::n());
    return specialize_form<ParamField>(f, [&](const MPoly& c) {
        ParamField v(c);
        return symbolic ? v : v.substitute(sym::n(), n_value);
    });
}

std::optional<ProjPoint> step(const MappingSpec& spec, const ProjPoint& x_prev, const ProjPoint& x_cur,
                              const ParamField& n) {
    const auto sf = specialize_form_at(spec.form, n);
    auto [A, B] = bihom_eval(sf, x_prev.num(), x_prev.den(), x_cur.num(), x_cur.den(), OperatorOps<ParamField>{});
    return ProjPoint::from_pair(A, B);
}

}  // namespace singdeg
