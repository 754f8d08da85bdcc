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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "singdeg/algebra/param_field.hpp"
#include "singdeg/mapping/expr.hpp"

namespace singdeg {

/// Update A/B cleared to polynomials in x0, x1 with coefficients in
/// Z[params, n]. a[i][j] multiplies x0^i x1^j in A, likewise b for B.
struct BiForm {
    unsigned d0 = 0;  // max degree in x0 of A and B
    unsigned d1 = 0;  // max degree in x1 of A and B
    std::vector<std::vector<MPoly>> a, b;

    static BiForm from_fraction(const MPoly& num, const MPoly& den);
};

/// A second-order mapping x_{n+1} = update(x_{n-1}, x_n, n).
///
/// `direction` is +1 for the mapping as written and -1 for an inverse built
/// by invert(); in both cases x1 carries the index n and x0 is the entry one
/// step behind in the iteration direction.
struct MappingSpec {
    std::string name;
    std::vector<std::string> params;
    ExprPtr update;             // in x0, x1, params, n
    ExprPtr inverse;            // in x1, x2, params, n; may be null
    int direction = 1;

    ParamField update_field;    // reduced rational function
    BiForm form;

    std::vector<VarId> param_ids() const;
};

class MappingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parse a key = value document (name, params, update, inverse).
/// Throws ParseError for syntax and validation problems.
MappingSpec parse_mapping(std::string_view text);
MappingSpec load_mapping(const std::string& path);

/// Build a spec from parts; validates like parse_mapping.
MappingSpec make_mapping(std::string name, std::vector<std::string> params, const std::string& update,
                         const std::string& inverse = "");

/// Document that parses back to the same spec.
std::string to_document(const MappingSpec& spec);

/// Evaluate an expression over Q(params, n, ...), every symbol taken as an
/// indeterminate.
ParamField to_field(const Expr& e);

/// Backward mapping. Uses the explicit inverse if present, otherwise solves
/// the update for x0 when it is Moebius in x0. Throws MappingError when
/// neither applies or the round trip fails.
MappingSpec invert(const MappingSpec& spec);

// ------------------------------------------------------------ points

/// Point of the projective line over Q(params, ...): either a finite value
/// (v : 1) or infinity (1 : 0).
class ProjPoint {
public:
    ProjPoint() : num_(0), den_(1) {}
    static ProjPoint finite(ParamField v) { return ProjPoint(std::move(v), ParamField(1)); }
    static ProjPoint infinity() { return ProjPoint(ParamField(1), ParamField(0)); }
    /// Normalize a homogeneous pair; returns nullopt for (0, 0).
    static std::optional<ProjPoint> from_pair(const ParamField& num, const ParamField& den);

    const ParamField& num() const { return num_; }
    const ParamField& den() const { return den_; }
    bool is_infinite() const { return den_.is_zero(); }
    /// Finite value; requires !is_infinite().
    const ParamField& value() const { return num_; }
    bool operator==(const ProjPoint& o) const { return num_ == o.num_ && den_ == o.den_; }
    std::string to_string() const;

private:
    ProjPoint(ParamField n, ParamField d) : num_(std::move(n)), den_(std::move(d)) {}
    ParamField num_, den_;
};

/// Coefficients of a BiForm mapped into a ring K.
template <class K>
struct SpecializedForm {
    unsigned d0 = 0, d1 = 0;
    std::vector<std::vector<std::optional<K>>> a, b;  // nullopt for zero coefficients
};

template <class K, class Fn>
SpecializedForm<K> specialize_form(const BiForm& f, Fn&& coef) {
    SpecializedForm<K> s;
    s.d0 = f.d0;
    s.d1 = f.d1;
    auto map = [&](const std::vector<std::vector<MPoly>>& m) {
        std::vector<std::vector<std::optional<K>>> out(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) {
            out[i].resize(m[i].size());
            for (std::size_t j = 0; j < m[i].size(); ++j)
                if (!m[i][j].is_zero()) out[i][j] = coef(m[i][j]);
        }
        return out;
    };
    s.a = map(f.a);
    s.b = map(f.b);
    return s;
}

/// Bihomogeneous evaluation at (p0 : q0), (p1 : q1):
///   A_h = sum a_ij p0^i q0^(d0-i) p1^j q1^(d1-j), B_h likewise.
/// `ops` supplies add, mul and one for K.
template <class K, class Ops>
std::pair<K, K> bihom_eval(const SpecializedForm<K>& f, const K& p0, const K& q0, const K& p1, const K& q1,
                           const Ops& ops) {
    auto powers = [&](const K& x, unsigned d) {
        std::vector<K> out;
        out.reserve(d + 1);
        out.push_back(ops.one());
        for (unsigned i = 1; i <= d; ++i) out.push_back(ops.mul(out.back(), x));
        return out;
    };
    const auto P0 = powers(p0, f.d0), Q0 = powers(q0, f.d0);
    const auto P1 = powers(p1, f.d1), Q1 = powers(q1, f.d1);
    // Products p1^j q1^(d1-j) are shared between A and B.
    std::vector<std::optional<K>> mixed1(f.d1 + 1);
    auto m1 = [&](unsigned j) -> const K& {
        if (!mixed1[j]) mixed1[j] = ops.mul(P1[j], Q1[f.d1 - j]);
        return *mixed1[j];
    };
    auto form = [&](const std::vector<std::vector<std::optional<K>>>& c) {
        std::optional<K> acc;
        for (unsigned i = 0; i <= f.d0; ++i) {
            std::optional<K> row;
            for (unsigned j = 0; j <= f.d1; ++j) {
                if (!c[i][j]) continue;
                K t = ops.mul(*c[i][j], m1(j));
                row = row ? ops.add(*row, t) : t;
            }
            if (!row) continue;
            K t = ops.mul(*row, ops.mul(P0[i], Q0[f.d0 - i]));
            acc = acc ? ops.add(*acc, t) : t;
        }
        return acc ? *acc : ops.zero();
    };
    return {form(f.a), form(f.b)};
}

/// Ops for types with the usual arithmetic operators.
template <class K>
struct OperatorOps {
    K zero() const { return K(0); }
    K one() const { return K(1); }
    K add(const K& x, const K& y) const { return x + y; }
    K mul(const K& x, const K& y) const { return x * y; }
};

/// Coefficients of spec.form with n replaced by `n_value`.
SpecializedForm<ParamField> specialize_form_at(const BiForm& f, const ParamField& n_value);

/// x_{n+1} from (x_{n-1}, x_n) at index n. nullopt signals indeterminacy.
std::optional<ProjPoint> step(const MappingSpec& spec, const ProjPoint& x_prev, const ProjPoint& x_cur,
                              const ParamField& n);
inline std::optional<ProjPoint> step(const MappingSpec& spec, const ProjPoint& x_prev, const ProjPoint& x_cur,
                                     long n) {
    return step(spec, x_prev, x_cur, ParamField(n));
}

}  // namespace singdeg
