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

#include "singdeg/singularity/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace singdeg {

namespace {

long add_prec(long a, long b) {
    if (a == LaurentSeries::kExact || b == LaurentSeries::kExact) return LaurentSeries::kExact;
    return a + b;
}

}  // namespace

LaurentSeries LaurentSeries::monomial(const ParamField& c, long e) {
    LaurentSeries s;
    s.val_ = e;
    s.coefs_ = {c};
    s.normalize();
    return s;
}

LaurentSeries LaurentSeries::from_terms(long val, std::vector<ParamField> coefs, long precision) {
    LaurentSeries s;
    s.val_ = val;
    s.coefs_ = std::move(coefs);
    s.prec_ = precision;
    s.normalize();
    return s;
}

void LaurentSeries::normalize() {
    std::size_t lead = 0;
    while (lead < coefs_.size() && coefs_[lead].is_zero()) ++lead;
    if (lead) {
        coefs_.erase(coefs_.begin(), coefs_.begin() + static_cast<long>(lead));
        val_ += static_cast<long>(lead);
    }
    if (prec_ != kExact) {
        const long keep = std::max(0L, prec_ - val_);
        if (static_cast<long>(coefs_.size()) > keep) coefs_.resize(static_cast<std::size_t>(keep));
    }
    while (!coefs_.empty() && coefs_.back().is_zero()) coefs_.pop_back();
    if (coefs_.empty()) val_ = 0;
}

long LaurentSeries::lower() const { return has_leading() ? val_ : prec_; }

long LaurentSeries::valuation() const {
    if (!has_leading()) throw InsufficientDepth();
    return val_;
}

const ParamField& LaurentSeries::leading() const {
    if (!has_leading()) throw InsufficientDepth();
    return coefs_.front();
}

ParamField LaurentSeries::coef(long e) const {
    if (e >= prec_) throw InsufficientDepth();
    if (coefs_.empty() || e < val_ || e >= val_ + static_cast<long>(coefs_.size())) return ParamField();
    return coefs_[static_cast<std::size_t>(e - val_)];
}

LaurentSeries LaurentSeries::operator-() const {
    LaurentSeries r = *this;
    for (auto& c : r.coefs_) c = -c;
    return r;
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
    LaurentSeries r;
    r.prec_ = std::min(prec_, o.prec_);
    if (coefs_.empty() && o.coefs_.empty()) return r;
    long start = kExact, end = 0;
    for (const LaurentSeries* s : {this, &o}) {
        if (s->coefs_.empty()) continue;
        start = std::min(start, s->val_);
        end = std::max(end, s->val_ + static_cast<long>(s->coefs_.size()));
    }
    if (r.prec_ != kExact) end = std::min(end, r.prec_);
    r.val_ = start;
    for (long e = start; e < end; ++e) r.coefs_.push_back(coef(e) + o.coef(e));
    r.normalize();
    return r;
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const { return *this + (-o); }

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
    if (is_exact_zero() || o.is_exact_zero()) return LaurentSeries();
    LaurentSeries r;
    r.prec_ = std::min(add_prec(prec_, o.lower()), add_prec(o.prec_, lower()));
    if (coefs_.empty() || o.coefs_.empty()) return r;
    r.val_ = val_ + o.val_;
    long limit = static_cast<long>(coefs_.size() + o.coefs_.size()) - 1;
    if (r.prec_ != kExact) limit = std::min(limit, r.prec_ - r.val_);
    if (limit <= 0) return big_o(r.prec_);
    r.coefs_.assign(static_cast<std::size_t>(limit), ParamField());
    for (std::size_t i = 0; i < coefs_.size() && static_cast<long>(i) < limit; ++i)
        for (std::size_t j = 0; j < o.coefs_.size() && static_cast<long>(i + j) < limit; ++j)
            r.coefs_[i + j] += coefs_[i] * o.coefs_[j];
    r.normalize();
    return r;
}

LaurentSeries LaurentSeries::scaled(const ParamField& c) const {
    if (c.is_zero()) return LaurentSeries();
    return map_coefficients([&](const ParamField& x) { return x * c; });
}

LaurentSeries LaurentSeries::inverse(long depth) const {
    if (is_exact_zero()) throw std::domain_error("inverse of the zero series");
    if (!has_leading()) throw InsufficientDepth();
    if (is_exact() && coefs_.size() == 1) return monomial(coefs_[0].inverse(), -val_);
    const long rel = is_exact() ? depth : std::min(depth, prec_ - val_);
    const ParamField b0 = coefs_[0].inverse();
    std::vector<ParamField> b{b0};
    for (long k = 1; k < rel; ++k) {
        ParamField s;
        for (long i = 1; i <= k && i < static_cast<long>(coefs_.size()); ++i)
            s += coefs_[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(k - i)];
        b.push_back(-s * b0);
    }
    return from_terms(-val_, std::move(b), -val_ + rel);
}

LaurentSeries LaurentSeries::truncated(long abs_prec) const {
    if (abs_prec >= prec_) return *this;
    return from_terms(val_, coefs_, abs_prec);
}

std::string LaurentSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coefs_.size(); ++i) {
        if (coefs_[i].is_zero()) continue;
        const long e = val_ + static_cast<long>(i);
        if (!first) os << " + ";
        first = false;
        os << '(' << coefs_[i].to_string() << ')';
        if (e != 0) os << "*eps^" << e;
    }
    if (prec_ != kExact) os << (first ? "" : " + ") << "O(eps^" << prec_ << ')';
    if (first && prec_ == kExact) os << '0';
    return os.str();
}

LaurentSeries divide(const LaurentSeries& a, const LaurentSeries& b, long depth) { return a * b.inverse(depth); }

}  // namespace singdeg
