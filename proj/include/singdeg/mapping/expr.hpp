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

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace singdeg {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree for rational update rules.
struct Expr {
    enum class Kind { Number, Symbol, Neg, Add, Sub, Mul, Div, Pow };

    Kind kind;
    mpz_class number;      // Number (nonnegative)
    std::string symbol;    // Symbol
    ExprPtr lhs, rhs;      // operands; Neg and Pow use lhs only
    long exponent = 0;     // Pow

    static ExprPtr make_number(const mpz_class& v);
    static ExprPtr make_symbol(std::string name);
    static ExprPtr make_neg(ExprPtr a);
    static ExprPtr make_binary(Kind k, ExprPtr a, ExprPtr b);
    static ExprPtr make_pow(ExprPtr base, long exponent);
};

bool operator==(const Expr& a, const Expr& b);

/// Text that parses back to an identical tree.
std::string to_string(const Expr& e);

/// Symbols referenced anywhere in e.
std::set<std::string> symbols_of(const Expr& e);

/// Replace symbol `from` by symbol `to`.
ExprPtr rename_symbol(const ExprPtr& e, const std::string& from, const std::string& to);

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

/// Parse an expression: integers, identifiers, + - * / and ^ with an integer
/// exponent, unary minus, parentheses. Columns in errors are 1-based and
/// offset by `column_offset`.
ExprPtr parse_expression(std::string_view text, std::size_t line = 1, std::size_t column_offset = 0);

/// Evaluate e in any field-like type T. `leaf` maps symbol names to T and
/// `constant` maps integers to T.
template <class T, class Leaf, class Const>
T evaluate(const Expr& e, Leaf&& leaf, Const&& constant) {
    switch (e.kind) {
        case Expr::Kind::Number:
            return constant(e.number);
        case Expr::Kind::Symbol:
            return leaf(e.symbol);
        case Expr::Kind::Neg:
            return constant(mpz_class(0)) - evaluate<T>(*e.lhs, leaf, constant);
        case Expr::Kind::Add:
            return evaluate<T>(*e.lhs, leaf, constant) + evaluate<T>(*e.rhs, leaf, constant);
        case Expr::Kind::Sub:
            return evaluate<T>(*e.lhs, leaf, constant) - evaluate<T>(*e.rhs, leaf, constant);
        case Expr::Kind::Mul:
            return evaluate<T>(*e.lhs, leaf, constant) * evaluate<T>(*e.rhs, leaf, constant);
        case Expr::Kind::Div:
            return evaluate<T>(*e.lhs, leaf, constant) / evaluate<T>(*e.rhs, leaf, constant);
        case Expr::Kind::Pow: {
            T base = evaluate<T>(*e.lhs, leaf, constant);
            long k = e.exponent;
            if (k < 0) {
                base = constant(mpz_class(1)) / base;
                k = -k;
            }
            T acc = constant(mpz_class(1));
            while (k) {
                if (k & 1) acc = acc * base;
                k >>= 1;
                if (k) base = base * base;
            }
            return acc;
        }
    }
    throw std::logic_error("unreachable expression kind");
}

}  // namespace singdeg
