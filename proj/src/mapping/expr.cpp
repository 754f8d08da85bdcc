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

#include "singdeg/mapping/expr.hpp"

#include <cctype>
#include <sstream>

namespace singdeg {

ExprPtr Expr::make_number(const mpz_class& v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Number;
    e->number = v;
    return e;
}

ExprPtr Expr::make_symbol(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Symbol;
    e->symbol = std::move(name);
    return e;
}

ExprPtr Expr::make_neg(ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Neg;
    e->lhs = std::move(a);
    return e;
}

ExprPtr Expr::make_binary(Kind k, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

ExprPtr Expr::make_pow(ExprPtr base, long exponent) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Pow;
    e->lhs = std::move(base);
    e->exponent = exponent;
    return e;
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::Number:
            return a.number == b.number;
        case Expr::Kind::Symbol:
            return a.symbol == b.symbol;
        case Expr::Kind::Neg:
            return *a.lhs == *b.lhs;
        case Expr::Kind::Pow:
            return a.exponent == b.exponent && *a.lhs == *b.lhs;
        default:
            return *a.lhs == *b.lhs && *a.rhs == *b.rhs;
    }
}

namespace {

int precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
            return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div:
            return 2;
        case Expr::Kind::Neg:
            return 3;
        case Expr::Kind::Pow:
            return 4;
        default:
            return 5;
    }
}

void print(std::ostream& os, const Expr& e) {
    auto child = [&os](const Expr& c, bool parens) {
        if (parens) os << '(';
        print(os, c);
        if (parens) os << ')';
    };
    const int p = precedence(e);
    switch (e.kind) {
        case Expr::Kind::Number:
            os << e.number.get_str();
            return;
        case Expr::Kind::Symbol:
            os << e.symbol;
            return;
        case Expr::Kind::Neg:
            os << '-';
            child(*e.lhs, precedence(*e.lhs) < p);
            return;
        case Expr::Kind::Pow:
            child(*e.lhs, precedence(*e.lhs) <= p);
            os << '^' << e.exponent;
            return;
        default: {
            const char* op = e.kind == Expr::Kind::Add   ? " + "
                             : e.kind == Expr::Kind::Sub ? " - "
                             : e.kind == Expr::Kind::Mul ? "*"
                                                         : "/";
            child(*e.lhs, precedence(*e.lhs) < p);
            os << op;
            child(*e.rhs, precedence(*e.rhs) <= p);
        }
    }
}

void collect(const Expr& e, std::set<std::string>& out) {
    if (e.kind == Expr::Kind::Symbol) out.insert(e.symbol);
    if (e.lhs) collect(*e.lhs, out);
    if (e.rhs) collect(*e.rhs, out);
}

class Parser {
public:
    Parser(std::string_view text, std::size_t line, std::size_t offset)
        : text_(text), line_(line), offset_(offset) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, offset_ + pos_ + 1); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        while (true) {
            if (accept('+'))
                lhs = Expr::make_binary(Expr::Kind::Add, lhs, term());
            else if (accept('-'))
                lhs = Expr::make_binary(Expr::Kind::Sub, lhs, term());
            else
                return lhs;
        }
    }

    ExprPtr term() {
        ExprPtr lhs = unary();
        while (true) {
            if (accept('*'))
                lhs = Expr::make_binary(Expr::Kind::Mul, lhs, unary());
            else if (accept('/'))
                lhs = Expr::make_binary(Expr::Kind::Div, lhs, unary());
            else
                return lhs;
        }
    }

    ExprPtr unary() {
        if (accept('-')) return Expr::make_neg(unary());
        if (accept('+')) return unary();
        return power();
    }

    ExprPtr power() {
        ExprPtr base = primary();
        if (!accept('^')) return base;
        bool paren = accept('(');
        bool negative = accept('-');
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer exponent");
        if (pos_ - start > 6) fail("exponent too large");
        long k = std::stol(std::string(text_.substr(start, pos_ - start)));
        if (paren && !accept(')')) fail("expected ')'");
        return Expr::make_pow(base, negative ? -k : k);
    }

    ExprPtr primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return Expr::make_number(mpz_class(std::string(text_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            return Expr::make_symbol(std::string(text_.substr(start, pos_ - start)));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t line_, offset_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const Expr& e) {
    std::ostringstream os;
    print(os, e);
    return os.str();
}

std::set<std::string> symbols_of(const Expr& e) {
    std::set<std::string> out;
    collect(e, out);
    return out;
}

ExprPtr rename_symbol(const ExprPtr& e, const std::string& from, const std::string& to) {
    switch (e->kind) {
        case Expr::Kind::Number:
            return e;
        case Expr::Kind::Symbol:
            return e->symbol == from ? Expr::make_symbol(to) : e;
        case Expr::Kind::Neg:
            return Expr::make_neg(rename_symbol(e->lhs, from, to));
        case Expr::Kind::Pow:
            return Expr::make_pow(rename_symbol(e->lhs, from, to), e->exponent);
        default:
            return Expr::make_binary(e->kind, rename_symbol(e->lhs, from, to), rename_symbol(e->rhs, from, to));
    }
}

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

ExprPtr parse_expression(std::string_view text, std::size_t line, std::size_t column_offset) {
    return Parser(text, line, column_offset).parse();
}

}  // namespace singdeg
