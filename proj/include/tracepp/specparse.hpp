/**************************************************************************
 * specparse.hpp
 *
 * Copyright 2026 The tracepp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

/*
 * Family text grammar (whitespace is insignificant):
 *
 *   family   := "X" ( "+" coef? "X^q" )? ( "+" coef? "g*Tr(" hterms ")" )?
 *   hterms   := hterm ( "+" hterm )*
 *   hterm    := coef? "X^{" exponent "}"
 *   exponent := ( "(" sum ")" | sum ) ( "/2" )? ( "*2^" int )?
 *   sum      := "-"? prod ( ( "+" | "-" ) prod )*
 *   prod     := int | int? "q" ( "^" int )?
 *   coef     := hex | hex ":" hex ":" hex | "a" | "g" | "c1" | "c2" | "c3" | "c4"
 *
 * hex literals start with 0x; the triple form is an F_{q^3} literal c2:c1:c0.
 * "/2" halves the whole sum (modular inverse of 2), "*2^j" multiplies by 2^j.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "family.hpp"

namespace tracepp {

namespace detail {

enum class Tok { End, Plus, Minus, Star, Caret, Slash, LParen, RParen, LBrace, RBrace, Int, Hex, Ident };

struct Token {
    Tok kind = Tok::End;
    std::size_t offset = 0;
    std::string_view text;
    std::uint64_t value = 0;      // Int
    ExtElement literal{};         // Hex
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            while (pos_ < src_.size() && is_space(src_[pos_]))
                ++pos_;
            Token t;
            t.offset = pos_;
            if (pos_ >= src_.size()) {
                out.push_back(t);
                return out;
            }
            const char c = src_[pos_];
            switch (c) {
            case '+': t.kind = Tok::Plus; break;
            case '-': t.kind = Tok::Minus; break;
            case '*': t.kind = Tok::Star; break;
            case '^': t.kind = Tok::Caret; break;
            case '/': t.kind = Tok::Slash; break;
            case '(': t.kind = Tok::LParen; break;
            case ')': t.kind = Tok::RParen; break;
            case '{': t.kind = Tok::LBrace; break;
            case '}': t.kind = Tok::RBrace; break;
            default: break;
            }
            if (t.kind != Tok::End) {
                t.text = src_.substr(pos_, 1);
                ++pos_;
            } else if (c == '0' && pos_ + 1 < src_.size() && (src_[pos_ + 1] == 'x' || src_[pos_ + 1] == 'X')) {
                lex_hex(t);
            } else if (is_digit(c)) {
                lex_int(t);
            } else if (auto kw = keyword_at(pos_); !kw.empty()) {
                // keywords lex without separators, so "c1X^{1}" reads as "c1 X^{1}"
                t.kind = Tok::Ident;
                t.text = kw;
                pos_ += kw.size();
            } else {
                throw ParseError(pos_, {}, "unexpected character (byte " +
                                               std::to_string(static_cast<unsigned char>(c)) + ")");
            }
            out.push_back(t);
        }
    }

private:
    static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    std::string_view keyword_at(std::size_t p) const {
        static constexpr std::string_view keywords[] = {"Tr", "c1", "c2", "c3", "c4", "X", "q", "g", "a"};
        const std::string_view rest = src_.substr(p);
        for (auto kw : keywords)
            if (rest.starts_with(kw))
                return rest.substr(0, kw.size());
        return {};
    }

    static bool is_hex(char c) { return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F'); }

    void lex_int(Token& t) {
        const std::size_t start = pos_;
        std::uint64_t v = 0;
        while (pos_ < src_.size() && is_digit(src_[pos_])) {
            if (pos_ - start >= 15)
                throw ParseError(start, {}, "integer literal too long");
            v = v * 10 + static_cast<std::uint64_t>(src_[pos_] - '0');
            ++pos_;
        }
        t.kind = Tok::Int;
        t.value = v;
        t.text = src_.substr(start, pos_ - start);
    }

    std::uint32_t hex_part(bool prefix_required) {
        const std::size_t start = pos_;
        if (pos_ + 1 < src_.size() && src_[pos_] == '0' && (src_[pos_ + 1] == 'x' || src_[pos_ + 1] == 'X'))
            pos_ += 2;
        else if (prefix_required)
            throw ParseError(pos_, {"0x"}, "expected hex literal");
        const std::size_t digits = pos_;
        std::uint32_t v = 0;
        while (pos_ < src_.size() && is_hex(src_[pos_])) {
            if (pos_ - digits >= 8)
                throw ParseError(start, {}, "hex literal wider than 32 bits");
            const char c = src_[pos_];
            const std::uint32_t d = is_digit(c) ? c - '0' : (c | 0x20) - 'a' + 10;
            v = (v << 4) | d;
            ++pos_;
        }
        if (pos_ == digits)
            throw ParseError(pos_, {"hex digit"}, "empty hex literal");
        return v;
    }

    void lex_hex(Token& t) {
        const std::size_t start = pos_;
        std::uint32_t parts[3] = {hex_part(true), 0, 0};
        int n = 1;
        while (n < 3 && pos_ < src_.size() && src_[pos_] == ':') {
            ++pos_;
            parts[n++] = hex_part(false);
        }
        if (n == 2)
            throw ParseError(pos_, {":"}, "F_{q^3} literal needs three coordinates c2:c1:c0");
        t.kind = Tok::Hex;
        t.literal = n == 1 ? ExtElement{FieldElement{parts[0]}, {}, {}}
                           : ExtElement{FieldElement{parts[2]}, FieldElement{parts[1]}, FieldElement{parts[0]}};
        t.text = src_.substr(start, pos_ - start);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(Lexer(src).run()) {}

    FamilySpec family() {
        FamilySpec spec;
        expect_ident("X");
        bool seen_q = false;
        while (peek().kind == Tok::Plus && !spec.has_trace) {
            next();
            std::optional<Coef> c;
            if (!at_trace_start() && !at_ident("X"))
                c = coef();
            if (at_trace_start()) {
                next(); // g
                next(); // *
                expect_ident("Tr");
                expect(Tok::LParen, "(");
                spec.has_trace = true;
                if (c)
                    spec.gamma_factor = *c;
                spec.h = hterms();
                expect(Tok::RParen, ")");
            } else if (!seen_q && at_ident("X")) {
                next();
                expect(Tok::Caret, "^");
                expect_ident("q");
                seen_q = true;
                spec.a_coeff = c ? *c : literal(1);
            } else {
                fail(seen_q ? std::vector<std::string>{"g*Tr("} : std::vector<std::string>{"X^q", "g*Tr("},
                     "expected a term of L(X) or the trace part");
            }
        }
        if (peek().kind != Tok::End)
            fail({spec.has_trace ? "end of input" : "+"}, "trailing input");
        normalize(spec);
        return spec;
    }

    ExponentExpr exponent_only() {
        ExponentExpr e = exponent();
        if (peek().kind != Tok::End)
            fail({"end of input"}, "trailing input after exponent");
        return e;
    }

private:
    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    [[noreturn]] void fail(std::vector<std::string> expected, const std::string& what) const {
        throw ParseError(peek().offset, std::move(expected), what);
    }

    void expect(Tok kind, const char* spelled) {
        if (peek().kind != kind)
            fail({spelled}, "unexpected token");
        next();
    }

    bool at_ident(std::string_view name, std::size_t k = 0) const {
        return peek(k).kind == Tok::Ident && peek(k).text == name;
    }

    void expect_ident(std::string_view name) {
        if (!at_ident(name))
            fail({std::string(name)}, "unexpected token");
        next();
    }

    bool at_trace_start() const { return at_ident("g") && peek(1).kind == Tok::Star; }

    Coef coef() {
        const Token& t = peek();
        if (t.kind == Tok::Hex) {
            next();
            return t.literal;
        }
        if (t.kind == Tok::Ident)
            if (auto s = symbol_from_name(t.text)) {
                next();
                return *s;
            }
        fail({"0x..", "a", "g", "c1", "c2", "c3", "c4", "X"}, "expected a coefficient");
    }

    std::vector<HTerm> hterms() {
        std::vector<HTerm> out;
        out.push_back(hterm());
        while (peek().kind == Tok::Plus) {
            next();
            out.push_back(hterm());
        }
        return out;
    }

    HTerm hterm() {
        HTerm t;
        if (!at_ident("X"))
            t.coef = coef();
        expect_ident("X");
        expect(Tok::Caret, "^");
        expect(Tok::LBrace, "{");
        t.exponent = exponent();
        expect(Tok::RBrace, "}");
        return t;
    }

    ExponentExpr exponent() {
        const std::size_t start = peek().offset;
        ExponentExpr e;
        if (peek().kind == Tok::LParen) {
            next();
            e.coeffs = sum();
            expect(Tok::RParen, ")");
        } else {
            e.coeffs = sum();
        }
        if (peek().kind == Tok::Slash) {
            next();
            if (peek().kind != Tok::Int || peek().value != 2)
                fail({"2"}, "only halving (/2) is supported");
            next();
            e.halve = true;
        }
        if (peek().kind == Tok::Star) {
            next();
            if (peek().kind != Tok::Int || peek().value != 2)
                fail({"2"}, "twist must be written *2^j");
            next();
            expect(Tok::Caret, "^");
            if (peek().kind != Tok::Int)
                fail({"integer"}, "expected twist exponent");
            e.twist = static_cast<unsigned>(next().value);
        }
        if (e.is_zero_polynomial())
            throw ExprInvalid("exponent is the zero polynomial in q", start);
        return e;
    }

    std::array<std::int64_t, 4> sum() {
        std::array<std::int64_t, 4> c{};
        bool negative = false;
        if (peek().kind == Tok::Minus) {
            next();
            negative = true;
        }
        for (;;) {
            auto [k, v] = prod();
            c[k] += negative ? -v : v;
            if (peek().kind == Tok::Plus) {
                next();
                negative = false;
            } else if (peek().kind == Tok::Minus) {
                next();
                negative = true;
            } else {
                return c;
            }
        }
    }

    std::pair<int, std::int64_t> prod() {
        std::int64_t coeff = 1;
        bool have_int = false;
        if (peek().kind == Tok::Int) {
            coeff = static_cast<std::int64_t>(next().value);
            have_int = true;
        }
        if (!at_ident("q")) {
            if (!have_int)
                fail({"integer", "q", "(", "-"}, "expected an exponent term");
            return {0, coeff};
        }
        next();
        int power = 1;
        if (peek().kind == Tok::Caret) {
            next();
            if (peek().kind != Tok::Int)
                fail({"integer"}, "expected a power of q");
            if (peek().value > 3)
                fail({"0", "1", "2", "3"}, "powers of q above 3 are not supported");
            power = static_cast<int>(next().value);
        }
        return {power, coeff};
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

inline std::string print_sum(const std::array<std::int64_t, 4>& c) {
    std::string s;
    for (int k = 3; k >= 0; --k) {
        const std::int64_t v = c[k];
        if (v == 0)
            continue;
        if (v < 0)
            s += "-";
        else if (!s.empty())
            s += "+";
        const std::uint64_t mag = v < 0 ? static_cast<std::uint64_t>(-v) : static_cast<std::uint64_t>(v);
        if (k == 0 || mag != 1)
            s += std::to_string(mag);
        if (k >= 1)
            s += k == 1 ? "q" : "q^" + std::to_string(k);
    }
    return s;
}

inline std::string print_coef(const Coef& c) {
    if (auto s = std::get_if<Symbol>(&c))
        return std::string(symbol_name(*s));
    const auto& e = std::get<ExtElement>(c);
    if (e.in_base_field())
        return to_hex(e.c0);
    return to_hex(e.c2) + ":" + to_hex(e.c1) + ":" + to_hex(e.c0);
}

} // namespace detail

inline FamilySpec parse_family(std::string_view text) { return detail::Parser(text).family(); }

inline ExponentExpr parse_exponent(std::string_view text) { return detail::Parser(text).exponent_only(); }

inline std::string print_exponent(const ExponentExpr& e) {
    std::string s = detail::print_sum(e.coeffs);
    if (e.halve || e.twist)
        s = "(" + s + ")";
    if (e.halve)
        s += "/2";
    if (e.twist)
        s += "*2^" + std::to_string(e.twist);
    return s;
}

/// Canonical text; parse(print_family(s)) == s once s is normalized.
inline std::string print_family(const FamilySpec& spec) {
    std::string s = "X";
    if (spec.a_coeff) {
        s += " + ";
        if (!is_literal_one(*spec.a_coeff))
            s += detail::print_coef(*spec.a_coeff) + " ";
        s += "X^q";
    }
    if (spec.has_trace) {
        s += " + ";
        if (!is_literal_one(spec.gamma_factor))
            s += detail::print_coef(spec.gamma_factor) + " ";
        s += "g*Tr(";
        FamilySpec sorted = spec;
        normalize(sorted);
        for (std::size_t i = 0; i < sorted.h.size(); ++i) {
            if (i)
                s += " + ";
            if (!is_literal_one(sorted.h[i].coef))
                s += detail::print_coef(sorted.h[i].coef) + " ";
            s += "X^{" + print_exponent(sorted.h[i].exponent) + "}";
        }
        s += ")";
    }
    return s;
}

} // namespace tracepp
