/**************************************************************************
 * gf2m.hpp
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

#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace tracepp {

/// Element of F_{2^m}: coordinates in the polynomial basis, packed into a bitmask.
struct FieldElement {
    std::uint32_t value = 0;

    constexpr FieldElement() = default;
    constexpr explicit FieldElement(std::uint32_t v) : value(v) {}

    constexpr bool is_zero() const noexcept { return value == 0; }
    constexpr auto operator<=>(const FieldElement&) const = default;
};

namespace poly2 {

/// Degree of a binary polynomial given as a bitmask; -1 for the zero polynomial.
constexpr int degree(std::uint64_t p) noexcept {
    return p == 0 ? -1 : 63 - std::countl_zero(p);
}

/// Carryless product.
constexpr std::uint64_t clmul(std::uint32_t a, std::uint32_t b) noexcept {
    std::uint64_t r = 0;
    std::uint64_t aa = a;
    while (b) {
        if (b & 1u)
            r ^= aa;
        aa <<= 1;
        b >>= 1;
    }
    return r;
}

constexpr std::uint64_t mod(std::uint64_t a, std::uint64_t m) noexcept {
    const int dm = degree(m);
    for (int da = degree(a); da >= dm; da = degree(a))
        a ^= m << (da - dm);
    return a;
}

/// Irreducibility over F_2 by trial division with every polynomial of degree <= deg/2.
constexpr bool is_irreducible(std::uint64_t p) noexcept {
    const int d = degree(p);
    if (d < 1)
        return false;
    if (d == 1)
        return true;
    for (std::uint64_t g = 2; degree(g) <= d / 2; ++g)
        if (mod(p, g) == 0)
            return false;
    return true;
}

} // namespace poly2

/// Arithmetic context for F_q, q = 2^m, 1 <= m <= 16. Immutable once built.
class FieldParams {
public:
    static constexpr unsigned max_degree = 16;
    static constexpr unsigned max_table_degree = 8;

    unsigned m() const noexcept { return m_; }
    std::uint32_t modulus() const noexcept { return modulus_; }
    std::uint32_t q() const noexcept { return q_; }
    std::uint32_t mask() const noexcept { return q_ - 1; }
    bool uses_tables() const noexcept { return tables_ != nullptr; }

    bool contains(FieldElement a) const noexcept { return a.value < q_; }
    FieldElement zero() const noexcept { return FieldElement{0}; }
    FieldElement one() const noexcept { return FieldElement{1}; }

    FieldElement add(FieldElement a, FieldElement b) const noexcept {
        return FieldElement{a.value ^ b.value};
    }

    FieldElement mul(FieldElement a, FieldElement b) const noexcept {
        if (tables_) {
            if (a.value == 0 || b.value == 0)
                return FieldElement{0};
            const auto& t = *tables_;
            return FieldElement{t.exp[t.log[a.value] + t.log[b.value]]};
        }
        return mul_clmul(a, b);
    }

    /// Schoolbook carryless multiply followed by reduction; the table path is checked against it.
    FieldElement mul_clmul(FieldElement a, FieldElement b) const noexcept {
        return FieldElement{static_cast<std::uint32_t>(poly2::mod(poly2::clmul(a.value, b.value), modulus_))};
    }

    FieldElement sqr(FieldElement a) const noexcept { return mul(a, a); }

    FieldElement pow(FieldElement a, std::uint64_t e) const noexcept {
        FieldElement r = one();
        FieldElement b = a;
        while (e) {
            if (e & 1u)
                r = mul(r, b);
            b = sqr(b);
            e >>= 1;
        }
        return r;
    }

    FieldElement inv(FieldElement a) const {
        if (a.is_zero())
            throw DivisionByZero("inverse of zero in F_2^" + std::to_string(m_));
        if (tables_) {
            const auto& t = *tables_;
            return FieldElement{t.exp[(q_ - 1 - t.log[a.value]) % (q_ - 1)]};
        }
        return pow(a, q_ - 2);
    }

    FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

    /// Unique square root (Frobenius over F_2 is bijective): a^(2^(m-1)).
    FieldElement sqrt(FieldElement a) const noexcept {
        for (unsigned i = 1; i < m_; ++i)
            a = sqr(a);
        return a;
    }

    friend FieldParams make_field(unsigned m, std::optional<std::uint32_t> modulus);

private:
    struct LogTables {
        std::vector<std::uint32_t> exp; // doubled so exp[i + j] needs no reduction
        std::vector<std::uint32_t> log;
    };

    FieldParams(unsigned m, std::uint32_t modulus) : m_(m), modulus_(modulus), q_(1u << m) {
        if (m_ <= max_table_degree)
            tables_ = build_tables();
    }

    std::shared_ptr<const LogTables> build_tables() const {
        auto t = std::make_shared<LogTables>();
        const std::uint32_t order = q_ - 1;
        t->exp.assign(2 * order + 1, 0);
        t->log.assign(q_, 0);
        // smallest generator of the multiplicative group, found with the carryless path
        for (std::uint32_t g = (q_ == 2 ? 1 : 2); g < q_; ++g) {
            std::uint32_t x = 1;
            std::uint32_t period = 0;
            do {
                x = mul_clmul(FieldElement{x}, FieldElement{g}).value;
                ++period;
            } while (x != 1 && period <= order);
            if (period != order)
                continue;
            x = 1;
            for (std::uint32_t i = 0; i < order; ++i) {
                t->exp[i] = x;
                t->log[x] = i;
                x = mul_clmul(FieldElement{x}, FieldElement{g}).value;
            }
            for (std::uint32_t i = order; i < t->exp.size(); ++i)
                t->exp[i] = t->exp[i - order];
            return t;
        }
        throw InternalError("no generator for F_2^" + std::to_string(m_) + " under modulus " +
                            std::to_string(modulus_));
    }

    unsigned m_;
    std::uint32_t modulus_;
    std::uint32_t q_;
    std::shared_ptr<const LogTables> tables_;
};

/// Smallest irreducible degree-m bitmask. For m = 1 this is t (0b10).
inline std::uint32_t default_modulus(unsigned m) {
    if (m < 1 || m > FieldParams::max_degree)
        throw ModulusInvalid("field degree m=" + std::to_string(m) + " outside 1..16");
    for (std::uint32_t p = 1u << m; p < (2u << m); ++p)
        if (poly2::is_irreducible(p))
            return p;
    throw InternalError("no irreducible polynomial of degree " + std::to_string(m));
}

inline FieldParams make_field(unsigned m, std::optional<std::uint32_t> modulus = std::nullopt) {
    if (m < 1 || m > FieldParams::max_degree)
        throw ModulusInvalid("field degree m=" + std::to_string(m) + " outside 1..16");
    const std::uint32_t p = modulus ? *modulus : default_modulus(m);
    if (poly2::degree(p) != static_cast<int>(m))
        throw ModulusInvalid("modulus degree " + std::to_string(poly2::degree(p)) + " != m=" + std::to_string(m));
    if (!poly2::is_irreducible(p))
        throw ModulusInvalid("modulus " + std::to_string(p) + " is reducible");
    return FieldParams(m, p);
}

// Hex I/O: "0x" prefix, uppercase digits. Parsing accepts an optional prefix, either case.

inline std::string to_hex(std::uint64_t v, bool prefix = true) {
    static constexpr char digits[] = "0123456789ABCDEF";
    std::string s;
    do {
        s.insert(s.begin(), digits[v & 0xF]);
        v >>= 4;
    } while (v);
    return prefix ? "0x" + s : s;
}

inline std::string to_hex(FieldElement a) { return to_hex(a.value); }

inline std::optional<std::uint64_t> parse_hex(std::string_view s) {
    if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X'))
        s.remove_prefix(2);
    if (s.empty() || s.size() > 16)
        return std::nullopt;
    std::uint64_t v = 0;
    for (char c : s) {
        int d;
        if (c >= '0' && c <= '9')
            d = c - '0';
        else if (c >= 'a' && c <= 'f')
            d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F')
            d = c - 'A' + 10;
        else
            return std::nullopt;
        v = (v << 4) | static_cast<std::uint64_t>(d);
    }
    return v;
}

inline FieldElement parse_element(const FieldParams& F, std::string_view s) {
    auto v = parse_hex(s);
    if (!v || *v >= F.q())
        throw ParamError("'" + std::string(s) + "' is not an element of F_2^" + std::to_string(F.m()));
    return FieldElement{static_cast<std::uint32_t>(*v)};
}

} // namespace tracepp
