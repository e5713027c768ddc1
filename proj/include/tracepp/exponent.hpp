/**************************************************************************
 * exponent.hpp
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

#include <array>
#include <compare>
#include <cstdint>
#include <string>

#include "error.hpp"

namespace tracepp {

/// Symbolic exponent: (sum_k coeffs[k] q^k) [* 2^{-1}] * 2^twist, taken modulo q^3 - 1.
struct ExponentExpr {
    std::array<std::int64_t, 4> coeffs{};
    bool halve = false;
    unsigned twist = 0;

    int degree() const noexcept {
        for (int k = 3; k >= 0; --k)
            if (coeffs[k] != 0)
                return k;
        return -1;
    }
    bool is_zero_polynomial() const noexcept { return degree() < 0; }

    bool operator==(const ExponentExpr&) const = default;

    /// Canonical order: degree, then coefficients from the leading one down, then halve, then twist.
    friend std::strong_ordering canonical_compare(const ExponentExpr& l, const ExponentExpr& r) {
        if (auto c = l.degree() <=> r.degree(); c != 0)
            return c;
        for (int k = 3; k >= 0; --k)
            if (auto c = l.coeffs[k] <=> r.coeffs[k]; c != 0)
                return c;
        if (auto c = l.halve <=> r.halve; c != 0)
            return c;
        return l.twist <=> r.twist;
    }

    static ExponentExpr poly(std::int64_t c0, std::int64_t c1 = 0, std::int64_t c2 = 0, std::int64_t c3 = 0) {
        ExponentExpr e;
        e.coeffs = {c0, c1, c2, c3};
        return e;
    }
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t n) {
    std::uint64_t r = 1 % n;
    b %= n;
    while (e) {
        if (e & 1u)
            r = mulmod(r, b, n);
        b = mulmod(b, b, n);
        e >>= 1;
    }
    return r;
}

} // namespace detail

/// Concrete exponent in [1, q^3 - 1] for q = 2^m. A residue of 0 maps to q^3 - 1, never to 0:
/// X^{q^3-1} vanishes at 0 while X^0 does not.
inline std::uint64_t eval_exponent(const ExponentExpr& e, unsigned m) {
    if (m < 1 || m > 16)
        throw ExprInvalid("exponent evaluation needs 1 <= m <= 16, got m=" + std::to_string(m));
    if (e.is_zero_polynomial())
        throw ExprInvalid("exponent is the zero polynomial in q");
    const std::uint64_t q = std::uint64_t{1} << m;
    const std::uint64_t n = q * q * q - 1;
    const auto renorm = [n](std::uint64_t v) { return v == 0 ? n : v; };

    __int128 acc = 0;
    std::uint64_t qk = 1;
    for (int k = 0; k < 4; ++k) {
        acc = (acc + static_cast<__int128>(e.coeffs[k]) * static_cast<__int128>(qk)) % static_cast<__int128>(n);
        qk = detail::mulmod(qk, q, n);
    }
    if (acc < 0)
        acc += n;
    std::uint64_t v = renorm(static_cast<std::uint64_t>(acc));
    if (e.halve) // 2^{3m-1} is the inverse of 2 modulo 2^{3m} - 1
        v = renorm(detail::mulmod(v, detail::powmod(2, 3 * m - 1, n), n));
    if (e.twist)
        v = renorm(detail::mulmod(v, detail::powmod(2, e.twist, n), n));
    return v;
}

} // namespace tracepp
