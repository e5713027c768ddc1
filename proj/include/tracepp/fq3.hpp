/**************************************************************************
 * fq3.hpp
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
#include <optional>
#include <string>
#include <string_view>

#include "gf2m.hpp"

namespace tracepp {

/// Element of F_{q^3} = F_q[t]/(g(t)): c0 + c1 t + c2 t^2.
struct ExtElement {
    FieldElement c0, c1, c2;

    constexpr bool is_zero() const noexcept { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }
    constexpr bool in_base_field() const noexcept { return c1.is_zero() && c2.is_zero(); }
    constexpr auto operator<=>(const ExtElement&) const = default;
};

/// Cubic extension of F_q. The cubic is t^3 + g2 t^2 + g1 t + g0, stored as {g0, g1, g2}.
class CubicExt {
public:
    using Cubic = std::array<FieldElement, 3>;

    const FieldParams& base() const noexcept { return base_; }
    const Cubic& cubic() const noexcept { return cubic_; }
    unsigned m() const noexcept { return base_.m(); }
    std::uint32_t q() const noexcept { return base_.q(); }
    /// q^3, the size of the extension field.
    std::uint64_t size() const noexcept { return std::uint64_t{1} << (3 * base_.m()); }
    /// q^3 - 1, the order of the multiplicative group.
    std::uint64_t order() const noexcept { return size() - 1; }

    // Domain indexing: c2 q^2 + c1 q + c0.
    std::uint64_t pack(const ExtElement& x) const noexcept {
        const unsigned m = base_.m();
        return (std::uint64_t{x.c2.value} << (2 * m)) | (std::uint64_t{x.c1.value} << m) | x.c0.value;
    }
    ExtElement unpack(std::uint64_t i) const noexcept {
        const unsigned m = base_.m();
        const std::uint64_t mk = base_.mask();
        return {FieldElement{static_cast<std::uint32_t>(i & mk)},
                FieldElement{static_cast<std::uint32_t>((i >> m) & mk)},
                FieldElement{static_cast<std::uint32_t>((i >> (2 * m)) & mk)}};
    }

    bool contains(const ExtElement& x) const noexcept {
        return base_.contains(x.c0) && base_.contains(x.c1) && base_.contains(x.c2);
    }

    ExtElement zero() const noexcept { return {}; }
    ExtElement one() const noexcept { return {base_.one(), {}, {}}; }
    ExtElement t() const noexcept { return {{}, base_.one(), {}}; }
    ExtElement embed(FieldElement c) const noexcept { return {c, {}, {}}; }

    ExtElement add(const ExtElement& x, const ExtElement& y) const noexcept {
        return {base_.add(x.c0, y.c0), base_.add(x.c1, y.c1), base_.add(x.c2, y.c2)};
    }

    ExtElement scale(FieldElement c, const ExtElement& x) const noexcept {
        return {base_.mul(c, x.c0), base_.mul(c, x.c1), base_.mul(c, x.c2)};
    }

    ExtElement mul(const ExtElement& x, const ExtElement& y) const noexcept {
        const auto& F = base_;
        auto m = [&](FieldElement a, FieldElement b) { return F.mul(a, b).value; };
        std::uint32_t d0 = m(x.c0, y.c0);
        std::uint32_t d1 = m(x.c0, y.c1) ^ m(x.c1, y.c0);
        std::uint32_t d2 = m(x.c0, y.c2) ^ m(x.c1, y.c1) ^ m(x.c2, y.c0);
        std::uint32_t d3 = m(x.c1, y.c2) ^ m(x.c2, y.c1);
        std::uint32_t d4 = m(x.c2, y.c2);
        // t^3 = g2 t^2 + g1 t + g0 in characteristic 2
        const auto [g0, g1, g2] = cubic_;
        if (d4) {
            d3 ^= m(FieldElement{d4}, g2);
            d2 ^= m(FieldElement{d4}, g1);
            d1 ^= m(FieldElement{d4}, g0);
        }
        if (d3) {
            d2 ^= m(FieldElement{d3}, g2);
            d1 ^= m(FieldElement{d3}, g1);
            d0 ^= m(FieldElement{d3}, g0);
        }
        return {FieldElement{d0}, FieldElement{d1}, FieldElement{d2}};
    }

    ExtElement sqr(const ExtElement& x) const noexcept { return mul(x, x); }

    ExtElement pow(const ExtElement& x, std::uint64_t e) const noexcept {
        ExtElement r = one();
        ExtElement b = x;
        while (e) {
            if (e & 1u)
                r = mul(r, b);
            b = sqr(b);
            e >>= 1;
        }
        return r;
    }

    /// X -> X^q through the precomputed images of t and t^2.
    ExtElement frobenius(const ExtElement& x) const noexcept {
        ExtElement r = embed(x.c0);
        r = add(r, scale(x.c1, frob_t_));
        r = add(r, scale(x.c2, frob_t2_));
        return r;
    }

    ExtElement frobenius(const ExtElement& x, unsigned k) const noexcept {
        ExtElement r = x;
        for (unsigned i = 0; i < k % 3; ++i)
            r = frobenius(r);
        return r;
    }

    /// Tr(X) = X + X^q + X^{q^2}, which lies in F_q.
    FieldElement trace(const ExtElement& x) const {
        const ExtElement xq = frobenius(x);
        const ExtElement s = add(add(x, xq), frobenius(xq));
        if (!s.in_base_field())
            throw InternalError("trace left F_q: frobenius table or cubic modulus is broken");
        return s.c0;
    }

    /// N(X) = X^{1+q+q^2}, which lies in F_q.
    FieldElement norm(const ExtElement& x) const {
        const ExtElement xq = frobenius(x);
        const ExtElement n = mul(mul(x, xq), frobenius(xq));
        if (!n.in_base_field())
            throw InternalError("norm left F_q: frobenius table or cubic modulus is broken");
        return n.c0;
    }

    /// X^{-1} = X^q X^{q^2} / N(X).
    ExtElement inv(const ExtElement& x) const {
        if (x.is_zero())
            throw DivisionByZero("inverse of zero in F_{q^3}");
        const ExtElement xq = frobenius(x);
        return scale(base_.inv(norm(x)), mul(xq, frobenius(xq)));
    }

    const ExtElement& frobenius_of_t() const noexcept { return frob_t_; }
    const ExtElement& frobenius_of_t2() const noexcept { return frob_t2_; }

    friend CubicExt make_cubic_ext(const FieldParams& base, std::optional<Cubic> cubic);

private:
    CubicExt(FieldParams base, Cubic cubic) : base_(std::move(base)), cubic_(cubic) {
        ExtElement x = t();
        for (unsigned i = 0; i < base_.m(); ++i)
            x = sqr(x);
        frob_t_ = x;
        frob_t2_ = sqr(x);
        if (frobenius(frobenius(frobenius(t()))) != t())
            throw InternalError("frobenius table does not have order 3");
    }

    FieldParams base_;
    Cubic cubic_;
    ExtElement frob_t_{};
    ExtElement frob_t2_{};
};

/// A monic cubic over F_q is irreducible iff it has no root in F_q.
inline bool cubic_has_root(const FieldParams& F, const CubicExt::Cubic& g) {
    for (std::uint32_t v = 0; v < F.q(); ++v) {
        const FieldElement x{v};
        FieldElement y = F.mul(F.mul(x, x), x);
        y = F.add(y, F.mul(g[2], F.mul(x, x)));
        y = F.add(y, F.mul(g[1], x));
        y = F.add(y, g[0]);
        if (y.is_zero())
            return true;
    }
    return false;
}

/// Default cubic: smallest encoding g2 q^2 + g1 q + g0 among irreducible monic cubics.
inline CubicExt::Cubic default_cubic(const FieldParams& F) {
    const std::uint64_t q = F.q();
    for (std::uint64_t enc = 0; enc < q * q * q; ++enc) {
        CubicExt::Cubic g{FieldElement{static_cast<std::uint32_t>(enc % q)},
                          FieldElement{static_cast<std::uint32_t>((enc / q) % q)},
                          FieldElement{static_cast<std::uint32_t>(enc / (q * q))}};
        if (!cubic_has_root(F, g))
            return g;
    }
    throw InternalError("no irreducible cubic over F_2^" + std::to_string(F.m()));
}

inline CubicExt make_cubic_ext(const FieldParams& base, std::optional<CubicExt::Cubic> cubic = std::nullopt) {
    CubicExt::Cubic g;
    if (cubic) {
        g = *cubic;
        for (auto c : g)
            if (!base.contains(c))
                throw ModulusInvalid("cubic coefficient " + to_hex(c) + " outside F_q");
        if (cubic_has_root(base, g))
            throw ModulusInvalid("cubic has a root in F_q, so it is reducible");
    } else {
        g = default_cubic(base);
    }
    return CubicExt(base, g);
}

/// "c2:c1:c0", coordinates in hex without prefix.
inline std::string to_string(const ExtElement& x) {
    return to_hex(x.c2.value, false) + ":" + to_hex(x.c1.value, false) + ":" + to_hex(x.c0.value, false);
}

inline std::string cubic_to_string(const CubicExt::Cubic& g) {
    return to_string(ExtElement{g[0], g[1], g[2]});
}

/// Parses "c2:c1:c0" without range checking; each part may carry a 0x prefix.
inline std::optional<std::array<std::uint64_t, 3>> parse_triple(std::string_view s) {
    std::array<std::uint64_t, 3> parts{};
    for (int i = 0; i < 3; ++i) {
        const auto colon = s.find(':');
        if ((i < 2) != (colon != std::string_view::npos))
            return std::nullopt;
        auto v = parse_hex(s.substr(0, colon));
        if (!v)
            return std::nullopt;
        parts[i] = *v;
        s = i < 2 ? s.substr(colon + 1) : std::string_view{};
    }
    return parts;
}

inline ExtElement parse_ext_element(const CubicExt& E, std::string_view s) {
    auto p = parse_triple(s);
    if (!p || (*p)[0] >= E.q() || (*p)[1] >= E.q() || (*p)[2] >= E.q())
        throw ParamError("'" + std::string(s) + "' is not an element c2:c1:c0 of F_{q^3}");
    return {FieldElement{static_cast<std::uint32_t>((*p)[2])}, FieldElement{static_cast<std::uint32_t>((*p)[1])},
            FieldElement{static_cast<std::uint32_t>((*p)[0])}};
}

} // namespace tracepp
