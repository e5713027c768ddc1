/**************************************************************************
 * identities.hpp
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
#include <optional>
#include <string_view>

#include "basis.hpp"
#include "permcheck.hpp"

namespace tracepp {

/// Trace expansions in trace-zero coordinates X = x + y alpha + z alpha^q. Every right-hand
/// side is a polynomial in x whose coefficients depend on (y, z) only.
enum class TraceIdentity {
    I,    ///< Tr(X^{q+1})
    II,   ///< Tr(X^{q^2+q+2})
    III,  ///< Tr(X^{2q+1})
    IV,   ///< Tr(X^{4q+1})
    V,    ///< Tr(X^{q+3})
    VI,   ///< Tr(X^{3q+1})
    Norm, ///< X^{q^2+q+1} itself, as a cubic in x
};

inline constexpr std::array<TraceIdentity, 6> trace_identities = {
    TraceIdentity::I, TraceIdentity::II, TraceIdentity::III, TraceIdentity::IV, TraceIdentity::V, TraceIdentity::VI};

inline std::string_view identity_name(TraceIdentity t) {
    constexpr std::string_view names[] = {"i", "ii", "iii", "iv", "v", "vi", "norm"};
    return names[static_cast<int>(t)];
}

/// Exponent on the left-hand side, as a function of q.
inline std::uint64_t identity_exponent(TraceIdentity t, std::uint64_t q) {
    switch (t) {
    case TraceIdentity::I: return q + 1;
    case TraceIdentity::II: return q * q + q + 2;
    case TraceIdentity::III: return 2 * q + 1;
    case TraceIdentity::IV: return 4 * q + 1;
    case TraceIdentity::V: return q + 3;
    case TraceIdentity::VI: return 3 * q + 1;
    case TraceIdentity::Norm: return q * q + q + 1;
    }
    return 0;
}

/// Evaluators for the (y, z)-dependent pieces, written against alpha, alpha^q, alpha^{q^2}
/// directly rather than through the Frobenius map.
class TraceForms {
public:
    TraceForms(const CubicExt& E, const TraceZeroBasis& b)
        : E_(E), b_(b), t_alpha_q1_(E.trace(E.mul(b.alpha, b.alpha_q))) {}

    /// Tr(alpha^{q+1}).
    FieldElement trace_alpha_q1() const noexcept { return t_alpha_q1_; }

    /// y alpha + z alpha^q
    ExtElement w(FieldElement y, FieldElement z) const {
        return E_.add(E_.scale(y, b_.alpha), E_.scale(z, b_.alpha_q));
    }
    /// y alpha^q + z alpha^{q^2}
    ExtElement wq(FieldElement y, FieldElement z) const {
        return E_.add(E_.scale(y, b_.alpha_q), E_.scale(z, b_.alpha_q2));
    }
    /// z alpha + y alpha^q + z alpha^q
    ExtElement wq_reduced(FieldElement y, FieldElement z) const {
        return E_.add(E_.scale(z, b_.alpha), E_.scale(E_.base().add(y, z), b_.alpha_q));
    }

    /// (y^2 + z^2 + yz) Tr(alpha^{q+1})
    FieldElement quad(FieldElement y, FieldElement z) const {
        const FieldParams& F = E_.base();
        return F.mul(F.add(F.add(F.sqr(y), F.sqr(z)), F.mul(y, z)), t_alpha_q1_);
    }

    FieldElement tr_w3(FieldElement y, FieldElement z) const {
        const ExtElement v = w(y, z);
        return E_.trace(E_.mul(E_.sqr(v), v));
    }

    FieldElement ell51(FieldElement y, FieldElement z) const {
        const ExtElement v = w(y, z), vq = wq(y, z);
        return E_.trace(E_.add(E_.mul(E_.sqr(v), vq), E_.mul(E_.sqr(v), v)));
    }
    FieldElement ell52(FieldElement y, FieldElement z) const {
        const ExtElement v = w(y, z), vq = wq(y, z);
        return E_.trace(E_.mul(vq, E_.mul(E_.sqr(v), v)));
    }
    FieldElement ell61(FieldElement y, FieldElement z) const {
        const ExtElement v = w(y, z), vq = wq(y, z);
        return E_.trace(E_.add(E_.mul(E_.sqr(vq), v), E_.mul(E_.sqr(vq), vq)));
    }
    FieldElement ell62(FieldElement y, FieldElement z) const {
        const ExtElement v = w(y, z), vq = wq(y, z);
        return E_.trace(E_.mul(E_.mul(E_.sqr(vq), vq), v));
    }

    /// Right-hand side of the identity at (x, y, z).
    FieldElement rhs(TraceIdentity t, const XYZ& p) const {
        const FieldParams& F = E_.base();
        const FieldElement x = p.x, y = p.y, z = p.z;
        const FieldElement x2 = F.sqr(x), x4 = F.sqr(x2);
        switch (t) {
        case TraceIdentity::I:
            return F.add(x2, quad(y, z));
        case TraceIdentity::II:
            return F.add(F.add(x4, F.mul(x2, quad(y, z))), F.mul(x, tr_w3(y, z)));
        case TraceIdentity::III: {
            const ExtElement r = wq_reduced(y, z);
            return F.add(F.mul(x2, x), E_.trace(E_.mul(E_.sqr(r), w(y, z))));
        }
        case TraceIdentity::IV: {
            const ExtElement r = wq_reduced(y, z);
            return F.add(F.mul(x4, x), E_.trace(E_.mul(E_.sqr(E_.sqr(r)), w(y, z))));
        }
        case TraceIdentity::V:
            return F.add(F.add(x4, F.mul(x2, quad(y, z))), F.add(F.mul(x, ell51(y, z)), ell52(y, z)));
        case TraceIdentity::VI:
            return F.add(F.add(x4, F.mul(x2, quad(y, z))), F.add(F.mul(x, ell61(y, z)), ell62(y, z)));
        case TraceIdentity::Norm:
            return F.add(F.add(F.mul(x2, x), F.mul(x, quad(y, z))), tr_w3(y, z));
        }
        return {};
    }

    /// Left-hand side by direct powering.
    FieldElement lhs(TraceIdentity t, const ExtElement& X) const {
        const ExtElement p = E_.pow(X, identity_exponent(t, E_.q()));
        if (t == TraceIdentity::Norm) {
            if (!p.in_base_field())
                throw InternalError("X^{q^2+q+1} left F_q");
            return p.c0;
        }
        return E_.trace(p);
    }

private:
    const CubicExt& E_;
    const TraceZeroBasis& b_;
    FieldElement t_alpha_q1_;
};

struct IdentityCheck {
    bool holds = true;
    std::uint64_t checked = 0;
    std::optional<std::uint64_t> first_failure; ///< domain index of the first X where the sides differ
};

inline IdentityCheck check_trace_identity(TraceIdentity which, const CubicExt& E, const TraceZeroBasis& b) {
    const TraceForms forms(E, b);
    IdentityCheck out;
    for (std::uint64_t i = 0; i < E.size(); ++i) {
        const ExtElement X = E.unpack(i);
        ++out.checked;
        if (forms.lhs(which, X) != forms.rhs(which, decompose(b, X))) {
            out.holds = false;
            out.first_failure = i;
            return out;
        }
    }
    return out;
}

/// Data behind a collision of X + Tr(X^{(q+1)/2} + X^{(q^2+q+2)/2} + X^{(q+3)/2} + X^{(3q+1)/2}).
/// With Y_i = sqrt(X_i) and a = sqrt(v) for the common value v, u_i = Y_i + a lies in F_q and
/// w_i = u_i^2 are two distinct roots of w^2 + A w + B.
struct QuadraticCertificate {
    ExtElement a;
    FieldElement A, B;
    FieldElement u1, u2;
    bool u_in_base = false;
    bool roots = false;

    bool valid() const { return u_in_base && roots && u1 != u2 && !A.is_zero(); }
};

inline QuadraticCertificate quadratic_certificate(const CubicExt& E, const ExtElement& X1, const ExtElement& X2,
                                                  const ExtElement& value) {
    const FieldParams& F = E.base();
    const std::uint64_t q = E.q();
    const std::uint64_t half = std::uint64_t{1} << (3 * E.m() - 1); // sqrt is the inverse of squaring
    auto tr_pow = [&](const ExtElement& x, std::uint64_t e) { return E.trace(E.pow(x, e)); };

    QuadraticCertificate c;
    c.a = E.pow(value, half);
    c.A = F.add(tr_pow(c.a, q + 1), tr_pow(c.a, 2 * q));
    c.B = F.add(F.add(tr_pow(c.a, q + 1), tr_pow(c.a, q * q + q + 2)),
                F.add(tr_pow(c.a, q + 3), tr_pow(c.a, 3 * q + 1)));
    const ExtElement u1 = E.add(E.pow(X1, half), c.a);
    const ExtElement u2 = E.add(E.pow(X2, half), c.a);
    c.u_in_base = u1.in_base_field() && u2.in_base_field();
    if (!c.u_in_base)
        return c;
    c.u1 = u1.c0;
    c.u2 = u2.c0;
    auto quad = [&](FieldElement u) {
        const FieldElement w = F.sqr(u);
        return F.add(F.add(F.sqr(w), F.mul(c.A, w)), c.B);
    };
    c.roots = quad(c.u1).is_zero() && quad(c.u2).is_zero();
    return c;
}

} // namespace tracepp
