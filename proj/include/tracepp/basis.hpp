/**************************************************************************
 * basis.hpp
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
#include <utility>

#include "fq3.hpp"

namespace tracepp {

/// 3x3 matrix over F_q, row-major.
struct Mat3 {
    std::array<FieldElement, 9> a{};

    FieldElement& operator()(int r, int c) noexcept { return a[3 * r + c]; }
    FieldElement operator()(int r, int c) const noexcept { return a[3 * r + c]; }
    bool operator==(const Mat3&) const = default;

    static Mat3 identity() noexcept {
        Mat3 I;
        I(0, 0) = I(1, 1) = I(2, 2) = FieldElement{1};
        return I;
    }
};

inline Mat3 mat_mul(const FieldParams& F, const Mat3& A, const Mat3& B) {
    Mat3 C;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            FieldElement s;
            for (int k = 0; k < 3; ++k)
                s = F.add(s, F.mul(A(r, k), B(k, c)));
            C(r, c) = s;
        }
    return C;
}

/// Gauss-Jordan inverse; nullopt when singular.
inline std::optional<Mat3> mat_inverse(const FieldParams& F, Mat3 A) {
    Mat3 inv = Mat3::identity();
    for (int col = 0; col < 3; ++col) {
        int pivot = -1;
        for (int r = col; r < 3; ++r)
            if (!A(r, col).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0)
            return std::nullopt;
        for (int c = 0; c < 3; ++c) {
            std::swap(A(col, c), A(pivot, c));
            std::swap(inv(col, c), inv(pivot, c));
        }
        const FieldElement s = F.inv(A(col, col));
        for (int c = 0; c < 3; ++c) {
            A(col, c) = F.mul(s, A(col, c));
            inv(col, c) = F.mul(s, inv(col, c));
        }
        for (int r = 0; r < 3; ++r) {
            if (r == col || A(r, col).is_zero())
                continue;
            const FieldElement f = A(r, col);
            for (int c = 0; c < 3; ++c) {
                A(r, c) = F.add(A(r, c), F.mul(f, A(col, c)));
                inv(r, c) = F.add(inv(r, c), F.mul(f, inv(col, c)));
            }
        }
    }
    return inv;
}

/// Coordinates of X = x + y alpha + z alpha^q.
struct XYZ {
    FieldElement x, y, z;
    bool operator==(const XYZ&) const = default;
};

/// The basis {1, alpha, alpha^q} of F_{q^3} over F_q with Tr(alpha) = 0.
struct TraceZeroBasis {
    FieldParams field;
    ExtElement theta;   ///< normal element it was derived from
    FieldElement c;     ///< Tr(theta)
    ExtElement alpha;
    ExtElement alpha_q;
    ExtElement alpha_q2;
    Mat3 from_xyz;      ///< columns: coordinates of 1, alpha, alpha^q
    Mat3 to_xyz;
};

/// Coordinate matrix whose rows are theta, theta^q, theta^{q^2}.
inline Mat3 conjugate_matrix(const CubicExt& E, const ExtElement& theta) {
    Mat3 M;
    ExtElement v = theta;
    for (int r = 0; r < 3; ++r) {
        M(r, 0) = v.c0;
        M(r, 1) = v.c1;
        M(r, 2) = v.c2;
        v = E.frobenius(v);
    }
    return M;
}

inline bool is_normal_element(const CubicExt& E, const ExtElement& theta) {
    return mat_inverse(E.base(), conjugate_matrix(E, theta)).has_value();
}

/// Smallest-encoding normal element; scan order is the domain index order.
inline ExtElement find_normal_element(const CubicExt& E) {
    for (std::uint64_t i = 0; i < E.size(); ++i) {
        const ExtElement theta = E.unpack(i);
        if (is_normal_element(E, theta))
            return theta;
    }
    throw InternalError("normal element scan exhausted the field");
}

inline TraceZeroBasis derive_trace_zero_basis(const CubicExt& E) {
    const FieldParams& F = E.base();
    TraceZeroBasis b{F, {}, {}, {}, {}, {}, {}, {}};
    b.theta = find_normal_element(E);
    b.c = E.trace(b.theta);
    if (b.c.is_zero())
        throw InternalError("normal element with zero trace");
    // alpha = theta - c/3, and 3 = 1 in characteristic 2
    b.alpha = E.add(b.theta, E.embed(b.c));
    b.alpha_q = E.frobenius(b.alpha);
    b.alpha_q2 = E.frobenius(b.alpha_q);
    if (!E.trace(b.alpha).is_zero())
        throw InternalError("derived alpha has nonzero trace");

    const ExtElement cols[3] = {E.one(), b.alpha, b.alpha_q};
    for (int c = 0; c < 3; ++c) {
        b.from_xyz(0, c) = cols[c].c0;
        b.from_xyz(1, c) = cols[c].c1;
        b.from_xyz(2, c) = cols[c].c2;
    }
    auto inv = mat_inverse(F, b.from_xyz);
    if (!inv)
        throw InternalError("{1, alpha, alpha^q} is linearly dependent");
    b.to_xyz = *inv;
    if (mat_mul(F, b.to_xyz, b.from_xyz) != Mat3::identity())
        throw InternalError("change-of-basis matrices are not mutually inverse");
    return b;
}

inline XYZ decompose(const TraceZeroBasis& b, const ExtElement& X) {
    const FieldParams& F = b.field;
    const FieldElement v[3] = {X.c0, X.c1, X.c2};
    FieldElement out[3];
    for (int r = 0; r < 3; ++r)
        for (int k = 0; k < 3; ++k)
            out[r] = F.add(out[r], F.mul(b.to_xyz(r, k), v[k]));
    return {out[0], out[1], out[2]};
}

inline ExtElement compose(const TraceZeroBasis& b, const XYZ& p) {
    const FieldParams& F = b.field;
    const FieldElement v[3] = {p.x, p.y, p.z};
    FieldElement out[3];
    for (int r = 0; r < 3; ++r)
        for (int k = 0; k < 3; ++k)
            out[r] = F.add(out[r], F.mul(b.from_xyz(r, k), v[k]));
    return {out[0], out[1], out[2]};
}

} // namespace tracepp
