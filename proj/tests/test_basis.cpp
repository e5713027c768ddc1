/**************************************************************************
 * test_basis.cpp
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

#include <gtest/gtest.h>

#include "tracepp/basis.hpp"

using namespace tracepp;

namespace {

// theta is normal iff no nonzero (a, b, c) in F_q^3 kills a theta + b theta^q + c theta^{q^2}.
bool normal_by_search(const CubicExt& E, const ExtElement& theta) {
    const FieldParams& F = E.base();
    const ExtElement t1 = E.frobenius(theta), t2 = E.frobenius(t1);
    for (std::uint32_t a = 0; a < F.q(); ++a)
        for (std::uint32_t b = 0; b < F.q(); ++b)
            for (std::uint32_t c = 0; c < F.q(); ++c) {
                if (a == 0 && b == 0 && c == 0)
                    continue;
                const ExtElement s = E.add(E.add(E.scale(FieldElement{a}, theta), E.scale(FieldElement{b}, t1)),
                                           E.scale(FieldElement{c}, t2));
                if (s.is_zero())
                    return false;
            }
    return true;
}

} // namespace

TEST(Basis, SmallestFieldWorkedExample) {
    const CubicExt E = make_cubic_ext(make_field(1));
    const TraceZeroBasis b = derive_trace_zero_basis(E);
    EXPECT_EQ(to_string(b.theta), "0:1:1");
    EXPECT_EQ(E.pack(b.theta), 3u);
    EXPECT_EQ(to_string(b.alpha), "0:1:0");
    EXPECT_EQ(E.pack(b.alpha), 2u);
    EXPECT_EQ(b.c, FieldElement{1});
}

TEST(Basis, NormalityAgreesWithSearch) {
    for (unsigned m = 1; m <= 2; ++m) {
        const CubicExt E = make_cubic_ext(make_field(m));
        for (std::uint64_t i = 0; i < E.size(); ++i)
            ASSERT_EQ(is_normal_element(E, E.unpack(i)), normal_by_search(E, E.unpack(i))) << i;
    }
}

TEST(Basis, FirstNormalElementInIndexOrder) {
    for (unsigned m = 1; m <= 3; ++m) {
        const CubicExt E = make_cubic_ext(make_field(m));
        std::uint64_t first = 0;
        while (!normal_by_search(E, E.unpack(first)))
            ++first;
        EXPECT_EQ(E.pack(find_normal_element(E)), first) << "m=" << m;
    }
}

TEST(Basis, TraceZeroBasisUpToM10) {
    for (unsigned m = 1; m <= 10; ++m) {
        const FieldParams F = make_field(m);
        const CubicExt E = make_cubic_ext(F);
        const TraceZeroBasis b = derive_trace_zero_basis(E);
        EXPECT_TRUE(E.trace(b.alpha).is_zero()) << m;
        EXPECT_EQ(b.alpha_q, E.frobenius(b.alpha));
        EXPECT_EQ(b.alpha_q2, E.frobenius(b.alpha_q));
        EXPECT_EQ(mat_mul(F, b.to_xyz, b.from_xyz), Mat3::identity());
        EXPECT_TRUE(mat_inverse(F, b.from_xyz).has_value());
    }
}

TEST(Basis, CoordinatesRoundTripAndTraceReadsX) {
    for (unsigned m = 1; m <= 3; ++m) {
        const CubicExt E = make_cubic_ext(make_field(m));
        const TraceZeroBasis b = derive_trace_zero_basis(E);
        for (std::uint64_t i = 0; i < E.size(); ++i) {
            const ExtElement X = E.unpack(i);
            const XYZ p = decompose(b, X);
            ASSERT_EQ(compose(b, p), X);
            ASSERT_EQ(E.trace(X), p.x); // Tr(1) = 1, Tr(alpha) = Tr(alpha^q) = 0
            const ExtElement direct = E.add(E.embed(p.x), E.add(E.scale(p.y, b.alpha), E.scale(p.z, b.alpha_q)));
            ASSERT_EQ(direct, X);
        }
    }
}

TEST(Basis, SingularMatrixHasNoInverse) {
    const FieldParams F = make_field(2);
    Mat3 A;
    A(0, 0) = FieldElement{1};
    A(1, 0) = FieldElement{1};
    EXPECT_FALSE(mat_inverse(F, A).has_value());
    EXPECT_EQ(mat_inverse(F, Mat3::identity()), Mat3::identity());
}
