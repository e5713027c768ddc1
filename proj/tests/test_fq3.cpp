/**************************************************************************
 * test_fq3.cpp
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

#include <map>
#include <random>

#include "tracepp/fq3.hpp"

using namespace tracepp;

namespace {

// Square-and-multiply on top of mul only; checks frobenius, trace and norm independently.
ExtElement slow_pow(const CubicExt& E, ExtElement x, std::uint64_t e) {
    ExtElement r = E.one();
    for (std::uint64_t k = 0; k < e; ++k)
        r = E.mul(r, x);
    return r;
}

} // namespace

TEST(Fq3, DefaultCubicHasNoRootInBaseField) {
    for (unsigned m = 1; m <= 8; ++m) {
        const FieldParams F = make_field(m);
        const CubicExt::Cubic g = default_cubic(F);
        for (std::uint32_t x = 0; x < F.q(); ++x) {
            const FieldElement v{x};
            const FieldElement val =
                F.add(F.add(F.mul(F.sqr(v), v), F.mul(g[2], F.sqr(v))), F.add(F.mul(g[1], v), g[0]));
            EXPECT_FALSE(val.is_zero()) << "m=" << m << " root " << x;
        }
    }
}

TEST(Fq3, MultiplicativeGroupOrder) {
    for (unsigned m = 1; m <= 2; ++m) {
        const CubicExt E = make_cubic_ext(make_field(m));
        for (std::uint64_t i = 1; i < E.size(); ++i)
            ASSERT_EQ(slow_pow(E, E.unpack(i), E.order()), E.one());
    }
}

TEST(Fq3, FrobeniusIsQthPower) {
    for (unsigned m = 1; m <= 3; ++m) {
        const CubicExt E = make_cubic_ext(make_field(m));
        for (std::uint64_t i = 0; i < E.size(); ++i) {
            const ExtElement x = E.unpack(i);
            ASSERT_EQ(E.frobenius(x), slow_pow(E, x, E.q()));
            ASSERT_EQ(E.frobenius(x, 3), x);
            ASSERT_EQ(E.pow(x, E.q()), E.frobenius(x));
        }
    }
}

TEST(Fq3, TraceFibersHaveEqualSize) {
    const CubicExt E = make_cubic_ext(make_field(2));
    std::map<std::uint32_t, int> fiber;
    for (std::uint64_t i = 0; i < E.size(); ++i) {
        const ExtElement x = E.unpack(i);
        const ExtElement direct = E.add(E.add(x, slow_pow(E, x, 4)), slow_pow(E, x, 16));
        ASSERT_TRUE(direct.in_base_field());
        ASSERT_EQ(E.trace(x), direct.c0);
        ++fiber[E.trace(x).value];
    }
    ASSERT_EQ(fiber.size(), 4u);
    for (auto [v, n] : fiber)
        EXPECT_EQ(n, 16) << "trace value " << v;
    EXPECT_EQ(E.trace(E.one()), FieldElement{1});
}

TEST(Fq3, NormFibers) {
    const CubicExt E = make_cubic_ext(make_field(2));
    std::map<std::uint32_t, int> fiber;
    for (std::uint64_t i = 0; i < E.size(); ++i) {
        const ExtElement x = E.unpack(i);
        ASSERT_EQ(E.embed(E.norm(x)), slow_pow(E, x, 21));
        ++fiber[E.norm(x).value];
    }
    EXPECT_EQ(fiber[0], 1);
    for (std::uint32_t v = 1; v < 4; ++v)
        EXPECT_EQ(fiber[v], 21);
}

TEST(Fq3, RingAxiomsAndInverse) {
    std::mt19937_64 rng(11);
    for (unsigned m = 1; m <= 8; ++m) {
        const CubicExt E = make_cubic_ext(make_field(m));
        for (int k = 0; k < 300; ++k) {
            const ExtElement x = E.unpack(rng() % E.size()), y = E.unpack(rng() % E.size()),
                             z = E.unpack(rng() % E.size());
            ASSERT_EQ(E.mul(E.mul(x, y), z), E.mul(x, E.mul(y, z)));
            ASSERT_EQ(E.mul(x, E.add(y, z)), E.add(E.mul(x, y), E.mul(x, z)));
            ASSERT_EQ(E.norm(E.mul(x, y)), E.base().mul(E.norm(x), E.norm(y)));
            ASSERT_EQ(E.trace(E.add(x, y)), E.base().add(E.trace(x), E.trace(y)));
            if (!x.is_zero())
                ASSERT_EQ(E.mul(x, E.inv(x)), E.one());
        }
        EXPECT_THROW(E.inv(E.zero()), DivisionByZero);
    }
}

TEST(Fq3, PackingIsBijective) {
    const CubicExt E = make_cubic_ext(make_field(3));
    for (std::uint64_t i = 0; i < E.size(); ++i)
        ASSERT_EQ(E.pack(E.unpack(i)), i);
    EXPECT_EQ(E.pack(E.t()), E.q());
    EXPECT_EQ(to_string(E.unpack(0x1C3)), "7:0:3");
}

TEST(Fq3, RejectsReducibleCubic) {
    const FieldParams F = make_field(2);
    EXPECT_THROW(make_cubic_ext(F, CubicExt::Cubic{FieldElement{0}, FieldElement{1}, FieldElement{0}}),
                 ModulusInvalid); // t^3 + t has root 0
    EXPECT_THROW(make_cubic_ext(F, CubicExt::Cubic{FieldElement{1}, FieldElement{0}, FieldElement{0}}),
                 ModulusInvalid); // t^3 + 1 has root 1
    EXPECT_NO_THROW(make_cubic_ext(F, default_cubic(F)));
}

TEST(Fq3, ParsesTriples) {
    const CubicExt E = make_cubic_ext(make_field(3));
    const ExtElement x = parse_ext_element(E, "0x1:0:7");
    EXPECT_EQ(x.c2, FieldElement{1});
    EXPECT_EQ(x.c1, FieldElement{0});
    EXPECT_EQ(x.c0, FieldElement{7});
    EXPECT_THROW(parse_ext_element(E, "8:0:0"), ParamError);
    EXPECT_THROW(parse_ext_element(E, "1:2"), ParamError);
}
