/**************************************************************************
 * test_gf2m.cpp
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

#include <random>

#include "tracepp/gf2m.hpp"

using namespace tracepp;

namespace {

// Shift-and-add multiplication reducing after every shift; shares no code with the library.
std::uint32_t naive_mul(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, unsigned m) {
    std::uint32_t r = 0;
    for (unsigned i = 0; i < m; ++i) {
        if (b & 1u)
            r ^= a;
        b >>= 1;
        a <<= 1;
        if (a >> m & 1u)
            a ^= modulus;
    }
    return r;
}

// A degree-m polynomial is irreducible iff the quotient ring has no zero divisors.
bool field_by_zero_divisors(std::uint32_t modulus, unsigned m) {
    const std::uint32_t q = 1u << m;
    for (std::uint32_t a = 1; a < q; ++a)
        for (std::uint32_t b = a; b < q; ++b)
            if (naive_mul(a, b, modulus, m) == 0)
                return false;
    return true;
}

} // namespace

TEST(Gf2m, DefaultModulusIsSmallestIrreducible) {
    for (unsigned m = 1; m <= 8; ++m) {
        std::uint32_t expect = 0;
        for (std::uint32_t p = 1u << m; p < (2u << m); ++p)
            if (field_by_zero_divisors(p, m)) {
                expect = p;
                break;
            }
        EXPECT_EQ(default_modulus(m), expect) << "m=" << m;
    }
    EXPECT_EQ(default_modulus(3), 0xBu);
    EXPECT_EQ(default_modulus(2), 0x7u);
}

TEST(Gf2m, IrreducibilityMatchesZeroDivisorOracle) {
    for (unsigned m = 1; m <= 7; ++m)
        for (std::uint32_t p = 1u << m; p < (2u << m); ++p)
            EXPECT_EQ(poly2::is_irreducible(p), field_by_zero_divisors(p, m)) << "p=" << p;
}

TEST(Gf2m, SmallFieldExamples) {
    const FieldParams F = make_field(2);
    const FieldElement t{0b10};
    EXPECT_EQ(F.mul(t, t), FieldElement{0b11});
    EXPECT_EQ(F.inv(t), FieldElement{0b11});
    EXPECT_EQ(F.q(), 4u);
}

TEST(Gf2m, MultiplicationMatchesNaiveExhaustive) {
    for (unsigned m = 1; m <= 7; ++m) {
        const FieldParams F = make_field(m);
        for (std::uint32_t a = 0; a < F.q(); ++a)
            for (std::uint32_t b = 0; b < F.q(); ++b) {
                const auto expect = naive_mul(a, b, F.modulus(), m);
                ASSERT_EQ(F.mul(FieldElement{a}, FieldElement{b}).value, expect);
                ASSERT_EQ(F.mul_clmul(FieldElement{a}, FieldElement{b}).value, expect);
            }
    }
}

TEST(Gf2m, MultiplicationMatchesNaiveSampled) {
    std::mt19937_64 rng(7);
    for (unsigned m = 8; m <= 16; ++m) {
        const FieldParams F = make_field(m);
        for (int k = 0; k < 2000; ++k) {
            const std::uint32_t a = rng() & F.mask(), b = rng() & F.mask();
            ASSERT_EQ(F.mul(FieldElement{a}, FieldElement{b}).value, naive_mul(a, b, F.modulus(), m)) << m;
        }
    }
}

TEST(Gf2m, FieldAxiomsSmallM) {
    for (unsigned m = 1; m <= 4; ++m) {
        const FieldParams F = make_field(m);
        const auto q = F.q();
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b)
                for (std::uint32_t c = 0; c < q; ++c) {
                    const FieldElement x{a}, y{b}, z{c};
                    ASSERT_EQ(F.mul(F.mul(x, y), z), F.mul(x, F.mul(y, z)));
                    ASSERT_EQ(F.mul(x, F.add(y, z)), F.add(F.mul(x, y), F.mul(x, z)));
                    ASSERT_EQ(F.mul(x, y), F.mul(y, x));
                }
        for (std::uint32_t a = 1; a < q; ++a) {
            const FieldElement x{a};
            EXPECT_EQ(F.mul(x, F.inv(x)), F.one());
            EXPECT_EQ(F.pow(x, q - 1), F.one());
            EXPECT_EQ(F.sqr(F.sqrt(x)), x);
            EXPECT_EQ(F.div(x, x), F.one());
        }
    }
}

TEST(Gf2m, CubeRootsOfUnityExistIffMEven) {
    for (unsigned m = 1; m <= 12; ++m) {
        const FieldParams F = make_field(m);
        bool found = false;
        for (std::uint32_t a = 2; a < F.q() && !found; ++a)
            found = F.pow(FieldElement{a}, 3) == F.one();
        EXPECT_EQ(found, m % 2 == 0) << "m=" << m;
    }
}

TEST(Gf2m, CustomModulus) {
    const FieldParams F = make_field(3, 0xD); // x^3 + x^2 + 1
    for (std::uint32_t a = 0; a < 8; ++a)
        for (std::uint32_t b = 0; b < 8; ++b)
            EXPECT_EQ(F.mul(FieldElement{a}, FieldElement{b}).value, naive_mul(a, b, 0xD, 3));
}

TEST(Gf2m, Errors) {
    EXPECT_THROW(make_field(0), ModulusInvalid);
    EXPECT_THROW(make_field(17), ModulusInvalid);
    EXPECT_THROW(make_field(2, 0b101), ModulusInvalid); // (x+1)^2
    EXPECT_THROW(make_field(3, 0b111), ModulusInvalid); // degree 2
    EXPECT_THROW(make_field(2).inv(FieldElement{0}), DivisionByZero);
    EXPECT_THROW(make_field(4).div(FieldElement{3}, FieldElement{0}), DivisionByZero);
}

TEST(Gf2m, HexFormatting) {
    EXPECT_EQ(to_hex(FieldElement{11}), "0xB");
    EXPECT_EQ(to_hex(0, false), "0");
    EXPECT_EQ(parse_hex("0x1f"), std::optional<std::uint64_t>{31});
    EXPECT_EQ(parse_hex("1F"), std::optional<std::uint64_t>{31});
    EXPECT_FALSE(parse_hex("0x"));
    EXPECT_FALSE(parse_hex("zz"));
    const FieldParams F = make_field(3);
    EXPECT_EQ(parse_element(F, "0x7"), FieldElement{7});
    EXPECT_THROW(parse_element(F, "0x8"), ParamError);
}
