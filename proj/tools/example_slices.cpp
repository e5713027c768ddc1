/**************************************************************************
 * example_slices.cpp
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

// Library walk-through: build F_{q^3} for q = 8, derive the trace-zero basis, and test
// X + g*Tr(X^{(q+1)/2} + X^{(q^2+q+2)/2}) for every g, once on the whole field and once
// slice by slice.

#include <cstdio>

#include "tracepp/tracepp.hpp"

int main() {
    using namespace tracepp;
    const FieldParams F = make_field(3);
    const CubicExt E = make_cubic_ext(F);
    const TraceZeroBasis b = derive_trace_zero_basis(E);
    std::printf("F_8 modulus %s, cubic %s, theta %s, alpha %s\n", to_hex(F.modulus()).c_str(),
                cubic_to_string(E.cubic()).c_str(), to_string(b.theta).c_str(), to_string(b.alpha).c_str());

    const FamilySpec spec = parse_family("X + g*Tr(X^{(q+1)/2} + X^{(q^2+q+2)/2})");
    std::printf("%s\n", print_family(spec).c_str());
    for (std::uint32_t g = 0; g < F.q(); ++g) {
        const FamilyInstance f = instantiate(spec, E, Bindings{{Symbol::g, g}});
        const PermResult whole = instance_is_pp(E, f);
        const SliceCheck s = slice_reduction_check(E, b, f);
        std::printf("g=%s  PP=%d  slices=%d", to_hex(g).c_str(), whole.is_perm, s.rhs);
        if (whole.collision)
            std::printf("  f(%s) = f(%s)", to_hex(whole.collision->first).c_str(),
                        to_hex(whole.collision->second).c_str());
        std::printf("\n");
    }
}
