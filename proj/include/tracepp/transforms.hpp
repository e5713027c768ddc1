/**************************************************************************
 * transforms.hpp
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

#include <string_view>
#include <vector>

#include "family.hpp"

namespace tracepp {

/// Additions to h(X) that leave the PP status of X + aX^q + g Tr(h(X)) unchanged.
enum class EquivKind {
    T32, ///< + X^{2^i + 2^j q} + X^{2^i q + 2^j}
    T33, ///< + X^{2^i + 2^j} + X^{2^i q + 2^j}
    C34, ///< coefficient-weighted sums of both pair shapes
};

inline std::string_view equiv_kind_name(EquivKind k) {
    switch (k) {
    case EquivKind::T32: return "T32";
    case EquivKind::T33: return "T33";
    case EquivKind::C34: return "C34";
    }
    return "?";
}

/// One weighted pair of the C34 sum: coef * (pair of monomials indexed by i, j).
struct PairTerm {
    unsigned i = 0;
    unsigned j = 0;
    Coef coef = literal(1);
};

namespace detail {

inline constexpr unsigned max_pair_shift = 30;

inline void check_shape(const FamilySpec& spec, unsigned i, unsigned j) {
    if (!spec.has_trace)
        throw ParamError("equivalence transforms need a trace part g*Tr(h(X))");
    if (i > max_pair_shift || j > max_pair_shift)
        throw ParamError("pair shifts i, j must be at most 30");
}

inline std::int64_t p2(unsigned k) { return std::int64_t{1} << k; }

/// Appends coef X^{e1} + coef X^{e2}; identical exponents cancel in characteristic 2.
inline void add_pair(FamilySpec& g, const Coef& c, const ExponentExpr& e1, const ExponentExpr& e2) {
    if (e1 == e2)
        return;
    g.h.push_back({c, e1});
    g.h.push_back({c, e2});
}

inline ExponentExpr cross_a(unsigned i, unsigned j) { return ExponentExpr::poly(p2(i), p2(j)); } // 2^i + 2^j q
inline ExponentExpr cross_b(unsigned i, unsigned j) { return ExponentExpr::poly(p2(j), p2(i)); } // 2^i q + 2^j
inline ExponentExpr flat(unsigned i, unsigned j) { return ExponentExpr::poly(p2(i) + p2(j)); }   // 2^i + 2^j

} // namespace detail

inline FamilySpec apply_t32(const FamilySpec& f, unsigned i, unsigned j) {
    detail::check_shape(f, i, j);
    FamilySpec g = f;
    detail::add_pair(g, literal(1), detail::cross_a(i, j), detail::cross_b(i, j));
    normalize(g);
    return g;
}

inline FamilySpec apply_t33(const FamilySpec& f, unsigned i, unsigned j) {
    detail::check_shape(f, i, j);
    FamilySpec g = f;
    detail::add_pair(g, literal(1), detail::flat(i, j), detail::cross_b(i, j));
    normalize(g);
    return g;
}

/// h + sum c_ij (X^{2^i+2^j} + X^{2^i q+2^j}) + sum d_st (X^{2^s+2^t q} + X^{2^s q+2^t}).
inline FamilySpec apply_c34(const FamilySpec& f, const std::vector<PairTerm>& flat_terms,
                            const std::vector<PairTerm>& cross_terms) {
    FamilySpec g = f;
    if (!f.has_trace)
        throw ParamError("equivalence transforms need a trace part g*Tr(h(X))");
    for (const auto& t : flat_terms) {
        detail::check_shape(f, t.i, t.j);
        detail::add_pair(g, t.coef, detail::flat(t.i, t.j), detail::cross_b(t.i, t.j));
    }
    for (const auto& t : cross_terms) {
        detail::check_shape(f, t.i, t.j);
        detail::add_pair(g, t.coef, detail::cross_a(t.i, t.j), detail::cross_b(t.i, t.j));
    }
    normalize(g);
    return g;
}

} // namespace tracepp
