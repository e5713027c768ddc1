/**************************************************************************
 * registry.hpp
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

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specparse.hpp"

namespace tracepp {

/// x^3 + beta x permutes F_{2^m} iff beta = 0 and m is odd.
inline bool lidl_criterion_deg3(const FieldParams& F, FieldElement beta) {
    return beta.is_zero() && F.m() % 2 == 1;
}

enum class Deg5Variant {
    Linear, ///< x^5 + (1 + gamma^{-1}) x
    Dickson ///< x^5 + x^3 + gamma^{-1} x
};

inline bool lidl_criterion_deg5(Deg5Variant v, const FieldParams& F, FieldElement gamma) {
    if (gamma.is_zero())
        throw ParamError("degree-5 criterion needs gamma != 0");
    if (gamma != F.one())
        return false;
    return v == Deg5Variant::Linear ? F.m() % 4 != 0 : F.m() % 2 == 1;
}

struct PredicateInput {
    const FieldParams& field;
    std::size_t variant;
    const Bindings& bindings;

    FieldElement value(Symbol s) const { return bindings.get(s).value_or(FieldElement{}); }
};

/// One theorem: which m it speaks about, and its PP condition. The condition returns nullopt
/// when the theorem makes no claim about the given parameters.
struct TheoremPredicate {
    std::function<bool(unsigned m, std::size_t variant)> hypothesis;
    std::function<std::optional<bool>(const PredicateInput&)> condition;
};

struct FamilyVariant {
    std::string label;
    std::string text;
    FamilySpec spec;
    Bindings fixed;
};

struct RegistryEntry {
    std::string id;
    std::string summary;
    std::vector<FamilyVariant> variants;
    TheoremPredicate predicate;

    /// Symbols swept by a campaign: those the spec mentions and the variant does not fix.
    std::vector<Symbol> free_symbols(std::size_t v) const {
        std::vector<Symbol> out;
        for (Symbol s : variants.at(v).spec.symbols())
            if (!variants[v].fixed.has(s))
                out.push_back(s);
        return out;
    }
};

inline bool a_admissible(const FieldParams& F, FieldElement a) {
    return !F.add(F.add(F.sqr(a), a), F.one()).is_zero();
}

namespace detail {

inline FamilyVariant variant(std::string label, std::string text, Bindings fixed = {}) {
    FamilySpec spec = parse_family(text);
    return {std::move(label), std::move(text), std::move(spec), fixed};
}

inline std::optional<bool> main_theorem(const PredicateInput& in) {
    const FieldParams& F = in.field;
    const FieldElement g = in.value(Symbol::g), a = in.value(Symbol::a);
    const FieldElement c1 = in.value(Symbol::c1), c2 = in.value(Symbol::c2);
    const FieldElement c3 = in.value(Symbol::c3), c4 = in.value(Symbol::c4);
    if (!a_admissible(F, a))
        return std::nullopt;
    const FieldElement a1 = F.add(a, F.one());
    const FieldElement c34 = F.add(c3, c4);
    const bool cubic_vanishes = F.mul(g, c34).is_zero();
    const bool square_vanishes = F.mul(g, c2).is_zero();
    const bool linear_vanishes = F.add(a1, F.mul(g, c1)).is_zero();
    if (cubic_vanishes)
        return square_vanishes != linear_vanishes; // cases (i) and (ii)
    const FieldElement lhs = F.mul(g, F.add(F.mul(c1, c34), F.sqr(c2)));
    return lhs == F.mul(a1, c34) && F.m() % 2 == 1; // case (iii)
}

inline bool gamma_in_01(const PredicateInput& in) { return in.value(Symbol::g).value <= 1; }

inline std::vector<RegistryEntry> build_registry() {
    std::vector<RegistryEntry> r;
    const auto all_m = [](unsigned, std::size_t) { return true; };
    const Bindings g1{{Symbol::g, 1}};

    r.push_back({"T-MAIN",
                 "X + aX^q + g Tr(c1 X + c2 X^2 + c3 X^3 + c4 X^{q+2}), a^2+a+1 != 0",
                 {variant("", "X + a X^q + g*Tr(c1 X^{1} + c2 X^{2} + c3 X^{3} + c4 X^{q+2})")},
                 {all_m, main_theorem}});

    r.push_back({"F1", "PP iff g in {0,1}",
                 {variant("", "X + g*Tr(X^{(q+1)/2} + X^{(q^2+q+2)/2})")},
                 {all_m, [](const PredicateInput& in) -> std::optional<bool> { return gamma_in_01(in); }}});

    std::vector<FamilyVariant> f1j;
    for (int j = 1; j <= 3; ++j)
        f1j.push_back(variant("j=" + std::to_string(j),
                              "X + g*Tr(X^{(q+1)/2} + X^{(q^2+q+2)/2*2^" + std::to_string(j) + "})", g1));
    r.push_back({"F1j", "g = 1, second exponent doubled j times: always PP", std::move(f1j),
                 {all_m, [](const PredicateInput&) -> std::optional<bool> { return true; }}});

    r.push_back({"F2", "PP iff g in {0,1}",
                 {variant("", "X + g*Tr(X^{(q+1)/2} + X^{(q^2-q+1)/2})")},
                 {all_m, [](const PredicateInput& in) -> std::optional<bool> { return gamma_in_01(in); }}});

    const auto g0_or_g1_and = [](auto&& m_ok) {
        return [m_ok](const PredicateInput& in) -> std::optional<bool> {
            const auto g = in.value(Symbol::g).value;
            return g == 0 || (g == 1 && m_ok(in.field.m()));
        };
    };
    const auto m_odd = [](unsigned m) { return m % 2 == 1; };

    r.push_back({"F3", "PP iff g = 0, or g = 1 and m odd",
                 {variant("s=2q+1", "X + g*Tr(X^{(q+1)/2} + X^{2q+1})"),
                  variant("s=(q^3+2q)/2", "X + g*Tr(X^{(q+1)/2} + X^{(q^3+2q)/2})")},
                 {all_m, g0_or_g1_and(m_odd)}});
    r.push_back({"F4", "PP iff g = 0, or g = 1 and m odd",
                 {variant("", "X + g*Tr(X^{2q+1} + X^{4q+1})")},
                 {all_m, g0_or_g1_and(m_odd)}});
    r.push_back({"F5", "PP iff g = 0, or g = 1 and 4 does not divide m",
                 {variant("", "X + g*Tr(X^{2q+2} + X^{4q+1})")},
                 {all_m, g0_or_g1_and([](unsigned m) { return m % 4 != 0; })}});
    r.push_back({"F6", "for m != 2 mod 3: PP iff g in {0,1}",
                 {variant("", "X + g*Tr(X^{(q+1)/2} + X^{(q+3)/2})")},
                 {[](unsigned m, std::size_t) { return m % 3 != 2; },
                  [](const PredicateInput& in) -> std::optional<bool> { return gamma_in_01(in); }}});
    r.push_back({"F7", "for m != 1 mod 3: PP iff g in {0,1}",
                 {variant("", "X + g*Tr(X^{(q+1)/2} + X^{(3q+1)/2})")},
                 {[](unsigned m, std::size_t) { return m % 3 != 1; },
                  [](const PredicateInput& in) -> std::optional<bool> { return gamma_in_01(in); }}});
    r.push_back({"F8", "PP iff g = 0",
                 {variant("", "X + g*Tr(X^{(q+1)/2} + X^{(q^2+q+2)/2} + X^{(q+3)/2} + X^{(3q+1)/2})")},
                 {all_m, [](const PredicateInput& in) -> std::optional<bool> {
                      return in.value(Symbol::g).is_zero();
                  }}});

    // Binomial table at g = 1; each row is claimed only under its own condition on m.
    static const std::pair<const char*, bool (*)(unsigned)> rows[] = {
        {"X + g*Tr(X^{(q^2+q)/2} + X^{(q^2+q+2)/2})", [](unsigned) { return true; }},
        {"X + g*Tr(X^{(q^2+q)/2} + X^{(q^2-q+1)/2})", [](unsigned) { return true; }},
        {"X + g*Tr(X^{(q^2+q)/2} + X^{2q+1})", [](unsigned m) { return m % 2 == 1; }},
        {"X + g*Tr(X^{2q+1} + X^{4q+1})", [](unsigned m) { return m % 2 == 1; }},
        {"X + g*Tr(X^{2q+2} + X^{4q+1})", [](unsigned m) { return m % 4 != 0; }},
        {"X + g*Tr(X^{(q^2+q)/2} + X^{(q^2+3q)/2})", [](unsigned m) { return m % 3 != 2; }},
        {"X + g*Tr(X^{(q^2+q)/2} + X^{(3q^2+q)/2})", [](unsigned m) { return m % 3 != 1; }},
    };
    std::vector<FamilyVariant> tbl;
    for (std::size_t i = 0; i < std::size(rows); ++i)
        tbl.push_back(variant("TBL1." + std::to_string(i + 1), rows[i].first, g1));
    r.push_back({"TBL1", "binomial table at g = 1", std::move(tbl),
                 {[](unsigned m, std::size_t v) { return rows[v].second(m); },
                  [](const PredicateInput&) -> std::optional<bool> { return true; }}});

    for (auto& e : r)
        for (auto& v : e.variants)
            v.spec.id = e.id;
    return r;
}

} // namespace detail

inline const std::vector<RegistryEntry>& registry() {
    static const std::vector<RegistryEntry> entries = detail::build_registry();
    return entries;
}

struct RegistryRef {
    const RegistryEntry* entry = nullptr;
    std::optional<std::size_t> variant; ///< set when the id names one row, e.g. "TBL1.3"
};

/// Resolves "T-MAIN", "F1".."F8", "F1j", "TBL1" and "TBL1.1".."TBL1.7".
inline std::optional<RegistryRef> find_entry(std::string_view id) {
    for (const auto& e : registry()) {
        if (e.id == id)
            return RegistryRef{&e, std::nullopt};
        for (std::size_t v = 0; v < e.variants.size(); ++v)
            if (!e.variants[v].label.empty() && e.variants[v].label == id)
                return RegistryRef{&e, v};
    }
    return std::nullopt;
}

} // namespace tracepp
