/**************************************************************************
 * family.hpp
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

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "exponent.hpp"
#include "fq3.hpp"

namespace tracepp {

/// Parameters that bind at instantiation time. They always take values in F_q.
enum class Symbol : std::uint8_t { g, a, c1, c2, c3, c4 };

inline constexpr std::array<Symbol, 6> all_symbols = {Symbol::g, Symbol::a, Symbol::c1,
                                                      Symbol::c2, Symbol::c3, Symbol::c4};

inline std::string_view symbol_name(Symbol s) {
    switch (s) {
    case Symbol::g: return "g";
    case Symbol::a: return "a";
    case Symbol::c1: return "c1";
    case Symbol::c2: return "c2";
    case Symbol::c3: return "c3";
    case Symbol::c4: return "c4";
    }
    return "?";
}

inline std::optional<Symbol> symbol_from_name(std::string_view s) {
    for (Symbol sym : all_symbols)
        if (symbol_name(sym) == s)
            return sym;
    return std::nullopt;
}

/// Coefficient: a symbol, or a literal of F_{q^3} (base-field literals have c1 = c2 = 0).
/// Literal values are raw bit patterns until bound to a concrete field.
using Coef = std::variant<Symbol, ExtElement>;

inline Coef literal(std::uint32_t v) { return ExtElement{FieldElement{v}, {}, {}}; }
inline bool is_literal_one(const Coef& c) {
    const auto* e = std::get_if<ExtElement>(&c);
    return e && *e == ExtElement{FieldElement{1}, {}, {}};
}

struct HTerm {
    Coef coef = literal(1);
    ExponentExpr exponent;
    bool operator==(const HTerm&) const = default;
};

/// f(X) = X + a X^q + (gamma_factor * g) Tr(sum coef_i X^{e_i}).
struct FamilySpec {
    std::optional<Coef> a_coeff;  ///< absent: no X^q term
    bool has_trace = false;
    Coef gamma_factor = literal(1);
    std::vector<HTerm> h;
    std::string id;               ///< registry name; not part of equality

    bool operator==(const FamilySpec& o) const {
        return a_coeff == o.a_coeff && has_trace == o.has_trace && gamma_factor == o.gamma_factor && h == o.h;
    }

    std::vector<Symbol> symbols() const {
        std::array<bool, 6> used{};
        auto visit = [&](const Coef& c) {
            if (auto s = std::get_if<Symbol>(&c))
                used[static_cast<int>(*s)] = true;
        };
        if (a_coeff)
            visit(*a_coeff);
        if (has_trace) {
            used[static_cast<int>(Symbol::g)] = true;
            visit(gamma_factor);
            for (const auto& t : h)
                visit(t.coef);
        }
        std::vector<Symbol> out;
        for (Symbol s : all_symbols)
            if (used[static_cast<int>(s)])
                out.push_back(s);
        return out;
    }
};

inline std::strong_ordering coef_compare(const Coef& l, const Coef& r) {
    if (auto c = l.index() <=> r.index(); c != 0)
        return c;
    if (auto s = std::get_if<Symbol>(&l))
        return *s <=> std::get<Symbol>(r);
    return std::get<ExtElement>(l) <=> std::get<ExtElement>(r);
}

/// Stable sort of the trace terms into canonical order.
inline void normalize(FamilySpec& spec) {
    std::stable_sort(spec.h.begin(), spec.h.end(), [](const HTerm& l, const HTerm& r) {
        if (auto c = canonical_compare(l.exponent, r.exponent); c != 0)
            return c < 0;
        return coef_compare(l.coef, r.coef) < 0;
    });
}

/// Values for the symbols a spec mentions.
class Bindings {
public:
    Bindings() = default;
    Bindings(std::initializer_list<std::pair<Symbol, std::uint32_t>> init) {
        for (auto [s, v] : init)
            set(s, FieldElement{v});
    }

    void set(Symbol s, FieldElement v) { v_[static_cast<int>(s)] = v; }
    void clear(Symbol s) { v_[static_cast<int>(s)].reset(); }
    std::optional<FieldElement> get(Symbol s) const { return v_[static_cast<int>(s)]; }
    bool has(Symbol s) const { return v_[static_cast<int>(s)].has_value(); }
    bool operator==(const Bindings&) const = default;

private:
    std::array<std::optional<FieldElement>, 6> v_{};
};

struct Monomial {
    ExtElement coef;
    std::uint64_t exponent;
};

/// Fully concrete f(X) = X + a X^q + gamma Tr(h(X)) over a specific F_{q^3}.
struct FamilyInstance {
    FieldElement a;
    FieldElement gamma;
    std::vector<Monomial> h;

    ExtElement eval_h(const CubicExt& E, const ExtElement& X) const {
        ExtElement s;
        for (const auto& t : h)
            if (!X.is_zero()) // 0^e = 0 for every e >= 1
                s = E.add(s, E.mul(t.coef, E.pow(X, t.exponent)));
        return s;
    }

    FieldElement trace_h(const CubicExt& E, const ExtElement& X) const { return E.trace(eval_h(E, X)); }

    ExtElement eval(const CubicExt& E, const ExtElement& X) const {
        ExtElement r = E.add(X, E.scale(a, E.frobenius(X)));
        if (!gamma.is_zero() && !h.empty())
            r = E.add(r, E.embed(E.base().mul(gamma, trace_h(E, X))));
        return r;
    }
};

inline FieldElement resolve_base(const CubicExt& E, const Coef& c, const Bindings& b, std::string_view what) {
    if (auto s = std::get_if<Symbol>(&c)) {
        auto v = b.get(*s);
        if (!v)
            throw ParamError("symbol '" + std::string(symbol_name(*s)) + "' is unbound");
        if (!E.base().contains(*v))
            throw ParamError("binding for '" + std::string(symbol_name(*s)) + "' lies outside F_q");
        return *v;
    }
    const auto& e = std::get<ExtElement>(c);
    if (!e.in_base_field() || !E.base().contains(e.c0))
        throw ParamError(std::string(what) + " must be an element of F_q");
    return e.c0;
}

inline ExtElement resolve_ext(const CubicExt& E, const Coef& c, const Bindings& b) {
    if (std::holds_alternative<Symbol>(c))
        return E.embed(resolve_base(E, c, b, "coefficient"));
    const auto& e = std::get<ExtElement>(c);
    if (!E.contains(e))
        throw ParamError("literal coefficient " + to_string(e) + " lies outside F_{q^3}");
    return e;
}

inline FamilyInstance instantiate(const FamilySpec& spec, const CubicExt& E, const Bindings& b) {
    FamilyInstance inst;
    if (spec.a_coeff)
        inst.a = resolve_base(E, *spec.a_coeff, b, "the X^q coefficient");
    if (spec.has_trace) {
        inst.gamma = E.base().mul(resolve_base(E, spec.gamma_factor, b, "the trace multiplier"),
                                  resolve_base(E, Symbol::g, b, "gamma"));
        for (const auto& t : spec.h)
            inst.h.push_back({resolve_ext(E, t.coef, b), eval_exponent(t.exponent, E.m())});
    }
    return inst;
}

inline ExtElement eval_family(const FamilySpec& spec, const CubicExt& E, const Bindings& b, const ExtElement& X) {
    return instantiate(spec, E, b).eval(E, X);
}

/// Per-term trace tables over the whole domain, so that sweeping F_q-valued symbols costs
/// only table lookups: Tr(h(X)) = sum_k s_k * tau_k[X] with tau_k[X] = Tr(lit_k X^{e_k}).
class TraceTables {
public:
    TraceTables(const FamilySpec& spec, const CubicExt& E) : spec_(spec) {
        const std::uint64_t n = E.size();
        for (const auto& t : spec.h) {
            ExtElement lit = E.one();
            if (auto e = std::get_if<ExtElement>(&t.coef)) {
                if (!E.contains(*e))
                    throw ParamError("literal coefficient " + to_string(*e) + " lies outside F_{q^3}");
                lit = *e;
            }
            const std::uint64_t ex = eval_exponent(t.exponent, E.m());
            std::vector<std::uint32_t> tab(n);
            for (std::uint64_t i = 1; i < n; ++i)
                tab[i] = E.trace(E.mul(lit, E.pow(E.unpack(i), ex))).value;
            tables_.push_back(std::move(tab));
        }
    }

    /// Combined table Tr(h(X)) for the given bindings.
    std::vector<std::uint32_t> combine(const CubicExt& E, const Bindings& b) const {
        std::vector<std::uint32_t> out(E.size(), 0);
        const FieldParams& F = E.base();
        for (std::size_t k = 0; k < tables_.size(); ++k) {
            const auto& c = spec_.h[k].coef;
            const FieldElement s = std::holds_alternative<Symbol>(c) ? resolve_base(E, c, b, "") : F.one();
            if (s.is_zero())
                continue;
            const auto& tab = tables_[k];
            if (s == F.one()) {
                for (std::size_t i = 0; i < out.size(); ++i)
                    out[i] ^= tab[i];
            } else {
                for (std::size_t i = 0; i < out.size(); ++i)
                    out[i] ^= F.mul(s, FieldElement{tab[i]}).value;
            }
        }
        return out;
    }

    const std::vector<std::uint32_t>& term(std::size_t k) const { return tables_.at(k); }
    std::size_t terms() const noexcept { return tables_.size(); }

private:
    FamilySpec spec_;
    std::vector<std::vector<std::uint32_t>> tables_;
};

} // namespace tracepp
