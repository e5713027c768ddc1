/**************************************************************************
 * campaign.hpp
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
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "identities.hpp"
#include "registry.hpp"
#include "transforms.hpp"

namespace tracepp {

/// SplitMix64 stream. Each draw advances the state by 0x9E3779B97F4A7C15 and returns
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   z ^ (z >> 31)
/// Bounded draws are next() % n.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) noexcept { return next() % n; }

private:
    std::uint64_t state_;
};

struct SweepMode {
    bool exhaustive = true;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

struct VerificationReport {
    std::string family_id;
    std::string variant;
    std::string family;
    unsigned m = 0;
    std::string base_modulus;
    std::string cubic;
    std::vector<std::pair<std::string, std::string>> params;
    std::optional<bool> predicate; ///< nullopt: no claim for these parameters
    bool oracle = false;
    std::optional<std::pair<std::string, std::string>> counterexample;
    SweepMode mode;
    std::uint64_t elapsed_ms = 0;

    bool claimed() const noexcept { return predicate.has_value(); }
    std::optional<bool> agree() const {
        if (!predicate)
            return std::nullopt;
        return *predicate == oracle;
    }
};

/// Base field and cubic extension for one m.
struct FieldSetup {
    FieldParams field;
    CubicExt ext;

    FieldSetup(unsigned m, std::optional<std::uint32_t> modulus = std::nullopt,
               std::optional<CubicExt::Cubic> cubic = std::nullopt)
        : field(make_field(m, modulus)), ext(make_cubic_ext(field, cubic)) {}

    std::string modulus_hex() const { return to_hex(field.modulus()); }
    std::string cubic_hex() const { return cubic_to_string(ext.cubic()); }
};

struct CampaignOptions {
    unsigned m_lo = 2;
    unsigned m_hi = 2;
    std::optional<std::uint32_t> modulus;
    std::optional<CubicExt::Cubic> cubic;
    SweepMode mode;
    bool ignore_hypothesis = false;
    bool large = false;
    Bindings bind;
    unsigned threads = 1;
};

struct CampaignSummary {
    std::uint64_t reports = 0;
    std::uint64_t agree = 0;
    std::uint64_t disagree = 0;
    std::uint64_t unclaimed = 0;
    std::uint64_t filtered = 0; ///< tuples dropped by a^2 + a + 1 = 0
    std::vector<std::string> skipped;

    void count(const VerificationReport& r) {
        ++reports;
        if (auto a = r.agree())
            ++(*a ? agree : disagree);
        else
            ++unclaimed;
    }
    void merge(const CampaignSummary& o) {
        reports += o.reports;
        agree += o.agree;
        disagree += o.disagree;
        unclaimed += o.unclaimed;
        filtered += o.filtered;
        skipped.insert(skipped.end(), o.skipped.begin(), o.skipped.end());
    }
};

using ReportSink = std::function<void(const VerificationReport&)>;

inline constexpr unsigned max_sweep_m = 10;
inline constexpr unsigned max_default_m = 8;
inline constexpr std::uint64_t default_work_budget = std::uint64_t{1} << 34; // element evaluations

namespace detail {

inline void check_m_range(const CampaignOptions& o) {
    if (o.m_lo < 1 || o.m_hi > max_sweep_m || o.m_lo > o.m_hi)
        throw UsageError("m-range must satisfy 1 <= A <= B <= " + std::to_string(max_sweep_m));
    if (o.m_hi > max_default_m && !o.large)
        throw ResourceGuard("m > " + std::to_string(max_default_m) + " needs --large");
    if ((o.modulus || o.cubic) && o.m_lo != o.m_hi)
        throw UsageError("--modulus and --cubic need a single m");
}

inline std::uint64_t ipow(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    while (e--)
        r = (r > (~std::uint64_t{0}) / b) ? ~std::uint64_t{0} : r * b;
    return r;
}

inline std::vector<std::pair<std::string, std::string>> param_list(const std::vector<Symbol>& syms,
                                                                   const Bindings& b) {
    std::vector<std::pair<std::string, std::string>> out;
    for (Symbol s : all_symbols)
        if (std::find(syms.begin(), syms.end(), s) != syms.end())
            if (auto v = b.get(s))
                out.emplace_back(std::string(symbol_name(s)), to_hex(*v));
    return out;
}

/// Runs fn(k) for k in [0, n), split across threads. Results are stored by the callee.
template <typename Fn>
void parallel_for(std::uint64_t n, unsigned threads, Fn&& fn) {
    if (threads <= 1 || n < 2) {
        for (std::uint64_t k = 0; k < n; ++k)
            fn(k);
        return;
    }
    std::exception_ptr failure;
    std::mutex mu;
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (std::uint64_t k = w; k < n; k += threads)
                        fn(k);
                } catch (...) {
                    std::lock_guard lock(mu);
                    if (!failure)
                        failure = std::current_exception();
                }
            });
    }
    if (failure)
        std::rethrow_exception(failure);
}

/// Oracle for one tuple of a shape with precomputed trace tables.
struct ShapeOracle {
    const FamilySpec& spec;
    const CubicExt& E;
    const DomainMap& dm;
    const TraceTables& tables;

    PermResult operator()(const Bindings& b, unsigned threads = 1) const {
        const FieldParams& F = E.base();
        const FieldElement a = spec.a_coeff ? resolve_base(E, *spec.a_coeff, b, "the X^q coefficient") : F.zero();
        FieldElement gamma = F.zero();
        std::vector<std::uint32_t> table;
        if (spec.has_trace) {
            gamma = F.mul(resolve_base(E, spec.gamma_factor, b, "the trace multiplier"),
                          resolve_base(E, Symbol::g, b, "gamma"));
            table = tables.combine(E, b);
        } else {
            table.assign(E.size(), 0);
        }
        return dm.is_pp(a, gamma, table, threads);
    }
};

inline std::pair<std::string, std::string> witness_hex(const PermResult& r) {
    return {to_hex(r.collision->first), to_hex(r.collision->second)};
}

} // namespace detail

/// Sweeps the free parameters of a registry entry and compares predicate with the PP oracle.
/// Tuples are ordered lexicographically by (g, a, c1, c2, c3, c4) and emitted in that order.
inline CampaignSummary run_theorem(const RegistryRef& ref, const CampaignOptions& opt, const ReportSink& sink) {
    detail::check_m_range(opt);
    const RegistryEntry& entry = *ref.entry;
    CampaignSummary summary;
    SplitMix64 rng(opt.mode.seed);
    bool any_run = false;

    for (unsigned m = opt.m_lo; m <= opt.m_hi; ++m) {
        const FieldSetup fs(m, opt.modulus, opt.cubic);
        const FieldParams& F = fs.field;
        const CubicExt& E = fs.ext;
        const DomainMap dm(E);
        for (std::size_t v = 0; v < entry.variants.size(); ++v) {
            if (ref.variant && *ref.variant != v)
                continue;
            const FamilyVariant& var = entry.variants[v];
            const bool in_hypothesis = entry.predicate.hypothesis(m, v);
            const std::string label = var.label.empty() ? entry.id : var.label;
            if (!in_hypothesis && !opt.ignore_hypothesis) {
                summary.skipped.push_back(label + " m=" + std::to_string(m));
                continue;
            }
            any_run = true;

            Bindings base = var.fixed;
            for (Symbol s : all_symbols)
                if (auto u = opt.bind.get(s)) {
                    if (auto f = var.fixed.get(s); f && *f != *u)
                        throw UsageError(label + " fixes " + std::string(symbol_name(s)) + " = " + to_hex(*f));
                    if (!F.contains(*u))
                        throw UsageError("binding " + std::string(symbol_name(s)) + " outside F_q");
                    base.set(s, *u);
                }
            std::vector<Symbol> free;
            for (Symbol s : var.spec.symbols())
                if (!base.has(s))
                    free.push_back(s);
            const std::vector<Symbol> syms = var.spec.symbols();
            const bool has_a = std::ranges::find(syms, Symbol::a) != syms.end();

            const std::uint64_t q = F.q();
            const std::uint64_t count = opt.mode.exhaustive ? detail::ipow(q, free.size()) : opt.mode.samples;
            if (!opt.large && count > default_work_budget / E.size())
                throw ResourceGuard("sweep of " + std::to_string(count) + " tuples at m=" + std::to_string(m) +
                                    " exceeds the default budget; use --samples N or --large");

            // Materialise the tuple list in sweep order; sampling draws happen here, serially.
            std::vector<Bindings> tuples;
            tuples.reserve(count);
            for (std::uint64_t k = 0; k < count; ++k) {
                Bindings b = base;
                if (opt.mode.exhaustive) {
                    std::uint64_t rest = k;
                    for (std::size_t s = free.size(); s-- > 0;) {
                        b.set(free[s], FieldElement{static_cast<std::uint32_t>(rest % q)});
                        rest /= q;
                    }
                } else {
                    for (Symbol s : free) {
                        FieldElement x{static_cast<std::uint32_t>(rng.below(q))};
                        while (s == Symbol::a && !opt.ignore_hypothesis && !a_admissible(F, x))
                            x = FieldElement{static_cast<std::uint32_t>(rng.below(q))};
                        b.set(s, x);
                    }
                }
                if (has_a && !a_admissible(F, b.get(Symbol::a).value_or(F.zero())) && !opt.ignore_hypothesis) {
                    ++summary.filtered;
                    continue;
                }
                tuples.push_back(b);
            }

            const TraceTables tables(var.spec, E);
            const detail::ShapeOracle oracle{var.spec, E, dm, tables};
            const std::string text = print_family(var.spec);

            constexpr std::size_t block = 1024;
            std::vector<VerificationReport> out;
            for (std::size_t lo = 0; lo < tuples.size(); lo += block) {
                const std::size_t n = std::min(block, tuples.size() - lo);
                out.assign(n, {});
                detail::parallel_for(n, opt.threads, [&](std::uint64_t k) {
                    const Bindings& b = tuples[lo + k];
                    VerificationReport& r = out[k];
                    const auto t0 = std::chrono::steady_clock::now();
                    const PermResult pr = oracle(b);
                    r.elapsed_ms = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                                                  std::chrono::steady_clock::now() - t0)
                                                                  .count());
                    r.oracle = pr.is_perm;
                    if (!pr.is_perm)
                        r.counterexample = detail::witness_hex(pr);
                    if (in_hypothesis)
                        r.predicate = entry.predicate.condition(PredicateInput{F, v, b});
                    r.params = detail::param_list(syms, b);
                });
                for (auto& r : out) {
                    r.family_id = entry.id;
                    r.variant = var.label;
                    r.family = text;
                    r.m = m;
                    r.base_modulus = fs.modulus_hex();
                    r.cubic = fs.cubic_hex();
                    r.mode = opt.mode;
                    summary.count(r);
                    sink(r);
                }
            }
        }
    }
    if (!any_run)
        throw UsageError("no m in " + std::to_string(opt.m_lo) + ".." + std::to_string(opt.m_hi) +
                         " satisfies the hypothesis of " + entry.id + "; pass --ignore-hypothesis to sweep anyway");
    return summary;
}

/// Registry variant whose normalised shape equals spec, if any.
inline std::optional<std::pair<const RegistryEntry*, std::size_t>> match_registry(const FamilySpec& spec) {
    for (const auto& e : registry())
        for (std::size_t v = 0; v < e.variants.size(); ++v)
            if (e.variants[v].spec == spec)
                return std::make_pair(&e, v);
    return std::nullopt;
}

/// One report for a user-supplied family at fully bound parameters. A registry shape supplies
/// the predicate; anything else is reported unclaimed.
inline VerificationReport check_family(const FamilySpec& spec, unsigned m, const Bindings& bind,
                                       std::optional<std::uint32_t> modulus = std::nullopt,
                                       std::optional<CubicExt::Cubic> cubic = std::nullopt,
                                       unsigned threads = 1) {
    const FieldSetup fs(m, modulus, cubic);
    const CubicExt& E = fs.ext;
    VerificationReport r;
    r.family = print_family(spec);
    r.m = m;
    r.base_modulus = fs.modulus_hex();
    r.cubic = fs.cubic_hex();
    r.params = detail::param_list(spec.symbols(), bind);
    r.family_id = "custom";

    const FamilyInstance inst = instantiate(spec, E, bind);
    const auto t0 = std::chrono::steady_clock::now();
    const PermResult pr = instance_is_pp(E, inst, threads);
    r.elapsed_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count());
    r.oracle = pr.is_perm;
    if (!pr.is_perm)
        r.counterexample = detail::witness_hex(pr);

    if (auto hit = match_registry(spec)) {
        const auto& [entry, v] = *hit;
        r.family_id = entry->id;
        r.variant = entry->variants[v].label;
        bool fixed_ok = true;
        for (Symbol s : all_symbols)
            if (auto f = entry->variants[v].fixed.get(s))
                fixed_ok = fixed_ok && bind.get(s) == f;
        if (fixed_ok && entry->predicate.hypothesis(m, v))
            r.predicate = entry->predicate.condition(PredicateInput{fs.field, v, bind});
    }
    return r;
}

/// Every binding of the template's symbols, keeping the PP hits.
inline CampaignSummary run_search(const FamilySpec& spec, const CampaignOptions& opt, const ReportSink& sink) {
    detail::check_m_range(opt);
    CampaignSummary summary;
    const auto match = match_registry(spec);
    for (unsigned m = opt.m_lo; m <= opt.m_hi; ++m) {
        const FieldSetup fs(m, opt.modulus, opt.cubic);
        const CubicExt& E = fs.ext;
        const DomainMap dm(E);
        const TraceTables tables(spec, E);
        const detail::ShapeOracle oracle{spec, E, dm, tables};
        std::vector<Symbol> free;
        for (Symbol s : spec.symbols())
            if (!opt.bind.has(s))
                free.push_back(s);
        const std::uint64_t q = fs.field.q();
        const std::uint64_t count = detail::ipow(q, free.size());
        if (!opt.large && count > default_work_budget / E.size())
            throw ResourceGuard("search space of " + std::to_string(count) + " bindings exceeds the default budget");
        const std::string text = print_family(spec);
        for (std::uint64_t k = 0; k < count; ++k) {
            Bindings b = opt.bind;
            std::uint64_t rest = k;
            for (std::size_t s = free.size(); s-- > 0;) {
                b.set(free[s], FieldElement{static_cast<std::uint32_t>(rest % q)});
                rest /= q;
            }
            const auto t0 = std::chrono::steady_clock::now();
            const PermResult pr = oracle(b, opt.threads);
            if (!pr.is_perm)
                continue;
            VerificationReport r;
            r.elapsed_ms = static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count());
            r.family_id = match ? match->first->id : "search";
            r.variant = match ? match->first->variants[match->second].label : "";
            r.family = text;
            r.m = m;
            r.base_modulus = fs.modulus_hex();
            r.cubic = fs.cubic_hex();
            r.params = detail::param_list(spec.symbols(), b);
            r.oracle = true;
            r.mode = SweepMode{true, 0, 0};
            if (match) {
                const auto& [entry, v] = *match;
                bool fixed_ok = true;
                for (Symbol s : all_symbols)
                    if (auto f = entry->variants[v].fixed.get(s))
                        fixed_ok = fixed_ok && b.get(s) == f;
                const bool admissible =
                    !b.has(Symbol::a) || a_admissible(fs.field, *b.get(Symbol::a));
                if (fixed_ok && admissible && entry->predicate.hypothesis(m, v))
                    r.predicate = entry->predicate.condition(PredicateInput{fs.field, v, b});
            }
            summary.count(r);
            sink(r);
        }
    }
    return summary;
}

struct IdentityReport {
    unsigned m = 0;
    std::string base_modulus;
    std::string cubic;
    std::string identity;
    IdentityCheck result;
    std::uint64_t elapsed_ms = 0;
};

/// Trace expansions (i)..(vi) plus the norm factorisation, for every m in range.
inline std::vector<IdentityReport> run_identities(const CampaignOptions& opt) {
    detail::check_m_range(opt);
    std::vector<IdentityReport> out;
    for (unsigned m = opt.m_lo; m <= opt.m_hi; ++m) {
        const FieldSetup fs(m, opt.modulus, opt.cubic);
        const TraceZeroBasis b = derive_trace_zero_basis(fs.ext);
        std::vector<TraceIdentity> which(trace_identities.begin(), trace_identities.end());
        which.push_back(TraceIdentity::Norm);
        for (TraceIdentity t : which) {
            IdentityReport r{m, fs.modulus_hex(), fs.cubic_hex(), std::string(identity_name(t)), {}, 0};
            const auto t0 = std::chrono::steady_clock::now();
            r.result = check_trace_identity(t, fs.ext, b);
            r.elapsed_ms = static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count());
            out.push_back(std::move(r));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Random instance generators shared by the equivalence, slice and affine campaigns.

struct RandomFamily {
    FamilySpec spec;
    Bindings bind;
};

inline FieldElement random_base(const FieldParams& F, SplitMix64& rng) {
    return FieldElement{static_cast<std::uint32_t>(rng.below(F.q()))};
}

inline FieldElement random_admissible_a(const FieldParams& F, SplitMix64& rng) {
    for (;;)
        if (const FieldElement a = random_base(F, rng); a_admissible(F, a))
            return a;
}

inline ExtElement random_ext(const CubicExt& E, SplitMix64& rng) { return E.unpack(rng.below(E.size())); }

inline ExtElement random_ext_nonzero(const CubicExt& E, SplitMix64& rng) {
    return E.unpack(1 + rng.below(E.size() - 1));
}

/// The four-coefficient shape with admissible a. With want_pp, parameters are redrawn until
/// g != 0 and the closed-form condition claims a permutation.
inline RandomFamily random_main_family(const CubicExt& E, SplitMix64& rng, bool want_pp) {
    const RegistryEntry& entry = *find_entry("T-MAIN")->entry;
    const FieldParams& F = E.base();
    for (;;) {
        Bindings b;
        b.set(Symbol::g, random_base(F, rng));
        b.set(Symbol::a, random_admissible_a(F, rng));
        for (Symbol s : {Symbol::c1, Symbol::c2, Symbol::c3, Symbol::c4})
            b.set(s, random_base(F, rng));
        if (!want_pp)
            return {entry.variants[0].spec, b};
        if (b.get(Symbol::g)->is_zero())
            continue;
        if (entry.predicate.condition(PredicateInput{F, 0, b}).value_or(false))
            return {entry.variants[0].spec, b};
    }
}

/// X + a X^q + g*Tr(sum of 1..max_terms literal monomials) with coefficients in F_{q^3}.
inline RandomFamily random_sparse_family(const CubicExt& E, SplitMix64& rng, unsigned max_terms = 4) {
    const FieldParams& F = E.base();
    RandomFamily out;
    out.spec.a_coeff = Symbol::a;
    out.spec.has_trace = true;
    const unsigned terms = 1 + static_cast<unsigned>(rng.below(max_terms));
    for (unsigned k = 0; k < terms; ++k) {
        const auto e = static_cast<std::int64_t>(1 + rng.below(E.size() - 1));
        out.spec.h.push_back({random_ext_nonzero(E, rng), ExponentExpr::poly(e)});
    }
    normalize(out.spec);
    out.bind.set(Symbol::a, random_admissible_a(F, rng));
    out.bind.set(Symbol::g, random_base(F, rng));
    return out;
}

/// Alternates between closed-form permutations, unrestricted four-coefficient tuples and
/// sparse literal h, so that both PP and non-PP instances occur.
inline RandomFamily random_test_family(const CubicExt& E, SplitMix64& rng) {
    switch (rng.below(3)) {
    case 0: return random_main_family(E, rng, true);
    case 1: return random_main_family(E, rng, false);
    default: return random_sparse_family(E, rng);
    }
}

enum class CoefDomain { Base, Ext };

struct EquivInstance {
    EquivKind kind;
    CoefDomain coefs = CoefDomain::Ext;
    RandomFamily f;
    FamilySpec g;
};

inline EquivInstance random_equiv_instance(const CubicExt& E, EquivKind kind, CoefDomain coefs, SplitMix64& rng) {
    EquivInstance inst{kind, coefs, random_test_family(E, rng), {}};
    const auto shift = [&] { return static_cast<unsigned>(rng.below(3 * E.m())); };
    const auto coef = [&]() -> Coef {
        if (coefs == CoefDomain::Ext)
            return random_ext_nonzero(E, rng);
        return literal(1 + static_cast<std::uint32_t>(rng.below(E.q() - 1)));
    };
    switch (kind) {
    case EquivKind::T32: {
        const unsigned i = shift(), j = shift();
        inst.g = apply_t32(inst.f.spec, i, j);
        break;
    }
    case EquivKind::T33: {
        const unsigned i = shift(), j = shift();
        inst.g = apply_t33(inst.f.spec, i, j);
        break;
    }
    case EquivKind::C34: {
        std::vector<PairTerm> flat, cross;
        const unsigned nf = 1 + static_cast<unsigned>(rng.below(2));
        const unsigned nc = static_cast<unsigned>(rng.below(3));
        for (unsigned k = 0; k < nf; ++k) {
            const unsigned i = shift(), j = shift();
            flat.push_back({i, j, coef()});
        }
        for (unsigned k = 0; k < nc; ++k) {
            const unsigned i = shift(), j = shift();
            cross.push_back({i, j, coef()});
        }
        inst.g = apply_c34(inst.f.spec, flat, cross);
        break;
    }
    }
    return inst;
}

struct EquivReport {
    unsigned m = 0;
    std::string kind;
    std::uint64_t trial = 0;
    std::string f;
    std::string g;
    std::vector<std::pair<std::string, std::string>> params;
    bool pp_f = false;
    bool pp_g = false;
    bool agree() const noexcept { return pp_f == pp_g; }
};

inline std::string equiv_label(EquivKind k, CoefDomain d) {
    std::string s(equiv_kind_name(k));
    if (k == EquivKind::C34)
        s += d == CoefDomain::Ext ? "/Fq3" : "/Fq";
    return s;
}

/// trials random instances per (m, kind); C34 runs once with F_{q^3} and once with F_q coefficients.
inline std::vector<EquivReport> run_equiv(const CampaignOptions& opt, std::uint64_t trials) {
    detail::check_m_range(opt);
    std::vector<EquivReport> out;
    const std::pair<EquivKind, CoefDomain> kinds[] = {{EquivKind::T32, CoefDomain::Base},
                                                      {EquivKind::T33, CoefDomain::Base},
                                                      {EquivKind::C34, CoefDomain::Ext},
                                                      {EquivKind::C34, CoefDomain::Base}};
    for (unsigned m = opt.m_lo; m <= opt.m_hi; ++m) {
        const FieldSetup fs(m, opt.modulus, opt.cubic);
        const CubicExt& E = fs.ext;
        for (std::size_t k = 0; k < std::size(kinds); ++k) {
            SplitMix64 rng(opt.mode.seed ^ (std::uint64_t{m} << 32) ^ k);
            for (std::uint64_t t = 0; t < trials; ++t) {
                const EquivInstance inst = random_equiv_instance(E, kinds[k].first, kinds[k].second, rng);
                EquivReport r;
                r.m = m;
                r.kind = equiv_label(kinds[k].first, kinds[k].second);
                r.trial = t;
                r.f = print_family(inst.f.spec);
                r.g = print_family(inst.g);
                r.params = detail::param_list(inst.f.spec.symbols(), inst.f.bind);
                r.pp_f = instance_is_pp(E, instantiate(inst.f.spec, E, inst.f.bind), opt.threads).is_perm;
                r.pp_g = instance_is_pp(E, instantiate(inst.g, E, inst.f.bind), opt.threads).is_perm;
                out.push_back(std::move(r));
            }
        }
    }
    return out;
}

/// Random map of F_{q^3} for the affine-equivalence property: monomial permutations, closed-form
/// trace permutations, or sparse polynomials with coefficients in F_{q^3}.
inline std::vector<Monomial> random_sparse_poly(const CubicExt& E, SplitMix64& rng, unsigned max_terms = 4) {
    std::vector<Monomial> p;
    const unsigned terms = 1 + static_cast<unsigned>(rng.below(max_terms));
    for (unsigned k = 0; k < terms; ++k)
        p.push_back({random_ext_nonzero(E, rng), 1 + rng.below(E.size() - 1)});
    return p;
}

inline ExtMap random_affine_subject(const CubicExt& E, SplitMix64& rng) {
    switch (rng.below(3)) {
    case 0: {
        std::uint64_t k;
        do
            k = 1 + rng.below(E.size() - 1);
        while (std::gcd(k, E.size() - 1) != 1);
        const ExtElement c = random_ext_nonzero(E, rng);
        return [&E, c, k](const ExtElement& X) { return E.mul(c, E.pow(X, k)); };
    }
    case 1: {
        const RandomFamily f = random_main_family(E, rng, true);
        const FamilyInstance inst = instantiate(f.spec, E, f.bind);
        return [&E, inst](const ExtElement& X) { return inst.eval(E, X); };
    }
    default: {
        const std::vector<Monomial> p = random_sparse_poly(E, rng);
        return [&E, p](const ExtElement& X) {
            ExtElement s;
            if (X.is_zero())
                return s;
            for (const auto& t : p)
                s = E.add(s, E.mul(t.coef, E.pow(X, t.exponent)));
            return s;
        };
    }
    }
}

} // namespace tracepp
