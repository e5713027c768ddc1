/**************************************************************************
 * tracepp_cli.cpp
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

// Command-line campaigns. Reports go to stdout as JSON Lines (or CSV); a summary table goes
// to stderr. Exit codes: 0 all agree, 1 disagreement or internal error, 2 usage error,
// 3 resource guard.

#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "tracepp/report.hpp"
#include "tracepp/tracepp.hpp"

using namespace tracepp;

namespace {

enum Exit { Ok = 0, Disagree = 1, Usage = 2, Guard = 3 };

struct Flags {
    std::string m;
    std::string modulus;
    std::string cubic;
    bool exhaustive = false;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::string emit = "json";
    bool ignore_hypothesis = false;
    bool large = false;
    std::vector<std::string> bind;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t trials = 100;
    std::string target; ///< registry id, family text or template
};

std::pair<unsigned, unsigned> parse_m_range(const std::string& s, std::pair<unsigned, unsigned> fallback) {
    if (s.empty())
        return fallback;
    auto num = [&](const std::string& t) -> unsigned {
        if (t.empty() || t.size() > 3 || t.find_first_not_of("0123456789") != std::string::npos)
            throw UsageError("bad --m value '" + s + "'; expected A or A..B");
        return static_cast<unsigned>(std::stoul(t));
    };
    if (auto dots = s.find(".."); dots != std::string::npos)
        return {num(s.substr(0, dots)), num(s.substr(dots + 2))};
    const unsigned v = num(s);
    return {v, v};
}

CampaignOptions make_options(const Flags& f, std::pair<unsigned, unsigned> default_m) {
    CampaignOptions o;
    std::tie(o.m_lo, o.m_hi) = parse_m_range(f.m, default_m);
    if (!f.modulus.empty()) {
        auto v = parse_hex(f.modulus);
        if (!v || *v > 0xFFFFFFFFu)
            throw UsageError("bad --modulus '" + f.modulus + "'");
        o.modulus = static_cast<std::uint32_t>(*v);
    }
    if (!f.cubic.empty()) {
        auto t = parse_triple(f.cubic);
        if (!t)
            throw UsageError("bad --cubic '" + f.cubic + "'; expected HEX:HEX:HEX (g2:g1:g0)");
        o.cubic = CubicExt::Cubic{FieldElement{static_cast<std::uint32_t>((*t)[2])},
                                  FieldElement{static_cast<std::uint32_t>((*t)[1])},
                                  FieldElement{static_cast<std::uint32_t>((*t)[0])}};
    }
    if (f.exhaustive && f.samples)
        throw UsageError("--exhaustive and --samples are exclusive");
    o.mode = f.samples ? SweepMode{false, f.samples, f.seed} : SweepMode{true, 0, f.seed};
    o.ignore_hypothesis = f.ignore_hypothesis;
    o.large = f.large;
    o.threads = std::max(1u, f.threads);
    for (const auto& item : f.bind) {
        std::stringstream ss(item);
        std::string kv;
        while (std::getline(ss, kv, ',')) {
            const auto eq = kv.find('=');
            const auto sym = symbol_from_name(kv.substr(0, eq));
            if (eq == std::string::npos || !sym)
                throw UsageError("bad --bind '" + kv + "'; expected SYMBOL=VALUE with SYMBOL in g,a,c1..c4");
            const std::string val = kv.substr(eq + 1);
            std::optional<std::uint64_t> v = parse_hex(val);
            if (!v && !val.empty() && val.size() <= 9 && val.find_first_not_of("0123456789") == std::string::npos)
                v = std::stoull(val);
            if (!v || *v > 0xFFFFFFFFu)
                throw UsageError("bad value in --bind '" + kv + "'");
            o.bind.set(*sym, FieldElement{static_cast<std::uint32_t>(*v)});
        }
    }
    return o;
}

class Emitter {
public:
    explicit Emitter(const std::string& format) : csv_(format == "csv") {
        if (format != "json" && format != "csv")
            throw UsageError("--emit must be json or csv");
    }

    void report(const VerificationReport& r) {
        if (!csv_) {
            std::cout << to_json(r).dump() << '\n';
            return;
        }
        if (!header_done_) {
            std::cout << csv_header() << '\n';
            header_done_ = true;
        }
        std::cout << to_csv(r) << '\n';
    }

    void object(const Json& j) {
        if (!csv_) {
            std::cout << j.dump() << '\n';
            return;
        }
        if (!header_done_) {
            std::string h;
            for (const auto& [k, v] : j.items())
                h += (h.empty() ? "" : ",") + k;
            std::cout << h << '\n';
            header_done_ = true;
        }
        std::string row;
        bool first = true;
        for (const auto& [k, v] : j.items()) {
            row += first ? "" : ",";
            first = false;
            row += csv_quote(v.is_string() ? v.get<std::string>() : v.dump());
        }
        std::cout << row << '\n';
    }

private:
    bool csv_;
    bool header_done_ = false;
};

/// Per-(id, variant, m) tallies for the stderr table.
class Table {
public:
    void add(const VerificationReport& r) {
        auto key = r.family_id + (r.variant.empty() ? "" : " [" + r.variant + "]") + " m=" + std::to_string(r.m);
        auto [it, fresh] = index_.try_emplace(key, rows_.size());
        if (fresh)
            rows_.push_back({key, {}});
        rows_[it->second].second.count(r);
    }

    void print(const CampaignSummary& total) const {
        std::fprintf(stderr, "%-40s %10s %10s %10s %10s\n", "run", "reports", "agree", "disagree", "unclaimed");
        for (const auto& [key, s] : rows_)
            std::fprintf(stderr, "%-40s %10llu %10llu %10llu %10llu\n", key.c_str(), ull(s.reports), ull(s.agree),
                         ull(s.disagree), ull(s.unclaimed));
        if (total.filtered)
            std::fprintf(stderr, "filtered tuples with a^2+a+1 = 0: %llu\n", ull(total.filtered));
        for (const auto& s : total.skipped)
            std::fprintf(stderr, "skipped outside hypothesis: %s\n", s.c_str());
    }

private:
    static unsigned long long ull(std::uint64_t v) { return static_cast<unsigned long long>(v); }
    std::map<std::string, std::size_t> index_;
    std::vector<std::pair<std::string, CampaignSummary>> rows_;
};

int exit_for(const CampaignSummary& s) { return s.disagree ? Disagree : Ok; }

int cmd_field(const Flags& f) {
    CampaignOptions o = make_options(f, {1, max_default_m});
    if (o.m_lo < 1 || o.m_hi > 16 || o.m_lo > o.m_hi)
        throw UsageError("field supports 1 <= m <= 16");
    Emitter out(f.emit);
    for (unsigned m = o.m_lo; m <= o.m_hi; ++m)
        out.object(to_json(FieldSetup(m, o.modulus, o.cubic)));
    return Ok;
}

int cmd_basis(const Flags& f) {
    CampaignOptions o = make_options(f, {1, max_sweep_m});
    if (o.m_lo < 1 || o.m_hi > 16 || o.m_lo > o.m_hi)
        throw UsageError("basis supports 1 <= m <= 16");
    Emitter out(f.emit);
    for (unsigned m = o.m_lo; m <= o.m_hi; ++m) {
        const FieldSetup fs(m, o.modulus, o.cubic);
        const TraceZeroBasis b = derive_trace_zero_basis(fs.ext);
        out.object(to_json(fs, b));
        std::fprintf(stderr, "m=%-3u theta=%-20s alpha=%-20s Tr(alpha)=%s\n", m, to_string(b.theta).c_str(),
                     to_string(b.alpha).c_str(), to_hex(fs.ext.trace(b.alpha)).c_str());
    }
    return Ok;
}

int cmd_theorem(const Flags& f) {
    const auto ref = find_entry(f.target);
    if (!ref)
        throw UsageError("unknown family id '" + f.target + "'");
    const bool six = ref->entry->id == "T-MAIN";
    const unsigned limit = six ? 3 : 5;
    CampaignOptions o = make_options(f, {2, limit});
    detail::check_m_range(o);
    if (!f.exhaustive && !f.samples && o.m_hi > limit)
        throw UsageError("m > " + std::to_string(limit) + " for " + ref->entry->id +
                         " is beyond the default exhaustive range; pass --samples N or --exhaustive");
    Emitter out(f.emit);
    Table table;
    const CampaignSummary s = run_theorem(*ref, o, [&](const VerificationReport& r) {
        out.report(r);
        table.add(r);
    });
    table.print(s);
    return exit_for(s);
}

int cmd_check(const Flags& f) {
    const FamilySpec spec = parse_family(f.target);
    CampaignOptions o = make_options(f, {2, 2});
    detail::check_m_range(o);
    Emitter out(f.emit);
    Table table;
    CampaignSummary s;
    for (unsigned m = o.m_lo; m <= o.m_hi; ++m) {
        VerificationReport r = check_family(spec, m, o.bind, o.modulus, o.cubic, o.threads);
        r.mode = SweepMode{true, 0, 0};
        out.report(r);
        table.add(r);
        s.count(r);
    }
    table.print(s);
    return exit_for(s);
}

int cmd_search(const Flags& f) {
    const FamilySpec spec = parse_family(f.target);
    CampaignOptions o = make_options(f, {2, 2});
    Emitter out(f.emit);
    Table table;
    const CampaignSummary s = run_search(spec, o, [&](const VerificationReport& r) {
        out.report(r);
        table.add(r);
    });
    table.print(s);
    std::fprintf(stderr, "PP hits: %llu\n", static_cast<unsigned long long>(s.reports));
    return exit_for(s);
}

int cmd_identities(const Flags& f) {
    CampaignOptions o = make_options(f, {2, 3});
    Emitter out(f.emit);
    bool all = true;
    for (const auto& r : run_identities(o)) {
        out.object(to_json(r));
        all = all && r.result.holds;
        std::fprintf(stderr, "m=%-3u identity %-5s %s (%llu points)\n", r.m, r.identity.c_str(),
                     r.result.holds ? "holds" : "FAILS", static_cast<unsigned long long>(r.result.checked));
    }
    return all ? Ok : Disagree;
}

int cmd_equiv(const Flags& f) {
    CampaignOptions o = make_options(f, {2, 3});
    Emitter out(f.emit);
    std::map<std::pair<unsigned, std::string>, std::pair<std::uint64_t, std::uint64_t>> tally;
    bool all = true;
    for (const auto& r : run_equiv(o, f.trials)) {
        out.object(to_json(r));
        auto& [n, ok] = tally[{r.m, r.kind}];
        ++n;
        ok += r.agree();
        all = all && r.agree();
    }
    for (const auto& [key, v] : tally)
        std::fprintf(stderr, "m=%-3u %-8s %llu/%llu agree\n", key.first, key.second.c_str(),
                     static_cast<unsigned long long>(v.second), static_cast<unsigned long long>(v.first));
    return all ? Ok : Disagree;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Permutation checks for X + aX^q + g*Tr(h(X)) over F_{q^3}, q = 2^m"};
    app.set_config("--config", "", "key = value file mirroring the long flags (e.g. m = \"2..3\")");
    app.fallthrough();
    app.require_subcommand(1);

    Flags f;
    app.add_option("--m", f.m, "m or range A..B");
    app.add_option("--modulus", f.modulus, "base modulus as hex bitmask, e.g. 0xB");
    app.add_option("--cubic", f.cubic, "cubic t^3 + g2 t^2 + g1 t + g0 as HEX:HEX:HEX = g2:g1:g0");
    app.add_flag("--exhaustive", f.exhaustive, "sweep every parameter tuple");
    app.add_option("--samples", f.samples, "sample N tuples instead");
    app.add_option("--seed", f.seed, "seed for sampled and random campaigns");
    app.add_option("--emit", f.emit, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--ignore-hypothesis", f.ignore_hypothesis, "sweep m outside the claimed range; reports unclaimed");
    app.add_flag("--large", f.large, "allow m > 8 and work above the default budget");
    app.add_option("--bind", f.bind, "fix symbols, e.g. g=1,a=0x2");
    app.add_option("--threads", f.threads, "worker threads");
    app.add_option("--trials", f.trials, "random instances per kind (equiv)");

    auto* field = app.add_subcommand("field", "field and extension parameters");
    auto* basis = app.add_subcommand("basis", "normal element and trace-zero basis");
    auto* check = app.add_subcommand("check", "PP test of one family at bound parameters");
    check->add_option("family", f.target, "family text")->required();
    auto* theorem = app.add_subcommand("theorem", "predicate vs brute force over a registry entry");
    theorem->add_option("id", f.target, "T-MAIN, F1..F8, F1j, TBL1 or TBL1.1..TBL1.7")->required();
    auto* identities = app.add_subcommand("identities", "trace expansions in trace-zero coordinates");
    auto* equiv = app.add_subcommand("equiv", "PP status under h-augmenting transforms");
    auto* search = app.add_subcommand("search", "PP hits over all bindings of a template");
    search->add_option("template", f.target, "family text with free symbols")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? Ok : Usage;
    }

    try {
        if (*field) return cmd_field(f);
        if (*basis) return cmd_basis(f);
        if (*check) return cmd_check(f);
        if (*theorem) return cmd_theorem(f);
        if (*identities) return cmd_identities(f);
        if (*equiv) return cmd_equiv(f);
        if (*search) return cmd_search(f);
    } catch (const ResourceGuard& e) {
        std::cerr << "resource guard: " << e.what() << '\n';
        return Guard;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return Disagree;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Usage;
    }
    return Usage;
}
