/**************************************************************************
 * acceptance.cpp
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

// Release acceptance run. Usage: acceptance [N ...]; no arguments runs criteria 1..10.
// Prints one PASS/FAIL line per criterion, preceded by its detail lines, and exits non-zero
// if any selected criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <regex>
#include <string>
#include <thread>
#include <vector>

#include "tracepp/report.hpp"

using namespace tracepp;

namespace {

// Pinned limits.
constexpr double main_m3_budget_s = 300.0;
constexpr double identities_budget_s = 30.0;
constexpr std::uint64_t main_m4_samples = 10000;
constexpr std::uint64_t seed = 20260101;
constexpr int slice_trials = 200;
constexpr int equiv_trials = 100;
constexpr int affine_trials = 50;
constexpr int fuzz_strings = 100000;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& note) {
        pass = pass && ok;
        notes.push_back(std::string(ok ? "  ok   " : "  FAIL ") + note);
    }
    void info(const std::string& note) { notes.push_back("  info " + note); }
};

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

CampaignSummary sweep(const char* id, unsigned lo, unsigned hi, SweepMode mode = {},
                      const ReportSink& sink = [](const VerificationReport&) {}) {
    CampaignOptions o;
    o.m_lo = lo;
    o.m_hi = hi;
    o.mode = mode;
    o.threads = workers();
    return run_theorem(*find_entry(id), o, sink);
}

Outcome main_theorem() {
    Outcome out;
    for (unsigned m : {2u, 3u}) {
        const auto t0 = std::chrono::steady_clock::now();
        const CampaignSummary s = sweep("T-MAIN", m, m);
        const double dt = seconds_since(t0);
        out.require(s.disagree == 0 && s.unclaimed == 0 && s.agree == s.reports,
                    fmt("m=%u exhaustive: %llu tuples checked, %llu filtered (a^2+a+1=0), %llu disagreements, %.1fs",
                        m, (unsigned long long)s.reports, (unsigned long long)s.filtered,
                        (unsigned long long)s.disagree, dt));
        if (m == 3)
            out.require(dt <= main_m3_budget_s, fmt("m=3 runtime %.1fs within %.0fs", dt, main_m3_budget_s));
    }
    const CampaignSummary s = sweep("T-MAIN", 4, 4, SweepMode{false, main_m4_samples, seed});
    out.require(s.disagree == 0 && s.reports == main_m4_samples,
                fmt("m=4 sampled: %llu tuples (seed %llu), %llu disagreements", (unsigned long long)s.reports,
                    (unsigned long long)seed, (unsigned long long)s.disagree));
    return out;
}

Outcome families() {
    Outcome out;
    for (const char* id : {"F1", "F1j", "F2", "F3", "F4", "F5", "F6", "F7", "F8"}) {
        const CampaignSummary s = sweep(id, 2, 5);
        std::string skipped;
        for (const auto& k : s.skipped)
            skipped += " [" + k + "]";
        out.require(s.disagree == 0 && s.unclaimed == 0 && s.reports > 0,
                    fmt("%-4s m=2..5: %llu reports, %llu disagreements%s%s", id, (unsigned long long)s.reports,
                        (unsigned long long)s.disagree, skipped.empty() ? "" : ", outside hypothesis:",
                        skipped.c_str()));
    }
    const auto status = [](const char* id, unsigned m, std::uint32_t g) {
        const FamilySpec& spec = find_entry(id)->entry->variants[0].spec;
        return check_family(spec, m, Bindings{{Symbol::g, g}}).oracle;
    };
    out.require(status("F4", 3, 1), "F4 PP at m=3, g=1");
    out.require(!status("F4", 2, 1), "F4 not PP at m=2, g=1");
    out.require(!status("F4", 4, 1), "F4 not PP at m=4, g=1");
    out.require(status("F5", 3, 1), "F5 PP at m=3, g=1");
    out.require(!status("F5", 4, 1), "F5 not PP at m=4, g=1");
    for (unsigned m = 2; m <= 4; ++m) {
        bool none = true;
        for (std::uint32_t g = 1; g < (1u << m); ++g)
            none = none && !status("F8", m, g);
        out.require(none, fmt("F8 not PP for every g != 0 at m=%u", m));
    }
    return out;
}

Outcome table_rows() {
    Outcome out;
    std::vector<std::string> seen(7);
    bool all = true;
    const CampaignSummary s = sweep("TBL1", 1, 5, {}, [&](const VerificationReport& r) {
        all = all && r.oracle && r.agree().value_or(false);
        const int row = r.variant.back() - '1';
        seen[row] += (seen[row].empty() ? "" : ",") + std::to_string(r.m);
    });
    for (int r = 0; r < 7; ++r)
        out.info(fmt("row %d PP at g=1 for m in {%s}", r + 1, seen[r].c_str()));
    out.require(all && s.disagree == 0, fmt("%llu row/m pairs, all PP", (unsigned long long)s.reports));
    return out;
}

Outcome identities() {
    Outcome out;
    CampaignOptions o;
    o.m_lo = 2;
    o.m_hi = 4;
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = run_identities(o);
    const double dt = seconds_since(t0);
    for (const auto& r : rows)
        if (r.identity != "norm")
            out.require(r.result.holds, fmt("identity %-3s m=%u over %llu points", r.identity.c_str(), r.m,
                                            (unsigned long long)r.result.checked));
    out.require(dt <= identities_budget_s, fmt("runtime %.2fs within %.0fs", dt, identities_budget_s));
    return out;
}

Outcome slices() {
    Outcome out;
    for (unsigned m : {2u, 3u}) {
        const CubicExt E = make_cubic_ext(make_field(m));
        const TraceZeroBasis b = derive_trace_zero_basis(E);
        SplitMix64 rng(seed + m);
        int agree = 0, pp = 0;
        for (int k = 0; k < slice_trials; ++k) {
            const RandomFamily f = random_test_family(E, rng);
            const SliceCheck s = slice_reduction_check(E, b, instantiate(f.spec, E, f.bind));
            agree += s.lhs == s.rhs;
            pp += s.lhs;
        }
        out.require(agree == slice_trials,
                    fmt("m=%u: %d/%d agree (%d instances PP)", m, agree, slice_trials, pp));
    }
    return out;
}

Outcome transforms() {
    Outcome out;
    const std::pair<EquivKind, CoefDomain> kinds[] = {{EquivKind::T32, CoefDomain::Base},
                                                      {EquivKind::T33, CoefDomain::Base},
                                                      {EquivKind::C34, CoefDomain::Ext}};
    for (unsigned m : {2u, 3u}) {
        const CubicExt E = make_cubic_ext(make_field(m));
        const auto run = [&](EquivKind kind, CoefDomain dom, std::uint64_t s, bool counts) {
            SplitMix64 rng(s);
            int agree = 0, pp = 0;
            std::string first;
            for (int t = 0; t < equiv_trials; ++t) {
                const EquivInstance inst = random_equiv_instance(E, kind, dom, rng);
                const bool pf = instance_is_pp(E, instantiate(inst.f.spec, E, inst.f.bind)).is_perm;
                const bool pg = instance_is_pp(E, instantiate(inst.g, E, inst.f.bind)).is_perm;
                agree += pf == pg;
                pp += pf;
                if (pf != pg && first.empty()) {
                    first = print_family(inst.g);
                    for (const auto& [k, v] : detail::param_list(inst.f.spec.symbols(), inst.f.bind))
                        first += " " + k + "=" + v;
                    first += fmt(" (PP before: %d, after: %d)", pf, pg);
                }
            }
            const std::string line = fmt("m=%u %-7s %d/%d agree (%d bases PP)", m,
                                         equiv_label(kind, dom).c_str(), agree, equiv_trials, pp);
            if (counts)
                out.require(agree == equiv_trials, line);
            else
                out.info(line + " [coefficients restricted to F_q]");
            if (!first.empty())
                out.info("first disagreement: " + first);
        };
        for (std::size_t k = 0; k < std::size(kinds); ++k)
            run(kinds[k].first, kinds[k].second, seed + 10 * m + k, true);
        run(EquivKind::C34, CoefDomain::Base, seed + 10 * m + 7, false);
    }
    return out;
}

Outcome bases() {
    Outcome out;
    for (unsigned m = 1; m <= 10; ++m) {
        const FieldParams F = make_field(m);
        const CubicExt E = make_cubic_ext(F);
        const TraceZeroBasis b = derive_trace_zero_basis(E);
        const bool ok = is_normal_element(E, b.theta) && E.trace(b.alpha).is_zero() &&
                        mat_inverse(F, b.from_xyz).has_value() &&
                        mat_mul(F, b.to_xyz, b.from_xyz) == Mat3::identity();
        out.require(ok, fmt("m=%-2u theta=%s alpha=%s Tr(alpha)=0, basis matrix invertible", m,
                            to_string(b.theta).c_str(), to_string(b.alpha).c_str()));
        if (m == 1)
            out.require(to_string(b.theta) == "0:1:1" && to_string(b.alpha) == "0:1:0",
                        "m=1 gives theta = t+1, alpha = t");
    }
    return out;
}

Outcome affine() {
    Outcome out;
    for (unsigned m : {2u, 3u}) {
        const CubicExt E = make_cubic_ext(make_field(m));
        SplitMix64 rng(seed + 100 + m);
        int ok = 0;
        for (int k = 0; k < affine_trials; ++k) {
            const ExtMap f = random_affine_subject(E, rng);
            const ExtElement c = random_ext_nonzero(E, rng), d = random_ext_nonzero(E, rng), b = random_ext(E, rng);
            ok += affine_equiv_check(E, f, c, d, b);
        }
        out.require(ok == affine_trials, fmt("m=%u: %d/%d", m, ok, affine_trials));
    }
    return out;
}

Outcome parser() {
    Outcome out;
    int texts = 0, fixpoints = 0;
    for (const auto& e : registry())
        for (const auto& v : e.variants) {
            ++texts;
            try {
                const FamilySpec f = parse_family(v.text);
                const std::string once = print_family(f);
                fixpoints += parse_family(once) == f && print_family(parse_family(once)) == once;
            } catch (const Error& err) {
                out.info(v.text + ": " + err.what());
            }
        }
    out.require(fixpoints == texts, fmt("%d/%d registry texts parse and reach a print fixpoint", fixpoints, texts));

    std::mt19937_64 rng(seed);
    const std::string alphabet = "Xgqa0123456789xcTr(){}^+-*/:. ";
    int crashes = 0, rejected = 0;
    for (int k = 0; k < fuzz_strings; ++k) {
        const std::size_t len = k % 100 == 0 ? rng() % 4097 : rng() % 80;
        std::string s(len, '\0');
        for (auto& c : s)
            c = k % 2 ? static_cast<char>(rng() & 0xFF) : alphabet[rng() % alphabet.size()];
        try {
            (void)parse_family(s);
        } catch (const ParseError&) {
            ++rejected;
        } catch (const ExprInvalid& e) {
            ++rejected;
            crashes += !e.offset();
        } catch (...) {
            ++crashes;
        }
    }
    out.require(crashes == 0, fmt("%d random strings: %d rejected with offsets, %d crashes", fuzz_strings, rejected,
                                  crashes));
    return out;
}

Outcome determinism() {
    Outcome out;
    const std::string cmd = std::string("\"") + TRACEPP_CLI_PATH +
                            "\" theorem F1 --m 2..4 --exhaustive --emit json --threads 2 2>/dev/null";
    const auto run = [&](int& status) {
        std::string data;
        FILE* p = popen(cmd.c_str(), "r");
        if (!p) {
            status = -1;
            return data;
        }
        char buf[4096];
        std::size_t n;
        while ((n = fread(buf, 1, sizeof buf, p)) > 0)
            data.append(buf, n);
        status = pclose(p);
        return data;
    };
    int s1 = 0, s2 = 0;
    const std::string a = run(s1), b = run(s2);
    const std::regex elapsed("\"elapsed_ms\":[0-9]+");
    const std::string sa = std::regex_replace(a, elapsed, "\"elapsed_ms\":_");
    const std::string sb = std::regex_replace(b, elapsed, "\"elapsed_ms\":_");
    const auto lines = std::count(a.begin(), a.end(), '\n');
    out.require(s1 == 0 && s2 == 0, fmt("both runs exit 0 (%d, %d)", s1, s2));
    out.require(!sa.empty() && sa == sb, fmt("%ld report lines identical apart from elapsed_ms", (long)lines));
    return out;
}

struct Criterion {
    const char* title;
    Outcome (*run)();
};

const Criterion criteria[] = {
    {"four-coefficient family: closed form vs brute force", main_theorem},
    {"one-parameter families F1..F8: predicate vs brute force", families},
    {"binomial table rows at g = 1", table_rows},
    {"trace expansions in trace-zero coordinates", identities},
    {"slice reduction: whole-field PP vs per-slice PP", slices},
    {"h-augmenting transforms preserve PP status", transforms},
    {"normal element and trace-zero basis for m <= 10", bases},
    {"affine equivalence c f(dX) + b", affine},
    {"parser round trip and fuzzing", parser},
    {"report stream determinism", determinism},
};

} // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i)
        selected.push_back(std::atoi(argv[i]));
    if (selected.empty())
        for (int i = 1; i <= 10; ++i)
            selected.push_back(i);

    int failed = 0;
    for (int n : selected) {
        if (n < 1 || n > 10) {
            std::fprintf(stderr, "no criterion %d\n", n);
            return 2;
        }
        const Criterion& c = criteria[n - 1];
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        for (const auto& line : o.notes)
            std::printf("%s\n", line.c_str());
        std::printf("%s criterion %2d: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", n, c.title, seconds_since(t0));
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
