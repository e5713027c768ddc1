/**************************************************************************
 * permcheck.hpp
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
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "basis.hpp"
#include "family.hpp"

namespace tracepp {

struct PermResult {
    bool is_perm = true;
    /// (j, i) with j < i and equal images; i is the smallest index whose image was already taken.
    std::optional<std::pair<std::uint64_t, std::uint64_t>> collision;
    std::uint64_t domain_size = 0;

    bool operator==(const PermResult&) const = default;
};

namespace detail {

template <typename Eval>
PermResult scan_occupancy(Eval&& image, std::uint64_t size) {
    std::vector<std::uint64_t> seen((size + 63) / 64, 0);
    for (std::uint64_t i = 0; i < size; ++i) {
        const std::uint64_t y = image(i);
        if (y >= size)
            throw EvalRangeError("image " + std::to_string(y) + " of input " + std::to_string(i) +
                                 " outside [0, " + std::to_string(size) + ")");
        const std::uint64_t bit = std::uint64_t{1} << (y & 63);
        if (seen[y >> 6] & bit) {
            std::uint64_t j = 0;
            while (image(j) != y)
                ++j;
            return {false, std::make_pair(j, i), size};
        }
        seen[y >> 6] |= bit;
    }
    return {true, std::nullopt, size};
}

} // namespace detail

/// Occupancy test of i -> eval(i) on [0, size). With threads > 1 the images are computed in
/// parallel chunks and scanned afterwards, so the witness does not depend on scheduling.
template <typename Eval>
PermResult is_permutation(Eval&& eval, std::uint64_t size, unsigned threads = 1) {
    if (threads <= 1 || size < 4096)
        return detail::scan_occupancy([&](std::uint64_t i) { return static_cast<std::uint64_t>(eval(i)); }, size);

    std::vector<std::uint64_t> images(size);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        const std::uint64_t chunk = (size + threads - 1) / threads;
        for (unsigned w = 0; w < threads; ++w) {
            const std::uint64_t lo = w * chunk, hi = std::min(size, lo + chunk);
            if (lo >= hi)
                break;
            pool.emplace_back([&, lo, hi] {
                try {
                    for (std::uint64_t i = lo; i < hi; ++i)
                        images[i] = static_cast<std::uint64_t>(eval(i));
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            });
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return detail::scan_occupancy([&](std::uint64_t i) { return images[i]; }, size);
}

/// Whole-domain evaluator of X + a X^q + gamma * T[X] with a precomputed Tr(h) table.
class DomainMap {
public:
    explicit DomainMap(const CubicExt& E) : E_(E), frob_(E.size()) {
        for (std::uint64_t i = 0; i < E.size(); ++i)
            frob_[i] = E.pack(E.frobenius(E.unpack(i)));
    }

    const CubicExt& ext() const noexcept { return E_; }
    std::uint64_t frobenius_index(std::uint64_t i) const noexcept { return frob_[i]; }

    std::uint64_t image(std::uint64_t i, FieldElement a, FieldElement gamma,
                        const std::vector<std::uint32_t>& trace_h) const noexcept {
        const ExtElement xq = E_.unpack(frob_[i]);
        std::uint64_t y = i ^ E_.pack(E_.scale(a, xq));
        if (!gamma.is_zero())
            y ^= E_.base().mul(gamma, FieldElement{trace_h[i]}).value;
        return y;
    }

    PermResult is_pp(FieldElement a, FieldElement gamma, const std::vector<std::uint32_t>& trace_h,
                     unsigned threads = 1) const {
        return is_permutation([&](std::uint64_t i) { return image(i, a, gamma, trace_h); }, E_.size(), threads);
    }

private:
    CubicExt E_;
    std::vector<std::uint64_t> frob_;
};

/// Brute-force PP test of an instance, evaluating f(X) directly for every X.
inline PermResult instance_is_pp(const CubicExt& E, const FamilyInstance& f, unsigned threads = 1) {
    return is_permutation([&](std::uint64_t i) { return E.pack(f.eval(E, E.unpack(i))); }, E.size(), threads);
}

struct SliceCheck {
    bool lhs = false; ///< f permutes F_{q^3}
    bool rhs = false; ///< every slice x -> (a+1)x + gamma Tr(h(x + y alpha + z alpha^q)) permutes F_q
};

/// Both sides of the slice criterion, computed independently.
inline SliceCheck slice_reduction_check(const CubicExt& E, const TraceZeroBasis& basis, const FamilyInstance& f) {
    const FieldParams& F = E.base();
    if (F.add(F.add(F.sqr(f.a), f.a), F.one()).is_zero())
        throw HypothesisError("a^2 + a + 1 = 0; the slice criterion needs a^2 + a + 1 != 0");
    SliceCheck out;
    out.lhs = instance_is_pp(E, f).is_perm;

    const FieldElement a1 = F.add(f.a, F.one());
    out.rhs = true;
    for (std::uint32_t y = 0; y < F.q() && out.rhs; ++y)
        for (std::uint32_t z = 0; z < F.q() && out.rhs; ++z) {
            auto slice = [&](std::uint64_t x) {
                const ExtElement X = compose(basis, {FieldElement{static_cast<std::uint32_t>(x)}, FieldElement{y},
                                                     FieldElement{z}});
                return F.add(F.mul(a1, FieldElement{static_cast<std::uint32_t>(x)}),
                             F.mul(f.gamma, f.trace_h(E, X)))
                    .value;
            };
            out.rhs = is_permutation(slice, F.q()).is_perm;
        }
    return out;
}

using ExtMap = std::function<ExtElement(const ExtElement&)>;

/// (f is PP) == (c f(dX) + b is PP), both by brute force.
inline bool affine_equiv_check(const CubicExt& E, const ExtMap& f, const ExtElement& c, const ExtElement& d,
                               const ExtElement& b) {
    if (c.is_zero() || d.is_zero())
        throw ParamError("affine equivalence needs c != 0 and d != 0");
    const bool plain = is_permutation([&](std::uint64_t i) { return E.pack(f(E.unpack(i))); }, E.size()).is_perm;
    const bool shifted =
        is_permutation([&](std::uint64_t i) { return E.pack(E.add(E.mul(c, f(E.mul(d, E.unpack(i)))), b)); },
                       E.size())
            .is_perm;
    return plain == shifted;
}

} // namespace tracepp
