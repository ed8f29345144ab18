#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <tuple>
#include <vector>

#include "qra/algebra.hpp"

namespace qra {

namespace detail {

inline std::vector<std::tuple<std::size_t, std::size_t, bool>> element_invariants(const FiniteDqRA& A) {
    std::vector<std::tuple<std::size_t, std::size_t, bool>> inv;
    for (auto a : A.elements()) {
        std::size_t below = 0;
        std::size_t above = 0;
        for (auto b : A.elements()) {
            below += A.leq(b, a) ? 1 : 0;
            above += A.leq(a, b) ? 1 : 0;
        }
        inv.emplace_back(below, above, a == A.unit());
    }
    return inv;
}

}  // namespace detail

/// An isomorphism A → B as a table of images, or nullopt. Preserves the order
/// in both directions, ·, ∼, −, ¬ and the unit; labels are ignored.
inline std::optional<std::vector<ElementId>> find_isomorphism(const FiniteDqRA& A, const FiniteDqRA& B) {
    const std::size_t n = A.size();
    if (B.size() != n) return std::nullopt;
    const auto inv_a = detail::element_invariants(A);
    const auto inv_b = detail::element_invariants(B);
    {
        auto sa = inv_a;
        auto sb = inv_b;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return std::nullopt;
    }

    std::vector<std::optional<ElementId>> image(n);
    std::vector<bool> used(n, false);

    auto consistent = [&](ElementId a, ElementId b) {
        for (std::size_t xi = 0; xi < n; ++xi) {
            if (!image[xi]) continue;
            const ElementId x(xi);
            const ElementId fx = *image[xi];
            if (A.leq(a, x) != B.leq(b, fx) || A.leq(x, a) != B.leq(fx, b)) return false;
            if (auto r = image[A.mul(a, x).index()]; r && *r != B.mul(b, fx)) return false;
            if (auto r = image[A.mul(x, a).index()]; r && *r != B.mul(fx, b)) return false;
        }
        for (auto [src, dst] : {std::pair{A.tilde(a), B.tilde(b)}, std::pair{A.minus(a), B.minus(b)},
                                std::pair{A.neg(a), B.neg(b)}}) {
            if (src == a && dst != b) return false;
            if (auto r = image[src.index()]; r && *r != dst) return false;
        }
        // preimages: unary ops of already-mapped elements landing on a
        for (std::size_t xi = 0; xi < n; ++xi) {
            if (!image[xi]) continue;
            const ElementId x(xi);
            const ElementId fx = *image[xi];
            if ((A.tilde(x) == a) != (B.tilde(fx) == b)) return false;
            if ((A.minus(x) == a) != (B.minus(fx) == b)) return false;
            if ((A.neg(x) == a) != (B.neg(fx) == b)) return false;
        }
        return true;
    };

    auto full_check = [&]() {
        for (auto a : A.elements()) {
            const auto fa = *image[a.index()];
            if (B.tilde(fa) != *image[A.tilde(a).index()]) return false;
            if (B.minus(fa) != *image[A.minus(a).index()]) return false;
            if (B.neg(fa) != *image[A.neg(a).index()]) return false;
            for (auto b : A.elements()) {
                const auto fb = *image[b.index()];
                if (A.leq(a, b) != B.leq(fa, fb)) return false;
                if (B.mul(fa, fb) != *image[A.mul(a, b).index()]) return false;
            }
        }
        return *image[A.unit().index()] == B.unit();
    };

    auto search = [&](auto&& self, std::size_t i) -> bool {
        if (i == n) return full_check();
        for (std::size_t bi = 0; bi < n; ++bi) {
            if (used[bi] || inv_a[i] != inv_b[bi]) continue;
            const ElementId a(i);
            const ElementId b(bi);
            if (!consistent(a, b)) continue;
            image[i] = b;
            used[bi] = true;
            if (self(self, i + 1)) return true;
            image[i].reset();
            used[bi] = false;
        }
        return false;
    };

    if (!search(search, 0)) return std::nullopt;
    std::vector<ElementId> out;
    out.reserve(n);
    for (const auto& e : image) out.push_back(*e);
    return out;
}

inline bool isomorphic(const FiniteDqRA& A, const FiniteDqRA& B) { return find_isomorphism(A, B).has_value(); }

}  // namespace qra
