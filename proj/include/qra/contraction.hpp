#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qra/algebra.hpp"
#include "qra/error.hpp"

namespace qra {

/// Positive (1 ≤ p), symmetric (∼p = −p = ¬p) and idempotent (p·p = p).
inline bool is_psi(const FiniteDqRA& A, ElementId p) {
    return A.leq(A.unit(), p) && A.tilde(p) == A.minus(p) && A.minus(p) == A.neg(p) && A.mul(p, p) == p;
}

/// All positive symmetric idempotents in index order.
inline std::vector<ElementId> psi_elements(const FiniteDqRA& A) {
    std::vector<ElementId> out;
    for (auto p : A.elements()) {
        if (is_psi(A, p)) out.push_back(p);
    }
    return out;
}

struct MembershipVerdict {
    bool in_pAp = false;          ///< b = p·a·p for some a
    bool pbp_eq_b = false;        ///< p·b·p = b
    bool pb_and_bp_eq_b = false;  ///< p·b = b and b·p = b

    bool member() const noexcept { return in_pAp; }
};

/// Evaluates the three equivalent membership conditions for pAp; throws if they
/// disagree, which can only happen when p is not idempotent or A is broken.
inline MembershipVerdict membership_tfae(const FiniteDqRA& A, ElementId p, ElementId b) {
    if (A.mul(p, p) != p) throw PreconditionError("p is not idempotent");
    MembershipVerdict v;
    for (auto a : A.elements()) {
        if (A.mul(A.mul(p, a), p) == b) {
            v.in_pAp = true;
            break;
        }
    }
    v.pbp_eq_b = A.mul(A.mul(p, b), p) == b;
    v.pb_and_bp_eq_b = A.mul(p, b) == b && A.mul(b, p) == b;
    if (v.in_pAp != v.pbp_eq_b || v.pbp_eq_b != v.pb_and_bp_eq_b) {
        throw PreconditionError("membership conditions for pAp disagree at b = " + A.label(b));
    }
    return v;
}

/// The contraction pAp: members {x | p·x·p = x} in parent index order, all
/// operations restricted from the parent, unit p.
struct Contraction {
    FiniteDqRA parent;
    ElementId p;
    std::vector<ElementId> members;  ///< inclusion map: contraction index -> parent element
    FiniteDqRA algebra;

    ElementId to_parent(ElementId local) const { return members.at(local.index()); }

    std::optional<ElementId> to_local(ElementId in_parent) const {
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (members[i] == in_parent) return ElementId(i);
        }
        return std::nullopt;
    }
};

inline Contraction contract(const FiniteDqRA& A, ElementId p) {
    if (!is_psi(A, p)) throw PreconditionError(A.label(p) + " is not a positive symmetric idempotent");
    std::vector<ElementId> members;
    std::vector<std::size_t> local(A.size(), A.size());
    for (auto x : A.elements()) {
        if (A.mul(A.mul(p, x), p) == x) {
            local[x.index()] = members.size();
            members.push_back(x);
        }
    }
    auto to_local = [&](ElementId x, const char* op) {
        const auto l = local[x.index()];
        if (l == A.size()) throw PreconditionError(std::string("pAp not closed under ") + op);
        return l;
    };

    const auto m = members.size();
    AlgebraTables t;
    t.name = A.name() + "|" + A.label(p);
    t.leq.assign(m, std::vector<bool>(m, false));
    t.mult.assign(m, std::vector<std::size_t>(m, 0));
    for (std::size_t i = 0; i < m; ++i) {
        const auto x = members[i];
        for (std::size_t j = 0; j < m; ++j) {
            const auto y = members[j];
            t.leq[i][j] = A.leq(x, y);
            t.mult[i][j] = to_local(A.mul(x, y), "·");
            // lattice closure: meets and joins of members stay in pAp
            if (auto mt = A.try_meet(x, y)) to_local(*mt, "∧");
            if (auto jn = A.try_join(x, y)) to_local(*jn, "∨");
        }
        t.tilde.push_back(to_local(A.tilde(x), "∼"));
        t.minus.push_back(to_local(A.minus(x), "−"));
        t.neg.push_back(to_local(A.neg(x), "¬"));
        if (A.has_labels()) t.labels.push_back(A.label(x));
    }
    t.unit = local[p.index()];
    return {A, p, std::move(members), FiniteDqRA(std::move(t))};
}

}  // namespace qra
