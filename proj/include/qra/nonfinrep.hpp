#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qra/algebra.hpp"
#include "qra/contraction.hpp"
#include "qra/error.hpp"

namespace qra {

enum class ObstructionKind { basic, contraction };

inline const char* to_string(ObstructionKind k) { return k == ObstructionKind::basic ? "basic" : "contraction"; }

/// Witness that A has no finite representation.
///   basic:       0 < a < 1 and a·a ≤ 0
///   contraction: p psi, p·b = b = b·p, −p < b < p and b·b ≤ −p
/// The defining inequalities are re-checked on construction.
class Obstruction {
public:
    static Obstruction basic(const FiniteDqRA& A, ElementId a) {
        const auto zero = derived_zero(A);
        if (!(A.less(zero, a) && A.less(a, A.unit()) && A.leq(A.mul(a, a), zero))) {
            throw PreconditionError("element " + A.label(a) + " does not satisfy 0 < a < 1, a·a ≤ 0");
        }
        return Obstruction(ObstructionKind::basic, {a}, "0 < " + A.label(a) + " < 1 and " + A.label(a) + "^2 <= 0");
    }

    static Obstruction contraction(const FiniteDqRA& A, ElementId p, ElementId b) {
        if (!satisfies_contraction(A, p, b)) {
            throw PreconditionError("(" + A.label(p) + ", " + A.label(b) + ") does not satisfy the contraction condition");
        }
        return Obstruction(ObstructionKind::contraction, {p, b},
                           "p=" + A.label(p) + " psi, pb=b=bp, -p < " + A.label(b) + " < p and b^2 <= -p");
    }

    static bool satisfies_contraction(const FiniteDqRA& A, ElementId p, ElementId b) {
        const auto mp = A.minus(p);
        return is_psi(A, p) && A.mul(p, b) == b && A.mul(b, p) == b && A.less(mp, b) && A.less(b, p) &&
               A.leq(A.mul(b, b), mp);
    }

    ObstructionKind kind() const noexcept { return kind_; }
    /// (a) for basic, (p, b) for contraction.
    const std::vector<ElementId>& witnesses() const noexcept { return witnesses_; }
    const std::string& note() const noexcept { return note_; }

private:
    Obstruction(ObstructionKind k, std::vector<ElementId> w, std::string note)
        : kind_(k), witnesses_(std::move(w)), note_(std::move(note)) {}

    ObstructionKind kind_;
    std::vector<ElementId> witnesses_;
    std::string note_;
};

/// Least-index a with 0 < a < 1 and a·a ≤ 0.
inline std::optional<Obstruction> basic_obstruction(const FiniteDqRA& A) {
    const auto zero = derived_zero(A);
    for (auto a : A.elements()) {
        if (A.less(zero, a) && A.less(a, A.unit()) && A.leq(A.mul(a, a), zero)) return Obstruction::basic(A, a);
    }
    return std::nullopt;
}

/// Least witness (p, b). The unit is tried first among the psi elements, so a
/// basic witness a always comes back as (1, a); the remaining psi elements
/// follow in index order, and b in index order within each p.
inline std::optional<Obstruction> contraction_obstruction(const FiniteDqRA& A) {
    std::vector<ElementId> order{A.unit()};
    for (auto p : psi_elements(A)) {
        if (p != A.unit()) order.push_back(p);
    }
    for (auto p : order) {
        if (!is_psi(A, p)) continue;
        for (auto b : A.elements()) {
            if (Obstruction::satisfies_contraction(A, p, b)) return Obstruction::contraction(A, p, b);
        }
    }
    return std::nullopt;
}

struct ContractionScanEntry {
    ElementId p;
    Contraction contraction;
    std::optional<ElementId> witness;  ///< basic witness of pAp, as a parent element
};

struct ContractionScan {
    std::vector<ContractionScanEntry> entries;  ///< one per psi element, index order

    bool flagged() const {
        for (const auto& e : entries) {
            if (e.witness) return true;
        }
        return false;
    }
};

/// Contracts A at every psi p and looks for a basic obstruction in each pAp.
/// Throws if the outcome disagrees with contraction_obstruction() on existence.
inline ContractionScan scan_contractions(const FiniteDqRA& A) {
    ContractionScan scan;
    for (auto p : psi_elements(A)) {
        auto c = contract(A, p);
        std::optional<ElementId> w;
        if (auto ob = basic_obstruction(c.algebra)) w = c.to_parent(ob->witnesses().front());
        scan.entries.push_back({p, std::move(c), w});
    }
    if (scan.flagged() != contraction_obstruction(A).has_value()) {
        throw Error("contraction scan and contraction obstruction disagree for " + A.name());
    }
    return scan;
}

}  // namespace qra
