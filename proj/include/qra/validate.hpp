#pragma once

#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "qra/algebra.hpp"

namespace qra {

struct LawVerdict {
    std::string law;
    bool passed = true;
    /// Elements (or points) of the first counterexample found; empty when passed.
    std::vector<std::size_t> witness;
    std::string detail;
};

/// Per-law verdicts. Every listed law was checked exhaustively; a failed law
/// always carries a witness.
class ValidationReport {
public:
    void pass(std::string law) { verdicts_.push_back({std::move(law), true, {}, {}}); }

    void fail(std::string law, std::vector<std::size_t> witness, std::string detail = {}) {
        if (witness.empty()) witness.push_back(0);
        verdicts_.push_back({std::move(law), false, std::move(witness), std::move(detail)});
    }

    void record(std::string law, const std::vector<std::size_t>& witness, std::string detail = {}) {
        if (witness.empty()) {
            pass(std::move(law));
        } else {
            fail(std::move(law), witness, std::move(detail));
        }
    }

    /// Marks a law as not checked because a prerequisite failed.
    void skip(std::string law, std::string why) {
        verdicts_.push_back({std::move(law), false, {0}, "skipped: " + std::move(why)});
    }

    bool ok() const {
        for (const auto& v : verdicts_) {
            if (!v.passed) return false;
        }
        return true;
    }

    const std::vector<LawVerdict>& verdicts() const noexcept { return verdicts_; }

    std::vector<LawVerdict> failures() const {
        std::vector<LawVerdict> out;
        for (const auto& v : verdicts_) {
            if (!v.passed) out.push_back(v);
        }
        return out;
    }

    const LawVerdict* find(const std::string& law) const {
        for (const auto& v : verdicts_) {
            if (v.law == law) return &v;
        }
        return nullptr;
    }

    bool passed(const std::string& law) const {
        const auto* v = find(law);
        return v != nullptr && v->passed;
    }

    void merge(const ValidationReport& other) {
        verdicts_.insert(verdicts_.end(), other.verdicts_.begin(), other.verdicts_.end());
    }

    friend bool operator==(const ValidationReport& a, const ValidationReport& b) {
        if (a.verdicts_.size() != b.verdicts_.size()) return false;
        for (std::size_t i = 0; i < a.verdicts_.size(); ++i) {
            const auto& x = a.verdicts_[i];
            const auto& y = b.verdicts_[i];
            if (x.law != y.law || x.passed != y.passed || x.witness != y.witness || x.detail != y.detail) {
                return false;
            }
        }
        return true;
    }

private:
    std::vector<LawVerdict> verdicts_;
};

inline std::ostream& operator<<(std::ostream& os, const ValidationReport& r) {
    for (const auto& v : r.verdicts()) {
        os << (v.passed ? "pass " : "FAIL ") << v.law;
        if (!v.passed) {
            os << " witness (";
            for (std::size_t i = 0; i < v.witness.size(); ++i) os << (i ? "," : "") << v.witness[i];
            os << ")";
            if (!v.detail.empty()) os << " " << v.detail;
        }
        os << '\n';
    }
    return os;
}

namespace laws {
inline constexpr const char* partial_order = "partial-order";
inline constexpr const char* lattice = "lattice";
inline constexpr const char* distributive = "distributive";
inline constexpr const char* monoid_unit = "monoid-unit";
inline constexpr const char* associative = "associative";
inline constexpr const char* residuation = "residuation";
inline constexpr const char* involutive = "in";
inline constexpr const char* neg_involution = "neg-involution";
inline constexpr const char* de_morgan = "dm";
inline constexpr const char* de_morgan_product = "dp";
inline constexpr const char* de_morgan_involution = "di";
inline constexpr const char* star = "star";
}  // namespace laws

namespace detail {

template <class Pred>
std::vector<std::size_t> first_failing_pair(std::size_t n, Pred&& holds) {
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (!holds(ElementId(a), ElementId(b))) return {a, b};
        }
    }
    return {};
}

template <class Pred>
std::vector<std::size_t> first_failing_triple(std::size_t n, Pred&& holds) {
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                if (!holds(ElementId(a), ElementId(b), ElementId(c))) return {a, b, c};
            }
        }
    }
    return {};
}

template <class Pred>
std::vector<std::size_t> first_failing_element(std::size_t n, Pred&& holds) {
    for (std::size_t a = 0; a < n; ++a) {
        if (!holds(ElementId(a))) return {a};
    }
    return {};
}

}  // namespace detail

/// Exhaustive check of the distributive quasi relation algebra axioms.
///
/// Order of checks: partial order, lattice (every pair has meet and join),
/// distributivity, monoid laws, residuation (∗∗), (In), ¬¬a = a, (Dm), (Dp).
/// Laws whose statement needs meets/joins are skipped when the order is not a
/// lattice; those skips count as failures.
inline ValidationReport validate_dqra(const FiniteDqRA& A) {
    using detail::first_failing_element;
    using detail::first_failing_pair;
    using detail::first_failing_triple;
    ValidationReport r;
    const std::size_t n = A.size();

    std::vector<std::size_t> w = first_failing_element(n, [&](ElementId a) { return A.leq(a, a); });
    if (w.empty()) {
        w = first_failing_pair(n, [&](ElementId a, ElementId b) { return !(A.leq(a, b) && A.leq(b, a)) || a == b; });
    }
    if (w.empty()) {
        w = first_failing_triple(n, [&](ElementId a, ElementId b, ElementId c) {
            return !(A.leq(a, b) && A.leq(b, c)) || A.leq(a, c);
        });
    }
    r.record(laws::partial_order, w);
    const bool poset = w.empty();

    w = first_failing_pair(n, [&](ElementId a, ElementId b) { return A.try_meet(a, b) && A.try_join(a, b); });
    r.record(laws::lattice, poset ? w : std::vector<std::size_t>{0, 0}, poset ? "" : "order is not a partial order");
    const bool lattice = poset && w.empty();

    if (lattice) {
        r.record(laws::distributive, first_failing_triple(n, [&](ElementId a, ElementId b, ElementId c) {
                     return A.meet(a, A.join(b, c)) == A.join(A.meet(a, b), A.meet(a, c));
                 }));
    } else {
        r.skip(laws::distributive, "not a lattice");
    }

    const auto one = A.unit();
    r.record(laws::monoid_unit,
             first_failing_element(n, [&](ElementId a) { return A.mul(one, a) == a && A.mul(a, one) == a; }));
    r.record(laws::associative, first_failing_triple(n, [&](ElementId a, ElementId b, ElementId c) {
                 return A.mul(A.mul(a, b), c) == A.mul(a, A.mul(b, c));
             }));

    // a·b ≤ c  iff  a ≤ −(b·∼c)  iff  b ≤ ∼(−c·a)
    r.record(laws::residuation, first_failing_triple(n, [&](ElementId a, ElementId b, ElementId c) {
                 const bool p = A.leq(A.mul(a, b), c);
                 return p == A.leq(a, A.minus(A.mul(b, A.tilde(c)))) && p == A.leq(b, A.tilde(A.mul(A.minus(c), a)));
             }));

    r.record(laws::involutive, first_failing_element(n, [&](ElementId a) {
                 return A.tilde(A.minus(a)) == a && A.minus(A.tilde(a)) == a;
             }));
    r.record(laws::neg_involution, first_failing_element(n, [&](ElementId a) { return A.neg(A.neg(a)) == a; }));

    if (lattice) {
        r.record(laws::de_morgan, first_failing_pair(n, [&](ElementId a, ElementId b) {
                     return A.neg(A.join(a, b)) == A.meet(A.neg(a), A.neg(b));
                 }));
    } else {
        r.skip(laws::de_morgan, "not a lattice");
    }

    // ¬(ab) = ¬a + ¬b with x + y = ∼(−x·−y)
    r.record(laws::de_morgan_product, first_failing_pair(n, [&](ElementId a, ElementId b) {
                 const auto na = A.neg(a);
                 const auto nb = A.neg(b);
                 return A.neg(A.mul(a, b)) == A.minus(A.mul(A.tilde(nb), A.tilde(na)));
             }));
    return r;
}

/// (Di) ¬∼a = −¬a, together with (∗): a ≤ b iff a·∼b ≤ −1 iff (−b)·a ≤ −1.
inline ValidationReport check_di(const FiniteDqRA& A) {
    ValidationReport r;
    const std::size_t n = A.size();
    r.record(laws::de_morgan_involution,
             detail::first_failing_element(n, [&](ElementId a) { return A.neg(A.tilde(a)) == A.minus(A.neg(a)); }));
    const auto m1 = A.minus(A.unit());
    r.record(laws::star, detail::first_failing_pair(n, [&](ElementId a, ElementId b) {
                 const bool le = A.leq(a, b);
                 return le == A.leq(A.mul(a, A.tilde(b)), m1) && le == A.leq(A.mul(A.minus(b), a), m1);
             }));
    return r;
}

}  // namespace qra
