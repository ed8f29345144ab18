#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qra/error.hpp"

namespace qra {

/// Index of an element in a finite algebra.
struct ElementId {
    std::uint32_t value = 0;

    constexpr ElementId() = default;
    constexpr explicit ElementId(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}

    constexpr std::size_t index() const noexcept { return value; }

    friend constexpr auto operator<=>(ElementId, ElementId) = default;
};

inline std::ostream& operator<<(std::ostream& os, ElementId e) { return os << e.value; }

/// Raw table input for a finite algebra. Rows are indexed by element index.
struct AlgebraTables {
    std::string name;
    std::vector<std::vector<bool>> leq;
    std::vector<std::vector<std::size_t>> mult;
    std::vector<std::size_t> tilde;
    std::vector<std::size_t> minus;
    std::vector<std::size_t> neg;
    std::size_t unit = 0;
    std::vector<std::string> labels;
    std::string provenance;
};

/// A finite algebra in the signature (leq, ·, ∼, −, ¬, 1). Meets and joins are
/// derived from the order and cached; a pair without a meet or join is recorded
/// as such and reported by validation rather than rejected here.
///
/// Construction only checks shape: every table total and every entry in range.
/// Whether the tables satisfy the quasi relation algebra axioms is the job of
/// validate_dqra().
class FiniteDqRA {
public:
    explicit FiniteDqRA(AlgebraTables t) {
        const std::size_t n = t.leq.size();
        if (n == 0) throw MalformedInput("algebra must have at least one element");
        if (n > std::numeric_limits<std::uint32_t>::max() / 2) throw MalformedInput("algebra too large");
        n_ = n;
        name_ = std::move(t.name);
        provenance_ = std::move(t.provenance);

        leq_.assign(n * n, 0);
        for (std::size_t a = 0; a < n; ++a) {
            if (t.leq[a].size() != n) {
                throw MalformedInput("order row " + std::to_string(a) + " has " + std::to_string(t.leq[a].size()) +
                                     " entries, expected " + std::to_string(n));
            }
            for (std::size_t b = 0; b < n; ++b) leq_[a * n + b] = t.leq[a][b] ? 1 : 0;
        }

        if (t.mult.size() != n) {
            throw MalformedInput("mult table has " + std::to_string(t.mult.size()) + " rows, expected " +
                                 std::to_string(n));
        }
        mult_.resize(n * n);
        for (std::size_t a = 0; a < n; ++a) {
            if (t.mult[a].size() != n) {
                throw MalformedInput("mult row " + std::to_string(a) + " has " + std::to_string(t.mult[a].size()) +
                                     " entries, expected " + std::to_string(n));
            }
            for (std::size_t b = 0; b < n; ++b) mult_[a * n + b] = checked(t.mult[a][b], "mult entry");
        }

        tilde_ = unary_table(t.tilde, "tilde");
        minus_ = unary_table(t.minus, "minus");
        neg_ = unary_table(t.neg, "neg");
        unit_ = checked(t.unit, "unit");

        if (!t.labels.empty()) {
            if (t.labels.size() != n) throw MalformedInput("label count does not match algebra size");
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < i; ++j) {
                    if (t.labels[i] == t.labels[j]) throw MalformedInput("duplicate label '" + t.labels[i] + "'");
                }
            }
        }
        labels_ = std::move(t.labels);
        compute_bounds();
    }

    std::size_t size() const noexcept { return n_; }
    const std::string& name() const noexcept { return name_; }
    const std::string& provenance() const noexcept { return provenance_; }
    bool has_labels() const noexcept { return !labels_.empty(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    ElementId element(std::size_t i) const { return checked(i, "element index"); }

    std::vector<ElementId> elements() const {
        std::vector<ElementId> out;
        out.reserve(n_);
        for (std::size_t i = 0; i < n_; ++i) out.emplace_back(i);
        return out;
    }

    std::string label(ElementId a) const {
        check(a);
        return labels_.empty() ? std::to_string(a.value) : labels_[a.index()];
    }

    /// Resolves a display label (or a decimal index when the algebra has no labels).
    std::optional<ElementId> find(const std::string& label) const {
        if (labels_.empty()) {
            try {
                std::size_t pos = 0;
                const auto v = std::stoul(label, &pos);
                if (pos == label.size() && v < n_) return ElementId(v);
            } catch (const std::exception&) {
            }
            return std::nullopt;
        }
        for (std::size_t i = 0; i < n_; ++i) {
            if (labels_[i] == label) return ElementId(i);
        }
        return std::nullopt;
    }

    bool leq(ElementId a, ElementId b) const {
        check(a);
        check(b);
        return leq_[a.index() * n_ + b.index()] != 0;
    }

    bool less(ElementId a, ElementId b) const { return a != b && leq(a, b); }

    ElementId mul(ElementId a, ElementId b) const {
        check(a);
        check(b);
        return mult_[a.index() * n_ + b.index()];
    }

    ElementId tilde(ElementId a) const { return tilde_.at(a.index()); }
    ElementId minus(ElementId a) const { return minus_.at(a.index()); }
    ElementId neg(ElementId a) const { return neg_.at(a.index()); }
    ElementId unit() const noexcept { return unit_; }

    /// Greatest lower bound under leq, if one exists.
    std::optional<ElementId> try_meet(ElementId a, ElementId b) const {
        check(a);
        check(b);
        const auto v = meet_[a.index() * n_ + b.index()];
        if (v == none) return std::nullopt;
        return v;
    }

    std::optional<ElementId> try_join(ElementId a, ElementId b) const {
        check(a);
        check(b);
        const auto v = join_[a.index() * n_ + b.index()];
        if (v == none) return std::nullopt;
        return v;
    }

    ElementId meet(ElementId a, ElementId b) const {
        auto m = try_meet(a, b);
        if (!m) throw PreconditionError("no meet of " + label(a) + " and " + label(b));
        return *m;
    }

    ElementId join(ElementId a, ElementId b) const {
        auto j = try_join(a, b);
        if (!j) throw PreconditionError("no join of " + label(a) + " and " + label(b));
        return *j;
    }

    std::optional<ElementId> top() const { return top_; }
    std::optional<ElementId> bottom() const { return bottom_; }

    /// Copy of the raw tables, e.g. for mutation in tests or re-serialisation.
    AlgebraTables tables() const {
        AlgebraTables t;
        t.name = name_;
        t.provenance = provenance_;
        t.labels = labels_;
        t.unit = unit_.index();
        t.leq.assign(n_, std::vector<bool>(n_, false));
        t.mult.assign(n_, std::vector<std::size_t>(n_, 0));
        for (std::size_t a = 0; a < n_; ++a) {
            for (std::size_t b = 0; b < n_; ++b) {
                t.leq[a][b] = leq_[a * n_ + b] != 0;
                t.mult[a][b] = mult_[a * n_ + b].index();
            }
            t.tilde.push_back(tilde_[a].index());
            t.minus.push_back(minus_[a].index());
            t.neg.push_back(neg_[a].index());
        }
        return t;
    }

    friend bool operator==(const FiniteDqRA& x, const FiniteDqRA& y) {
        return x.n_ == y.n_ && x.leq_ == y.leq_ && x.mult_ == y.mult_ && x.tilde_ == y.tilde_ &&
               x.minus_ == y.minus_ && x.neg_ == y.neg_ && x.unit_ == y.unit_;
    }

private:
    static constexpr ElementId none{std::numeric_limits<std::uint32_t>::max()};

    void check(ElementId a) const {
        if (a.index() >= n_) {
            throw MalformedInput("element " + std::to_string(a.value) + " outside algebra of size " +
                                 std::to_string(n_));
        }
    }

    ElementId checked(std::size_t v, const char* what) const {
        if (v >= n_) {
            throw MalformedInput(std::string(what) + " " + std::to_string(v) + " outside algebra of size " +
                                 std::to_string(n_));
        }
        return ElementId(v);
    }

    std::vector<ElementId> unary_table(const std::vector<std::size_t>& t, const char* what) const {
        if (t.size() != n_) {
            throw MalformedInput(std::string(what) + " table has " + std::to_string(t.size()) +
                                 " entries, expected " + std::to_string(n_));
        }
        std::vector<ElementId> out;
        out.reserve(n_);
        for (auto v : t) out.push_back(checked(v, what));
        return out;
    }

    bool le(std::size_t a, std::size_t b) const { return leq_[a * n_ + b] != 0; }

    // Down-sets and up-sets as bit rows; the meet of a and b is the lower bound
    // whose down-set equals down(a) ∩ down(b), and dually for joins.
    void compute_bounds() {
        const std::size_t words = (n_ + 63) / 64;
        std::vector<std::uint64_t> down(n_ * words, 0);
        std::vector<std::uint64_t> up(n_ * words, 0);
        std::vector<std::size_t> down_count(n_, 0);
        std::vector<std::size_t> up_count(n_, 0);
        for (std::size_t a = 0; a < n_; ++a) {
            for (std::size_t b = 0; b < n_; ++b) {
                if (le(b, a)) {
                    down[a * words + b / 64] |= std::uint64_t{1} << (b % 64);
                    ++down_count[a];
                }
                if (le(a, b)) {
                    up[a * words + b / 64] |= std::uint64_t{1} << (b % 64);
                    ++up_count[a];
                }
            }
        }
        auto bound = [&](const std::vector<std::uint64_t>& sets, const std::vector<std::size_t>& counts,
                         std::size_t a, std::size_t b) -> ElementId {
            std::vector<std::uint64_t> common(words);
            std::size_t total = 0;
            for (std::size_t w = 0; w < words; ++w) {
                common[w] = sets[a * words + w] & sets[b * words + w];
                total += static_cast<std::size_t>(std::popcount(common[w]));
            }
            for (std::size_t w = 0; w < words; ++w) {
                std::uint64_t bits = common[w];
                while (bits != 0) {
                    const std::size_t m = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                    if (counts[m] == total) return ElementId(m);
                    bits &= bits - 1;
                }
            }
            return none;
        };
        meet_.assign(n_ * n_, none);
        join_.assign(n_ * n_, none);
        for (std::size_t a = 0; a < n_; ++a) {
            for (std::size_t b = a; b < n_; ++b) {
                meet_[a * n_ + b] = meet_[b * n_ + a] = bound(down, down_count, a, b);
                join_[a * n_ + b] = join_[b * n_ + a] = bound(up, up_count, a, b);
            }
        }
        for (std::size_t t = 0; t < n_; ++t) {
            if (!top_ && down_count[t] == n_) top_ = ElementId(t);
            if (!bottom_ && up_count[t] == n_) bottom_ = ElementId(t);
        }
    }

    std::size_t n_ = 0;
    std::string name_;
    std::string provenance_;
    std::vector<std::string> labels_;
    std::vector<std::uint8_t> leq_;
    std::vector<ElementId> mult_;
    std::vector<ElementId> tilde_;
    std::vector<ElementId> minus_;
    std::vector<ElementId> neg_;
    ElementId unit_;
    std::vector<ElementId> meet_;
    std::vector<ElementId> join_;
    std::optional<ElementId> top_;
    std::optional<ElementId> bottom_;
};

/// 0 = ∼1. Throws PreconditionError unless ∼1 = −1 = ¬1.
inline ElementId derived_zero(const FiniteDqRA& a) {
    const auto one = a.unit();
    const auto z = a.tilde(one);
    if (a.minus(one) != z || a.neg(one) != z) {
        throw PreconditionError("∼1, −1 and ¬1 disagree; not a quasi relation algebra");
    }
    return z;
}

/// a + b = −(∼b · ∼a), the dual of ·; cross-checked against ∼(−b · −a).
/// The operand order matters once · is not commutative: ∼(−a · −b) is b + a.
inline ElementId plus(const FiniteDqRA& alg, ElementId a, ElementId b) {
    const auto s = alg.minus(alg.mul(alg.tilde(b), alg.tilde(a)));
    if (s != alg.tilde(alg.mul(alg.minus(b), alg.minus(a)))) {
        throw PreconditionError("a+b computed two ways disagrees at (" + alg.label(a) + ", " + alg.label(b) +
                                "); (In) is broken");
    }
    return s;
}

struct Residuals {
    ElementId left;   ///< a\c = ∼(−c · a)
    ElementId right;  ///< c/a = −(a · ∼c)
};

/// Left and right residuals of c by a, computed from · and the linear negations.
inline Residuals residuals(const FiniteDqRA& alg, ElementId a, ElementId c) {
    return {alg.tilde(alg.mul(alg.minus(c), a)), alg.minus(alg.mul(a, alg.tilde(c)))};
}

/// Exhaustively checks a·b ≤ c iff b ≤ a\c iff a ≤ c/b for every triple.
inline bool residuation_holds(const FiniteDqRA& alg) {
    for (auto a : alg.elements()) {
        for (auto b : alg.elements()) {
            for (auto c : alg.elements()) {
                const bool prod = alg.leq(alg.mul(a, b), c);
                const bool via_left = alg.leq(b, residuals(alg, a, c).left);
                const bool via_right = alg.leq(a, residuals(alg, b, c).right);
                if (prod != via_left || prod != via_right) return false;
            }
        }
    }
    return true;
}

}  // namespace qra
