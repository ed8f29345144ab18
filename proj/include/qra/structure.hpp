#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qra/binrel.hpp"
#include "qra/error.hpp"
#include "qra/validate.hpp"

namespace qra {

/// A finite poset (X, ≤) with an equivalence E ⊇ ≤, an order automorphism α
/// and a self-inverse dual order automorphism β. The constructor checks shape
/// only; validate_structure() checks the algebraic conditions.
struct RelStructure {
    std::string name;
    BinRel leq;
    BinRel equiv;
    Permutation alpha;
    Permutation beta;
    std::vector<std::string> labels;

    RelStructure() = default;

    RelStructure(std::string name_, BinRel leq_, BinRel equiv_, Permutation alpha_, Permutation beta_,
                 std::vector<std::string> labels_ = {})
        : name(std::move(name_)),
          leq(std::move(leq_)),
          equiv(std::move(equiv_)),
          alpha(std::move(alpha_)),
          beta(std::move(beta_)),
          labels(std::move(labels_)) {
        const auto n = leq.points();
        if (n == 0) throw MalformedInput("structure must have at least one point");
        if (equiv.points() != n) throw MalformedInput("E and leq have different carriers");
        if (alpha.size() != n || beta.size() != n) throw MalformedInput("alpha/beta must list one image per point");
        for (auto p : alpha) {
            if (p >= n) throw MalformedInput("alpha image outside carrier");
        }
        for (auto p : beta) {
            if (p >= n) throw MalformedInput("beta image outside carrier");
        }
        if (!labels.empty() && labels.size() != n) throw MalformedInput("label count does not match carrier size");
    }

    std::size_t points() const noexcept { return leq.points(); }

    std::string label(Point x) const { return labels.empty() ? std::to_string(x) : labels.at(x); }

    std::optional<Point> find(const std::string& l) const {
        if (labels.empty()) {
            try {
                std::size_t pos = 0;
                const auto v = std::stoul(l, &pos);
                if (pos == l.size() && v < points()) return v;
            } catch (const std::exception&) {
            }
            return std::nullopt;
        }
        for (Point i = 0; i < labels.size(); ++i) {
            if (labels[i] == l) return i;
        }
        return std::nullopt;
    }

    BinRel alpha_graph() const { return BinRel::graph(alpha); }
    BinRel beta_graph() const { return BinRel::graph(beta); }
};

inline bool is_permutation_of_carrier(const Permutation& f) {
    std::vector<bool> seen(f.size(), false);
    for (auto p : f) {
        if (p >= f.size() || seen[p]) return false;
        seen[p] = true;
    }
    return true;
}

/// Checks every structural condition; each violated condition is reported with
/// a witness tuple of points.
inline ValidationReport validate_structure(const RelStructure& S) {
    ValidationReport r;
    const auto n = S.points();
    const auto& le = S.leq;
    const auto& E = S.equiv;

    auto first_point = [&](auto&& ok) -> std::vector<std::size_t> {
        for (Point x = 0; x < n; ++x) {
            if (!ok(x)) return {x};
        }
        return {};
    };
    auto first_pair = [&](auto&& ok) -> std::vector<std::size_t> {
        for (Point x = 0; x < n; ++x) {
            for (Point y = 0; y < n; ++y) {
                if (!ok(x, y)) return {x, y};
            }
        }
        return {};
    };
    auto first_triple = [&](auto&& ok) -> std::vector<std::size_t> {
        for (Point x = 0; x < n; ++x) {
            for (Point y = 0; y < n; ++y) {
                for (Point z = 0; z < n; ++z) {
                    if (!ok(x, y, z)) return {x, y, z};
                }
            }
        }
        return {};
    };

    r.record("leq-reflexive", first_point([&](Point x) { return le.contains(x, x); }));
    r.record("leq-antisymmetric",
             first_pair([&](Point x, Point y) { return x == y || !(le.contains(x, y) && le.contains(y, x)); }));
    r.record("leq-transitive", first_triple([&](Point x, Point y, Point z) {
                 return !(le.contains(x, y) && le.contains(y, z)) || le.contains(x, z);
             }));
    r.record("E-reflexive", first_point([&](Point x) { return E.contains(x, x); }));
    r.record("E-symmetric", first_pair([&](Point x, Point y) { return E.contains(x, y) == E.contains(y, x); }));
    r.record("E-transitive", first_triple([&](Point x, Point y, Point z) {
                 return !(E.contains(x, y) && E.contains(y, z)) || E.contains(x, z);
             }));
    r.record("leq-within-E", first_pair([&](Point x, Point y) { return !le.contains(x, y) || E.contains(x, y); }));

    const bool alpha_perm = is_permutation_of_carrier(S.alpha);
    const bool beta_perm = is_permutation_of_carrier(S.beta);
    r.record("alpha-bijective", alpha_perm ? std::vector<std::size_t>{} : std::vector<std::size_t>{0});
    r.record("beta-bijective", beta_perm ? std::vector<std::size_t>{} : std::vector<std::size_t>{0});

    r.record("alpha-order-automorphism", first_pair([&](Point x, Point y) {
                 return le.contains(x, y) == le.contains(S.alpha[x], S.alpha[y]);
             }));
    r.record("beta-dual-order-automorphism", first_pair([&](Point x, Point y) {
                 return le.contains(x, y) == le.contains(S.beta[y], S.beta[x]);
             }));
    r.record("beta-self-inverse", first_point([&](Point x) { return S.beta[S.beta[x]] == x; }));
    r.record("alpha-within-E", first_point([&](Point x) { return E.contains(x, S.alpha[x]); }));
    r.record("beta-within-E", first_point([&](Point x) { return E.contains(x, S.beta[x]); }));
    // β = α;β;α as relations: x ↦ α(β(α(x)))
    r.record("beta-eq-alpha-beta-alpha",
             first_point([&](Point x) { return S.alpha[S.beta[S.alpha[x]]] == S.beta[x]; }));
    return r;
}

/// Relational operations on raw BinRels within a structure. Inputs are assumed
/// to be upsets; the checked interface is UpsetRel below.
namespace rel {

inline BinRel complement(const RelStructure& S, const BinRel& R) { return R.complement_in(S.equiv); }

/// ∼R = R^{c⌣};α
inline BinRel tilde(const RelStructure& S, const BinRel& R) {
    return compose(complement(S, R).converse(), S.alpha_graph());
}

/// −R = α;R^{c⌣}
inline BinRel minus(const RelStructure& S, const BinRel& R) {
    return compose(S.alpha_graph(), complement(S, R).converse());
}

/// ¬R = α;β;R^c;β
inline BinRel neg(const RelStructure& S, const BinRel& R) {
    const auto b = S.beta_graph();
    return compose(compose(compose(S.alpha_graph(), b), complement(S, R)), b);
}

/// R\T = (R^⌣;T^c)^c
inline BinRel left_residual(const RelStructure& S, const BinRel& R, const BinRel& T) {
    return complement(S, compose(R.converse(), complement(S, T)));
}

/// T/R = (T^c;R^⌣)^c
inline BinRel right_residual(const RelStructure& S, const BinRel& T, const BinRel& R) {
    return complement(S, compose(complement(S, T), R.converse()));
}

/// Up-closure in (E, ≼): ≤;R;≤. Since (u,v) ≼ (x,y) iff x ≤ u and v ≤ y, this
/// is the set of all (x,y) lying ≼-above some pair of R.
inline BinRel up_closure(const RelStructure& S, const BinRel& R) { return compose(compose(S.leq, R), S.leq); }

/// Down-closure in (E, ≼): ≥;R;≥.
inline BinRel down_closure(const RelStructure& S, const BinRel& R) {
    const auto geq = S.leq.converse();
    return compose(compose(geq, R), geq);
}

inline bool is_upset(const RelStructure& S, const BinRel& R) {
    return R.points() == S.points() && R.subset_of(S.equiv) && up_closure(S, R) == R;
}

}  // namespace rel

/// A relation in Up(E, ≼); membership is verified on construction.
class UpsetRel {
public:
    UpsetRel(const RelStructure& S, BinRel r) : rel_(std::move(r)) {
        if (rel_.points() != S.points()) throw MalformedInput("relation carrier does not match structure");
        if (!rel_.subset_of(S.equiv)) throw PreconditionError("relation is not contained in E");
        if (rel::up_closure(S, rel_) != rel_) throw PreconditionError("relation is not an upset of (E, ≼)");
    }

    const BinRel& rel() const noexcept { return rel_; }

    friend bool operator==(const UpsetRel&, const UpsetRel&) = default;
    friend auto operator<=>(const UpsetRel& a, const UpsetRel& b) { return a.rel_ <=> b.rel_; }

private:
    BinRel rel_;
};

inline UpsetRel lneg_tilde(const RelStructure& S, const UpsetRel& R) { return {S, rel::tilde(S, R.rel())}; }
inline UpsetRel lneg_minus(const RelStructure& S, const UpsetRel& R) { return {S, rel::minus(S, R.rel())}; }
inline UpsetRel neg(const RelStructure& S, const UpsetRel& R) { return {S, rel::neg(S, R.rel())}; }

struct RelResiduals {
    UpsetRel left;   ///< R\T
    UpsetRel right;  ///< T/R
};

inline RelResiduals rel_residuals(const RelStructure& S, const UpsetRel& R, const UpsetRel& T) {
    return {UpsetRel(S, rel::left_residual(S, R.rel(), T.rel())), UpsetRel(S, rel::right_residual(S, T.rel(), R.rel()))};
}

/// Visits every upset of (E, ≼) exactly once, ∅ first. Each step decides one
/// undecided pair of E: excluding it removes its ≼-down-closure, including it
/// adds its ≼-up-closure. Returns the number of upsets visited; throws
/// CapExceeded once more than `cap` have been produced.
inline std::size_t for_each_upset(const RelStructure& S, std::size_t cap, const std::function<void(const BinRel&)>& visit) {
    const auto pairs = S.equiv.pairs();
    std::size_t produced = 0;
    auto dfs = [&](auto&& self, std::size_t from, const BinRel& in, const BinRel& out) -> void {
        std::size_t i = from;
        while (i < pairs.size() && (in.contains(pairs[i].first, pairs[i].second) ||
                                    out.contains(pairs[i].first, pairs[i].second))) {
            ++i;
        }
        if (i == pairs.size()) {
            if (++produced > cap) throw CapExceeded("upset enumeration", cap);
            visit(in);
            return;
        }
        BinRel single(S.points());
        single.insert(pairs[i].first, pairs[i].second);
        const auto out2 = rel::down_closure(S, out | single);
        if (out2.disjoint_from(in)) self(self, i + 1, in, out2);
        const auto in2 = rel::up_closure(S, in | single);
        if (in2.disjoint_from(out)) self(self, i + 1, in2, out);
    };
    dfs(dfs, 0, BinRel(S.points()), BinRel(S.points()));
    return produced;
}

inline constexpr std::size_t default_upset_cap = std::size_t{1} << 20;

inline std::size_t count_upsets(const RelStructure& S, std::size_t cap = default_upset_cap) {
    return for_each_upset(S, cap, [](const BinRel&) {});
}

inline std::vector<BinRel> enumerate_upsets(const RelStructure& S, std::size_t cap = default_upset_cap) {
    std::vector<BinRel> out;
    for_each_upset(S, cap, [&](const BinRel& r) { out.push_back(r); });
    return out;
}

namespace detail {

inline std::vector<BinRel> partial_orders(std::size_t n) {
    std::vector<std::pair<Point, Point>> off;
    for (Point x = 0; x < n; ++x) {
        for (Point y = 0; y < n; ++y) {
            if (x != y) off.emplace_back(x, y);
        }
    }
    std::vector<BinRel> out;
    const std::size_t combos = std::size_t{1} << off.size();
    for (std::size_t mask = 0; mask < combos; ++mask) {
        BinRel r = BinRel::identity(n);
        for (std::size_t i = 0; i < off.size(); ++i) {
            if ((mask >> i) & 1U) r.insert(off[i].first, off[i].second);
        }
        bool ok = true;
        for (auto [x, y] : r.pairs()) {
            if (x != y && r.contains(y, x)) ok = false;
        }
        if (ok && compose(r, r) == r) out.push_back(r);
    }
    return out;
}

inline std::vector<BinRel> equivalences(std::size_t n) {
    std::vector<BinRel> out;
    std::vector<std::size_t> block(n, 0);
    auto rec = [&](auto&& self, std::size_t i, std::size_t blocks) -> void {
        if (i == n) {
            BinRel r(n);
            for (Point x = 0; x < n; ++x) {
                for (Point y = 0; y < n; ++y) {
                    if (block[x] == block[y]) r.insert(x, y);
                }
            }
            out.push_back(r);
            return;
        }
        for (std::size_t b = 0; b <= blocks; ++b) {
            block[i] = b;
            self(self, i + 1, b == blocks ? blocks + 1 : blocks);
        }
    };
    rec(rec, 0, 0);
    return out;
}

}  // namespace detail

/// Every valid RelStructure on exactly n labelled points (n ≤ 5 in practice).
inline std::vector<RelStructure> enumerate_structures(std::size_t n) {
    if (n == 0 || n > 5) throw PreconditionError("structure enumeration supports 1..5 points");
    std::vector<Permutation> perms;
    Permutation p(n);
    std::iota(p.begin(), p.end(), Point{0});
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    std::vector<RelStructure> out;
    const auto orders = detail::partial_orders(n);
    const auto eqs = detail::equivalences(n);
    for (const auto& le : orders) {
        std::vector<const Permutation*> autos;
        std::vector<const Permutation*> duals;
        for (const auto& f : perms) {
            bool is_auto = true;
            bool is_dual = true;
            bool involutive = true;
            for (Point x = 0; x < n; ++x) {
                involutive = involutive && f[f[x]] == x;
                for (Point y = 0; y < n; ++y) {
                    is_auto = is_auto && le.contains(x, y) == le.contains(f[x], f[y]);
                    is_dual = is_dual && le.contains(x, y) == le.contains(f[y], f[x]);
                }
            }
            if (is_auto) autos.push_back(&f);
            if (is_dual && involutive) duals.push_back(&f);
        }
        if (duals.empty()) continue;
        for (const auto& E : eqs) {
            if (!le.subset_of(E)) continue;
            auto within = [&](const Permutation& f) {
                for (Point x = 0; x < n; ++x) {
                    if (!E.contains(x, f[x])) return false;
                }
                return true;
            };
            for (const auto* a : autos) {
                if (!within(*a)) continue;
                for (const auto* b : duals) {
                    if (!within(*b)) continue;
                    bool conj = true;
                    for (Point x = 0; x < n && conj; ++x) conj = (*a)[(*b)[(*a)[x]]] == (*b)[x];
                    if (!conj) continue;
                    out.emplace_back("enum", le, E, *a, *b);
                }
            }
        }
    }
    return out;
}

/// A point bijection S → T carrying ≤, E, α and β across, or nullopt.
/// Brute force over permutations; intended for carriers of at most 8 points.
inline std::optional<Permutation> find_structure_isomorphism(const RelStructure& S, const RelStructure& T) {
    const auto n = S.points();
    if (T.points() != n) return std::nullopt;
    if (n > 8) throw PreconditionError("structure isomorphism limited to 8 points");
    Permutation f(n);
    std::iota(f.begin(), f.end(), Point{0});
    do {
        bool ok = true;
        for (Point x = 0; x < n && ok; ++x) {
            ok = T.alpha[f[x]] == f[S.alpha[x]] && T.beta[f[x]] == f[S.beta[x]];
            for (Point y = 0; y < n && ok; ++y) {
                ok = S.leq.contains(x, y) == T.leq.contains(f[x], f[y]) &&
                     S.equiv.contains(x, y) == T.equiv.contains(f[x], f[y]);
            }
        }
        if (ok) return f;
    } while (std::next_permutation(f.begin(), f.end()));
    return std::nullopt;
}

}  // namespace qra
