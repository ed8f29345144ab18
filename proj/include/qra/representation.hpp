#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qra/algebra.hpp"
#include "qra/binrel.hpp"
#include "qra/contraction.hpp"
#include "qra/structure.hpp"
#include "qra/validate.hpp"

namespace qra {

/// An assignment of algebra elements to relations over a structure. Whether it
/// is an embedding into Dq(E) is decided by verify_embedding().
struct Embedding {
    FiniteDqRA algebra;
    RelStructure structure;
    std::vector<BinRel> assignment;  ///< indexed by element

    const BinRel& operator[](ElementId a) const { return assignment.at(a.index()); }
};

/// Exhaustive check: images are upsets, assignment is injective, 1 ↦ ≤, and
/// ∧, ∨, ·, ∼, −, ¬ are preserved for every element (pair).
inline ValidationReport verify_embedding(const Embedding& e) {
    const auto& A = e.algebra;
    const auto& S = e.structure;
    if (e.assignment.size() != A.size()) {
        throw MalformedInput("assignment covers " + std::to_string(e.assignment.size()) + " elements, algebra has " +
                             std::to_string(A.size()));
    }
    for (const auto& r : e.assignment) {
        if (r.points() != S.points()) throw MalformedInput("assigned relation carrier does not match structure");
    }
    const auto n = A.size();
    ValidationReport rep;
    auto first_element = [&](auto&& ok) -> std::vector<std::size_t> {
        for (std::size_t a = 0; a < n; ++a) {
            if (!ok(ElementId(a))) return {a};
        }
        return {};
    };
    auto first_pair = [&](auto&& ok) -> std::vector<std::size_t> {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                if (!ok(ElementId(a), ElementId(b))) return {a, b};
            }
        }
        return {};
    };
    auto img = [&](ElementId a) -> const BinRel& { return e.assignment[a.index()]; };

    rep.record("upset", first_element([&](ElementId a) { return rel::is_upset(S, img(a)); }));
    rep.record("injective", first_pair([&](ElementId a, ElementId b) { return a == b || img(a) != img(b); }));
    rep.record("unit", img(A.unit()) == S.leq ? std::vector<std::size_t>{} : std::vector<std::size_t>{A.unit().index()});
    rep.record("meet", first_pair([&](ElementId a, ElementId b) {
                   auto m = A.try_meet(a, b);
                   return m && img(*m) == (img(a) & img(b));
               }));
    rep.record("join", first_pair([&](ElementId a, ElementId b) {
                   auto j = A.try_join(a, b);
                   return j && img(*j) == (img(a) | img(b));
               }));
    rep.record("mult", first_pair([&](ElementId a, ElementId b) { return img(A.mul(a, b)) == compose(img(a), img(b)); }));
    rep.record("tilde", first_element([&](ElementId a) { return img(A.tilde(a)) == rel::tilde(S, img(a)); }));
    rep.record("minus", first_element([&](ElementId a) { return img(A.minus(a)) == rel::minus(S, img(a)); }));
    rep.record("neg", first_element([&](ElementId a) { return img(A.neg(a)) == rel::neg(S, img(a)); }));
    return rep;
}

enum class SearchStatus {
    found,
    not_found,         ///< search space exhausted: no embedding exists
    budget_exhausted,  ///< gave up before deciding
};

inline const char* to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::found: return "found";
        case SearchStatus::not_found: return "not-found";
        case SearchStatus::budget_exhausted: return "budget-exhausted";
    }
    return "?";
}

struct SearchResult {
    SearchStatus status = SearchStatus::not_found;
    std::optional<Embedding> embedding;
    std::size_t nodes = 0;  ///< candidate images tried
};

namespace detail {

/// Depth-first search over images of A's elements in Up(E). Every assignment is
/// propagated to a fixpoint: images of ∼x, −x, ¬x and of x∧y, x∨y, x·y, y·x for
/// already assigned y are forced, so branching only happens on elements not yet
/// generated. Order and injectivity are checked on every assignment.
class EmbeddingSearch {
public:
    EmbeddingSearch(const FiniteDqRA& A, const RelStructure& S, std::size_t upset_cap)
        : A_(A), S_(S), image_(A.size()), candidates_(enumerate_upsets(S, upset_cap)) {
        for (auto a : A.elements()) {
            for (auto b : A.elements()) {
                if (!A.try_meet(a, b) || !A.try_join(a, b)) throw PreconditionError("algebra is not a lattice");
            }
        }
    }

    /// Calls `visit` for every embedding until it returns false. Returns the
    /// status of the search as a whole.
    template <class Visit>
    SearchStatus run(std::size_t budget, Visit&& visit) {
        budget_ = budget;
        nodes_ = 0;
        stopped_ = false;
        const auto mark = trail_.size();
        SearchStatus status = SearchStatus::not_found;
        if (assign(A_.unit(), S_.leq)) {
            status = dfs(visit);
        }
        undo(mark);
        return status;
    }

    std::size_t nodes() const noexcept { return nodes_; }

private:
    template <class Visit>
    SearchStatus dfs(Visit& visit) {
        std::optional<ElementId> next;
        for (auto a : A_.elements()) {
            if (!image_[a.index()]) {
                next = a;
                break;
            }
        }
        if (!next) {
            std::vector<BinRel> assignment;
            for (const auto& r : image_) assignment.push_back(*r);
            if (!visit(Embedding{A_, S_, std::move(assignment)})) {
                stopped_ = true;
                return SearchStatus::found;
            }
            return SearchStatus::not_found;
        }
        bool exhausted = false;
        for (const auto& cand : candidates_) {
            if (nodes_ >= budget_) return SearchStatus::budget_exhausted;
            ++nodes_;
            const auto mark = trail_.size();
            if (assign(*next, cand)) {
                const auto st = dfs(visit);
                if (stopped_) {
                    undo(mark);
                    return SearchStatus::found;
                }
                if (st == SearchStatus::budget_exhausted) exhausted = true;
            }
            undo(mark);
            if (exhausted) return SearchStatus::budget_exhausted;
        }
        return SearchStatus::not_found;
    }

    bool set(ElementId x, const BinRel& r) {
        if (const auto& cur = image_[x.index()]) return *cur == r;
        if (auto it = used_.find(r); it != used_.end() && it->second != x.index()) return false;
        for (std::size_t yi = 0; yi < image_.size(); ++yi) {
            if (!image_[yi]) continue;
            const ElementId y(yi);
            if (A_.leq(x, y) != r.subset_of(*image_[yi])) return false;
            if (A_.leq(y, x) != image_[yi]->subset_of(r)) return false;
        }
        image_[x.index()] = r;
        used_.emplace(r, x.index());
        trail_.push_back(x);
        pending_.push_back(x);
        return true;
    }

    bool assign(ElementId x, const BinRel& r) {
        pending_.clear();
        if (!set(x, r)) return false;
        while (!pending_.empty()) {
            const auto a = pending_.back();
            pending_.pop_back();
            const BinRel ra = *image_[a.index()];
            if (!set(A_.tilde(a), rel::tilde(S_, ra))) return false;
            if (!set(A_.minus(a), rel::minus(S_, ra))) return false;
            if (!set(A_.neg(a), rel::neg(S_, ra))) return false;
            for (std::size_t bi = 0; bi < image_.size(); ++bi) {
                if (!image_[bi]) continue;
                const ElementId b(bi);
                const BinRel rb = *image_[bi];
                if (!set(A_.meet(a, b), ra & rb)) return false;
                if (!set(A_.join(a, b), ra | rb)) return false;
                if (!set(A_.mul(a, b), compose(ra, rb))) return false;
                if (!set(A_.mul(b, a), compose(rb, ra))) return false;
            }
        }
        return true;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            const auto x = trail_.back();
            trail_.pop_back();
            used_.erase(*image_[x.index()]);
            image_[x.index()].reset();
        }
        pending_.clear();
    }

    const FiniteDqRA& A_;
    const RelStructure& S_;
    std::vector<std::optional<BinRel>> image_;
    std::unordered_map<BinRel, std::size_t, BinRelHash> used_;
    std::vector<ElementId> trail_;
    std::vector<ElementId> pending_;
    std::vector<BinRel> candidates_;
    std::size_t budget_ = 0;
    std::size_t nodes_ = 0;
    bool stopped_ = false;
};

}  // namespace detail

inline constexpr std::size_t unlimited_budget = static_cast<std::size_t>(-1);

/// Searches for an embedding of A into Dq(E) over S. Candidates are visited in
/// upset enumeration order and elements in index order, so the result is the
/// first embedding in that lexicographic order. Any embedding returned has
/// passed verify_embedding().
inline SearchResult find_embedding(const FiniteDqRA& A, const RelStructure& S, std::size_t budget = unlimited_budget,
                                   std::size_t upset_cap = default_upset_cap) {
    detail::EmbeddingSearch search(A, S, upset_cap);
    SearchResult result;
    result.status = search.run(budget, [&](Embedding e) {
        if (!verify_embedding(e).ok()) throw Error("search produced an embedding that fails verification");
        result.embedding = std::move(e);
        return false;
    });
    result.nodes = search.nodes();
    return result;
}

/// Number of distinct embeddings of A over S (bounded search; nullopt when the
/// budget ran out).
inline std::optional<std::size_t> count_embeddings(const FiniteDqRA& A, const RelStructure& S,
                                                   std::size_t budget = unlimited_budget,
                                                   std::size_t upset_cap = default_upset_cap) {
    detail::EmbeddingSearch search(A, S, upset_cap);
    std::size_t count = 0;
    const auto st = search.run(budget, [&](const Embedding&) {
        ++count;
        return true;
    });
    if (st == SearchStatus::budget_exhausted) return std::nullopt;
    return count;
}

struct SizeSearchResult {
    SearchStatus status = SearchStatus::not_found;
    std::optional<Embedding> embedding;
    std::size_t structures_checked = 0;
    std::size_t nodes = 0;
};

/// Tries every valid structure on 1..max_points points. `not_found` means no
/// structure of that size carries an embedding; the budget is shared.
inline SizeSearchResult find_embedding_up_to(const FiniteDqRA& A, std::size_t max_points,
                                             std::size_t budget = unlimited_budget) {
    SizeSearchResult out;
    for (std::size_t n = 1; n <= max_points; ++n) {
        for (const auto& S : enumerate_structures(n)) {
            ++out.structures_checked;
            const std::size_t remaining = budget == unlimited_budget ? budget : budget - out.nodes;
            auto r = find_embedding(A, S, remaining);
            out.nodes += r.nodes;
            if (r.status == SearchStatus::found) {
                out.status = SearchStatus::found;
                out.embedding = std::move(r.embedding);
                return out;
            }
            if (r.status == SearchStatus::budget_exhausted) {
                out.status = SearchStatus::budget_exhausted;
                return out;
            }
        }
    }
    out.status = SearchStatus::not_found;
    return out;
}

/// Raised when the quotient construction meets inputs violating one of its
/// invariance conditions; `witness` lists the offending points.
class QuotientError : public Error {
public:
    QuotientError(const std::string& what, std::vector<Point> witness) : Error(what), witness_(std::move(witness)) {}

    const std::vector<Point>& witness() const noexcept { return witness_; }

private:
    std::vector<Point> witness_;
};

/// X/≡ for a verified embedding φ and a positive symmetric idempotent p, where
/// x ≡ y iff (x,y) and (y,x) are both in φ(p).
struct QuotientStructure {
    RelStructure parent;
    std::vector<std::size_t> class_of;  ///< point -> class index
    std::vector<Point> representatives; ///< least point of each class, ascending
    RelStructure quotient;

    std::size_t classes() const noexcept { return representatives.size(); }
};

inline QuotientStructure quotient_representation(const Embedding& e, ElementId p) {
    const auto& A = e.algebra;
    const auto& S = e.structure;
    if (!is_psi(A, p)) throw PreconditionError(A.label(p) + " is not a positive symmetric idempotent");
    if (!verify_embedding(e).ok()) throw PreconditionError("quotient needs a verified embedding");

    const BinRel& P = e[p];
    const auto n = S.points();
    for (Point x = 0; x < n; ++x) {
        if (!P.contains(x, x)) throw QuotientError("φ(p) is not reflexive", {x});
        for (Point y = 0; y < n; ++y) {
            if (S.leq.contains(x, y) && !P.contains(x, y)) throw QuotientError("φ(p) does not contain ≤", {x, y});
            for (Point z = 0; z < n; ++z) {
                if (P.contains(x, y) && P.contains(y, z) && !P.contains(x, z)) {
                    throw QuotientError("φ(p) is not transitive", {x, y, z});
                }
            }
        }
    }
    // (x,y) ∈ φ(p) iff (α(x),α(y)) ∈ φ(p); (x,y) ∈ φ(p) iff (β(y),β(x)) ∈ φ(p)
    for (Point x = 0; x < n; ++x) {
        for (Point y = 0; y < n; ++y) {
            if (P.contains(x, y) != P.contains(S.alpha[x], S.alpha[y])) {
                throw QuotientError("φ(p) is not α-invariant", {x, y});
            }
            if (P.contains(x, y) != P.contains(S.beta[y], S.beta[x])) {
                throw QuotientError("φ(p) is not β-invariant", {x, y});
            }
        }
    }

    QuotientStructure q;
    q.parent = S;
    q.class_of.assign(n, n);
    for (Point x = 0; x < n; ++x) {
        if (q.class_of[x] != n) continue;
        const auto c = q.representatives.size();
        q.representatives.push_back(x);
        for (Point y = x; y < n; ++y) {
            if (P.contains(x, y) && P.contains(y, x)) q.class_of[y] = c;
        }
    }
    const auto m = q.representatives.size();
    const auto& rep = q.representatives;

    // well-definedness over every member of each class
    for (Point x = 0; x < n; ++x) {
        for (Point y = 0; y < n; ++y) {
            const Point rx = rep[q.class_of[x]];
            const Point ry = rep[q.class_of[y]];
            if (P.contains(x, y) != P.contains(rx, ry)) throw QuotientError("quotient order not well defined", {x, y});
            if (S.equiv.contains(x, y) != S.equiv.contains(rx, ry)) {
                throw QuotientError("quotient E not well defined", {x, y});
            }
        }
        const Point rx = rep[q.class_of[x]];
        if (q.class_of[S.alpha[x]] != q.class_of[S.alpha[rx]]) throw QuotientError("α_pAp not well defined", {x, rx});
        if (q.class_of[S.beta[x]] != q.class_of[S.beta[rx]]) throw QuotientError("β_pAp not well defined", {x, rx});
    }

    BinRel le(m);
    BinRel eq(m);
    Permutation alpha(m);
    Permutation beta(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (P.contains(rep[i], rep[j])) le.insert(i, j);
            if (S.equiv.contains(rep[i], rep[j])) eq.insert(i, j);
        }
        alpha[i] = q.class_of[S.alpha[rep[i]]];
        beta[i] = q.class_of[S.beta[rep[i]]];
    }
    std::vector<std::string> labels;
    if (!S.labels.empty()) {
        for (auto r : rep) labels.push_back("[" + S.labels[r] + "]");
    }
    q.quotient = RelStructure(S.name + "/" + A.label(p), le, eq, alpha, beta, labels);
    const auto report = validate_structure(q.quotient);
    if (!report.ok()) {
        const auto f = report.failures().front();
        throw QuotientError("quotient structure invalid: " + f.law, f.witness);
    }
    return q;
}

struct InducedEmbedding {
    Contraction contraction;
    QuotientStructure quotient;
    Embedding embedding;  ///< ψ: pAp → Dq(E_pAp) over the quotient
};

/// ψ(a) = {([x],[y]) | (x,y) ∈ φ(a)} on the members of pAp. Throws if ψ fails
/// verification.
inline InducedEmbedding induced_embedding(const Embedding& e, ElementId p) {
    auto q = quotient_representation(e, p);
    auto c = contract(e.algebra, p);
    std::vector<BinRel> psi;
    for (auto member : c.members) psi.push_back(e[member].image(q.class_of, q.classes()));
    Embedding emb{c.algebra, q.quotient, std::move(psi)};
    const auto report = verify_embedding(emb);
    if (!report.ok()) {
        const auto f = report.failures().front();
        std::vector<Point> w(f.witness.begin(), f.witness.end());
        throw QuotientError("induced ψ fails " + f.law, w);
    }
    if (emb[c.algebra.unit()] != q.quotient.leq) throw QuotientError("ψ(p) differs from the quotient order", {});
    return {std::move(c), std::move(q), std::move(emb)};
}

}  // namespace qra
