#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qra/algebra.hpp"
#include "qra/binrel.hpp"
#include "qra/structure.hpp"

namespace qra {

/// Builds the algebra whose elements are `rels` (assumed closed under the Dq(E)
/// operations), ordered by inclusion, with unit ≤. Element i is rels[i].
inline FiniteDqRA algebra_from_relations(const RelStructure& S, const std::vector<BinRel>& rels, std::string name,
                                         std::vector<std::string> labels = {}) {
    std::unordered_map<BinRel, std::size_t, BinRelHash> index;
    index.reserve(rels.size() * 2);
    for (std::size_t i = 0; i < rels.size(); ++i) index.emplace(rels[i], i);
    auto lookup = [&](const BinRel& r, const char* op) {
        auto it = index.find(r);
        if (it == index.end()) throw PreconditionError(std::string("relation set not closed under ") + op);
        return it->second;
    };

    const auto n = rels.size();
    AlgebraTables t;
    t.name = std::move(name);
    t.labels = std::move(labels);
    t.leq.assign(n, std::vector<bool>(n, false));
    t.mult.assign(n, std::vector<std::size_t>(n, 0));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            t.leq[a][b] = rels[a].subset_of(rels[b]);
            t.mult[a][b] = lookup(compose(rels[a], rels[b]), ";");
        }
        t.tilde.push_back(lookup(rel::tilde(S, rels[a]), "∼"));
        t.minus.push_back(lookup(rel::minus(S, rels[a]), "−"));
        t.neg.push_back(lookup(rel::neg(S, rels[a]), "¬"));
    }
    t.unit = lookup(S.leq, "unit");
    return FiniteDqRA(std::move(t));
}

struct ClosureResult {
    /// Canonical order: ∅ (when present), then ≤, then discovery order.
    std::vector<BinRel> relations;
    FiniteDqRA algebra;
    /// Element index in `algebra` of each generator, in generator order.
    std::vector<ElementId> generator_elements;
};

/// Least set of upsets containing the generators and ≤, closed under ∩, ∪, ;,
/// ∼, −, ¬. Worklist discipline: relations are processed in discovery order;
/// processing relation i combines it with every relation j ≤ i.
inline ClosureResult dq_closure(const RelStructure& S, const std::vector<UpsetRel>& generators, std::size_t cap,
                                std::string name = "closure", const std::vector<std::string>& generator_labels = {}) {
    std::vector<BinRel> found;
    std::unordered_map<BinRel, std::size_t, BinRelHash> seen;
    auto add = [&](BinRel r) {
        if (seen.contains(r)) return;
        if (found.size() >= cap) throw CapExceeded("dq closure", cap);
        seen.emplace(r, found.size());
        found.push_back(std::move(r));
    };
    add(S.leq);
    for (const auto& g : generators) {
        if (g.rel().points() != S.points()) throw MalformedInput("generator carrier does not match structure");
        add(g.rel());
    }
    for (std::size_t i = 0; i < found.size(); ++i) {
        const BinRel r = found[i];
        add(rel::tilde(S, r));
        add(rel::minus(S, r));
        add(rel::neg(S, r));
        for (std::size_t j = 0; j <= i; ++j) {
            const BinRel s = found[j];
            add(r & s);
            add(r | s);
            add(compose(r, s));
            add(compose(s, r));
        }
    }

    std::vector<BinRel> ordered;
    ordered.reserve(found.size());
    const BinRel empty(S.points());
    if (seen.contains(empty)) ordered.push_back(empty);
    ordered.push_back(S.leq);
    for (const auto& r : found) {
        if (r != empty && r != S.leq) ordered.push_back(r);
    }

    std::vector<std::string> labels;
    if (!generator_labels.empty()) {
        if (generator_labels.size() != generators.size()) throw MalformedInput("one label per generator required");
        labels.assign(ordered.size(), "");
        for (std::size_t i = 0; i < ordered.size(); ++i) labels[i] = "r" + std::to_string(i);
        for (std::size_t g = 0; g < generators.size(); ++g) {
            for (std::size_t i = 0; i < ordered.size(); ++i) {
                if (ordered[i] == generators[g].rel()) labels[i] = generator_labels[g];
            }
        }
        // keep labels unique if a generator name collides with a generated one
        for (std::size_t i = 0; i < labels.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (labels[i] == labels[j]) labels[i] += "_" + std::to_string(i);
            }
        }
    }

    auto algebra = algebra_from_relations(S, ordered, std::move(name), std::move(labels));
    std::vector<ElementId> gens;
    for (const auto& g : generators) {
        for (std::size_t i = 0; i < ordered.size(); ++i) {
            if (ordered[i] == g.rel()) gens.emplace_back(i);
        }
    }
    return {std::move(ordered), std::move(algebra), std::move(gens)};
}

inline constexpr std::size_t default_full_dq_cap = 1024;

/// The full algebra Dq(E) of all upsets, in enumeration order (∅ first).
inline FiniteDqRA full_dq(const RelStructure& S, std::size_t cap = default_full_dq_cap, std::string name = "Dq") {
    auto ups = enumerate_upsets(S, cap);
    return algebra_from_relations(S, ups, std::move(name));
}

}  // namespace qra
