#pragma once

// Reconstruction of small DqRAs from a partial description ("sketch"): a
// labelled lattice given by its covers plus a few product identities. Every
// operation table consistent with the sketch and the qRA axioms is enumerated;
// callers decide what to do when more than one isomorphism class survives.
//
//   sketch := "sketch" NAME SIZE NL "labels" NAME{SIZE} "covers" (X "<" Y)+
//             "unit" NAME [ "zero" NAME ] { "eq" TERM "=" TERM } { "distinct" NAME }
//             { "provenance" TEXT }
//
// "distinct X" names another entry the result must not be isomorphic to; the
// caller supplies that algebra.
//   TERM   := ATOM { "*" ATOM },  ATOM := NAME [ "^" K ]

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qra/algebra.hpp"
#include "qra/error.hpp"
#include "qra/iso.hpp"
#include "qra/text_format.hpp"
#include "qra/validate.hpp"

namespace qra {

struct Sketch {
    std::string name;
    std::vector<std::string> labels;
    std::vector<std::pair<std::size_t, std::size_t>> covers;  ///< (lower, upper)
    std::size_t unit = 0;
    std::optional<std::size_t> zero;
    /// Each term is a left-to-right product of element indices.
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> equations;
    std::vector<std::string> equation_text;
    std::vector<std::string> distinct_from;
    std::string provenance;

    std::size_t size() const noexcept { return labels.size(); }
};

namespace detail {

inline std::vector<std::size_t> parse_term(const text::NameTable& names, const text::Token& tok) {
    std::vector<std::size_t> out;
    std::size_t start = 0;
    const std::string& s = tok.text;
    while (start <= s.size()) {
        auto end = s.find('*', start);
        if (end == std::string::npos) end = s.size();
        std::string atom = s.substr(start, end - start);
        std::size_t power = 1;
        if (auto caret = atom.find('^'); caret != std::string::npos) {
            try {
                std::size_t pos = 0;
                power = std::stoul(atom.substr(caret + 1), &pos);
                if (pos != atom.size() - caret - 1 || power == 0) throw std::invalid_argument("power");
            } catch (const std::exception&) {
                throw ParseError(tok.line, tok.column + start, "bad exponent in '" + atom + "'");
            }
            atom = atom.substr(0, caret);
        }
        const auto idx = names.lookup(atom);
        if (!idx) throw ParseError(tok.line, tok.column + start, "unknown element '" + atom + "'");
        out.insert(out.end(), power, *idx);
        start = end + 1;
    }
    return out;
}

}  // namespace detail

inline Sketch parse_sketch_section(const text::Section& s) {
    using text::fail_after;
    using text::fail_at;
    const auto& h = s.header();
    if (h.tokens.size() != 3) fail_after(h, "header must be 'sketch <name> <size>'");
    Sketch out;
    out.name = h.tokens[1].text;
    const auto n = text::parse_count(h.tokens[2]);
    if (n == 0) fail_at(h.tokens[2], "sketch size must be positive");

    const std::set<std::string> keywords{"labels", "covers", "unit", "zero", "eq", "provenance", "version", "distinct"};
    for (std::size_t i = 1; i < s.lines.size(); ++i) {
        if (s.lines[i].tokens[0].text == "labels") out.labels = text::read_labels(s.lines[i], n, keywords);
    }
    if (out.labels.empty()) fail_after(h, "sketch needs a labels line");
    const text::NameTable names(n, out.labels);
    bool have_unit = false;
    std::vector<std::string> prov;
    for (std::size_t i = 1; i < s.lines.size(); ++i) {
        const auto& l = s.lines[i];
        const auto& kw = l.tokens[0];
        if (kw.text == "labels") continue;
        if (kw.text == "version") {
            text::check_version(l);
        } else if (kw.text == "covers") {
            for (std::size_t t = 1; t < l.tokens.size(); ++t) {
                const auto& tok = l.tokens[t];
                const auto lt = tok.text.find('<');
                if (lt == std::string::npos) fail_at(tok, "expected 'x<y'");
                const text::Token lo{tok.text.substr(0, lt), tok.line, tok.column};
                const text::Token hi{tok.text.substr(lt + 1), tok.line, tok.column + lt + 1};
                out.covers.emplace_back(names.resolve(lo, "element"), names.resolve(hi, "element"));
            }
        } else if (kw.text == "unit" || kw.text == "zero") {
            if (l.tokens.size() != 2) fail_after(l, kw.text + " needs exactly one element");
            const auto v = names.resolve(l.tokens[1], "element");
            if (kw.text == "unit") {
                out.unit = v;
                have_unit = true;
            } else {
                out.zero = v;
            }
        } else if (kw.text == "eq") {
            if (l.tokens.size() != 4 || l.tokens[2].text != "=") fail_after(l, "expected 'eq <term> = <term>'");
            out.equations.emplace_back(detail::parse_term(names, l.tokens[1]), detail::parse_term(names, l.tokens[3]));
            out.equation_text.push_back(l.tokens[1].text + " = " + l.tokens[3].text);
        } else if (kw.text == "distinct") {
            if (l.tokens.size() != 2) fail_after(l, "distinct needs exactly one name");
            out.distinct_from.push_back(l.tokens[1].text);
        } else if (kw.text == "provenance") {
            prov.push_back(text::rest_of_line(l));
        } else {
            fail_at(kw, "unexpected '" + kw.text + "' in sketch section");
        }
    }
    if (!have_unit) fail_after(s.lines.back(), "sketch is missing its 'unit' entry");
    for (std::size_t i = 0; i < prov.size(); ++i) out.provenance += (i ? "\n" : "") + prov[i];
    return out;
}

inline Sketch parse_sketch(std::string_view input) {
    const auto d = parse_document(input);
    if (d.sketches.empty()) throw ParseError(1, 1, "no 'sketch' section found");
    return parse_sketch_section(d.sketches.front());
}

struct ReconstructionResult {
    Sketch sketch;
    std::vector<FiniteDqRA> solutions;           ///< every labelled solution, in search order
    std::vector<std::size_t> class_representatives;  ///< first solution of each isomorphism class
    std::size_t excluded = 0;  ///< solutions dropped as isomorphic to a `distinct` entry

    std::size_t classes() const noexcept { return class_representatives.size(); }
    bool unique() const noexcept { return classes() == 1; }

    /// The unique solution; throws when there is none or more than one class.
    const FiniteDqRA& algebra() const {
        if (!unique()) {
            throw Error("sketch " + sketch.name + " has " + std::to_string(classes()) +
                        " isomorphism classes of solutions");
        }
        return solutions[class_representatives.front()];
    }
};

/// Enumerates all DqRAs on the sketched lattice satisfying the sketch. The
/// product is fixed by its values on pairs of join-irreducibles (it is
/// join-preserving in each argument and ⊥ is absorbing); those are searched
/// with monotone pruning, then ∼ over the dual automorphisms (− = ∼⁻¹) and ¬
/// over the involutive ones. `distinct` must hold one algebra per name in
/// sk.distinct_from (matched by name); isomorphic solutions are dropped.
inline ReconstructionResult reconstruct(const Sketch& sk, const std::vector<FiniteDqRA>& distinct = {}) {
    for (const auto& want : sk.distinct_from) {
        if (std::none_of(distinct.begin(), distinct.end(), [&](const FiniteDqRA& d) { return d.name() == want; })) {
            throw PreconditionError("sketch " + sk.name + " must be distinct from " + want + ", which was not supplied");
        }
    }
    const auto n = sk.size();
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
    for (auto [lo, hi] : sk.covers) le[lo][hi] = true;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (le[i][k] && le[k][j]) le[i][j] = true;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && le[i][j] && le[j][i]) throw MalformedInput("sketch covers contain a cycle");
        }
    }

    // Lattice skeleton via a throwaway algebra (trivial operations) for meets and joins.
    AlgebraTables probe;
    probe.leq = le;
    probe.mult.assign(n, std::vector<std::size_t>(n, 0));
    probe.tilde.assign(n, 0);
    probe.minus.assign(n, 0);
    probe.neg.assign(n, 0);
    probe.unit = sk.unit;
    const FiniteDqRA lat(probe);
    for (auto x : lat.elements()) {
        for (auto y : lat.elements()) {
            if (!lat.try_meet(x, y) || !lat.try_join(x, y)) throw MalformedInput("sketch order is not a lattice");
        }
    }
    const std::size_t bot = lat.bottom()->index();
    auto join = [&](std::size_t x, std::size_t y) { return lat.join(ElementId(x), ElementId(y)).index(); };

    // join-irreducibles: exactly one lower cover
    std::vector<std::size_t> ji;
    for (std::size_t x = 0; x < n; ++x) {
        if (x == bot) continue;
        std::size_t lower_covers = 0;
        for (std::size_t y = 0; y < n; ++y) {
            if (y == x || !le[y][x]) continue;
            bool cover = true;
            for (std::size_t z = 0; z < n; ++z) {
                if (z != x && z != y && le[y][z] && le[z][x]) cover = false;
            }
            if (cover) ++lower_covers;
        }
        if (lower_covers == 1) ji.push_back(x);
    }

    // dual automorphisms
    std::vector<std::vector<std::size_t>> duals;
    {
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            bool ok = true;
            for (std::size_t x = 0; x < n && ok; ++x) {
                for (std::size_t y = 0; y < n && ok; ++y) ok = le[x][y] == le[perm[y]][perm[x]];
            }
            if (ok) duals.push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    // search cells: pairs of join-irreducibles; unit rows/columns are fixed when 1 is join-irreducible
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (auto i : ji) {
        for (auto j : ji) cells.emplace_back(i, j);
    }
    std::vector<std::vector<std::size_t>> cell(n, std::vector<std::size_t>(n, n));

    ReconstructionResult result;
    result.sketch = sk;

    auto product_table = [&]() {
        std::vector<std::vector<std::size_t>> m(n, std::vector<std::size_t>(n, bot));
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = 0; y < n; ++y) {
                for (auto i : ji) {
                    if (!le[i][x]) continue;
                    for (auto j : ji) {
                        if (le[j][y]) m[x][y] = join(m[x][y], cell[i][j]);
                    }
                }
            }
        }
        return m;
    };

    auto eval = [](const std::vector<std::vector<std::size_t>>& m, const std::vector<std::size_t>& term) {
        std::size_t v = term.front();
        for (std::size_t k = 1; k < term.size(); ++k) v = m[v][term[k]];
        return v;
    };

    auto finish = [&]() {
        const auto m = product_table();
        for (std::size_t x = 0; x < n; ++x) {
            if (m[sk.unit][x] != x || m[x][sk.unit] != x) return;
        }
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = 0; y < n; ++y) {
                for (std::size_t z = 0; z < n; ++z) {
                    if (m[m[x][y]][z] != m[x][m[y][z]]) return;
                }
            }
        }
        for (const auto& [l, r] : sk.equations) {
            if (eval(m, l) != eval(m, r)) return;
        }
        for (const auto& tilde : duals) {
            const std::size_t zero = tilde[sk.unit];
            if (sk.zero && zero != *sk.zero) continue;
            std::vector<std::size_t> minus(n);
            for (std::size_t x = 0; x < n; ++x) minus[tilde[x]] = x;
            if (minus[sk.unit] != zero) continue;
            // residuation: x·y ≤ z iff x ≤ −(y·∼z) iff y ≤ ∼(−z·x)
            bool residuated = true;
            for (std::size_t x = 0; x < n && residuated; ++x) {
                for (std::size_t y = 0; y < n && residuated; ++y) {
                    for (std::size_t z = 0; z < n && residuated; ++z) {
                        const bool p = le[m[x][y]][z];
                        residuated = p == le[x][minus[m[y][tilde[z]]]] && p == le[y][tilde[m[minus[z]][x]]];
                    }
                }
            }
            if (!residuated) continue;
            for (const auto& neg : duals) {
                if (neg[sk.unit] != zero) continue;
                bool involutive = true;
                for (std::size_t x = 0; x < n; ++x) involutive = involutive && neg[neg[x]] == x;
                if (!involutive) continue;
                AlgebraTables t;
                t.name = sk.name;
                t.labels = sk.labels;
                t.leq = le;
                t.mult = m;
                t.tilde = tilde;
                t.minus = minus;
                t.neg = neg;
                t.unit = sk.unit;
                FiniteDqRA A(std::move(t));
                if (!validate_dqra(A).ok()) continue;
                if (std::any_of(distinct.begin(), distinct.end(), [&](const FiniteDqRA& d) { return isomorphic(d, A); })) {
                    ++result.excluded;
                    continue;
                }
                result.solutions.push_back(std::move(A));
            }
        }
    };

    auto monotone_ok = [&](std::size_t i, std::size_t j) {
        const auto v = cell[i][j];
        for (auto [k, l] : cells) {
            const auto w = cell[k][l];
            if (w == n) continue;
            if (le[i][k] && le[j][l] && !le[v][w]) return false;
            if (le[k][i] && le[l][j] && !le[w][v]) return false;
        }
        return true;
    };

    auto search = [&](auto&& self, std::size_t c) -> void {
        if (c == cells.size()) {
            finish();
            return;
        }
        const auto [i, j] = cells[c];
        std::vector<std::size_t> values;
        if (i == sk.unit) {
            values = {j};
        } else if (j == sk.unit) {
            values = {i};
        } else {
            values.resize(n);
            std::iota(values.begin(), values.end(), 0);
        }
        for (auto v : values) {
            cell[i][j] = v;
            if (monotone_ok(i, j)) self(self, c + 1);
        }
        cell[i][j] = n;
    };
    search(search, 0);

    for (std::size_t s = 0; s < result.solutions.size(); ++s) {
        bool fresh = true;
        for (auto r : result.class_representatives) {
            if (isomorphic(result.solutions[r], result.solutions[s])) fresh = false;
        }
        if (fresh) result.class_representatives.push_back(s);
    }

    const std::string note = "constraint reconstruction: " + std::to_string(result.solutions.size()) +
                             " labelled solution(s), " + std::to_string(result.classes()) +
                             " isomorphism class(es)" +
                             (result.excluded ? ", " + std::to_string(result.excluded) + " excluded as isomorphic to " +
                                                    [&] {
                                                        std::string names;
                                                        for (const auto& d : sk.distinct_from) names += (names.empty() ? "" : ", ") + d;
                                                        return names;
                                                    }()
                                              : std::string());
    for (auto& A : result.solutions) {
        auto t = A.tables();
        t.provenance = sk.provenance.empty() ? note : sk.provenance + "\n" + note;
        A = FiniteDqRA(std::move(t));
    }
    return result;
}

}  // namespace qra
