// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "support.hpp"

using namespace qra;
using namespace qra::test;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool ok = true;
    std::ostringstream note;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (!ok) note << "; ";
            ok = false;
            note << what;
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    const auto dt = seconds_since(t0);
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "PASS" : "FAIL") << ' ' << id << ' ' << title << " (" << dt << " s)";
    const auto note = o.note.str();
    if (!note.empty()) std::cout << ": " << note;
    std::cout << std::endl;
}

std::set<std::string> labels_of(const FiniteDqRA& A, const std::vector<ElementId>& xs) {
    std::set<std::string> out;
    for (auto x : xs) out.insert(A.label(x));
    return out;
}

std::uint32_t mask(const BinRel& r) {
    std::uint32_t m = 0;
    const auto n = r.points();
    for (auto [x, y] : r.pairs()) m |= 1u << (x * n + y);
    return m;
}

bool sub(std::uint32_t a, std::uint32_t b) { return (a & ~b) == 0; }

}  // namespace

int main() {
    std::cout.precision(3);

    criterion(1, "closure of {R_a, R_b} is the 6-element D6_3_5_2", [](Outcome& o) {
        const auto t0 = Clock::now();
        const auto S = antichain4();
        const auto res = dq_closure(S, {UpsetRel(S, rel_a()), UpsetRel(S, rel_b())}, 64);
        const auto dt = seconds_since(t0);
        o.require(res.relations.size() == 6, "closure has " + std::to_string(res.relations.size()) + " relations");
        o.require(validate_dqra(res.algebra).ok(), "closure algebra fails validation");
        o.require(isomorphic(res.algebra, load_algebra("D6_3_5_2")), "not isomorphic to shipped D6_3_5_2");
        o.require(dt < 1.0, "closure took " + std::to_string(dt) + " s");
    });

    criterion(2, "psi(D6_3_5_2) = {1, a, b, top}", [](Outcome& o) {
        const auto A = load_algebra("D6_3_5_2");
        o.require(labels_of(A, psi_elements(A)) == std::set<std::string>{"1", "a", "b", "top"}, "wrong psi set");
    });

    criterion(3, "contraction sizes 6,3,3,2; aAa = bAb; quotients for a, b differ", [](Outcome& o) {
        const auto e = load_representation("D6_3_5_2");
        const auto& A = e.algebra;
        const std::vector<std::pair<std::string, std::size_t>> want{{"1", 6}, {"a", 3}, {"b", 3}, {"top", 2}};
        for (const auto& [p, n] : want) {
            const auto size = contract(A, el(A, p)).algebra.size();
            o.require(size == n, "|" + p + "A" + p + "| = " + std::to_string(size));
        }
        o.require(isomorphic(contract(A, el(A, "a")).algebra, contract(A, el(A, "b")).algebra), "aAa and bAb differ");
        const auto qa = quotient_representation(e, el(A, "a")).quotient;
        const auto qb = quotient_representation(e, el(A, "b")).quotient;
        o.require(!find_structure_isomorphism(qa, qb).has_value(), "quotients for a and b are isomorphic");
        o.require(qa.beta == Permutation{0, 1}, "beta does not fix the classes for a");
        o.require(qb.beta == Permutation{1, 0}, "beta does not swap the classes for b");
    });

    criterion(4, "quotients |X/=| = 4,2,2,1, all valid, induced psi verified", [](Outcome& o) {
        const auto t0 = Clock::now();
        const auto e = load_representation("D6_3_5_2");
        const auto& A = e.algebra;
        const std::vector<std::pair<std::string, std::size_t>> want{{"1", 4}, {"a", 2}, {"b", 2}, {"top", 1}};
        for (const auto& [p, n] : want) {
            const auto ind = induced_embedding(e, el(A, p));
            o.require(ind.quotient.classes() == n, "p=" + p + ": " + std::to_string(ind.quotient.classes()) + " classes");
            o.require(validate_structure(ind.quotient.quotient).ok(), "p=" + p + ": quotient invalid");
            o.require(verify_embedding(ind.embedding).ok(), "p=" + p + ": psi fails");
        }
        const auto dt = seconds_since(t0);
        o.require(dt < 1.0, "took " + std::to_string(dt) + " s");
    });

    criterion(5, "contraction rows reach their targets", [](Outcome& o) {
        const std::vector<std::tuple<std::string, std::string, std::string>> rows{
            {"D4_3_1", "top", "D3_1_1"}, {"D6_3_2", "a", "D5_1_4"},   {"D6_3_4", "a", "D5_1_5"},
            {"D6_4_3", "top", "D4_1_1"}, {"D6_4_4", "top", "D4_1_2"},
        };
        // which catalogue entries are unique only given `distinct`
        std::set<std::string> conditional;
        for (const auto& [parent, p, target] : rows) {
            for (const auto& name : {parent, target}) {
                auto sk = parse_sketch(read_file(data_path(name + ".sketch")));
                std::vector<FiniteDqRA> distinct;
                for (const auto& d : sk.distinct_from) distinct.push_back(load_algebra(d));
                const auto r = reconstruct(sk, distinct);
                o.require(r.unique(), name + " reconstruction has " + std::to_string(r.classes()) + " classes");
                if (r.excluded > 0) conditional.insert(name);
            }
        }
        const auto t0 = Clock::now();
        int checked = 0;
        for (const auto& [parent, p, target] : rows) {
            const auto A = load_algebra(parent);
            const auto c = contract(A, el(A, p));
            o.require(isomorphic(c.algebra, load_algebra(target)), parent + "/p=" + p + " is not " + target);
            o.require(scan_contractions(A).flagged(), parent + " not flagged by scan");
            ++checked;
        }
        const auto dt = seconds_since(t0);
        o.require(dt < 5.0, "took " + std::to_string(dt) + " s");
        o.note << (o.ok ? "" : "; ") << checked << " rows checked";
        for (const auto& name : conditional) o.note << "; flag: " << name << " unique only after its `distinct` exclusion";
    });

    criterion(6, "obstruction census", [](Outcome& o) {
        std::set<std::string> basic, contraction;
        for (const char* name : catalogue_names) {
            const auto A = load_algebra(name);
            if (basic_obstruction(A)) basic.insert(name);
            if (contraction_obstruction(A)) contraction.insert(name);
        }
        const std::set<std::string> want_basic{"D3_1_1", "D4_1_1", "D4_1_2", "D5_1_4", "D5_1_5"};
        auto want_contraction = want_basic;
        want_contraction.insert({"D4_3_1", "D6_3_2", "D6_3_4", "D6_4_3", "D6_4_4"});
        o.require(basic == want_basic, "basic set differs");
        o.require(contraction == want_contraction, "contraction set differs");
        o.require(!basic.contains("D6_3_5_2") && !contraction.contains("D6_3_5_2"), "D6_3_5_2 flagged");
    });

    criterion(7, "D3_1_1 has no embedding on <= 3 points", [](Outcome& o) {
        const auto r = find_embedding_up_to(load_algebra("D3_1_1"), 3);
        o.require(r.status == SearchStatus::not_found, std::string("status ") + to_string(r.status));
        o.note << (o.ok ? "" : "; ") << r.structures_checked << " structures, " << r.nodes << " nodes";
    });

    criterion(8, "property suites", [](Outcome& o) {
        std::mt19937 rng(20240501);

        // (a) full Dq over 200 random structures
        std::vector<RelStructure> pool;
        for (std::size_t n = 1; n <= 4; ++n) {
            for (auto& S : enumerate_structures(n)) {
                if (count_upsets(S, 1 << 16) <= 256) pool.push_back(std::move(S));
            }
        }
        std::shuffle(pool.begin(), pool.end(), rng);
        const std::size_t samples = std::min<std::size_t>(200, pool.size());
        o.require(samples == 200, "only " + std::to_string(pool.size()) + " structures in pool");
        for (std::size_t i = 0; i < samples; ++i) {
            const auto& S = pool[i];
            const auto A = full_dq(S, 256);
            if (!validate_dqra(A).ok()) o.require(false, "full Dq invalid over " + emit_structure(S));
            for (const auto& R : enumerate_upsets(S)) {
                const UpsetRel U(S, R);
                const bool inv = lneg_tilde(S, lneg_minus(S, U)).rel() == R &&
                                 lneg_minus(S, lneg_tilde(S, U)).rel() == R && neg(S, neg(S, U)).rel() == R;
                if (!inv) o.require(false, "involution fails");
            }
        }

        // (b) contractions of every shipped algebra
        for (const char* name : catalogue_names) {
            const auto A = load_algebra(name);
            for (auto p : psi_elements(A)) {
                const auto c = contract(A, p);
                const auto& B = c.algebra;
                if (!validate_dqra(B).ok()) o.require(false, std::string(name) + "|" + A.label(p) + " invalid");
                auto in = [&](ElementId x) { return A.mul(A.mul(p, x), p) == x; };
                for (auto x : B.elements()) {
                    const auto px = c.to_parent(x);
                    bool ok = in(px) && A.mul(p, px) == px && A.mul(px, p) == px && in(A.tilde(px)) &&
                              in(A.minus(px)) && in(A.neg(px));
                    for (auto y : B.elements()) {
                        const auto py = c.to_parent(y);
                        ok = ok && in(A.meet(px, py)) && in(A.join(px, py)) && in(A.mul(px, py));
                    }
                    if (!ok) o.require(false, std::string(name) + "|" + A.label(p) + " closure property fails");
                }
            }
        }

        // (c) complement commutes with bijections inside E, 500 pairs
        std::vector<RelStructure> all;
        for (std::size_t n = 1; n <= 4; ++n) {
            for (auto& S : enumerate_structures(n)) all.push_back(std::move(S));
        }
        for (int k = 0; k < 500; ++k) {
            const auto& S = all[rng() % all.size()];
            const auto np = S.points();
            Permutation g(np);
            for (Point x = 0; x < np; ++x) g[x] = x;
            // shuffle inside each E-block so that γ ⊆ E
            for (Point x = 0; x < np; ++x) {
                std::vector<Point> block;
                for (Point y = 0; y < np; ++y) {
                    if (S.equiv.contains(x, y)) block.push_back(y);
                }
                if (block.front() != x) continue;
                auto image = block;
                std::shuffle(image.begin(), image.end(), rng);
                for (std::size_t i = 0; i < block.size(); ++i) g[block[i]] = image[i];
            }
            const auto gamma = BinRel::graph(g);
            BinRel R(np);
            for (auto [x, y] : S.equiv.pairs()) {
                if (rng() & 1) R.insert(x, y);
            }
            const bool ok = compose(gamma, R).complement_in(S.equiv) == compose(gamma, R.complement_in(S.equiv)) &&
                            compose(R, gamma).complement_in(S.equiv) == compose(R.complement_in(S.equiv), gamma);
            if (!ok) o.require(false, "complement identity fails");
        }

        // (d) residuation, every triple on every structure with <= 3 points
        std::size_t triples = 0;
        for (std::size_t n = 1; n <= 3; ++n) {
            for (const auto& S : enumerate_structures(n)) {
                const auto ups = enumerate_upsets(S);
                const auto m = ups.size();
                std::vector<std::uint32_t> bits(m);
                for (std::size_t i = 0; i < m; ++i) bits[i] = mask(ups[i]);
                std::vector<std::uint32_t> prod(m * m), left(m * m), right(m * m);
                for (std::size_t i = 0; i < m; ++i) {
                    for (std::size_t j = 0; j < m; ++j) {
                        prod[i * m + j] = mask(compose(ups[i], ups[j]));
                        const auto res = rel_residuals(S, UpsetRel(S, ups[i]), UpsetRel(S, ups[j]));
                        left[i * m + j] = mask(res.left.rel());    // ups[i] \ ups[j]
                        right[i * m + j] = mask(res.right.rel());  // ups[j] / ups[i]
                    }
                }
                bool ok = true;
                for (std::size_t r = 0; r < m && ok; ++r) {
                    for (std::size_t q = 0; q < m && ok; ++q) {
                        const auto rq = prod[r * m + q];
                        for (std::size_t t = 0; t < m; ++t) {
                            const bool p = sub(rq, bits[t]);
                            if (p != sub(bits[q], left[r * m + t]) || p != sub(bits[r], right[q * m + t])) {
                                ok = false;
                                break;
                            }
                        }
                    }
                }
                triples += m * m * m;
                if (!ok) o.require(false, "residuation fails on a " + std::to_string(n) + "-point structure");
            }
        }

        // (e) psi preservation for every shipped representation
        std::size_t reps = 0;
        for (const char* name : {"D6_3_5_2", "chain2"}) {
            const auto e = load_representation(name);
            for (auto p : psi_elements(e.algebra)) {
                const auto ind = induced_embedding(e, p);
                if (!verify_embedding(ind.embedding).ok()) o.require(false, std::string(name) + " psi fails");
                ++reps;
            }
        }
        o.note << (o.ok ? "" : "; ") << samples << " random structures, " << triples << " residuation triples, " << reps
               << " (algebra, representation, psi) triples";
    });

    return failures == 0 ? 0 : 1;
}
