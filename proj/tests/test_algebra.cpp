#include <gtest/gtest.h>

#include "oracle.hpp"
#include "support.hpp"

using namespace qra;
using qra::test::el;
using qra::test::load_algebra;

namespace {

AlgebraTables trivial_tables() {
    AlgebraTables t;
    t.name = "one";
    t.leq = {{true}};
    t.mult = {{0}};
    t.tilde = t.minus = t.neg = {0};
    t.unit = 0;
    return t;
}

std::vector<FiniteDqRA> catalogue() {
    std::vector<FiniteDqRA> out;
    for (const char* name : qra::test::catalogue_names) out.push_back(load_algebra(name));
    return out;
}

}  // namespace

TEST(ValidateDqra, SixElementExamplePassesEveryLaw) {
    const auto A = load_algebra("D6_3_5_2");
    const auto r = validate_dqra(A);
    EXPECT_TRUE(r.ok()) << r;
    for (const char* law : {laws::partial_order, laws::lattice, laws::distributive, laws::monoid_unit,
                            laws::associative, laws::residuation, laws::involutive, laws::neg_involution,
                            laws::de_morgan, laws::de_morgan_product}) {
        EXPECT_TRUE(r.passed(law)) << law;
    }
}

TEST(ValidateDqra, OneElementAlgebraIsValid) {
    EXPECT_TRUE(validate_dqra(FiniteDqRA(trivial_tables())).ok());
    EXPECT_TRUE(validate_dqra(load_algebra("trivial1")).ok());
}

TEST(ValidateDqra, IdentityNegationBreaksDeMorganWithRealWitness) {
    auto t = load_algebra("D6_3_5_2").tables();
    for (std::size_t i = 0; i < t.neg.size(); ++i) t.neg[i] = i;
    const FiniteDqRA bad(t);
    const auto r = validate_dqra(bad);
    ASSERT_FALSE(r.ok());

    // oracle: scan every pair for ¬(a∨b) ≠ ¬a∧¬b
    const auto o = oracle::from(bad);
    bool oracle_found = false;
    for (int a = 0; a < o.n; ++a) {
        for (int b = 0; b < o.n; ++b) {
            if (o.neg[oracle::join(o, a, b)] != oracle::meet(o, o.neg[a], o.neg[b])) oracle_found = true;
        }
    }
    const auto* dm = r.find(laws::de_morgan);
    ASSERT_NE(dm, nullptr);
    EXPECT_EQ(!dm->passed, oracle_found);
    const auto* dp = r.find(laws::de_morgan_product);
    ASSERT_NE(dp, nullptr);
    EXPECT_TRUE(!dm->passed || !dp->passed);

    for (const auto* v : {dm, dp}) {
        if (v->passed) continue;
        ASSERT_EQ(v->witness.size(), 2u);
        const int a = static_cast<int>(v->witness[0]);
        const int b = static_cast<int>(v->witness[1]);
        if (v == dm) {
            EXPECT_NE(o.neg[oracle::join(o, a, b)], oracle::meet(o, o.neg[a], o.neg[b]));
        } else {
            EXPECT_NE(o.neg[o.mul[a][b]], o.tilde[o.mul[o.minus[o.neg[a]]][o.minus[o.neg[b]]]]);
        }
    }
}

TEST(ValidateDqra, MalformedTablesRejectedBeforeChecks) {
    auto t = trivial_tables();
    t.mult = {{1}};
    EXPECT_THROW(FiniteDqRA{t}, MalformedInput);
    t = trivial_tables();
    t.tilde = {};
    EXPECT_THROW(FiniteDqRA{t}, MalformedInput);
    t = trivial_tables();
    t.leq = {{true, false}};
    EXPECT_THROW(FiniteDqRA{t}, MalformedInput);
    t = trivial_tables();
    t.unit = 3;
    EXPECT_THROW(FiniteDqRA{t}, MalformedInput);
}

TEST(ValidateDqra, NonLatticeOrderIsReportedNotCrashed) {
    // two incomparable elements with no bounds
    AlgebraTables t;
    t.leq = {{true, false}, {false, true}};
    t.mult = {{0, 1}, {1, 0}};
    t.tilde = t.minus = t.neg = {1, 0};
    t.unit = 0;
    const auto r = validate_dqra(FiniteDqRA(t));
    EXPECT_FALSE(r.passed(laws::lattice));
    EXPECT_FALSE(r.ok());
    for (const auto& f : r.failures()) EXPECT_FALSE(f.witness.empty()) << f.law;
}

TEST(ValidateDqra, AgreesWithOracleOnCatalogueAndMutants) {
    for (const auto& A : catalogue()) {
        EXPECT_EQ(validate_dqra(A).ok(), oracle::is_dqra(oracle::from(A))) << A.name();
        // mutate one product entry and compare verdicts again
        auto t = A.tables();
        if (t.mult.size() < 2) continue;
        for (std::size_t i = 0; i < t.mult.size(); ++i) {
            auto m = t;
            m.mult[i][i] = (m.mult[i][i] + 1) % m.mult.size();
            const FiniteDqRA M(m);
            EXPECT_EQ(validate_dqra(M).ok(), oracle::is_dqra(oracle::from(M))) << A.name() << " mutant " << i;
        }
    }
}

TEST(ValidateDqra, IsIdempotent) {
    for (const auto& A : catalogue()) EXPECT_EQ(validate_dqra(A), validate_dqra(A)) << A.name();
}

TEST(DerivedZero, SixElementExampleIsTheCoatom) {
    const auto A = load_algebra("D6_3_5_2");
    const auto z = derived_zero(A);
    EXPECT_EQ(A.label(z), "0");
    EXPECT_TRUE(A.less(el(A, "a"), z));
    EXPECT_TRUE(A.less(el(A, "b"), z));
    EXPECT_TRUE(A.less(z, el(A, "top")));
}

TEST(DerivedZero, OneElementAlgebra) {
    const FiniteDqRA A(trivial_tables());
    EXPECT_EQ(derived_zero(A), ElementId(0));
}

TEST(DerivedZero, TwoElementFullAlgebraOverOnePoint) {
    // oracle: ∼≤ = ≤^{c⌣};α over the one-point structure is ∅
    const auto S = qra::test::point1();
    const auto os = oracle::from(S);
    const auto tilde_leq = oracle::tilde(os, os.leq);
    EXPECT_TRUE(tilde_leq.empty());

    const auto A = full_dq(S);
    ASSERT_EQ(A.size(), 2u);
    EXPECT_EQ(derived_zero(A), A.bottom().value());
    EXPECT_EQ(derived_zero(load_algebra("chain2")), el(load_algebra("chain2"), "bot"));
}

TEST(DerivedZero, RejectsDisagreeingConstants) {
    auto t = load_algebra("D6_3_5_2").tables();
    std::swap(t.neg[0], t.neg[1]);  // ¬1 no longer 0
    EXPECT_THROW(derived_zero(FiniteDqRA(t)), PreconditionError);
}

TEST(Residuals, UnitIsNeutral) {
    for (const auto& A : catalogue()) {
        for (auto c : A.elements()) {
            const auto r = residuals(A, A.unit(), c);
            EXPECT_EQ(r.left, c) << A.name();
            EXPECT_EQ(r.right, c) << A.name();
        }
    }
}

TEST(Residuals, SixElementExampleAgainstRelationalModel) {
    // oracle: R\S = (R^⌣;S^c)^c computed on sets of pairs in the 4-point model
    const auto A = load_algebra("D6_3_5_2");
    const auto rep = qra::test::load_representation("D6_3_5_2");
    const auto os = oracle::from(rep.structure);
    auto rel_left = [&](ElementId a, ElementId c) {
        const auto R = oracle::from(rep[a]);
        const auto T = oracle::from(rep[c]);
        return oracle::minus(os.E, oracle::compose(oracle::converse(R), oracle::minus(os.E, T)));
    };
    const auto a = el(A, "a");
    const auto top = el(A, "top");
    const auto zero = el(A, "0");

    EXPECT_EQ(rel_left(a, top), oracle::from(rep[top]));
    EXPECT_EQ(residuals(A, a, top).left, top);

    // a\0: relational value, stored as regression
    EXPECT_EQ(oracle::to(4, rel_left(a, zero)), rep[el(A, "a")]);
    EXPECT_EQ(residuals(A, a, zero).left, a);

    for (auto x : A.elements()) {
        for (auto y : A.elements()) {
            EXPECT_EQ(oracle::to(4, rel_left(x, y)), rep[residuals(A, x, y).left]);
        }
    }
}

TEST(Residuals, ResiduationEquivalencesHold) {
    for (const auto& A : catalogue()) {
        EXPECT_TRUE(residuation_holds(A)) << A.name();
        for (auto a : A.elements()) {
            for (auto b : A.elements()) {
                for (auto c : A.elements()) {
                    const bool p = A.leq(A.mul(a, b), c);
                    EXPECT_EQ(p, A.leq(b, residuals(A, a, c).left));
                    EXPECT_EQ(p, A.leq(a, residuals(A, b, c).right));
                }
            }
        }
    }
}

TEST(Plus, ZeroIsNeutral) {
    for (const auto& A : catalogue()) {
        const auto z = derived_zero(A);
        for (auto a : A.elements()) {
            EXPECT_EQ(plus(A, a, z), a) << A.name();
            EXPECT_EQ(plus(A, z, a), a) << A.name();
        }
    }
}

TEST(Plus, DeMorganProductSpotCheck) {
    const auto A = load_algebra("D6_3_5_2");
    const auto a = el(A, "a");
    const auto b = el(A, "b");
    EXPECT_EQ(A.neg(A.mul(a, b)), plus(A, A.neg(a), A.neg(b)));
}

TEST(Plus, OneElement) {
    const FiniteDqRA A(trivial_tables());
    EXPECT_EQ(plus(A, ElementId(0), ElementId(0)), ElementId(0));
}

TEST(CheckDi, PassesOnCatalogue) {
    for (const auto& A : catalogue()) EXPECT_TRUE(check_di(A).ok()) << A.name() << "\n" << check_di(A);
    EXPECT_TRUE(check_di(FiniteDqRA(trivial_tables())).ok());
}

TEST(CheckDi, MutatedTildeFailsWithWitness) {
    const auto A = load_algebra("D6_3_5_2");
    auto t = A.tables();
    // exchange ∼ on a and b only; − stays as it was
    std::swap(t.tilde[el(A, "a").index()], t.tilde[el(A, "b").index()]);
    const FiniteDqRA M(t);
    const auto r = check_di(M);
    const auto* di = r.find(laws::de_morgan_involution);
    ASSERT_NE(di, nullptr);
    // oracle rescan of (Di)
    const auto o = oracle::from(M);
    std::vector<std::size_t> expected;
    for (int a = 0; a < o.n && expected.empty(); ++a) {
        if (o.neg[o.tilde[a]] != o.minus[o.neg[a]]) expected.push_back(a);
    }
    ASSERT_FALSE(expected.empty());
    EXPECT_FALSE(di->passed);
    EXPECT_EQ(di->witness, expected);
    EXPECT_EQ(expected.front(), el(A, "a").index());
}

TEST(AlgebraProperties, NegationsAreDualLatticeIsomorphisms) {
    for (const auto& A : catalogue()) {
        for (auto a : A.elements()) {
            for (auto b : A.elements()) {
                EXPECT_EQ(A.tilde(A.join(a, b)), A.meet(A.tilde(a), A.tilde(b)));
                EXPECT_EQ(A.minus(A.join(a, b)), A.meet(A.minus(a), A.minus(b)));
                EXPECT_EQ(A.leq(a, b), A.leq(A.neg(b), A.neg(a)));
            }
            EXPECT_EQ(A.neg(A.neg(a)), a);
        }
        std::set<ElementId> ti, mi;
        for (auto a : A.elements()) {
            ti.insert(A.tilde(a));
            mi.insert(A.minus(a));
        }
        EXPECT_EQ(ti.size(), A.size());
        EXPECT_EQ(mi.size(), A.size());
    }
}

TEST(AlgebraProperties, MeetJoinTablesMatchOrderOracle) {
    for (const auto& A : catalogue()) {
        const auto o = oracle::from(A);
        for (auto a : A.elements()) {
            for (auto b : A.elements()) {
                EXPECT_EQ(static_cast<int>(A.meet(a, b).index()), oracle::meet(o, a.index(), b.index()));
                EXPECT_EQ(static_cast<int>(A.join(a, b).index()), oracle::join(o, a.index(), b.index()));
            }
        }
    }
}

TEST(AlgebraProperties, StarClausesAgree) {
    for (const auto& A : catalogue()) {
        const auto m1 = A.minus(A.unit());
        for (auto a : A.elements()) {
            for (auto b : A.elements()) {
                const bool le = A.leq(a, b);
                EXPECT_EQ(le, A.leq(A.mul(a, A.tilde(b)), m1));
                EXPECT_EQ(le, A.leq(A.mul(A.minus(b), a), m1));
            }
        }
    }
}
