#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "qlctx/errors.hpp"
#include "qlctx/kolmogorov.hpp"
#include "qlctx/supplementarity.hpp"

using namespace qlctx;

namespace {

const Mat2 kSym7{{{0.7, 0.3}, {0.3, 0.7}}};
const Mat2 kSym6{{{0.6, 0.4}, {0.4, 0.6}}};
const Mat2 kIdentity{{{1.0, 0.0}, {0.0, 1.0}}};

TEST(DoubleStochastic, Examples) {
    EXPECT_TRUE(is_double_stochastic({{{{0.5, 0.5}, {0.5, 0.5}}}}, 1e-9));
    EXPECT_TRUE(is_double_stochastic({kSym7}, 1e-9));
    EXPECT_FALSE(is_double_stochastic({{{{0.9, 0.1}, {0.8, 0.2}}}}, 1e-9));
}

TEST(SymmetricConditioning, Examples) {
    const auto same = make_context({0.5, 0.5}, {0.5, 0.5}, kSym7, kSym7);
    EXPECT_TRUE(is_symmetrically_conditioned(same, 1e-9));
    const auto other = make_context({0.5, 0.5}, {0.5, 0.5}, kSym7, kSym6);
    EXPECT_FALSE(is_symmetrically_conditioned(other, 1e-9));
    const auto ident = make_context({0.3, 0.7}, {0.3, 0.7}, kIdentity, kIdentity);
    EXPECT_TRUE(is_symmetrically_conditioned(ident, 1e-9));
    EXPECT_THROW(is_symmetrically_conditioned(make_context({0.5, 0.5}, {0.5, 0.5}, kSym7), 1e-9),
                 MissingReverseMatrix);
}

TEST(SymmetricConditioning, UsesTransposedIndices) {
    const Mat2 ba{{{0.8, 0.2}, {0.2, 0.8}}};
    const Mat2 ab{{{0.8, 0.2}, {0.2, 0.8}}};
    EXPECT_TRUE(is_symmetrically_conditioned(make_context({0.5, 0.5}, {0.5, 0.5}, ba, ab), 1e-9));
    const Mat2 ba2{{{0.9, 0.1}, {0.1, 0.9}}};
    const Mat2 ab2{{{0.9, 0.1}, {0.1, 0.9}}};
    EXPECT_TRUE(is_symmetrically_conditioned(make_context({0.5, 0.5}, {0.5, 0.5}, ba2, ab2), 1e-9));
}

TEST(SymmetricConditioning, ImpliesStatisticalBalance) {
    support::Gen g(31);
    for (int i = 0; i < 1000; ++i) {
        const auto d = support::random_symmetric_context(g);
        ASSERT_TRUE(is_symmetrically_conditioned(d, 1e-12));
        const auto s = analyze_structure(d);
        EXPECT_TRUE(s.statistically_balanced.value());
    }
}

TEST(Kolmogorov, SymmetricUniformHasJoint) {
    const auto d = make_context({0.5, 0.5}, {0.5, 0.5}, kSym7, kSym7);
    const auto r = kolmogorov_test(d, 1e-9);
    EXPECT_TRUE(r.kolmogorovian);
    ASSERT_TRUE(r.joint.has_value());
    const JointTable want{{{0.35, 0.15}, {0.15, 0.35}}};
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR((*r.joint)[i][j], want[i][j], 1e-15);
    }
    EXPECT_TRUE(brute_force_joint_oracle(d));
}

TEST(Kolmogorov, BalancedNonsupplementaryWithoutJoint) {
    const auto d = make_context({0.5, 0.5}, {0.5, 0.5}, kSym7, kSym6);
    for (std::size_t k = 0; k < 2; ++k) {
        EXPECT_EQ(delta(d, Direction::BGivenA, k), 0.0);
        EXPECT_EQ(delta(d, Direction::AGivenB, k), 0.0);
    }
    const auto r = kolmogorov_test(d, 1e-9);
    EXPECT_FALSE(r.kolmogorovian);
    EXPECT_FALSE(r.joint.has_value());
    EXPECT_NEAR(r.max_residual, 0.05, 1e-12);
    EXPECT_FALSE(brute_force_joint_oracle(d));
}

TEST(Kolmogorov, DegenerateMarginalMatchesOracle) {
    const Mat2 ba{{{0.3, 0.7}, {0.5, 0.5}}};
    const Mat2 ab{{{1.0, 0.0}, {1.0, 0.0}}};
    const auto d = make_context({1.0, 0.0}, {0.3, 0.7}, ba, ab);
    const auto r = kolmogorov_test(d, 1e-9);
    EXPECT_TRUE(r.degenerate_marginal);
    EXPECT_EQ(r.kolmogorovian, brute_force_joint_oracle(d));
    EXPECT_TRUE(r.kolmogorovian);
}

TEST(Kolmogorov, ContextsFromJointsRecoverTheJoint) {
    support::Gen g(32);
    for (int i = 0; i < 500; ++i) {
        const auto j = g.joint();
        const auto d = context_from_joint(j);
        const auto r = kolmogorov_test(d, 1e-9);
        ASSERT_TRUE(r.kolmogorovian);
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t b = 0; b < 2; ++b) EXPECT_NEAR((*r.joint)[a][b], j[a][b], 1e-9);
        }
        for (std::size_t k = 0; k < 2; ++k) {
            EXPECT_NEAR(delta(d, Direction::BGivenA, k), 0.0, 1e-12);
            EXPECT_NEAR(delta(d, Direction::AGivenB, k), 0.0, 1e-12);
        }
    }
}

TEST(Kolmogorov, AgreesWithOracle) {
    support::Gen g(33);
    for (int i = 0; i < 200; ++i) {
        const auto d = g.coin() ? context_from_joint(g.joint()) : support::random_context(g, true, 0.0);
        EXPECT_EQ(kolmogorov_test(d, 1e-9).kolmogorovian, brute_force_joint_oracle(d)) << i;
    }
}

TEST(Kolmogorov, JointIsValidDistribution) {
    support::Gen g(34);
    for (int i = 0; i < 500; ++i) {
        const auto r = kolmogorov_test(support::random_context(g), 1e-9);
        if (!r.kolmogorovian) continue;
        double total = 0.0;
        for (const auto& row : *r.joint) {
            for (double v : row) {
                EXPECT_GE(v, 0.0);
                total += v;
            }
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(SymmetricEquivalence, Examples) {
    const auto uniform = check_symmetric_equivalence(make_context({0.5, 0.5}, {0.5, 0.5}, kSym7, kSym7), 1e-9);
    EXPECT_TRUE(uniform.applies);
    EXPECT_TRUE(uniform.equivalence_holds);
    EXPECT_TRUE(uniform.forced_uniform.value());

    const auto skew = check_symmetric_equivalence(make_context({0.3, 0.7}, {0.6, 0.4}, kSym7, kSym7), 1e-9);
    EXPECT_TRUE(skew.applies);
    EXPECT_FALSE(skew.kolmogorovian);
    EXPECT_FALSE(skew.nonsupplementary);
    EXPECT_TRUE(skew.equivalence_holds);
    EXPECT_FALSE(skew.forced_uniform.has_value());

    EXPECT_FALSE(check_symmetric_equivalence(make_context({0.5, 0.5}, {0.5, 0.5}, kSym7, kSym6), 1e-9).applies);
}

TEST(SymmetricEquivalence, HoldsOnRandomSymmetricContexts) {
    support::Gen g(35);
    for (int i = 0; i < 1000; ++i) {
        const auto r = check_symmetric_equivalence(support::random_symmetric_context(g), 1e-9);
        ASSERT_TRUE(r.applies);
        EXPECT_TRUE(r.equivalence_holds);
        if (r.nonsupplementary) {
            EXPECT_TRUE(r.forced_uniform.value());
        }
    }
}

TEST(JointBalance, Examples) {
    const auto sym = joint_balance_equivalences({{{0.35, 0.15}, {0.15, 0.35}}}, 1e-9);
    EXPECT_TRUE(sym.double_stochastic_both && sym.uniform_marginals && sym.symmetric_conditioning);
    EXPECT_TRUE(sym.all_equivalent);

    const auto skew = joint_balance_equivalences({{{0.5, 0.2}, {0.1, 0.2}}}, 1e-9);
    EXPECT_FALSE(skew.double_stochastic_both || skew.uniform_marginals || skew.symmetric_conditioning);
    EXPECT_TRUE(skew.all_equivalent);

    const auto flat = joint_balance_equivalences({{{0.25, 0.25}, {0.25, 0.25}}}, 1e-9);
    EXPECT_TRUE(flat.double_stochastic_both && flat.uniform_marginals && flat.symmetric_conditioning);

    EXPECT_THROW(joint_balance_equivalences({{{0.5, 0.5}, {0.0, 0.0}}}, 1e-9), ZeroMarginal);
}

TEST(JointBalance, EquivalentOnRandomPositiveJoints) {
    support::Gen g(36);
    for (int i = 0; i < 2000; ++i) {
        JointTable j;
        if (g.coin(0.3)) {
            // symmetric joint with uniform marginals
            const double s = g.uniform(0.01, 0.49);
            j = {{{s, 0.5 - s}, {0.5 - s, s}}};
        } else {
            j = g.joint(0.01);
        }
        EXPECT_TRUE(joint_balance_equivalences(j, 1e-9).all_equivalent);
    }
}

TEST(ProductMeasure, ReproducesMarginals) {
    const auto j = product_measure({{0.3, 0.7}}, {{0.6, 0.4}});
    EXPECT_NEAR(j[0][0] + j[0][1], 0.3, 1e-15);
    EXPECT_NEAR(j[0][0] + j[1][0], 0.6, 1e-15);
    EXPECT_TRUE(kolmogorov_test(context_from_joint(j), 1e-9).kolmogorovian);
}

TEST(ProductMeasure, NeedNotMatchSuppliedConditionals) {
    const auto d = make_context({0.5, 0.5}, {0.5, 0.5}, kSym7, kSym7);
    const auto j = product_measure(d.p_a, d.p_b);
    EXPECT_NEAR(j[0][0], 0.25, 1e-15);
    EXPECT_GT(std::abs(j[0][0] - d.p_a[0] * d.p_b_given_a(0, 0)), 0.05);
}

TEST(ContextFromJoint, ZeroMarginalThrows) {
    EXPECT_THROW(context_from_joint({{{0.5, 0.5}, {0.0, 0.0}}}), ZeroMarginal);
}

TEST(Structure, FieldsWithoutReverseAreEmpty) {
    const auto s = analyze_structure(make_context({0.5, 0.5}, {0.5, 0.5}, kSym7));
    EXPECT_TRUE(s.double_stochastic_ba);
    EXPECT_FALSE(s.kolmogorovian.has_value());
    EXPECT_FALSE(s.statistically_balanced.has_value());
}

TEST(ProductMeasure, Example) {
    const auto j = product_measure({{0.5, 0.5}}, {{0.7, 0.3}});
    const JointTable want{{{0.35, 0.15}, {0.35, 0.15}}};
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) EXPECT_NEAR(j[a][b], want[a][b], 1e-15);
    }
}

TEST(SymmetricEquivalence, IdentityMatrixAllowsSkewedMarginals) {
    const auto r = check_symmetric_equivalence(make_context({0.3, 0.7}, {0.3, 0.7}, kIdentity, kIdentity), 1e-9);
    EXPECT_TRUE(r.applies);
    EXPECT_TRUE(r.kolmogorovian);
    EXPECT_TRUE(r.nonsupplementary);
    EXPECT_TRUE(r.equivalence_holds);
    EXPECT_FALSE(r.forced_uniform.value());
}

TEST(JointBalance, ZeroCellsBreakTheEquivalence) {
    const auto r = joint_balance_equivalences({{{0.3, 0.0}, {0.0, 0.7}}}, 1e-9);
    EXPECT_TRUE(r.symmetric_conditioning);
    EXPECT_FALSE(r.uniform_marginals);
    EXPECT_FALSE(r.all_equivalent);
}

}  // namespace
