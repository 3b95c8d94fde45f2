#include <gtest/gtest.h>

#include "sparsecode/errors.hpp"
#include "sparsecode/oracle.hpp"

using namespace sparsecode;
using namespace sparsecode::oracle;

TEST(DenseReference, IdentityAndZero) {
    std::vector<Triplet> t;
    for (Index i = 0; i < 4; ++i) {
        t.push_back({i, i, 1.0});
    }
    const auto eye = SparseMatrix::from_triplets(4, 4, t);
    Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(4, 1.0, 4.0);
    EXPECT_EQ(dense_reference(eye, x), x);
    const auto b = random_sparse(4, 3, 0.5, 1);
    EXPECT_EQ(dense_reference(eye, b), b.to_dense());
    EXPECT_TRUE(dense_reference(SparseMatrix(4, 2), x).isZero());
    EXPECT_THROW(dense_reference(eye, Eigen::VectorXd(3)), DimensionError);
}

TEST(Union, ExampleSubset) {
    const auto plan = make_proposed_mv_plan(6, 4, 2, 1);
    const auto r = union_report(plan, {0, 1, 4}, 3);
    EXPECT_EQ(r.unknowns, (std::vector<int>{0, 1, 2}));
    EXPECT_TRUE(r.pass);
}

TEST(Hall, FigureOneExhaustive) {
    const auto plan = make_proposed_mv_plan(6, 4, 2, 1);
    const auto h = hall_check(plan, 4);
    EXPECT_TRUE(h.pass);
    ASSERT_EQ(h.levels.size(), 4u);
    for (const auto& level : h.levels) {
        EXPECT_TRUE(level.exhaustive);
        EXPECT_EQ(level.failures, 0u);
    }
}

TEST(Hall, FigureThreeSampledUpperLevels) {
    const auto plan = make_proposed_mm_plan(20, 4, 4, 4, 1);
    EnumerationOptions opts;
    opts.exhaustive_cap = 1u << 17;  // every level with m <= 8 is exhaustive here
    opts.samples = 2000;
    const auto h = hall_check(plan, 16, opts);
    EXPECT_TRUE(h.pass);
    for (const auto& level : h.levels) {
        EXPECT_EQ(level.exhaustive, level.m <= 8 || level.m >= 12) << level.m;
    }
}

TEST(Hall, DetectsDeficientPlan) {
    auto plan = make_proposed_mv_plan(6, 4, 2, 1);
    for (int w = 0; w < 6; ++w) {
        plan.supports_a[w] = {0, 1};
    }
    const auto h = hall_check(plan, 4);
    EXPECT_FALSE(h.pass);
    EXPECT_FALSE(h.failures.empty());
    EXPECT_EQ(h.levels[2].failures, 20u);
    EXPECT_THROW(hall_check(plan, 5), DimensionError);
}

TEST(Claims, FigureOne) {
    const auto plan = make_proposed_mv_plan(6, 4, 2, 1);
    const auto claims = claim_bounds_check(plan);
    ASSERT_EQ(claims.size(), 2u);
    for (const auto& c : claims) {
        EXPECT_TRUE(c.pass()) << c.name;
    }
    EXPECT_EQ(participating_unknowns(plan, {4, 5}).size(), 4u);
}

TEST(Claims, FigureTwoWindows) {
    const auto plan = make_proposed_mv_plan(12, 9, 3, 1);
    for (const auto& c : claim_bounds_check(plan)) {
        EXPECT_TRUE(c.pass()) << c.name;
        EXPECT_FALSE(c.sampled);
    }
}

TEST(Claims, FigureThreeClasses) {
    const auto plan = make_proposed_mm_plan(20, 4, 4, 4, 1);
    const auto claims = claim_bounds_check(plan);
    ASSERT_EQ(claims.size(), 4u);
    for (const auto& c : claims) {
        EXPECT_TRUE(c.pass()) << c.name;
    }
    // class 0 = {W0, W4, W8, W12}, any two of them
    const auto two = participating_unknowns(plan, {0, 8});
    EXPECT_GE(two.size(), 6u);
}

TEST(Claims, BaselineRejected) {
    EXPECT_THROW(claim_bounds_check(baseline_poly_plan(6, 4, 1)), InvalidPlan);
}

TEST(Decodability, ExhaustiveCounts) {
    const auto r1 = exhaustive_decodability(make_proposed_mv_plan(6, 4, 2, 1));
    EXPECT_EQ(r1.subsets, 15u);
    EXPECT_EQ(r1.failures, 0u);
    const auto r2 = exhaustive_decodability(make_proposed_mv_plan(12, 9, 3, 1));
    EXPECT_EQ(r2.subsets, 220u);
    EXPECT_EQ(r2.failures, 0u);
    EXPECT_THROW(exhaustive_decodability(make_proposed_mv_plan(12, 9, 3, 1), 100), ModeError);
}

TEST(Decodability, HallImpliesFullRank) {
    for (int ka = 2; ka <= 8; ++ka) {
        for (int s = 1; s <= std::min(ka, 4); ++s) {
            const auto plan = make_proposed_mv_plan(ka + s, ka, s, 17);
            EXPECT_TRUE(hall_check(plan, ka).pass);
            EXPECT_EQ(exhaustive_decodability(plan).failures, 0u) << ka << ' ' << s;
        }
    }
}
