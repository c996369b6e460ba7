#include <skewtor/holonomy.hpp>
#include <skewtor/models.hpp>

#include <gtest/gtest.h>

using namespace skewtor;
using Q = mpq_class;

TEST(HolonomyAlgebra, Dimensions) {
    EXPECT_TRUE(holonomy_algebra(Tensor<Q>(3, 4), Gram<Q>::identity(3)).empty());
    auto s2 = model_from_pair(s2_pair<Q>());
    EXPECT_EQ(holonomy_algebra(s2.Rtau, s2.g).size(), 1u);
    auto s4 = model_from_pair(s4_pair<Q>());
    EXPECT_EQ(holonomy_algebra(s4.Rtau, s4.g).size(), 6u);
    auto b = model_from_pair(berger_pair<Q>());
    EXPECT_EQ(holonomy_algebra(b.Rtau, b.g).size(), 1u);
}

TEST(StandardDecomposition, Berger) {
    auto M = model_from_pair(berger_pair<Q>());
    auto d = standard_decomposition(holonomy_algebra(M.Rtau, M.g), M.g);
    ASSERT_EQ(d.h_blocks.size(), 1u);
    EXPECT_EQ(d.H.dim(), 2u);
    EXPECT_EQ(d.V.dim(), 1u);
    EXPECT_TRUE(contains(d.H, unit<Q>(3, 0)) && contains(d.H, unit<Q>(3, 1)));
    EXPECT_TRUE(contains(d.V, unit<Q>(3, 2)));
    EXPECT_EQ(d.h_cap[0], 1u);
}

TEST(StandardDecomposition, Su2AllVertical) {
    auto M = model_from_pair(su2_group<Q>());
    auto d = standard_decomposition(holonomy_algebra(M.Rtau, M.g), M.g);
    EXPECT_EQ(d.H.dim(), 0u);
    EXPECT_EQ(d.V.dim(), 3u);
    EXPECT_EQ(d.v_blocks.size(), 1u);
}

TEST(StandardDecomposition, S4SingleBlock) {
    auto M = model_from_pair(s4_pair<Q>());
    auto d = standard_decomposition(holonomy_algebra(M.Rtau, M.g), M.g);
    ASSERT_EQ(d.h_blocks.size(), 1u);
    EXPECT_EQ(d.H.dim(), 4u);
    EXPECT_EQ(d.V.dim(), 0u);
    EXPECT_EQ(d.h_cap[0], 6u);
}

TEST(StandardDecomposition, Cp1xCp1TwoBlocks) {
    auto M = model_from_pair(cp1xcp1_pair<Q>());
    auto d = standard_decomposition(holonomy_algebra(M.Rtau, M.g), M.g);
    EXPECT_EQ(d.h_blocks.size(), 2u);
    EXPECT_EQ(taum_invariant_rank(d), 0u);
}

TEST(StandardDecomposition, BlocksAreInvariantAndIrreducible) {
    for (auto P : {berger_pair<Q>(), s4_pair<Q>(), cp1xcp1_pair<Q>(), s2_pair<Q>()}) {
        auto M = model_from_pair(P);
        auto d = standard_decomposition(holonomy_algebra(M.Rtau, M.g), M.g);
        for (auto& b : d.h_blocks) {
            for (auto& A : d.hol) EXPECT_TRUE(invariant_under(b, A));
            EXPECT_TRUE(is_irreducible(d.hol, b, M.g));
        }
        auto B = d.adapted();
        EXPECT_EQ(rank(B), M.dim());
    }
}

TEST(TorsionSplit, Berger) {
    auto M = model_from_pair(berger_pair<Q>());
    auto d = standard_decomposition(holonomy_algebra(M.Rtau, M.g), M.g);
    auto s = torsion_split(M.tau, d);
    EXPECT_TRUE(s.tau_h.is_zero());
    EXPECT_TRUE(s.tau_v.is_zero());
    EXPECT_TRUE(s.forbidden.is_zero());
    EXPECT_EQ(s.tau_m, M.tau);
    EXPECT_EQ(taum_invariant_rank(d), 0u);
    EXPECT_TRUE(tauv_dot_tauh_check(M.tau, d));
}

TEST(TorsionSplit, Su2AllVerticalAndZero) {
    auto M = model_from_pair(su2_group<Q>());
    auto d = standard_decomposition(holonomy_algebra(M.Rtau, M.g), M.g);
    auto s = torsion_split(M.tau, d);
    EXPECT_EQ(s.tau_v, M.tau);
    EXPECT_TRUE(s.tau_h.is_zero() && s.tau_m.is_zero() && s.forbidden.is_zero());
    auto z = torsion_split(Tensor<Q>(3, 3), d);
    EXPECT_TRUE(z.tau_v.is_zero());
}

TEST(TorsionSplit, ForbiddenSectorFlagged) {
    // hol rotates e1,e2; e3,e4 trivial; tau = e1 ^ e3 ^ e4 sits in Lambda^2 v (x) h
    Gram<Q> g = Gram<Q>::identity(4);
    std::vector<Mat<Q>> hol{so_unit<Q>(4, 0, 1)};
    auto d = standard_decomposition(hol, g);
    Tensor<Q> t(4, 3);
    set_alt(t, {0, 2, 3}, Q(1));
    auto s = torsion_split(t, d);
    EXPECT_EQ(s.forbidden, t);
    EXPECT_FALSE(parallelism_check(t, hol));
}

TEST(TauvTauh, MutationFlagged) {
    // hol = so(3) on e1..e3, V = (e4, e5); a Lambda^2 v (x) h piece makes tau_V move vol(h)
    Gram<Q> g = Gram<Q>::identity(5);
    std::vector<Mat<Q>> hol{so_unit<Q>(5, 0, 1), so_unit<Q>(5, 0, 2), so_unit<Q>(5, 1, 2)};
    auto d = standard_decomposition(hol, g);
    ASSERT_EQ(d.h_blocks.size(), 1u);
    Tensor<Q> t(5, 3);
    set_alt(t, {0, 1, 2}, Q(1));
    EXPECT_TRUE(tauv_dot_tauh_check(t, d));
    set_alt(t, {0, 3, 4}, Q(1));
    EXPECT_FALSE(tauv_dot_tauh_check(t, d));
    EXPECT_FALSE(torsion_split(t, d).forbidden.is_zero());
}

TEST(Decomposability, ProductSplits) {
    auto M = model_from_pair(su2xsu2_group<Q>());
    auto d = standard_decomposition(holonomy_algebra(M.Rtau, M.g), M.g);
    auto s = decomposability_test(M.tau, d);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(s->first.dim(), 3u);
    EXPECT_EQ(s->second.dim(), 3u);
    EXPECT_TRUE(split_is_consistent(M, d, *s));
}

TEST(Decomposability, BergerAndSu2DoNotSplit) {
    for (auto P : {berger_pair<Q>(), su2_group<Q>(), s4_pair<Q>()}) {
        auto M = model_from_pair(P);
        auto d = standard_decomposition(holonomy_algebra(M.Rtau, M.g), M.g);
        EXPECT_FALSE(decomposability_test(M.tau, d).has_value());
    }
}

TEST(Decomposability, FlatProduct) {
    Gram<Q> g = Gram<Q>::identity(2);
    auto d = standard_decomposition(std::vector<Mat<Q>>{}, g);
    EXPECT_TRUE(decomposability_test(Tensor<Q>(2, 3), d).has_value());
}

TEST(LiftConstants, Su2AndBerger) {
    {
        auto M = model_from_pair(su2_group<Q>());
        auto d = standard_decomposition(holonomy_algebra(M.Rtau, M.g), M.g);
        auto c = extract_lift_constants(M, d);
        // T(xi1, xi2) = -[xi1, xi2]
        auto T12 = tau_xy(c.T, unit<Q>(3, 0), unit<Q>(3, 1), M.g);
        EXPECT_EQ(T12, (Vec<Q>{0, 0, -2}));
        for (auto& row : c.R1)
            for (auto& v : row) EXPECT_TRUE(v.empty());
    }
    {
        auto M = model_from_pair(berger_pair<Q>());
        auto d = standard_decomposition(holonomy_algebra(M.Rtau, M.g), M.g);
        auto c = extract_lift_constants(M, d);
        ASSERT_EQ(c.R1.size(), 1u);
        EXPECT_TRUE(is_zero(c.R1[0][0]));
        EXPECT_TRUE(vertical_curvature_invariance(M, d));
    }
}

TEST(VerticalCurvature, MutationFails) {
    // hol rotates e1,e2; vertical e3,e4 carries a non-invariant curvature piece
    Gram<Q> g = Gram<Q>::identity(4);
    TorsionModel<Q> M{g, Tensor<Q>(4, 3), Tensor<Q>(4, 4), {}};
    M.Rtau(0, 1, 0, 1) = -1;
    M.Rtau(1, 0, 0, 1) = 1;
    M.Rtau(0, 1, 1, 0) = 1;
    M.Rtau(1, 0, 1, 0) = -1;
    auto d = standard_decomposition(std::vector<Mat<Q>>{so_unit<Q>(4, 0, 1)}, g);
    EXPECT_TRUE(vertical_curvature_invariance(M, d));
    M.Rtau(0, 2, 2, 3) = 1;
    M.Rtau(0, 2, 3, 2) = -1;
    EXPECT_FALSE(vertical_curvature_invariance(M, d));
}
