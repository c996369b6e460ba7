#include <skewtor/lift.hpp>
#include <skewtor/models.hpp>

#include <gtest/gtest.h>

using namespace skewtor;
using Q = mpq_class;

namespace {

// Hopf-type data over S^2 = SU(2)/U(1): fibre u(1) with |xi|^2 = t, Rgamma(e1,e2) = -2
ParallelCurvatureGeometry<Q> s2_u1(Q t) {
    std::vector<std::vector<Vec<Q>>> R(2, std::vector<Vec<Q>>(2, Vec<Q>{0}));
    R[0][1] = {-2};
    R[1][0] = {2};
    return make_pcg<Q>("s2-u1", s2_pair<Q>(), abelian<Q>(1), Gram<Q>(Mat<Q>::diag({t})), Subspace<Q>(1), R);
}

ParallelCurvatureGeometry<Q> point_su2() {
    return make_pcg<Q>("point-su2", point_pair<Q>(), su2<Q>(), Gram<Q>::identity(3), Subspace<Q>(3), {});
}

// S^4 with the sp(1)_+ part of the isotropy curvature
ParallelCurvatureGeometry<Q> s4_sp1_pcg() {
    auto P = s4_pair<Q>();
    auto S = s4_sp1<Q>(1);
    auto g = subalgebra(so5<Q>(), S);
    Gram<Q> I10 = Gram<Q>::identity(10);
    auto gram = I10.restrict(S);
    auto proj = [&](const Vec<Q>& x) { return gram.inv() * (S.matrix().transpose() * x); };
    std::vector<std::vector<Vec<Q>>> R(4, std::vector<Vec<Q>>(4));
    for (size_t x = 0; x < 4; ++x)
        for (size_t y = 0; y < 4; ++y) R[x][y] = Q(-1) * proj(P.g().bracket(P.m()[x], P.m()[y]));
    return make_pcg<Q>("s4-sp1", P, g, gram, Subspace<Q>(3), R);
}

} // namespace

TEST(Pcg, AxiomsHoldOnExamples) {
    for (auto G : {s2_u1(1), s2_u1(Q(1, 2)), point_su2(), s4_sp1_pcg()}) {
        auto r = pgwt_axioms_check(G);
        EXPECT_TRUE(r.ok()) << G.id << " " << r.first_failure();
    }
}

TEST(Pcg, LambdaS2) {
    auto lr = derive_lambda(s2_u1(1));
    ASSERT_TRUE(lr.lambda);
    EXPECT_EQ((*lr.lambda)(0, 0), 1);
}

TEST(Lift, S2TorsionValues) {
    auto L1 = inverse_construct(s2_u1(1));
    EXPECT_EQ(L1.tau(0, 1, 2), -1);
    auto L2 = inverse_construct(s2_u1(Q(1, 2)));
    EXPECT_EQ(L2.tau(0, 1, 2), Q(-1, 2));
    EXPECT_TRUE(is_alternating(L2.tau));
}

TEST(Lift, PointBaseIsTheGroup) {
    auto L = inverse_construct(point_su2());
    EXPECT_EQ(L.tau, canonical_torsion(su2_group<Q>()));
    EXPECT_TRUE(L.model.Rtau.is_zero());
}

TEST(Lift, ParallelOnExamples) {
    for (auto G : {s2_u1(1), s2_u1(Q(1, 2)), point_su2(), s4_sp1_pcg()}) {
        auto L = inverse_construct(G);
        auto r = verify_parallel_torsion(L);
        EXPECT_TRUE(r.ok()) << G.id << " " << r.first_failure();
        EXPECT_TRUE(check_rgt(L.model).ok()) << G.id;
        auto hol = holonomy_algebra(L.model.Rtau, L.model.g, L.model.nomizu);
        EXPECT_TRUE(parallelism_check(L.tau, hol)) << G.id;
    }
}

TEST(Lift, BergerMatchesHalfFibre) {
    auto L = inverse_construct(s2_u1(Q(1, 2)));
    auto M = model_from_pair(berger_pair<Q>());
    auto B = Mat<Q>::diag({1, 1, Q(1, 2)});
    EXPECT_EQ(M.tau.pullback(B), L.tau);
    EXPECT_EQ(M.Rtau.pullback(B), L.model.Rtau);
}

TEST(Lift, Round3SphereIsFlat) {
    auto L = inverse_construct(s2_u1(1));
    EXPECT_TRUE(L.model.Rtau.is_zero());
    EXPECT_EQ(L.tau, canonical_torsion(su2_group<Q>()));
}

TEST(Lift, MutationsOfTheTorsionFail) {
    auto base = inverse_construct(s4_sp1_pcg());
    // horizontal/vertical mixed entry
    {
        auto L = base;
        set_alt(L.tau, {0, 1, 4}, Q(L.tau(0, 1, 4) + 1));
        EXPECT_FALSE(verify_parallel_torsion(L).ok());
    }
    // purely vertical entry rescaled
    {
        auto L = base;
        set_alt(L.tau, {4, 5, 6}, Q(Q(2) * L.tau(4, 5, 6)));
        EXPECT_FALSE(verify_parallel_torsion(L).ok());
    }
    // a horizontal 3-form on a symmetric base
    {
        auto L = base;
        set_alt(L.tau, {0, 1, 2}, Q(1));
        EXPECT_FALSE(verify_parallel_torsion(L).ok());
    }
    // torsion no longer alternating
    {
        auto L = base;
        L.tau(0, 1, 4) += 1;
        auto r = verify_parallel_torsion(L);
        EXPECT_EQ(r.find("tau.alternating")->status, Status::fail);
    }
    // connection table broken on one horizontal pair
    {
        auto L = inverse_construct(s2_u1(Q(1, 2)));
        L.table[0][1][2] += 1;
        auto r = verify_parallel_torsion(L);
        EXPECT_FALSE(r.ok());
        EXPECT_EQ(r.find("table.levi_civita_plus_tau")->status, Status::fail);
    }
}

TEST(Lift, PreconditionsGuardConstruction) {
    // Rgamma not equivariant: only one of the two sp(1) directions scaled
    auto G = s4_sp1_pcg();
    for (size_t y = 0; y < 4; ++y) {
        G.Rgamma[0][y] = Q(2) * G.Rgamma[0][y];
        G.Rgamma[y][0] = Q(2) * G.Rgamma[y][0];
    }
    EXPECT_FALSE(pgwt_axioms_check(G).ok());
    EXPECT_THROW(inverse_construct(G), PreconditionViolation);
}

TEST(Lift, S2FailsOnNonBiinvariantFibre) {
    // su(2) fibre with a gram that is not natural on v
    auto G = make_pcg<Q>("bad", point_pair<Q>(), su2<Q>(), Gram<Q>(Mat<Q>::diag({1, 2, 3})), Subspace<Q>(3), {});
    auto r = pgwt_axioms_check(G);
    EXPECT_EQ(r.find("ii.naturally_reductive_v")->status, Status::fail);
}

TEST(Lift, ReducedFormsAgreeWhenS2Fails) {
    // double the fibre metric only: s2 breaks and the frame computation sees E4
    auto G = s4_sp1_pcg();
    G.gram = Gram<Q>(Q(2) * G.gram.matrix());
    auto pre = pgwt_axioms_check(G);
    EXPECT_FALSE(pre.ok());
    auto L = inverse_construct(G, false);
    auto r = verify_parallel_torsion(L);
    EXPECT_EQ(r.find("nabla_tau.reduced_E4")->status, Status::fail);
    EXPECT_EQ(r.find("nabla_tau.frame")->status, Status::fail);
    EXPECT_EQ(r.find("nabla_tau.reduced_agrees")->status, Status::pass);
}

TEST(LiftedAlgebra, JacobiViolationsOnMutatedInputs) {
    auto L = inverse_construct(point_su2());
    auto hol = holonomy_algebra(L.model.Rtau, L.model.g, L.model.nomizu);
    auto d = standard_decomposition(hol, L.model.g);
    auto c = extract_lift_constants(L.model, d);
    EXPECT_NO_THROW(build_lifted_algebra(c, L.model.g));
    // uniform rescaling of T is still a Lie algebra
    {
        auto m = c;
        m.T = Q(2) * m.T;
        EXPECT_EQ(jacobi_witness(build_lifted_algebra(m, L.model.g).alg), std::nullopt);
    }
    // two 3-planes sharing one direction
    {
        LiftConstants<Q> m;
        m.T = Tensor<Q>(5, 3);
        set_alt(m.T, {0, 1, 2}, Q(1));
        set_alt(m.T, {0, 3, 4}, Q(1));
        m.V = Subspace<Q>::full(5);
        m.R1.assign(5, std::vector<Vec<Q>>(5));
        EXPECT_THROW(build_lifted_algebra(m, Gram<Q>::identity(5)), JacobiViolation);
    }
    {
        LiftConstants<Q> m;
        m.T = Tensor<Q>(3, 3);
        set_alt(m.T, {0, 1, 2}, Q(1));
        m.V = Subspace<Q>::full(3);
        m.R1.assign(3, std::vector<Vec<Q>>(3));
        // holonomy acting on V but not as derivations of T
        m.hol = {Mat<Q>::diag({1, -1, 0})};
        for (auto& row : m.R1)
            for (auto& v : row) v = Vec<Q>{0};
        EXPECT_THROW(build_lifted_algebra(m, Gram<Q>::identity(3)), JacobiViolation);
    }
}

TEST(RoundTrip, BergerRecoversFibre) {
    auto L = inverse_construct(s2_u1(Q(1, 2)));
    auto rt = round_trip(L);
    EXPECT_TRUE(rt.report.ok()) << rt.report.first_failure();
    ASSERT_TRUE(rt.recovered);
    EXPECT_TRUE(pgwt_axioms_check(*rt.recovered).ok());
    EXPECT_EQ(rt.recovered->Rgamma[0][1], (Vec<Q>{-2}));
}

TEST(RoundTrip, PointBaseRecoversSu2) {
    auto rt = round_trip(inverse_construct(point_su2()));
    EXPECT_TRUE(rt.report.ok()) << rt.report.first_failure();
    ASSERT_TRUE(rt.recovered);
    EXPECT_EQ(rt.recovered->g.bracket(0, 1), (Vec<Q>{0, 0, 2}));
}

TEST(RoundTrip, FlatLiftDoesNotRecoverTheBase) {
    // t = 1 is the round sphere; the holonomy is trivial so everything is vertical
    auto rt = round_trip(inverse_construct(s2_u1(1)));
    EXPECT_FALSE(rt.report.ok());
    EXPECT_EQ(rt.report.find("roundtrip.H_horizontal")->status, Status::fail);
}

TEST(Lift, FloatMirror) {
    auto Gq = s4_sp1_pcg();
    auto Lq = inverse_construct(Gq);
    auto P = s4_pair<double>();
    auto S = s4_sp1<double>(1);
    auto g = subalgebra(so5<double>(), S);
    auto gram = Gram<double>::identity(10).restrict(S);
    std::vector<std::vector<Vec<double>>> R(4, std::vector<Vec<double>>(4));
    for (size_t x = 0; x < 4; ++x)
        for (size_t y = 0; y < 4; ++y) R[x][y] = -1.0 * (gram.inv() * (S.matrix().transpose() * P.g().bracket(P.m()[x], P.m()[y])));
    auto G = make_pcg<double>("s4-sp1", P, g, gram, Subspace<double>(3), R);
    auto L = inverse_construct(G);
    EXPECT_TRUE(verify_parallel_torsion(L).ok());
    for (size_t f = 0; f < L.tau.size(); ++f) EXPECT_NEAR(L.tau.data()[f], Lq.tau.data()[f].get_d(), 1e-9);
}

TEST(Lift, NontrivialK1Quotient) {
    // point base, g = su(2), k1 = e3: M = SU(2)/U(1) with zero torsion
    auto G = make_pcg<Q>("point-su2-k1", point_pair<Q>(), su2<Q>(), Gram<Q>::identity(3),
                         Subspace<Q>::coordinate(3, {2}), {});
    EXPECT_TRUE(pgwt_axioms_check(G).ok()) << pgwt_axioms_check(G).first_failure();
    auto L = inverse_construct(G);
    EXPECT_EQ(L.dim(), 2u);
    EXPECT_TRUE(L.tau.is_zero());
    EXPECT_TRUE(verify_parallel_torsion(L).ok()) << verify_parallel_torsion(L).first_failure();
    // the round sphere of the symmetric pair
    EXPECT_EQ(L.model.Rtau, canonical_curvature(s2_pair<Q>()));
    EXPECT_EQ(round_trip(L).report.checks[0].status, Status::undecided);
}
