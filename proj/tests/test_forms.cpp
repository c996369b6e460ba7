#include <skewtor/forms.hpp>
#include <skewtor/lie.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace skewtor;
using Q = mpq_class;

namespace {

Tensor<Q> vol3() {
    Tensor<Q> t(3, 3);
    set_alt<Q>(t, {0, 1, 2}, Q(1));
    return t;
}

Mat<Q> rot12(size_t n) {
    Mat<Q> A(n, n);
    A(0, 1) = -1;
    A(1, 0) = 1;
    return A;
}

struct Gen {
    std::mt19937 rng{777};
    Q q() {
        std::uniform_int_distribution<int> num(-3, 3), den(1, 2);
        Q x(num(rng), den(rng));
        x.canonicalize();
        return x;
    }
    Tensor<Q> form(size_t n, size_t p) {
        Tensor<Q> t(n, p);
        std::vector<std::vector<size_t>> tuples;
        increasing_tuples(n, p, tuples);
        for (auto& tu : tuples) set_alt(t, tu, q());
        return t;
    }
    Gram<Q> gram(size_t n) {
        Mat<Q> L(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) L(i, j) = q();
        return Gram<Q>(L.transpose() * L + Mat<Q>::identity(n));
    }
    Mat<Q> skew(const Gram<Q>& g) {
        size_t n = g.dim();
        Mat<Q> W(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) {
                W(i, j) = q();
                W(j, i) = -W(i, j);
            }
        return g.inv() * W;
    }
    Vec<Q> vec(size_t n) {
        Vec<Q> v;
        for (size_t i = 0; i < n; ++i) v.push_back(q());
        return v;
    }
};

} // namespace

TEST(Derivation, Examples) {
    auto g = Gram<Q>::identity(3);
    auto A = rot12(3);
    EXPECT_TRUE(derivation_action(A, vol3()).is_zero());
    EXPECT_TRUE(derivation_action(Mat<Q>(3, 3), vol3()).is_zero());
    auto a = endo_to_two_form(A, g);
    EXPECT_TRUE(derivation_action(A, a).is_zero());
}

TEST(Derivation, MatchesWedgeFormula) {
    Gen r;
    for (int t = 0; t < 12; ++t) {
        size_t n = 3 + t % 2;
        auto g = r.gram(n);
        auto A = r.skew(g);
        ASSERT_TRUE(is_skew(A, g));
        auto w = r.form(n, 1 + t % 3);
        EXPECT_EQ(derivation_action(A, w), derivation_action_wedge(A, w, g));
    }
}

TEST(Derivation, IsDerivationOfWedge) {
    Gen r;
    for (int t = 0; t < 10; ++t) {
        size_t n = 4;
        auto g = r.gram(n);
        auto A = r.skew(g);
        auto a = r.form(n, 1 + t % 2), b = r.form(n, 1 + (t / 2) % 2);
        EXPECT_EQ(derivation_action(A, wedge(a, b)), wedge(derivation_action(A, a), b) + wedge(a, derivation_action(A, b)));
    }
}

TEST(Derivation, TwoFormsGiveCommutator) {
    Gen r;
    for (int t = 0; t < 10; ++t) {
        auto g = r.gram(4);
        auto A = r.skew(g), B = r.skew(g);
        auto AB = derivation_action(A, endo_to_two_form(B, g));
        EXPECT_EQ(two_form_to_endo(AB, g), commutator(A, B));
        EXPECT_EQ(AB, Q(-1) * derivation_action(B, endo_to_two_form(A, g)));
    }
}

TEST(TwoForms, Convention) {
    auto g = Gram<Q>::identity(3);
    Tensor<Q> w(3, 2);
    set_alt<Q>(w, {0, 1}, Q(1));
    auto A = two_form_to_endo(w, g);
    EXPECT_EQ(A(1, 0), 1);
    EXPECT_EQ(A(0, 1), -1);
    EXPECT_EQ(endo_to_two_form(A, g), w);
    EXPECT_TRUE(two_form_to_endo(Tensor<Q>(3, 2), g).is_zero());
    Gen r;
    auto g4 = r.gram(4);
    auto f = r.form(4, 2);
    EXPECT_EQ(endo_to_two_form(two_form_to_endo(f, g4), g4), f);
}

TEST(ThreeForms, Contraction) {
    auto g = Gram<Q>::identity(3);
    auto tx = three_form_contract(vol3(), unit<Q>(3, 0), g);
    Tensor<Q> e23(3, 2);
    set_alt<Q>(e23, {1, 2}, Q(1));
    EXPECT_EQ(tx, two_form_to_endo(e23, g));
    EXPECT_TRUE(three_form_contract(vol3(), zeros<Q>(3), g).is_zero());
    Gen r;
    for (int t = 0; t < 20; ++t) {
        auto gg = r.gram(4);
        auto tau = r.form(4, 3);
        auto x = r.vec(4);
        auto T = three_form_contract(tau, x, gg);
        EXPECT_TRUE(is_skew(T, gg));
        EXPECT_TRUE(is_zero(T * x));
    }
}

TEST(FormInner, DetGramConvention) {
    Gen r;
    auto g = r.gram(3);
    auto x = r.vec(3), y = r.vec(3);
    auto w = r.form(3, 2);
    // X^Y as a 2-form through g
    auto xy = wedge(flat(x, g), flat(y, g));
    EXPECT_EQ(form_inner(w, xy, g), w.eval({x, y}));
    auto G = Gram<Q>::identity(3);
    auto e12 = wedge(one_form(unit<Q>(3, 0)), one_form(unit<Q>(3, 1)));
    EXPECT_EQ(form_inner(e12, e12, G), 1);
}

TEST(Invariants, So3) {
    auto g = Gram<Q>::identity(3);
    std::vector<Mat<Q>> so3;
    auto L = su2<Q>();
    for (size_t i = 0; i < 3; ++i) so3.push_back(L.ad(i));
    auto full = Subspace<Q>::full(3);
    EXPECT_EQ(invariant_subspace<Q>(so3, {{full, 3}}, g).invariant.dim(), 1u);
    EXPECT_EQ(invariant_subspace<Q>(so3, {{full, 2}}, g).invariant.dim(), 0u);
    EXPECT_EQ(invariant_subspace<Q>({}, {{full, 2}}, g).invariant.dim(), 3u);
    // invariant symmetric-free check: full (x) full contains the metric
    EXPECT_EQ(invariant_subspace<Q>(so3, {{full, 1}, {full, 1}}, g).invariant.dim(), 1u);
    for (auto& t : invariant_subspace<Q>(so3, {{full, 3}}, g).tensors())
        for (auto& A : so3) EXPECT_TRUE(derivation_action(A, t).is_zero());
}

TEST(Pullback, Composition) {
    Gen r;
    auto w = r.form(3, 3);
    Mat<Q> L(3, 2);
    L(0, 0) = 1; L(1, 1) = 2; L(2, 0) = Q(1, 2);
    auto p = w.pullback(L);
    auto x = r.vec(2), y = r.vec(2), z = r.vec(2);
    EXPECT_EQ(p.eval({x, y, z}), w.eval({L * x, L * y, L * z}));
}
