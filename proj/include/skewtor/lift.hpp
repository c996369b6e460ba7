#pragma once

// Lifting parallel torsion to a principal bundle over a naturally reductive base,
// and the way back: holonomy data of the lift -> Lie algebra -> fibre data.

#include "holonomy.hpp"
#include "report.hpp"

#include <array>
#include <numeric>

namespace skewtor {

struct PreconditionViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct JacobiViolation : std::runtime_error {
    size_t i, j, k;
    JacobiViolation(size_t a, size_t b, size_t c)
        : std::runtime_error("Jacobi identity fails on basis triple " + idx_str({a, b, c})), i(a), j(b), k(c) {}
};

template <class K> std::string vec_str(const Vec<K>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + Field<K>::str(v[i]);
    return s + "]";
}

// same algebra in the basis given by the columns of B
template <class K> LieAlgebra<K> rebase(const LieAlgebra<K>& L, const Mat<K>& B) {
    size_t n = L.dim();
    auto Bi = inverse(B);
    LieAlgebra<K> out(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) out.set_bracket(i, j, Bi * L.bracket(B.col(i), B.col(j)));
    return out;
}

// Levi-Civita connection of the invariant metric, as Nomizu maps Lambda(e_i) on m
template <class K> std::vector<Mat<K>> nomizu_levi_civita(const ReductivePair<K>& P) {
    size_t d = P.dim_m();
    const auto& g = P.gram();
    std::vector<std::vector<Vec<K>>> br(d, std::vector<Vec<K>>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) br[i][j] = P.bracket_m(unit<K>(d, i), unit<K>(d, j));
    std::vector<Mat<K>> out;
    for (size_t i = 0; i < d; ++i) {
        Mat<K> L(d, d);
        for (size_t j = 0; j < d; ++j) {
            // 2 g(U(X,Y),Z) = g([Z,X]_m, Y) + g(X, [Z,Y]_m)
            Vec<K> low(d, K(0));
            for (size_t k = 0; k < d; ++k) low[k] = kq<K>(1, 2) * (g(br[k][i], unit<K>(d, j)) + g(unit<K>(d, i), br[k][j]));
            auto col = kq<K>(1, 2) * br[i][j] + g.inv() * low;
            for (size_t r = 0; r < d; ++r) L(r, j) = col[r];
        }
        out.push_back(L);
    }
    return out;
}

// curvature endos of the invariant connection with Nomizu maps Lam:
// R(X,Y) = [Lam X, Lam Y] - Lam([X,Y]_m) - ad([X,Y]_k)|m
template <class K> Mat<K> nomizu_curvature(const ReductivePair<K>& P, const std::vector<Mat<K>>& Lam, size_t x, size_t y) {
    size_t d = P.dim_m();
    auto bm = P.bracket_m(unit<K>(d, x), unit<K>(d, y));
    auto bk = P.bracket_k(unit<K>(d, x), unit<K>(d, y));
    Mat<K> E = commutator(Lam[x], Lam[y]) - combo(Lam, bm, d);
    if (P.dim_k() > 0) E -= P.ad_k_vec(bk);
    return E;
}

// ------------------------------------------------------------ parallel curvature geometry

// Base N = G_N/K_N (canonical connection, torsion sigma), fibre algebra g with <,>,
// k1 in g, and the connection curvature Rgamma(X,Y) in g for X,Y in m_N.
template <class K> struct ParallelCurvatureGeometry {
    std::string id;
    ReductivePair<K> base;
    Tensor<K> sigma;
    LieAlgebra<K> g;
    Gram<K> gram;
    Subspace<K> k1;
    std::vector<std::vector<Vec<K>>> Rgamma; // [x][y], g coordinates

    size_t dN() const { return base.dim_m(); }
    size_t dg() const { return g.dim(); }
    Subspace<K> v() const { return orth_complement(k1, gram); }
    Vec<K> R(const Vec<K>& x, const Vec<K>& y) const {
        Vec<K> out(dg(), K(0));
        for (size_t i = 0; i < dN(); ++i)
            for (size_t j = 0; j < dN(); ++j)
                if (!is_zero(x[i]) && !is_zero(y[j])) axpy(out, K(x[i] * y[j]), Rgamma[i][j]);
        return out;
    }
    // g_N(R_xi X, Y) = <Rgamma(X,Y), xi>
    Mat<K> Rxi(const Vec<K>& xi) const {
        size_t d = dN();
        Mat<K> W(d, d);
        for (size_t x = 0; x < d; ++x)
            for (size_t y = 0; y < d; ++y) W(y, x) = gram(Rgamma[x][y], xi);
        return base.gram().inv() * W;
    }
};

template <class K>
ParallelCurvatureGeometry<K> make_pcg(std::string id, ReductivePair<K> base, LieAlgebra<K> g, Gram<K> gram, Subspace<K> k1,
                                      std::vector<std::vector<Vec<K>>> Rgamma) {
    size_t d = base.dim_m();
    if (gram.dim() != g.dim() || k1.ambient() != g.dim()) throw std::invalid_argument("make_pcg: fibre dimension mismatch");
    if (Rgamma.size() != d) throw std::invalid_argument("make_pcg: Rgamma has wrong size");
    for (auto& row : Rgamma) {
        if (row.size() != d) throw std::invalid_argument("make_pcg: Rgamma has wrong size");
        for (auto& v : row)
            if (v.size() != g.dim()) throw std::invalid_argument("make_pcg: Rgamma value of wrong length");
    }
    auto sigma = canonical_torsion(base);
    return {std::move(id), std::move(base), std::move(sigma), std::move(g), std::move(gram), std::move(k1), std::move(Rgamma)};
}

template <class K> struct LambdaResult {
    std::optional<Mat<K>> lambda; // dim g x dim k_N
    std::string why;
};

// lambda: k_N -> g with lambda([X,Y]_k) = -Rgamma(X,Y); must be a homomorphism
template <class K> LambdaResult<K> derive_lambda(const ParallelCurvatureGeometry<K>& G) {
    size_t d = G.dN(), dk = G.base.dim_k(), dg = G.dg();
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t x = 0; x < d; ++x)
        for (size_t y = x + 1; y < d; ++y) pairs.push_back({x, y});
    Mat<K> lam(dg, dk);
    if (!pairs.empty()) {
        Mat<K> A(pairs.size(), dk), B(pairs.size(), dg);
        for (size_t p = 0; p < pairs.size(); ++p) {
            auto [x, y] = pairs[p];
            auto a = G.base.bracket_k(unit<K>(d, x), unit<K>(d, y));
            for (size_t c = 0; c < dk; ++c) A(p, c) = a[c];
            for (size_t c = 0; c < dg; ++c) B(p, c) = -G.Rgamma[x][y][c];
        }
        auto sol = dk ? solve_many(A, B) : std::optional<Mat<K>>();
        if (!sol) {
            // k_N = 0 (or not reachable): only Rgamma = 0 is compatible
            if (dk == 0 && B.is_zero()) return {lam, {}};
            return {std::nullopt, "Rgamma is not a function of [X,Y]_k"};
        }
        lam = sol->transpose();
    }
    for (size_t a = 0; a < dk; ++a)
        for (size_t b = a + 1; b < dk; ++b) {
            auto ab = G.base.split(G.base.g().bracket(G.base.k()[a], G.base.k()[b])).first;
            auto lhs = lam * ab;
            auto rhs = G.g.bracket(lam.col(a), lam.col(b));
            if (!is_zero(lhs - rhs)) return {std::nullopt, "lambda is not a homomorphism at " + idx_str({a, b})};
        }
    return {lam, {}};
}

template <class K> Report pgwt_axioms_check(const ParallelCurvatureGeometry<K>& G) {
    Report r;
    r.id = G.id;
    size_t d = G.dN(), dg = G.dg();
    auto e = [&](size_t i) { return unit<K>(d, i); };

    std::string w;
    for (size_t x = 0; x < d && w.empty(); ++x)
        for (size_t y = 0; y < d && w.empty(); ++y)
            if (!is_zero(G.Rgamma[x][y] + G.Rgamma[y][x])) w = idx_str({x, y});
    r.add("rgamma.antisymmetric", w.empty(), w);

    // Rgamma is a parallel g-valued 2-form for the canonical connection
    auto Rs = canonical_curvature(G.base);
    std::vector<std::vector<Mat<K>>> Rse(d, std::vector<Mat<K>>(d));
    for (size_t x = 0; x < d; ++x)
        for (size_t y = 0; y < d; ++y) Rse[x][y] = curvature_endo(Rs, e(x), e(y), G.base.gram());
    w.clear();
    for (size_t x = 0; x < d && w.empty(); ++x)
        for (size_t y = 0; y < d && w.empty(); ++y)
            for (size_t z = 0; z < d && w.empty(); ++z)
                for (size_t u = 0; u < d && w.empty(); ++u) {
                    auto v = G.g.bracket(G.Rgamma[x][y], G.Rgamma[z][u]) - G.R(Rse[x][y] * e(z), e(u)) -
                             G.R(e(z), Rse[x][y] * e(u));
                    if (!is_zero(v)) w = idx_str({x, y, z, u}) + " -> " + vec_str(v);
                }
    r.add("i.curvature_form", w.empty(), w);

    auto lr = derive_lambda(G);
    r.add("i.lambda", lr.lambda.has_value(), lr.why);
    if (lr.lambda) {
        const auto& lam = *lr.lambda;
        std::string we, wm, wk;
        for (size_t a = 0; a < G.base.dim_k(); ++a) {
            auto A = G.base.ad_k(a);
            auto la = lam.col(a);
            for (size_t y = 0; y < d && we.empty(); ++y)
                for (size_t z = 0; z < d && we.empty(); ++z) {
                    auto v = G.g.bracket(la, G.Rgamma[y][z]) - G.R(A * e(y), e(z)) - G.R(e(y), A * e(z));
                    if (!is_zero(v)) we = "k" + std::to_string(a) + " " + idx_str({y, z});
                }
            auto ad = G.g.ad(la);
            if (wm.empty() && !is_skew(ad, G.gram)) wm = "k" + std::to_string(a);
            for (auto& x : G.k1.basis())
                if (wk.empty() && !contains(G.k1, G.g.bracket(la, x))) wk = "k" + std::to_string(a);
        }
        r.add("i.equivariance", we.empty(), we);
        r.add("i.fibre_metric_invariant", wm.empty(), wm);
        r.add("i.isotropy_preserves_k1", wk.empty(), wk);
    }

    auto v = G.v();
    r.add("ii.k1_subalgebra", is_subalgebra(G.g, G.k1));
    bool sub = is_subalgebra(G.g, G.k1);
    r.add("ii.k1_compact", sub && (G.k1.dim() == 0 || is_compact_type(subalgebra(G.g, G.k1))));
    w.clear();
    for (size_t a = 0; a < G.k1.dim() && w.empty(); ++a) {
        auto ad = G.g.ad(G.k1[a]);
        if (!is_skew(ad, G.gram)) w = "k1[" + std::to_string(a) + "] not skew";
        for (auto& xi : v.basis())
            if (w.empty() && !contains(v, G.g.bracket(G.k1[a], xi))) w = "[k1[" + std::to_string(a) + "], v] not in v";
    }
    r.add("ii.k1_invariant", w.empty(), w);
    // faithful: a in k1 -> ad_a|v injective
    if (G.k1.dim() > 0 && v.dim() > 0) {
        Mat<K> F(v.dim() * v.dim(), G.k1.dim());
        for (size_t a = 0; a < G.k1.dim(); ++a) {
            size_t row = 0;
            for (auto& xi : v.basis()) {
                auto c = coords(v, G.g.bracket(G.k1[a], xi));
                for (size_t i = 0; i < v.dim(); ++i) F(row++, a) = c ? (*c)[i] : K(0);
            }
        }
        r.add("ii.k1_faithful", rank(F) == G.k1.dim());
    } else {
        r.add("ii.k1_faithful", G.k1.dim() == 0);
    }
    w.clear();
    for (size_t a = 0; a < v.dim() && w.empty(); ++a)
        for (size_t b = 0; b < v.dim() && w.empty(); ++b)
            for (size_t c = 0; c < v.dim() && w.empty(); ++c) {
                K s = G.gram(G.g.bracket(v[a], v[b]), v[c]) + G.gram(v[b], G.g.bracket(v[a], v[c]));
                if (!is_zero(s)) w = idx_str({a, b, c});
            }
    r.add("ii.naturally_reductive_v", w.empty(), w);

    // s2: -<[xi1, R(Y,Z)], xi2> + <R_xi1 Y, R_xi2 Z> - <R_xi2 Y, R_xi1 Z> = 0 on v
    std::vector<Mat<K>> Rx;
    for (auto& xi : v.basis()) Rx.push_back(G.Rxi(xi));
    const auto& gN = G.base.gram();
    w.clear();
    for (size_t a = 0; a < v.dim() && w.empty(); ++a)
        for (size_t b = 0; b < v.dim() && w.empty(); ++b)
            for (size_t y = 0; y < d && w.empty(); ++y)
                for (size_t z = 0; z < d && w.empty(); ++z) {
                    K s = -G.gram(G.g.bracket(v[a], G.Rgamma[y][z]), v[b]) + gN(Rx[a] * e(y), Rx[b] * e(z)) -
                          gN(Rx[b] * e(y), Rx[a] * e(z));
                    if (!is_zero(s)) w = "xi" + idx_str({a, b}) + " Y,Z" + idx_str({y, z}) + " = " + Field<K>::str(s);
                }
    r.add("iii.s2", w.empty(), w);

    // s1: cyclic sum of Rgamma(sigma(X,Y), Z)
    w.clear();
    for (size_t x = 0; x < d && w.empty(); ++x)
        for (size_t y = 0; y < d && w.empty(); ++y)
            for (size_t z = 0; z < d && w.empty(); ++z) {
                auto s = G.R(tau_xy(G.sigma, e(x), e(y), gN), e(z)) + G.R(tau_xy(G.sigma, e(y), e(z), gN), e(x)) +
                         G.R(tau_xy(G.sigma, e(z), e(x), gN), e(y));
                if (!is_zero(s)) w = idx_str({x, y, z});
            }
    r.add("s1", w.empty(), w);
    (void)dg;
    return r;
}

// ------------------------------------------------------------ the lift

// The lift lives on M = P/K1.  Coordinates on T_oM: horizontal lifts X_0..X_{dN-1},
// then fundamental fields of an adapted basis of v = k1^perp.  The fibre algebra is
// rebased so that k1 comes first, then v.
template <class K> struct LiftedGeometry {
    ParallelCurvatureGeometry<K> G; // fibre rebased
    Mat<K> Bg;                      // adapted fibre basis in the original coordinates
    Mat<K> lambda;                  // k_N -> g, rebased
    size_t dN = 0, dk1 = 0, dv = 0;
    Gram<K> gram;
    Tensor<K> tau;
    std::vector<std::vector<Vec<K>>> brackets; // [U,V] at o
    std::vector<std::vector<Vec<K>>> table;    // nabla^tau_U V at o
    ReductivePair<K> hom;                      // (g_N + g) / {(A, lambda A)}
    Mat<K> flip;                               // our coordinates <-> hom.m coordinates
    TorsionModel<K> model;

    enum Kind { H, V };
    size_t dim() const { return dN + dv; }
    Kind kind(size_t i) const { return i < dN ? H : V; }
    size_t fib(size_t i) const { return dk1 + i - dN; } // index in the rebased fibre algebra
};

// three pieces of the lifted torsion
template <class K> Tensor<K> lifted_torsion(const ParallelCurvatureGeometry<K>& G, size_t dk1) {
    size_t dN = G.dN(), dg = G.dg(), n = dN + dg - dk1;
    Tensor<K> t(n, 3);
    for (size_t i = 0; i < dN; ++i)
        for (size_t j = 0; j < dN; ++j)
            for (size_t k = 0; k < dN; ++k) t(i, j, k) = G.sigma(i, j, k);
    for (size_t i = 0; i < dN; ++i)
        for (size_t j = i + 1; j < dN; ++j)
            for (size_t a = dk1; a < dg; ++a) {
                K val = kq<K>(1, 2) * G.gram(G.Rgamma[i][j], unit<K>(dg, a));
                if (!is_zero(val)) set_alt(t, {i, j, dN + a - dk1}, val);
            }
    for (size_t a = dk1; a < dg; ++a)
        for (size_t b = dk1; b < dg; ++b)
            for (size_t c = dk1; c < dg; ++c)
                t(dN + a - dk1, dN + b - dk1, dN + c - dk1) = kq<K>(-1, 2) * G.gram(G.g.bracket(unit<K>(dg, a), unit<K>(dg, b)), unit<K>(dg, c));
    return t;
}

// Levi-Civita at o from brackets (metric coefficients have vanishing first derivatives)
template <class K>
std::vector<std::vector<Vec<K>>> koszul(const std::vector<std::vector<Vec<K>>>& br, const Gram<K>& g) {
    size_t n = g.dim();
    std::vector<std::vector<Vec<K>>> out(n, std::vector<Vec<K>>(n));
    for (size_t u = 0; u < n; ++u)
        for (size_t v = 0; v < n; ++v) {
            Vec<K> low(n, K(0));
            for (size_t w = 0; w < n; ++w)
                low[w] = kq<K>(1, 2) * (g(br[u][v], unit<K>(n, w)) - g(br[v][w], unit<K>(n, u)) + g(br[w][u], unit<K>(n, v)));
            out[u][v] = g.inv() * low;
        }
    return out;
}

template <class K> LiftedGeometry<K> inverse_construct(const ParallelCurvatureGeometry<K>& G0, bool check = true) {
    if (check) {
        auto rep = pgwt_axioms_check(G0);
        if (!rep.ok()) throw PreconditionViolation("inverse_construct: " + rep.first_failure());
    }
    auto lr = derive_lambda(G0);
    if (!lr.lambda) throw PreconditionViolation("inverse_construct: " + lr.why);

    LiftedGeometry<K> L;
    size_t dN = G0.dN(), dg = G0.dg();
    auto v0 = G0.v();
    std::vector<Vec<K>> cols = G0.k1.basis();
    cols.insert(cols.end(), v0.basis().begin(), v0.basis().end());
    L.Bg = Mat<K>::from_cols(cols, dg);
    auto Bi = inverse(L.Bg);
    L.G = G0;
    L.G.g = rebase(G0.g, L.Bg);
    L.G.gram = Gram<K>(L.Bg.transpose() * G0.gram.matrix() * L.Bg);
    L.G.k1 = Subspace<K>::coordinate(dg, [&] {
        std::vector<size_t> idx(G0.k1.dim());
        std::iota(idx.begin(), idx.end(), 0);
        return idx;
    }());
    for (auto& row : L.G.Rgamma)
        for (auto& x : row) x = Bi * x;
    L.lambda = Bi * *lr.lambda;
    L.dN = dN;
    L.dk1 = G0.k1.dim();
    L.dv = dg - L.dk1;
    const auto& G = L.G;
    size_t n = L.dim(), dk1 = L.dk1;
    L.gram = block_gram(G.base.gram(), G.gram.restrict(G.v()));
    L.tau = lifted_torsion(G, dk1);

    // (horizontal, g-vector) -> T_oM; the k1 part of a fundamental field vanishes on M
    auto embed = [&](const Vec<K>& hor, const Vec<K>& ver) {
        Vec<K> out(n, K(0));
        for (size_t i = 0; i < hor.size(); ++i) out[i] = hor[i];
        for (size_t a = dk1; a < ver.size(); ++a) out[dN + a - dk1] = ver[a];
        return out;
    };
    Vec<K> zh(dN, K(0)), zv(dg, K(0));
    L.brackets.assign(n, std::vector<Vec<K>>(n, Vec<K>(n, K(0))));
    for (size_t i = 0; i < dN; ++i)
        for (size_t j = 0; j < dN; ++j)
            L.brackets[i][j] = embed(K(-2) * tau_xy(G.sigma, unit<K>(dN, i), unit<K>(dN, j), G.base.gram()), K(-1) * G.Rgamma[i][j]);
    for (size_t a = dN; a < n; ++a)
        for (size_t b = dN; b < n; ++b) L.brackets[a][b] = embed(zh, G.g.bracket(L.fib(a), L.fib(b)));

    // t1..t4 with the k1 parts dropped
    for (size_t u = 0; u < n; ++u) {
        L.table.emplace_back(n, Vec<K>(n, K(0)));
        for (size_t w = 0; w < n; ++w)
            if (L.kind(u) == L.V && L.kind(w) == L.H) L.table[u][w] = embed(G.Rxi(unit<K>(dg, L.fib(u))) * unit<K>(dN, w), zv);
    }

    // homogeneous realization
    const auto& B = G.base;
    auto gh = direct_sum(B.g(), G.g);
    size_t nb = B.g().dim();
    std::vector<Vec<K>> kh, mh;
    for (size_t a = 0; a < B.dim_k(); ++a) {
        Vec<K> x(nb + dg, K(0));
        for (size_t i = 0; i < nb; ++i) x[i] = B.k()[a][i];
        for (size_t i = 0; i < dg; ++i) x[nb + i] = L.lambda(i, a);
        kh.push_back(x);
    }
    for (size_t a = 0; a < dk1; ++a) kh.push_back(unit<K>(nb + dg, nb + a));
    for (size_t i = 0; i < dN; ++i) {
        Vec<K> x(nb + dg, K(0));
        for (size_t j = 0; j < nb; ++j) x[j] = B.m()[i][j];
        mh.push_back(x);
    }
    for (size_t a = dk1; a < dg; ++a) mh.push_back(unit<K>(nb + dg, nb + a));
    L.hom = ReductivePair<K>(gh, Subspace<K>(nb + dg, kh), Subspace<K>(nb + dg, mh), L.gram);

    // a fundamental field of the right action is minus the corresponding left-invariant generator
    Vec<K> fl(n, K(1));
    for (size_t a = dN; a < n; ++a) fl[a] = K(-1);
    L.flip = Mat<K>::diag(fl);
    auto tm = L.tau.pullback(L.flip);
    auto Lam = nomizu_levi_civita(L.hom);
    for (size_t i = 0; i < n; ++i) Lam[i] += three_form_contract(tm, unit<K>(n, i), L.gram);
    Tensor<K> R(n, 4);
    for (size_t x = 0; x < n; ++x)
        for (size_t y = 0; y < n; ++y) {
            auto E = fl[x] * fl[y] * (L.flip * nomizu_curvature(L.hom, Lam, x, y) * L.flip);
            put_endo(R, x, y, E, L.gram);
        }
    std::vector<Mat<K>> nom;
    for (size_t i = 0; i < n; ++i) nom.push_back(fl[i] * (L.flip * Lam[i] * L.flip));
    L.model = TorsionModel<K>{L.gram, L.tau, R, nom};
    return L;
}

// ------------------------------------------------------------ verification

template <class K> Report verify_parallel_torsion(const LiftedGeometry<K>& L) {
    Report r;
    r.id = L.G.id;
    const auto& G = L.G;
    size_t n = L.dim(), dN = L.dN, dg = G.dg();
    auto e = [&](size_t i) { return unit<K>(n, i); };
    auto eN = [&](size_t i) { return unit<K>(dN, i); };
    std::string w;

    // (A) the table
    auto k = koszul(L.brackets, L.gram);
    for (size_t u = 0; u < n && w.empty(); ++u)
        for (size_t v = 0; v < n && w.empty(); ++v)
            if (!is_zero(k[u][v] - k[v][u] - L.brackets[u][v])) w = idx_str({u, v});
    r.add("table.levi_civita_torsion_free", w.empty(), w);
    w.clear();
    for (size_t u = 0; u < n && w.empty(); ++u)
        for (size_t v = 0; v < n && w.empty(); ++v)
            for (size_t x = 0; x < n && w.empty(); ++x)
                if (!is_zero(L.gram(L.table[u][v], e(x)) + L.gram(e(v), L.table[u][x]))) w = idx_str({u, v, x});
    r.add("table.metric", w.empty(), w);
    w.clear();
    for (size_t u = 0; u < n && w.empty(); ++u)
        for (size_t v = 0; v < n && w.empty(); ++v) {
            auto exp = k[u][v] + tau_xy(L.tau, e(u), e(v), L.gram);
            if (!is_zero(exp - L.table[u][v])) w = idx_str({u, v}) + " table " + vec_str(L.table[u][v]) + " vs " + vec_str(exp);
        }
    r.add("table.levi_civita_plus_tau", w.empty(), w);

    // (C) the torsion itself
    r.add("tau.alternating", is_alternating(L.tau));
    auto t0 = lifted_torsion(G, L.dk1);
    w.clear();
    if (!(t0 == L.tau))
        for (size_t f = 0; f < t0.size() && w.empty(); ++f)
            if (!is_zero(t0.data()[f] - L.tau.data()[f])) w = idx_str(t0.unflat(f));
    r.add("tau.pieces", w.empty(), w);

    // (B) nabla tau on hor + v, in the adapted frame
    const auto& gN = G.base.gram();
    auto Ls = nomizu_levi_civita(G.base);
    for (size_t i = 0; i < dN; ++i) Ls[i] += three_form_contract(G.sigma, eN(i), gN);
    std::vector<Tensor<K>> dsig;
    for (size_t i = 0; i < dN; ++i) dsig.push_back(derivation_action(Ls[i], G.sigma));
    auto fv = [&](size_t i) { return unit<K>(dg, L.fib(i)); };
    auto deriv = [&](size_t u, std::array<size_t, 3> a) -> K {
        size_t nv = 0, p = 0;
        for (size_t i = 0; i < 3; ++i)
            if (L.kind(a[i]) == L.V) ++nv, p = i;
        if (nv == 0) return L.kind(u) == L.H ? dsig[u](a[0], a[1], a[2]) : K(0);
        if (nv != 1) return K(0);
        K s = p == 1 ? K(-1) : K(1);
        size_t y = a[(p + 1) % 3], z = a[(p + 2) % 3];
        if (p == 1) std::swap(y, z);
        auto xi = fv(a[p]);
        if (L.kind(u) == L.H)
            return s * kq<K>(1, 2) * G.gram(K(-1) * G.R(Ls[u] * eN(y), eN(z)) - G.R(eN(y), Ls[u] * eN(z)), xi);
        return s * kq<K>(-1, 2) * G.gram(G.g.bracket(fv(u), G.Rgamma[y][z]), xi);
    };
    auto full = [&](size_t u, std::array<size_t, 3> a) -> K {
        K val = deriv(u, a);
        val -= L.tau.eval({L.table[u][a[0]], e(a[1]), e(a[2])});
        val -= L.tau.eval({e(a[0]), L.table[u][a[1]], e(a[2])});
        val -= L.tau.eval({e(a[0]), e(a[1]), L.table[u][a[2]]});
        return val;
    };
    w.clear();
    for (size_t u = 0; u < n && w.empty(); ++u)
        for (size_t a = 0; a < n && w.empty(); ++a)
            for (size_t b = 0; b < n && w.empty(); ++b)
                for (size_t c = 0; c < n && w.empty(); ++c) {
                    K val = full(u, {a, b, c});
                    if (!is_zero(val)) w = idx_str({u, a, b, c}) + " = " + Field<K>::str(val);
                }
    r.add("nabla_tau.frame", w.empty(), w);

    // reduced forms of the two nontrivial families, and agreement with the frame computation
    std::string w2, w4, wa;
    for (size_t u = dN; u < n; ++u) {
        auto xi = fv(u);
        auto Rx = G.Rxi(xi);
        for (size_t a = 0; a < dN; ++a)
            for (size_t b = 0; b < dN; ++b)
                for (size_t c = 0; c < dN; ++c) {
                    auto sg = [&](size_t p, size_t q) { return tau_xy(G.sigma, eN(p), eN(q), gN); };
                    K E2 = -(G.gram(G.R(eN(a), sg(b, c)), xi) + G.gram(G.R(eN(b), sg(c, a)), xi) + G.gram(G.R(eN(c), sg(a, b)), xi));
                    if (w2.empty() && !is_zero(E2)) w2 = idx_str({u, a, b, c});
                    if (wa.empty() && !is_zero(E2 - full(u, {a, b, c}))) wa = "E2 " + idx_str({u, a, b, c});
                }
        for (size_t x = 0; x < dN; ++x)
            for (size_t y = 0; y < dN; ++y)
                for (size_t v = dN; v < n; ++v) {
                    auto xi2 = fv(v);
                    auto Ry = G.Rxi(xi2);
                    K E4 = kq<K>(1, 2) * (-G.gram(G.g.bracket(xi, G.Rgamma[x][y]), xi2) + gN(Rx * eN(x), Ry * eN(y)) -
                                          gN(Ry * eN(x), Rx * eN(y)));
                    if (w4.empty() && !is_zero(E4)) w4 = idx_str({u, x, y, v});
                    if (wa.empty() && !is_zero(E4 - full(u, {x, y, v}))) wa = "E4 " + idx_str({u, x, y, v});
                }
    }
    r.add("nabla_tau.reduced_E2", w2.empty(), w2);
    r.add("nabla_tau.reduced_E4", w4.empty(), w4);
    r.add("nabla_tau.reduced_agrees", wa.empty(), wa);

    // (D) Nomizu maps of the homogeneous realization
    auto tm = L.tau.pullback(L.flip);
    w.clear();
    for (size_t a = 0; a < L.hom.dim_k() && w.empty(); ++a)
        if (!derivation_action(L.hom.ad_k(a), tm).is_zero()) w = "k" + std::to_string(a);
    r.add("homogeneous.tau_invariant", w.empty(), w);
    auto Lam = nomizu_levi_civita(L.hom);
    w.clear();
    for (size_t i = 0; i < n && w.empty(); ++i) {
        auto A = Lam[i] + three_form_contract(tm, e(i), L.gram);
        auto d = derivation_action(A, tm);
        if (!d.is_zero()) w = "Z=" + std::to_string(i) + " at " + idx_str(*d.first_nonzero());
    }
    r.add("homogeneous.nabla_tau", w.empty(), w);
    return r;
}

template <class K> bool lift_is_parallel(const LiftedGeometry<K>& L) { return verify_parallel_torsion(L).ok(); }

// ------------------------------------------------------------ back: holonomy data -> Lie algebra

template <class K> struct LiftedAlgebra {
    LieAlgebra<K> alg;         // hol (first nh) then V
    size_t nh = 0, nv = 0;
    std::vector<Mat<K>> rho;   // hol elements on V, V coordinates
    Gram<K> gram_v;
};

template <class K> LiftedAlgebra<K> build_lifted_algebra(const LiftConstants<K>& c, const Gram<K>& g) {
    size_t nh = c.hol.size(), nv = c.V.dim(), n = g.dim();
    LiftedAlgebra<K> A;
    A.nh = nh;
    A.nv = nv;
    A.alg = LieAlgebra<K>(nh + nv);
    A.gram_v = g.restrict(c.V);
    for (auto& H : c.hol) A.rho.push_back(restrict_to(H, c.V));
    auto put = [&](const Vec<K>& h, const Vec<K>& v) {
        Vec<K> out(nh + nv, K(0));
        for (size_t i = 0; i < h.size(); ++i) out[i] = h[i];
        for (size_t i = 0; i < v.size(); ++i) out[nh + i] = v[i];
        return out;
    };
    Vec<K> zh(nh, K(0)), zv(nv, K(0));
    for (size_t a = 0; a < nh; ++a)
        for (size_t b = a + 1; b < nh; ++b) A.alg.set_bracket(a, b, put(hol_coords(c.hol, commutator(c.hol[a], c.hol[b]), n), zv));
    for (size_t a = 0; a < nh; ++a)
        for (size_t i = 0; i < nv; ++i) A.alg.set_bracket(a, nh + i, put(zh, A.rho[a].col(i)));
    for (size_t i = 0; i < nv; ++i)
        for (size_t j = i + 1; j < nv; ++j) {
            auto t = tau_xy(c.T, c.V[i], c.V[j], g);
            auto tv = coords(c.V, t);
            if (!tv) throw std::runtime_error("build_lifted_algebra: T(xi_i, xi_j) leaves V at " + idx_str({i, j}));
            A.alg.set_bracket(i + nh, j + nh, put(K(-1) * c.R1[i][j], K(-1) * *tv));
        }
    if (auto jw = jacobi_witness(A.alg)) throw JacobiViolation(jw->i, jw->j, jw->k);
    return A;
}

// <[x,y]_V, z> alternating on V
template <class K> bool lifted_natr(const LiftedAlgebra<K>& A) {
    for (size_t i = 0; i < A.nv; ++i)
        for (size_t j = 0; j < A.nv; ++j)
            for (size_t k = 0; k < A.nv; ++k) {
                auto b = A.alg.bracket(A.nh + i, A.nh + j);
                Vec<K> bv(b.begin() + A.nh, b.end());
                auto c = A.alg.bracket(A.nh + i, A.nh + k);
                Vec<K> cv(c.begin() + A.nh, c.end());
                if (!is_zero(A.gram_v(bv, unit<K>(A.nv, k)) + A.gram_v(unit<K>(A.nv, j), cv))) return false;
            }
    return true;
}

template <class K> struct ReducedPair {
    LieAlgebra<K> g;       // image of hol + V in so(V) + V
    Subspace<K> k1;
    Gram<K> gram;
    std::vector<size_t> kept; // indices into the lifted algebra basis
    size_t nk1 = 0;
};

template <class K> ReducedPair<K> build_reduced_pair(const LiftedAlgebra<K>& A) {
    size_t nh = A.nh, nv = A.nv, N = nh + nv;
    Mat<K> lam(nv * nv + nv, N);
    for (size_t a = 0; a < nh; ++a) {
        auto f = flatten(A.rho[a]);
        for (size_t i = 0; i < f.size(); ++i) lam(i, a) = f[i];
    }
    for (size_t i = 0; i < nv; ++i) lam(nv * nv + i, nh + i) = K(1);
    auto ker = kernel(lam);
    if (!is_ideal(A.alg, ker)) throw std::runtime_error("build_reduced_pair: kernel of the isotropy map is not an ideal");
    ReducedPair<K> out;
    out.kept = rref(lam).pivots;
    size_t d = out.kept.size();
    std::vector<Vec<K>> img;
    for (size_t p : out.kept) img.push_back(lam.col(p));
    Subspace<K> I(lam.rows(), img);
    out.g = LieAlgebra<K>(d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = i + 1; j < d; ++j) {
            auto c = coords(I, lam * A.alg.bracket(out.kept[i], out.kept[j]));
            if (!c) throw std::logic_error("build_reduced_pair: image not closed");
            out.g.set_bracket(i, j, *c);
        }
    std::vector<size_t> k1;
    for (size_t i = 0; i < d; ++i)
        if (out.kept[i] < nh) k1.push_back(i);
    out.nk1 = k1.size();
    out.k1 = Subspace<K>::coordinate(d, k1);
    Mat<K> gm(d, d);
    for (size_t i = 0; i < out.nk1; ++i)
        for (size_t j = 0; j < out.nk1; ++j) gm(i, j) = -(A.rho[out.kept[i]] * A.rho[out.kept[j]]).trace();
    for (size_t i = out.nk1; i < d; ++i)
        for (size_t j = out.nk1; j < d; ++j) gm(i, j) = A.gram_v(out.kept[i] - nh, out.kept[j] - nh);
    out.gram = Gram<K>(gm);
    return out;
}

// ------------------------------------------------------------ round trip

template <class K> struct RoundTrip {
    Report report;
    std::optional<ParallelCurvatureGeometry<K>> recovered;
};

template <class K> RoundTrip<K> round_trip(const LiftedGeometry<K>& L) {
    RoundTrip<K> out;
    auto& r = out.report;
    r.id = L.G.id;
    if (L.dk1 != 0) {
        r.add_undecided("roundtrip.k1_trivial", "round trip is implemented for k1 = 0 only");
        return out;
    }
    const auto& M = L.model;
    size_t n = M.dim(), dN = L.dN, dg = L.G.dg();
    std::vector<size_t> hi(dN), vi(dg);
    std::iota(hi.begin(), hi.end(), 0);
    std::iota(vi.begin(), vi.end(), dN);
    auto Hc = Subspace<K>::coordinate(n, hi), Vc = Subspace<K>::coordinate(n, vi);

    auto hol = holonomy_algebra(M.Rtau, M.g, M.nomizu);
    StandardDecomposition<K> d;
    try {
        d = standard_decomposition(hol, M.g);
    } catch (const std::runtime_error& ex) {
        r.add_undecided("roundtrip.decomposition", ex.what());
        return out;
    }
    r.add("roundtrip.H_horizontal", d.H.dim() == dN && contains(Hc, d.H) && contains(d.H, Hc), {},
          "dim H = " + std::to_string(d.H.dim()));
    r.add("roundtrip.V_vertical", d.V.dim() == dg && contains(Vc, d.V) && contains(d.V, Vc), {},
          "dim V = " + std::to_string(d.V.dim()));
    if (!r.ok()) return out;

    LiftedAlgebra<K> A;
    try {
        A = build_lifted_algebra(extract_lift_constants(M, d, Vc), M.g);
    } catch (const std::exception& ex) {
        r.add("roundtrip.lifted_algebra", false, ex.what());
        return out;
    }
    r.add("roundtrip.lifted_algebra", true, {}, "dim " + std::to_string(A.alg.dim()));
    r.add("roundtrip.lifted_natr", lifted_natr(A));
    auto P = build_reduced_pair(A);
    r.add("roundtrip.k1_recovered_trivial", P.nk1 == 0, "k1 of dim " + std::to_string(P.nk1));
    if (P.nk1 != 0) return out;

    const auto& G = L.G;
    std::string w;
    for (size_t i = 0; i < dg && w.empty(); ++i)
        for (size_t j = 0; j < dg && w.empty(); ++j)
            if (!is_zero(P.g.bracket(i, j) - G.g.bracket(i, j))) w = idx_str({i, j});
    r.add("roundtrip.fibre_brackets", w.empty(), w);
    r.add("roundtrip.fibre_gram", P.gram.matrix() == G.gram.matrix());
    // <Rgamma(X,Y), xi_b> = T(X, Y, xi_b)
    std::vector<std::vector<Vec<K>>> Rg(dN, std::vector<Vec<K>>(dN));
    w.clear();
    for (size_t x = 0; x < dN; ++x)
        for (size_t y = 0; y < dN; ++y) {
            Vec<K> low(dg, K(0));
            for (size_t b = 0; b < dg; ++b) low[b] = K(2) * M.tau(x, y, dN + b);
            Rg[x][y] = P.gram.inv() * low;
            if (w.empty() && !is_zero(Rg[x][y] - G.Rgamma[x][y])) w = idx_str({x, y});
        }
    r.add("roundtrip.rgamma", w.empty(), w);
    out.recovered = make_pcg(G.id + ".recovered", G.base, P.g, P.gram, P.k1, Rg);
    return out;
}

} // namespace skewtor
