#pragma once

#include "homogeneous.hpp"

namespace skewtor {

// smallest Lie algebra of endos containing all R(X,Y), also closed under [E, .] for E in extra
// (extra = Nomizu endomorphisms of a non-canonical invariant connection)
template <class K>
std::vector<Mat<K>> holonomy_algebra(const Tensor<K>& R, const Gram<K>& g, const std::vector<Mat<K>>& extra = {}) {
    size_t n = g.dim();
    std::vector<Mat<K>> basis;
    std::vector<Vec<K>> flat_basis;
    auto try_add = [&](const Mat<K>& E) {
        auto f = flatten(E);
        if (is_zero(f)) return;
        if (!flat_basis.empty() && contains(Subspace<K>(n * n, flat_basis), f)) return;
        flat_basis.push_back(f);
        basis.push_back(E);
    };
    for (size_t x = 0; x < n; ++x)
        for (size_t y = x + 1; y < n; ++y) try_add(curvature_endo(R, unit<K>(n, x), unit<K>(n, y), g));
    for (size_t i = 0; i < basis.size(); ++i) {
        for (size_t j = 0; j < i; ++j) try_add(commutator(basis[j], basis[i]));
        for (auto& E : extra) try_add(commutator(E, basis[i]));
    }
    return basis;
}

template <class K> struct StandardDecomposition {
    std::vector<Mat<K>> hol;
    Gram<K> g;
    std::vector<Subspace<K>> h_blocks, v_blocks;
    std::vector<size_t> h_cap, v_cap; // dim so(block) cap hol
    Subspace<K> H, V;
    bool certified = true;

    // adapted basis: h blocks then v blocks, as columns
    Mat<K> adapted() const {
        std::vector<Vec<K>> cols;
        for (auto& b : h_blocks) cols.insert(cols.end(), b.basis().begin(), b.basis().end());
        for (auto& b : v_blocks) cols.insert(cols.end(), b.basis().begin(), b.basis().end());
        return Mat<K>::from_cols(cols, g.dim());
    }
};

// dim of {A in span(hol) : A = 0 on block^perp}
template <class K> size_t so_cap_dim(const std::vector<Mat<K>>& hol, const Subspace<K>& block, const Gram<K>& g) {
    if (hol.empty()) return 0;
    size_t n = g.dim();
    auto perp = orth_complement(block, g);
    if (perp.dim() == 0) return hol.size();
    Mat<K> M(n * perp.dim(), hol.size());
    for (size_t a = 0; a < hol.size(); ++a)
        for (size_t w = 0; w < perp.dim(); ++w) {
            auto img = hol[a] * perp[w];
            for (size_t i = 0; i < n; ++i) M(w * n + i, a) = img[i];
        }
    return kernel(M).dim();
}

template <class K>
StandardDecomposition<K> standard_decomposition(const std::vector<Mat<K>>& hol, const Gram<K>& g) {
    for (auto& A : hol)
        if (!is_skew(A, g)) throw std::invalid_argument("standard_decomposition: holonomy element not skew");
    StandardDecomposition<K> d;
    d.hol = hol;
    d.g = g;
    size_t n = g.dim();
    auto sp = split_irreducible(hol, g);
    if (!sp.undecided.empty())
        throw std::runtime_error("standard_decomposition: block irreducibility undecided over Q");
    for (auto& b : sp.blocks) {
        size_t c = so_cap_dim(hol, b, g);
        if (c > 0) {
            d.h_blocks.push_back(b);
            d.h_cap.push_back(c);
        } else {
            d.v_blocks.push_back(b);
            d.v_cap.push_back(0);
        }
    }
    if (sp.trivial.dim() > 0) {
        d.v_blocks.push_back(sp.trivial);
        d.v_cap.push_back(0);
    }
    std::vector<Vec<K>> hs, vs;
    for (auto& b : d.h_blocks) hs.insert(hs.end(), b.basis().begin(), b.basis().end());
    for (auto& b : d.v_blocks) vs.insert(vs.end(), b.basis().begin(), b.basis().end());
    d.H = Subspace<K>(n, hs);
    d.V = Subspace<K>(n, vs);
    if (d.H.dim() + d.V.dim() != n) throw std::logic_error("standard_decomposition: blocks do not span");
    return d;
}

// ------------------------------------------------------------ torsion split

template <class K> struct TorsionSplit {
    Tensor<K> tau_h, tau_m, tau_v, forbidden;
};

template <class K> TorsionSplit<K> torsion_split(const Tensor<K>& tau, const StandardDecomposition<K>& d) {
    size_t n = tau.dim();
    auto B = d.adapted();
    auto Bi = inverse(B);
    // block id per adapted index; h blocks first, v indices share kind 'v'
    std::vector<int> blk;
    std::vector<bool> isv;
    for (size_t a = 0; a < d.h_blocks.size(); ++a)
        for (size_t i = 0; i < d.h_blocks[a].dim(); ++i) {
            blk.push_back(int(a));
            isv.push_back(false);
        }
    for (auto& b : d.v_blocks)
        for (size_t i = 0; i < b.dim(); ++i) {
            blk.push_back(-1);
            isv.push_back(true);
        }
    auto t = tau.pullback(B);
    Tensor<K> h(n, 3), m(n, 3), v(n, 3), f(n, 3);
    for (size_t k = 0; k < t.size(); ++k) {
        if (is_zero(t.data()[k])) continue;
        auto idx = t.unflat(k);
        int nv = isv[idx[0]] + isv[idx[1]] + isv[idx[2]];
        Tensor<K>* dst = &f;
        if (nv == 3)
            dst = &v;
        else if (nv == 0 && blk[idx[0]] == blk[idx[1]] && blk[idx[1]] == blk[idx[2]])
            dst = &h;
        else if (nv == 1) {
            std::vector<int> hb;
            for (auto i : idx)
                if (!isv[i]) hb.push_back(blk[i]);
            if (hb[0] == hb[1]) dst = &m;
        }
        dst->data()[k] = t.data()[k];
    }
    return {h.pullback(Bi), m.pullback(Bi), v.pullback(Bi), f.pullback(Bi)};
}

// rank of invariants in h_a (x) Lambda^2 h_a^perp, summed over h blocks
template <class K> size_t taum_invariant_rank(const StandardDecomposition<K>& d) {
    size_t r = 0;
    for (auto& b : d.h_blocks) {
        auto inv = invariant_subspace(d.hol, {{b, 1}, {orth_complement(b, d.g), 2}}, d.g);
        r += inv.invariant.dim();
    }
    return r;
}

template <class K> bool tauv_dot_tauh_check(const Tensor<K>& tau, const StandardDecomposition<K>& d) {
    auto sp = torsion_split(tau, d);
    for (auto& v : d.V.basis())
        if (!derivation_action(three_form_contract(tau, v, d.g), sp.tau_h).is_zero()) return false;
    return true;
}

// ------------------------------------------------------------ decomposability

template <class K> TorsionModel<K> restricted_model(const TorsionModel<K>& M, const Subspace<K>& S) {
    auto B = S.matrix();
    return {M.g.restrict(S), M.tau.pullback(B), M.Rtau.pullback(B), {}};
}

template <class K> struct Split {
    Subspace<K> first, second;
};

// invariant orthogonal splitting under hol and all tau_X; tau then splits as tau1 + tau2
template <class K> std::optional<Split<K>> decomposability_test(const Tensor<K>& tau, const StandardDecomposition<K>& d) {
    size_t n = d.g.dim();
    auto gens = d.hol;
    for (size_t i = 0; i < n; ++i) {
        auto T = three_form_contract(tau, unit<K>(n, i), d.g);
        if (!T.is_zero()) gens.push_back(T);
    }
    auto sp = split_irreducible(gens, d.g);
    std::vector<Subspace<K>> pieces;
    for (auto& v : sp.trivial.basis()) pieces.push_back(Subspace<K>(n, {v}));
    for (auto& b : sp.blocks) pieces.push_back(b);
    if (pieces.size() < 2) return std::nullopt;
    std::vector<Vec<K>> rest;
    for (size_t i = 1; i < pieces.size(); ++i) rest.insert(rest.end(), pieces[i].basis().begin(), pieces[i].basis().end());
    return Split<K>{pieces[0], Subspace<K>(n, rest)};
}

// the split pieces are again models with parallel torsion, and tau has no mixed part
template <class K> bool split_is_consistent(const TorsionModel<K>& M, const StandardDecomposition<K>& d, const Split<K>& s) {
    Mat<K> B(M.dim(), M.dim());
    auto cols = s.first.basis();
    cols.insert(cols.end(), s.second.basis().begin(), s.second.basis().end());
    B = Mat<K>::from_cols(cols, M.dim());
    auto t = M.tau.pullback(B);
    size_t k = s.first.dim();
    for (size_t f = 0; f < t.size(); ++f) {
        auto idx = t.unflat(f);
        int c = (idx[0] < k) + (idx[1] < k) + (idx[2] < k);
        if (c != 0 && c != 3 && !is_zero(t.data()[f])) return false;
    }
    for (auto* S : {&s.first, &s.second}) {
        auto part = restricted_model(M, *S);
        if (!check_rgt(part).ok()) return false;
        auto hol = restrict_all(d.hol, *S);
        if (!parallelism_check(part.tau, hol) || !parallelism_check(part.Rtau, hol)) return false;
    }
    return true;
}

// ------------------------------------------------------------ lift constants

template <class K> struct LiftConstants {
    Tensor<K> T;                              // 2 tau
    std::vector<Mat<K>> hol;
    Subspace<K> V;                            // xi_1..xi_v
    std::vector<std::vector<Vec<K>>> R1;      // hol coords of R(xi_i, xi_j)
    std::vector<std::vector<Mat<K>>> R2;      // rho*(R(e_x, e_y)), in V coords
};

template <class K> Vec<K> hol_coords(const std::vector<Mat<K>>& hol, const Mat<K>& E, size_t n) {
    if (hol.empty()) {
        if (!E.is_zero()) throw std::runtime_error("curvature value outside the holonomy algebra");
        return {};
    }
    std::vector<Vec<K>> fl;
    for (auto& A : hol) fl.push_back(flatten(A));
    auto c = coords(Subspace<K>(n * n, fl), flatten(E));
    if (!c) throw std::runtime_error("curvature value outside the holonomy algebra");
    return *c;
}

template <class K> Mat<K> restrict_to(const Mat<K>& A, const Subspace<K>& S) {
    auto r = restrict_endo(A, S);
    if (!r) throw std::runtime_error("endomorphism does not preserve the subspace");
    return *r;
}

// V may be any basis of the vertical space (callers re-base it)
template <class K>
LiftConstants<K> extract_lift_constants(const TorsionModel<K>& M, const StandardDecomposition<K>& d, const Subspace<K>& V) {
    size_t n = M.dim();
    LiftConstants<K> c;
    c.T = K(2) * M.tau;
    c.hol = d.hol;
    c.V = V;
    size_t v = V.dim();
    c.R1.assign(v, std::vector<Vec<K>>(v));
    for (size_t i = 0; i < v; ++i)
        for (size_t j = 0; j < v; ++j) c.R1[i][j] = hol_coords(d.hol, curvature_endo(M.Rtau, V[i], V[j], M.g), n);
    c.R2.assign(n, std::vector<Mat<K>>(n));
    for (size_t x = 0; x < n; ++x)
        for (size_t y = 0; y < n; ++y)
            c.R2[x][y] = restrict_to(curvature_endo(M.Rtau, unit<K>(n, x), unit<K>(n, y), M.g), V);
    return c;
}
template <class K> LiftConstants<K> extract_lift_constants(const TorsionModel<K>& M, const StandardDecomposition<K>& d) {
    return extract_lift_constants(M, d, d.V);
}

// R(X,Y, P_V Z, P_V W) is hol-invariant
template <class K> bool vertical_curvature_invariance(const TorsionModel<K>& M, const StandardDecomposition<K>& d) {
    if (d.V.dim() == 0) return true;
    auto P = orth_project(d.V, d.g);
    size_t n = M.dim();
    Tensor<K> Rv(n, 4);
    for (size_t f = 0; f < Rv.size(); ++f) {
        auto idx = Rv.unflat(f);
        Rv.data()[f] = M.Rtau.eval({unit<K>(n, idx[0]), unit<K>(n, idx[1]), P.col(idx[2]), P.col(idx[3])});
    }
    return parallelism_check(Rv, d.hol);
}

} // namespace skewtor
