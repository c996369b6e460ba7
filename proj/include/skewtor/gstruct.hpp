#pragma once

// Parallel g-structures over homogeneous (mostly symmetric) bases:
// axioms, constructors, non-degeneracy and case recognition.

#include "lift.hpp"

#include <numeric>
#include <set>

namespace skewtor {

struct CommutationFailure : std::runtime_error {
    size_t a, b;
    CommutationFailure(size_t i, size_t j)
        : std::runtime_error("psi images do not commute: (" + std::to_string(i) + "," + std::to_string(j) + ")"), a(i), b(j) {}
};

template <class K> struct ParallelGStructure {
    std::string id;
    ReductivePair<K> base;
    LieAlgebra<K> g;
    Gram<K> gram;
    std::vector<Tensor<K>> psi;              // 2-form on m_N per basis vector of g
    std::vector<std::vector<Vec<K>>> Rgamma; // [x][y], g coordinates
    bool symmetric_base = false;
    std::vector<Subspace<K>> kahler_factors; // orthogonal blocks of m_N
    std::optional<Mat<K>> cmatrix;           // m x s, when built from one

    size_t dN() const { return base.dim_m(); }
    size_t dg() const { return g.dim(); }
    Mat<K> psi_endo(size_t a) const { return two_form_to_endo(psi[a], base.gram()); }
    Mat<K> psi_endo(const Vec<K>& a) const {
        Mat<K> out(dN(), dN());
        for (size_t i = 0; i < dg(); ++i)
            if (!is_zero(a[i])) out += a[i] * psi_endo(i);
        return out;
    }
    Vec<K> R(const Vec<K>& x, const Vec<K>& y) const {
        Vec<K> out(dg(), K(0));
        for (size_t i = 0; i < dN(); ++i)
            for (size_t j = 0; j < dN(); ++j)
                if (!is_zero(x[i]) && !is_zero(y[j])) axpy(out, K(x[i] * y[j]), Rgamma[i][j]);
        return out;
    }
};

// Rgamma from psi through g^N(psi(a), X^Y) = -<a, Rgamma(X,Y)>
template <class K>
std::vector<std::vector<Vec<K>>> rgamma_from_psi(const std::vector<Tensor<K>>& psi, const Gram<K>& gram, size_t dN) {
    size_t dg = psi.size();
    std::vector<std::vector<Vec<K>>> R(dN, std::vector<Vec<K>>(dN));
    for (size_t x = 0; x < dN; ++x)
        for (size_t y = 0; y < dN; ++y) {
            Vec<K> low(dg, K(0));
            for (size_t a = 0; a < dg; ++a) low[a] = -psi[a](x, y);
            R[x][y] = dg ? gram.inv() * low : Vec<K>{};
        }
    return R;
}

template <class K> Report axioms_check(const ParallelGStructure<K>& S) {
    Report r;
    r.id = S.id;
    size_t d = S.dN(), dg = S.dg();
    const auto& gN = S.base.gram();
    auto e = [&](size_t i) { return unit<K>(d, i); };
    r.add("iii.ad_invariant", ad_invariant(S.g, S.gram.matrix()));
    std::string w;
    for (size_t a = 0; a < dg && w.empty(); ++a)
        if (!is_alternating(S.psi[a])) w = "psi(e" + std::to_string(a + 1) + ")";
    r.add("psi.two_forms", w.empty(), w);

    // iv: Rgamma parallel; Levi-Civita of the base plus the isotropy pairing
    auto Lc = nomizu_levi_civita(S.base);
    w.clear();
    for (size_t x = 0; x < d && w.empty(); ++x)
        for (size_t y = 0; y < d && w.empty(); ++y)
            for (size_t z = 0; z < d && w.empty(); ++z)
                if (!is_zero(S.R(Lc[x] * e(y), e(z)) + S.R(e(y), Lc[x] * e(z)))) w = idx_str({x, y, z});
    r.add("iv.levi_civita_parallel", w.empty(), w);
    try {
        auto P = make_pcg(S.id, S.base, S.g, S.gram, Subspace<K>(dg), S.Rgamma);
        auto pr = pgwt_axioms_check(P);
        for (auto& c : pr.checks)
            if (c.name.rfind("i.", 0) == 0 && c.name != "i.isotropy_preserves_k1") {
                auto cc = c;
                cc.name = "iv." + c.name.substr(2);
                r.checks.push_back(cc);
            }
    } catch (const std::invalid_argument& ex) {
        r.add_undecided("iv.isotropy", ex.what());
    }

    // v: adjointness and morphism
    w.clear();
    for (size_t a = 0; a < dg && w.empty(); ++a)
        for (size_t x = 0; x < d && w.empty(); ++x)
            for (size_t y = 0; y < d && w.empty(); ++y) {
                K lhs = form_inner(S.psi[a], wedge(flat(e(x), gN), flat(e(y), gN)), gN);
                K rhs = -S.gram(unit<K>(dg, a), S.Rgamma[x][y]);
                if (!is_zero(lhs - rhs))
                    w = "a=" + std::to_string(a) + " " + idx_str({x, y}) + ": " + Field<K>::str(lhs) + " vs " + Field<K>::str(rhs);
            }
    r.add("v.epsi", w.empty(), w);
    w.clear();
    for (size_t a = 0; a < dg && w.empty(); ++a)
        for (size_t b = a + 1; b < dg && w.empty(); ++b)
            if (!(S.psi_endo(S.g.bracket(a, b)) == commutator(S.psi_endo(a), S.psi_endo(b)))) w = idx_str({a, b});
    r.add("v.morphism", w.empty(), w);

    // e50 with the Riemannian curvature of the base
    std::optional<Tensor<K>> RN;
    try {
        RN = riemannian_curvature_via_rgt(model_from_pair(S.base));
    } catch (const std::invalid_argument& ex) {
        r.add_undecided("e50", ex.what());
    }
    if (RN) {
        w.clear();
        for (size_t x = 0; x < d && w.empty(); ++x)
            for (size_t y = 0; y < d && w.empty(); ++y) {
                auto RNxy = curvature_endo(*RN, e(x), e(y), gN);
                auto Pxy = S.psi_endo(S.Rgamma[x][y]);
                for (size_t a = 0; a < dg && w.empty(); ++a) {
                    auto Pa = S.psi_endo(a);
                    if (!(commutator(Pxy, Pa) == commutator(RNxy, Pa))) w = idx_str({x, y}) + " a=" + std::to_string(a);
                }
            }
        r.add("e50", w.empty(), w);
    }
    return r;
}

// ------------------------------------------------------------ constructors

// psi(a) = ad_a|m, Rgamma(x,y) = -pi_ideal [x,y]_k
template <class K>
ParallelGStructure<K> from_symmetric_space(std::string id, const ReductivePair<K>& P, const Subspace<K>& ideal) {
    if (!P.symmetric()) throw std::invalid_argument("from_symmetric_space: pair is not symmetric");
    if (!P.full_gram()) throw std::invalid_argument("from_symmetric_space: needs an invariant scalar product on the whole algebra");
    const auto& Gf = *P.full_gram();
    if (!(Gf.restrict(P.m()).matrix() == P.gram().matrix()))
        throw std::invalid_argument("from_symmetric_space: gram on m is not the restriction of the full one");
    if (!contains(P.k(), ideal)) throw std::invalid_argument("from_symmetric_space: ideal not inside the isotropy algebra");
    for (auto& a : P.k().basis())
        for (auto& b : ideal.basis())
            if (!contains(ideal, P.g().bracket(a, b))) throw std::invalid_argument("from_symmetric_space: not an ideal of the isotropy algebra");
    ParallelGStructure<K> S;
    S.id = std::move(id);
    S.base = P;
    S.g = subalgebra(P.g(), ideal);
    S.gram = Gf.restrict(ideal);
    size_t d = P.dim_m(), dg = ideal.dim();
    for (size_t a = 0; a < dg; ++a) S.psi.push_back(endo_to_two_form(P.ad_k_vec(P.split(ideal[a]).first), P.gram()));
    auto proj = [&](const Vec<K>& x) { return S.gram.inv() * (ideal.matrix().transpose() * (Gf.matrix() * x)); };
    S.Rgamma.assign(d, std::vector<Vec<K>>(d));
    for (size_t x = 0; x < d; ++x)
        for (size_t y = 0; y < d; ++y) S.Rgamma[x][y] = K(-1) * proj(P.from_k(P.bracket_k(unit<K>(d, x), unit<K>(d, y))));
    S.symmetric_base = true;
    return S;
}

// sum over the pairs (b0,b1), (b2,b3), ... of a block: the Kahler form of that factor
template <class K> Tensor<K> kahler_form(size_t n, const Subspace<K>& block, const Gram<K>& g) {
    if (block.dim() % 2) throw std::invalid_argument("kahler_form: odd-dimensional factor");
    Tensor<K> w(n, 2);
    for (size_t i = 0; i + 1 < block.dim(); i += 2) w = w + wedge(flat(block[i], g), flat(block[i + 1], g));
    return w;
}

// g = R^m abelian with gram I; psi(xi_i) = -F_i, F_i = sum_a c_ia Omega_a
template <class K>
ParallelGStructure<K> u1m_structure(std::string id, const ReductivePair<K>& base, const std::vector<Subspace<K>>& factors, const Mat<K>& c) {
    if (c.cols() != factors.size()) throw std::invalid_argument("u1m_structure: c has " + std::to_string(c.cols()) + " columns, base has " + std::to_string(factors.size()) + " factors");
    size_t m = c.rows(), d = base.dim_m();
    std::vector<Tensor<K>> Om;
    for (auto& f : factors) Om.push_back(kahler_form(d, f, base.gram()));
    ParallelGStructure<K> S;
    S.id = std::move(id);
    S.base = base;
    S.g = abelian<K>(m);
    S.gram = Gram<K>::identity(m);
    for (size_t i = 0; i < m; ++i) {
        Tensor<K> F(d, 2);
        for (size_t a = 0; a < factors.size(); ++a)
            if (!is_zero(c(i, a))) F = F + c(i, a) * Om[a];
        S.psi.push_back(K(-1) * F);
    }
    S.Rgamma = rgamma_from_psi(S.psi, S.gram, d);
    S.symmetric_base = base.symmetric();
    S.kahler_factors = factors;
    S.cmatrix = c;
    return S;
}

// fibre metric times t; psi scales with it so that the adjointness survives
template <class K> ParallelGStructure<K> rescale_fibre(ParallelGStructure<K> S, const K& t, std::string id) {
    S.id = std::move(id);
    S.gram = Gram<K>(t * S.gram.matrix());
    for (auto& p : S.psi) p = t * p;
    return S;
}

template <class K> ParallelGStructure<K> whitney_product(const ParallelGStructure<K>& A, const ParallelGStructure<K>& B, std::string id) {
    if (A.dN() != B.dN() || !(A.base.gram().matrix() == B.base.gram().matrix()))
        throw std::invalid_argument("whitney_product: different bases");
    for (size_t a = 0; a < A.dg(); ++a)
        for (size_t b = 0; b < B.dg(); ++b)
            if (!commutator(A.psi_endo(a), B.psi_endo(b)).is_zero()) throw CommutationFailure(a, b);
    ParallelGStructure<K> S = A;
    S.id = std::move(id);
    S.g = direct_sum(A.g, B.g);
    S.gram = block_gram(A.gram, B.gram);
    S.psi.insert(S.psi.end(), B.psi.begin(), B.psi.end());
    for (size_t x = 0; x < S.dN(); ++x)
        for (size_t y = 0; y < S.dN(); ++y) S.Rgamma[x][y].insert(S.Rgamma[x][y].end(), B.Rgamma[x][y].begin(), B.Rgamma[x][y].end());
    S.cmatrix.reset();
    return S;
}

template <class K> ParallelGStructure<K> reduce_to_ideal(const ParallelGStructure<K>& S, const Subspace<K>& ideal, std::string id) {
    if (!is_ideal(S.g, ideal)) throw std::invalid_argument("reduce_to_ideal: not an ideal");
    ParallelGStructure<K> out = S;
    out.id = std::move(id);
    out.g = subalgebra(S.g, ideal);
    out.gram = S.gram.restrict(ideal);
    out.psi.clear();
    for (auto& v : ideal.basis()) {
        Tensor<K> w(S.dN(), 2);
        for (size_t a = 0; a < S.dg(); ++a)
            if (!is_zero(v[a])) w = w + v[a] * S.psi[a];
        out.psi.push_back(w);
    }
    for (auto& row : out.Rgamma)
        for (auto& x : row) x = out.gram.inv() * (ideal.matrix().transpose() * (S.gram.matrix() * x));
    out.cmatrix.reset();
    return out;
}

// a parallel g-structure over a symmetric base is a geometry with parallel curvature, k1 = 0
template <class K> ParallelCurvatureGeometry<K> to_pcg(const ParallelGStructure<K>& S) {
    if (!S.symmetric_base || !S.base.symmetric()) throw std::invalid_argument("to_pcg: base is not symmetric");
    return make_pcg(S.id, S.base, S.g, S.gram, Subspace<K>(S.dg()), S.Rgamma);
}

// ------------------------------------------------------------ non-degeneracy

template <class K> struct NondegResult {
    bool nondegenerate = true;
    std::string method;
    // witness for a degenerate structure: (D1, g1) and (D2, g2)
    std::vector<size_t> A, B;     // factor / block indices (0-based)
    Subspace<K> V1, V2;           // orthogonal ideals of g
};

// c-matrix reading: degenerate iff a zero column, columns not spanning R^m,
// or the graph on columns with an edge for <v_a, v_b> != 0 disconnected
template <class K> NondegResult<K> cdec_fast(const Mat<K>& c) {
    size_t m = c.rows(), s = c.cols();
    NondegResult<K> r;
    r.method = "cmatrix-fast";
    std::vector<Vec<K>> cols;
    for (size_t a = 0; a < s; ++a) cols.push_back(c.col(a));
    auto all = [&] {
        std::vector<size_t> v(s);
        std::iota(v.begin(), v.end(), 0);
        return v;
    }();
    for (size_t a = 0; a < s; ++a)
        if (is_zero(cols[a])) {
            r.nondegenerate = false;
            r.A = {a};
            for (size_t b = 0; b < s; ++b)
                if (b != a) r.B.push_back(b);
            r.V1 = Subspace<K>(m);
            r.V2 = Subspace<K>::full(m);
            return r;
        }
    auto span_c = span(m, cols);
    if (span_c.dim() < m) {
        r.nondegenerate = false;
        r.A = all;
        r.V1 = span_c;
        r.V2 = orth_complement(span_c, Gram<K>::identity(m));
        return r;
    }
    std::vector<size_t> comp(s, s), stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
        size_t a = stack.back();
        stack.pop_back();
        for (size_t b = 0; b < s; ++b)
            if (comp[b] == s && !is_zero(dot(cols[a], cols[b]))) {
                comp[b] = 0;
                stack.push_back(b);
            }
    }
    for (size_t a = 0; a < s; ++a) (comp[a] == 0 ? r.A : r.B).push_back(a);
    if (!r.B.empty()) {
        r.nondegenerate = false;
        std::vector<Vec<K>> va;
        for (size_t a : r.A) va.push_back(cols[a]);
        r.V1 = span(m, va);
        r.V2 = orth_complement(r.V1, Gram<K>::identity(m));
    }
    return r;
}

// exhaustive: every partition A|B and every orthogonal split of R^m generated by
// span(v_A) plus coordinate subsets of a basis of the common complement; verified directly
template <class K> bool cdec_brute(const Mat<K>& c) {
    size_t m = c.rows(), s = c.cols();
    auto I = Gram<K>::identity(m);
    std::vector<Vec<K>> cols;
    for (size_t a = 0; a < s; ++a) cols.push_back(c.col(a));
    auto W = orth_complement(span(m, cols), I);
    for (size_t mask = 0; mask < (size_t(1) << s); ++mask) {
        std::vector<Vec<K>> va;
        for (size_t a = 0; a < s; ++a)
            if (mask >> a & 1) va.push_back(cols[a]);
        for (size_t wm = 0; wm < (size_t(1) << W.dim()); ++wm) {
            auto gen = va;
            for (size_t i = 0; i < W.dim(); ++i)
                if (wm >> i & 1) gen.push_back(W[i]);
            auto V1 = span(m, gen);
            auto V2 = orth_complement(V1, I);
            bool ok = true;
            for (size_t a = 0; a < s && ok; ++a) {
                // psi(V1) must vanish on factors in B, psi(V2) on factors in A
                const auto& V = (mask >> a & 1) ? V2 : V1;
                for (auto& x : V.basis())
                    if (!is_zero(dot(x, cols[a]))) ok = false;
            }
            bool side1 = mask != 0 || V1.dim() > 0;
            bool side2 = mask != (size_t(1) << s) - 1 || V2.dim() > 0;
            if (ok && side1 && side2) return false;
        }
    }
    return true;
}

// representatives of c-matrices with entries in [-r, r], m, s <= maxd, up to
// row and column permutations and row signs (isometries of R^m, relabelled factors)
inline std::vector<std::vector<std::vector<int>>> cmatrix_sample(int maxd, int r) {
    using IM = std::vector<std::vector<int>>;
    std::set<IM> seen;
    int base = 2 * r + 1;
    for (int m = 1; m <= maxd; ++m)
        for (int s = 1; s <= maxd; ++s) {
            long tot = 1;
            for (int i = 0; i < m * s; ++i) tot *= base;
            std::vector<int> perm(s);
            for (long code = 0; code < tot; ++code) {
                IM M(m, std::vector<int>(s));
                long x = code;
                for (int i = 0; i < m * s; ++i, x /= base) M[i / s][i % s] = int(x % base) - r;
                std::iota(perm.begin(), perm.end(), 0);
                std::optional<IM> best;
                do {
                    IM P(m, std::vector<int>(s));
                    for (int i = 0; i < m; ++i) {
                        for (int j = 0; j < s; ++j) P[i][j] = M[i][perm[j]];
                        auto nz = std::find_if(P[i].begin(), P[i].end(), [](int v) { return v != 0; });
                        if (nz != P[i].end() && *nz < 0)
                            for (auto& v : P[i]) v = -v;
                    }
                    std::sort(P.begin(), P.end());
                    if (!best || P < *best) best = P;
                } while (std::next_permutation(perm.begin(), perm.end()));
                seen.insert(*best);
            }
        }
    return {seen.begin(), seen.end()};
}

template <class K> Mat<K> cmatrix_from_ints(const std::vector<std::vector<int>>& c) {
    Mat<K> M(c.size(), c.empty() ? 0 : c[0].size());
    for (size_t i = 0; i < M.rows(); ++i)
        for (size_t j = 0; j < M.cols(); ++j) M(i, j) = K(c[i][j]);
    return M;
}

// smallest ideal containing S
template <class K> Subspace<K> ideal_closure(const LieAlgebra<K>& L, const Subspace<K>& S) {
    size_t n = L.dim();
    auto cur = S;
    for (;;) {
        auto gen = cur.basis();
        for (size_t i = 0; i < n; ++i)
            for (auto& v : cur.basis()) gen.push_back(L.bracket(unit<K>(n, i), v));
        auto nxt = span(n, gen);
        if (nxt.dim() == cur.dim()) return cur;
        cur = nxt;
    }
}

// general search: D1 runs over sums of base holonomy blocks; for each, the g-side is forced
template <class K> NondegResult<K> nondegeneracy_general(const ParallelGStructure<K>& S) {
    NondegResult<K> r;
    r.method = "block-lattice";
    size_t d = S.dN(), dg = S.dg();
    const auto& gN = S.base.gram();
    std::vector<Subspace<K>> blocks;
    auto hol = holonomy_algebra(model_from_pair(S.base).Rtau, gN);
    auto sd = standard_decomposition(hol, gN);
    blocks = sd.h_blocks;
    blocks.insert(blocks.end(), sd.v_blocks.begin(), sd.v_blocks.end());
    size_t nb = blocks.size();
    std::vector<Mat<K>> P;
    for (size_t a = 0; a < dg; ++a) P.push_back(S.psi_endo(a));
    // {a : psi(a) preserves D and vanishes on D^perp}
    auto supported = [&](const Subspace<K>& D) {
        auto Dp = orth_complement(D, gN);
        std::vector<Vec<K>> rows;
        Mat<K> M(0, 0);
        size_t nr = (Dp.dim() + D.dim()) * d;
        Mat<K> A(nr, dg);
        for (size_t a = 0; a < dg; ++a) {
            size_t row = 0;
            for (auto& x : Dp.basis()) {
                auto y = P[a] * x;
                for (size_t i = 0; i < d; ++i) A(row++, a) = y[i];
            }
            // component of psi(a) D leaving D
            auto PD = orth_project(Dp, gN);
            for (auto& x : D.basis()) {
                auto y = PD * (P[a] * x);
                for (size_t i = 0; i < d; ++i) A(row++, a) = y[i];
            }
        }
        return kernel(A);
    };
    for (size_t mask = 0; mask < (size_t(1) << nb); ++mask) {
        std::vector<Vec<K>> gen;
        for (size_t b = 0; b < nb; ++b)
            if (mask >> b & 1) gen.insert(gen.end(), blocks[b].basis().begin(), blocks[b].basis().end());
        Subspace<K> D1(d, gen);
        auto D2 = orth_complement(D1, gN);
        auto G1 = supported(D1), G2 = supported(D2);
        auto G2p = orth_complement(G2, S.gram);
        for (int variant = 0; variant < 2; ++variant) {
            auto seed = variant == 0 ? G2p : sum(G2p, intersect(G1, G2));
            auto V1 = ideal_closure(S.g, seed);
            if (!contains(G1, V1)) continue;
            auto V2 = orth_complement(V1, S.gram);
            if (!contains(G2, V2)) continue;
            bool side1 = D1.dim() > 0 || V1.dim() > 0, side2 = D2.dim() > 0 || V2.dim() > 0;
            if (side1 && side2) {
                r.nondegenerate = false;
                for (size_t b = 0; b < nb; ++b) (mask >> b & 1 ? r.A : r.B).push_back(b);
                r.V1 = V1;
                r.V2 = V2;
                return r;
            }
        }
    }
    return r;
}

template <class K> NondegResult<K> nondegeneracy_test(const ParallelGStructure<K>& S) {
    if (S.cmatrix && S.cmatrix->cols() == S.kahler_factors.size()) return cdec_fast(*S.cmatrix);
    return nondegeneracy_general(S);
}

// ------------------------------------------------------------ recognition

enum class CaseTag { QK_SP1, SYMMETRIC_IDEAL, KAHLER_PRODUCT_MIX, UNRECOGNIZED };

inline const char* case_name(CaseTag t) {
    switch (t) {
    case CaseTag::QK_SP1: return "QK_SP1";
    case CaseTag::SYMMETRIC_IDEAL: return "SYMMETRIC_IDEAL";
    case CaseTag::KAHLER_PRODUCT_MIX: return "KAHLER_PRODUCT_MIX";
    default: return "UNRECOGNIZED";
    }
}

template <class K> struct Classification {
    CaseTag tag = CaseTag::UNRECOGNIZED;
    std::vector<CaseTag> alternatives;
    std::vector<std::string> notes;
};

template <class K> bool psi_images_irreducible(const ParallelGStructure<K>& S) {
    std::vector<Mat<K>> P;
    for (size_t a = 0; a < S.dg(); ++a) P.push_back(S.psi_endo(a));
    return is_irreducible(P, Subspace<K>::full(S.dN()), S.base.gram());
}

template <class K> std::vector<Mat<K>> psi_images(const ParallelGStructure<K>& S) {
    std::vector<Mat<K>> P;
    for (size_t a = 0; a < S.dg(); ++a) P.push_back(S.psi_endo(a));
    return P;
}

template <class K> bool rank_of(const std::vector<Mat<K>>& Ms, size_t expect) {
    std::vector<Vec<K>> fl;
    for (auto& M : Ms) fl.push_back(flatten(M));
    return !fl.empty() && span(fl[0].size(), fl).dim() == expect;
}

template <class K> bool match_qk_sp1(const ParallelGStructure<K>& S, std::string& why) {
    if (S.dg() != 3) return why = "dim g != 3", false;
    if (!is_compact_type(S.g) || center(S.g).dim() != 0) return why = "g not sp(1)", false;
    auto P = psi_images(S);
    if (!rank_of(P, 3)) return why = "psi image not of rank 3", false;
    if (commutator(P[0], P[1]).is_zero() && commutator(P[0], P[2]).is_zero() && commutator(P[1], P[2]).is_zero())
        return why = "psi image abelian", false;
    if (!psi_images_irreducible(S)) return why = "psi image reducible", false;
    return true;
}

template <class K> bool match_symmetric_ideal(const ParallelGStructure<K>& S, std::string& why) {
    const auto& B = S.base;
    if (!S.symmetric_base || !B.symmetric()) return why = "base not symmetric", false;
    if (!is_compact_type(S.g)) return why = "g not compact", false;
    auto hol = holonomy_algebra(model_from_pair(B).Rtau, B.gram());
    if (!is_irreducible(hol, Subspace<K>::full(S.dN()), B.gram())) return why = "base not irreducible", false;
    // psi(g) inside ad(k)|m, and the preimage an ideal of k
    size_t d = S.dN(), dk = B.dim_k();
    std::vector<Vec<K>> adk;
    for (size_t a = 0; a < dk; ++a) adk.push_back(flatten(B.ad_k(a)));
    Mat<K> AK = Mat<K>::from_cols(adk, d * d);
    std::vector<Vec<K>> pre;
    for (size_t a = 0; a < S.dg(); ++a) {
        auto c = solve(AK, flatten(S.psi_endo(a)));
        if (!c) return why = "psi(g) not inside ad(k)", false;
        pre.push_back(B.from_k(*c));
    }
    auto I = span(B.g().dim(), pre);
    for (auto& k : B.k().basis())
        for (auto& x : I.basis())
            if (!contains(I, B.g().bracket(k, x))) return why = "psi(g) does not come from an ideal of k", false;
    return true;
}

template <class K> bool match_kahler_product(const ParallelGStructure<K>& S, std::string& why) {
    if (S.kahler_factors.empty()) return why = "no Kahler factor list", false;
    auto id = ideal_decomposition(S.g, S.gram);
    const auto& gN = S.base.gram();
    auto preserves_all = [&](const Mat<K>& A) {
        for (auto& f : S.kahler_factors)
            if (!invariant_under(f, A)) return false;
        return true;
    };
    for (auto& z : id.center.basis())
        if (!preserves_all(S.psi_endo(z))) return why = "psi(center) not block diagonal", false;
    for (auto& simple : id.simple) {
        // supported on a single factor: zero on every other factor
        std::optional<size_t> home;
        for (auto& x : simple.basis()) {
            auto A = S.psi_endo(x);
            if (!preserves_all(A)) return why = "psi(simple) has cross-factor components", false;
            for (size_t f = 0; f < S.kahler_factors.size(); ++f) {
                bool zero = true;
                for (auto& v : S.kahler_factors[f].basis())
                    if (!is_zero(A * v)) zero = false;
                if (!zero) {
                    if (home && *home != f) return why = "psi(simple) spread over factors", false;
                    home = f;
                }
            }
        }
    }
    (void)gN;
    return true;
}

template <class K> Classification<K> classify(const ParallelGStructure<K>& S) {
    auto nd = nondegeneracy_test(S);
    if (!nd.nondegenerate) throw PreconditionViolation("classify: structure is degenerate");
    Classification<K> c;
    std::vector<CaseTag> hits;
    std::string why;
    if (match_qk_sp1(S, why)) hits.push_back(CaseTag::QK_SP1);
    else c.notes.push_back(std::string("QK_SP1: ") + why);
    why.clear();
    if (match_symmetric_ideal(S, why)) hits.push_back(CaseTag::SYMMETRIC_IDEAL);
    else c.notes.push_back(std::string("SYMMETRIC_IDEAL: ") + why);
    why.clear();
    if (match_kahler_product(S, why)) hits.push_back(CaseTag::KAHLER_PRODUCT_MIX);
    else c.notes.push_back(std::string("KAHLER_PRODUCT_MIX: ") + why);
    if (!hits.empty()) {
        c.tag = hits[0];
        c.alternatives.assign(hits.begin() + 1, hits.end());
    }
    return c;
}

// ------------------------------------------------------------ special geometry round trip

template <class K> Report special_roundtrip(const ParallelGStructure<K>& S) {
    Report r;
    r.id = S.id;
    auto nd = nondegeneracy_test(S);
    r.add("nondegenerate", nd.nondegenerate);
    if (!nd.nondegenerate) return r;
    LiftedGeometry<K> L;
    try {
        L = inverse_construct(to_pcg(S));
    } catch (const std::exception& ex) {
        r.add("lift", false, ex.what());
        return r;
    }
    r.append(verify_parallel_torsion(L), "lift.");
    const auto& M = L.model;
    size_t n = M.dim();
    auto hol = holonomy_algebra(M.Rtau, M.g, M.nomizu);
    std::string w;
    for (size_t a = 0; a < hol.size() && w.empty(); ++a)
        for (size_t i = L.dN; i < n && w.empty(); ++i)
            if (!is_zero(hol[a] * unit<K>(n, i))) w = "hol[" + std::to_string(a) + "] moves vertical " + std::to_string(i);
    r.add("special.vertical_parallel", w.empty(), w);
    try {
        auto d = standard_decomposition(hol, M.g);
        auto ts = torsion_split(M.tau, d);
        r.add("special.tau_h_zero", ts.tau_h.is_zero());
        r.add("special.tau_v_dot_tau_h", tauv_dot_tauh_check(M.tau, d));
    } catch (const std::runtime_error& ex) {
        r.add_undecided("special.decomposition", ex.what());
    }
    r.append(round_trip(L).report);
    return r;
}

} // namespace skewtor
