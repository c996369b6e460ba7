#pragma once

#include "reps.hpp"

namespace skewtor {

// [e_i, e_j] = sum_k c(i,j,k) e_k
template <class K> class LieAlgebra {
  public:
    LieAlgebra() = default;
    explicit LieAlgebra(size_t n, std::vector<std::string> labels = {})
        : n_(n), c_(n * n * n, K(0)), labels_(std::move(labels)) {
        if (labels_.empty())
            for (size_t i = 0; i < n; ++i) labels_.push_back("e" + std::to_string(i + 1));
        if (labels_.size() != n) throw std::invalid_argument("LieAlgebra: label count");
    }

    size_t dim() const { return n_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const K& c(size_t i, size_t j, size_t k) const { return c_[(i * n_ + j) * n_ + k]; }
    K& c(size_t i, size_t j, size_t k) { return c_[(i * n_ + j) * n_ + k]; }

    // sets [e_i,e_j] = v and [e_j,e_i] = -v
    void set_bracket(size_t i, size_t j, const Vec<K>& v) {
        for (size_t k = 0; k < n_; ++k) {
            c(i, j, k) = v[k];
            c(j, i, k) = -v[k];
        }
    }

    Vec<K> bracket(size_t i, size_t j) const {
        return Vec<K>(c_.begin() + (i * n_ + j) * n_, c_.begin() + (i * n_ + j + 1) * n_);
    }
    Vec<K> bracket(const Vec<K>& x, const Vec<K>& y) const {
        if (x.size() != n_ || y.size() != n_) throw std::invalid_argument("bracket: dimension mismatch");
        Vec<K> out(n_, K(0));
        for (size_t i = 0; i < n_; ++i) {
            if (is_zero(x[i])) continue;
            for (size_t j = 0; j < n_; ++j) {
                if (is_zero(y[j])) continue;
                K s = x[i] * y[j];
                for (size_t k = 0; k < n_; ++k) out[k] += s * c(i, j, k);
            }
        }
        return out;
    }
    Mat<K> ad(const Vec<K>& x) const {
        Mat<K> m(n_, n_);
        for (size_t j = 0; j < n_; ++j) {
            auto col = bracket(x, unit<K>(n_, j));
            for (size_t k = 0; k < n_; ++k) m(k, j) = col[k];
        }
        return m;
    }
    Mat<K> ad(size_t i) const { return ad(unit<K>(n_, i)); }

    bool antisymmetric() const {
        for (size_t i = 0; i < n_; ++i)
            for (size_t j = 0; j < n_; ++j)
                for (size_t k = 0; k < n_; ++k)
                    if (!is_zero(c(i, j, k) + c(j, i, k))) return false;
        return true;
    }

    friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
        if (a.n_ != b.n_) return false;
        for (size_t i = 0; i < a.c_.size(); ++i)
            if (!is_zero(a.c_[i] - b.c_[i])) return false;
        return true;
    }

  private:
    size_t n_ = 0;
    std::vector<K> c_;
    std::vector<std::string> labels_;
};

template <class K> LieAlgebra<K> abelian(size_t n) { return LieAlgebra<K>(n); }

// [e1,e2]=2e3, [e2,e3]=2e1, [e3,e1]=2e2
template <class K> LieAlgebra<K> su2() {
    LieAlgebra<K> L(3);
    L.set_bracket(0, 1, Vec<K>{K(0), K(0), K(2)});
    L.set_bracket(1, 2, Vec<K>{K(2), K(0), K(0)});
    L.set_bracket(2, 0, Vec<K>{K(0), K(2), K(0)});
    return L;
}

template <class K> struct JacobiWitness {
    size_t i, j, k;
    Vec<K> residual;
};

template <class K> std::optional<JacobiWitness<K>> jacobi_witness(const LieAlgebra<K>& L) {
    size_t n = L.dim();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                auto ei = unit<K>(n, i), ej = unit<K>(n, j), ek = unit<K>(n, k);
                auto r = L.bracket(ei, L.bracket(ej, ek)) + L.bracket(ej, L.bracket(ek, ei)) +
                         L.bracket(ek, L.bracket(ei, ej));
                if (!is_zero(r)) return JacobiWitness<K>{i, j, k, r};
            }
    return std::nullopt;
}

// sum of squared Jacobi residuals over all index triples plus antisymmetry defect
template <class K> K jacobi_defect(const LieAlgebra<K>& L) {
    size_t n = L.dim();
    K s(0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k) {
                auto d = L.c(i, j, k) + L.c(j, i, k);
                s += d * d;
            }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                for (size_t l = 0; l < n; ++l) {
                    K r(0);
                    for (size_t m = 0; m < n; ++m)
                        r += L.c(i, j, m) * L.c(m, k, l) + L.c(j, k, m) * L.c(m, i, l) + L.c(k, i, m) * L.c(m, j, l);
                    s += r * r;
                }
    return s;
}

template <class K> Mat<K> killing_form(const LieAlgebra<K>& L) {
    size_t n = L.dim();
    std::vector<Mat<K>> ads;
    for (size_t i = 0; i < n; ++i) ads.push_back(L.ad(i));
    Mat<K> B(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) B(i, j) = B(j, i) = (ads[i] * ads[j]).trace();
    return B;
}

// <[a,b],c> + <b,[a,c]> = 0 on basis triples
template <class K> bool ad_invariant(const LieAlgebra<K>& L, const Mat<K>& G) {
    size_t n = L.dim();
    for (size_t a = 0; a < n; ++a) {
        auto A = L.ad(a);
        auto S = A.transpose() * G + G * A;
        if (!S.is_zero()) return false;
    }
    return true;
}

template <class K> Subspace<K> center(const LieAlgebra<K>& L) {
    std::vector<Mat<K>> ads;
    for (size_t i = 0; i < L.dim(); ++i) ads.push_back(L.ad(i));
    return joint_kernel(ads, L.dim());
}

template <class K> LieAlgebra<K> direct_sum(const LieAlgebra<K>& a, const LieAlgebra<K>& b) {
    size_t n = a.dim(), m = b.dim();
    auto labels = a.labels();
    for (auto& l : b.labels()) labels.push_back(l + "'");
    // keep labels unique when the two sides collide
    for (size_t i = n; i < n + m; ++i)
        if (std::find(a.labels().begin(), a.labels().end(), b.labels()[i - n]) == a.labels().end())
            labels[i] = b.labels()[i - n];
    LieAlgebra<K> s(n + m, labels);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k) s.c(i, j, k) = a.c(i, j, k);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            for (size_t k = 0; k < m; ++k) s.c(n + i, n + j, n + k) = b.c(i, j, k);
    return s;
}

template <class K> bool is_subalgebra(const LieAlgebra<K>& L, const Subspace<K>& S) {
    for (size_t i = 0; i < S.dim(); ++i)
        for (size_t j = i + 1; j < S.dim(); ++j)
            if (!contains(S, L.bracket(S[i], S[j]))) return false;
    return true;
}

template <class K> bool is_ideal(const LieAlgebra<K>& L, const Subspace<K>& S) {
    for (size_t i = 0; i < L.dim(); ++i)
        for (auto& v : S.basis())
            if (!contains(S, L.bracket(unit<K>(L.dim(), i), v))) return false;
    return true;
}

// structure constants of a subalgebra in the given basis
template <class K> LieAlgebra<K> subalgebra(const LieAlgebra<K>& L, const Subspace<K>& S) {
    size_t d = S.dim();
    LieAlgebra<K> out(d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = i + 1; j < d; ++j) {
            auto c = coords(S, L.bracket(S[i], S[j]));
            if (!c) throw std::invalid_argument("subalgebra: subspace not closed under bracket");
            out.set_bracket(i, j, *c);
        }
    return out;
}

// symmetric S: -S positive semidefinite? via diagonal pivoting
template <class K> bool negative_semidefinite(Mat<K> S) {
    S = -S;
    size_t n = S.rows();
    std::vector<bool> done(n, false);
    for (size_t step = 0; step < n; ++step) {
        std::optional<size_t> piv;
        for (size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            if (Field<K>::sign(S(i, i)) < 0) return false;
            if (!is_zero(S(i, i)) && !piv) piv = i;
        }
        if (!piv) {
            // remaining diagonal is zero: PSD iff remaining block is zero
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && !is_zero(S(i, j))) return false;
            return true;
        }
        size_t p = *piv;
        done[p] = true;
        for (size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            K f = S(i, p) / S(p, p);
            for (size_t j = 0; j < n; ++j)
                if (!done[j]) S(i, j) -= f * S(p, j);
        }
    }
    return true;
}

template <class K> bool is_compact_type(const LieAlgebra<K>& L) {
    auto B = killing_form(L);
    if (!negative_semidefinite(B)) return false;
    auto kerB = kernel(B);
    auto z = center(L);
    return kerB.dim() == z.dim() && contains(z, kerB);
}

template <class K> struct IdealDecomposition {
    Subspace<K> center;
    std::vector<Subspace<K>> simple;
    bool certified = true;
};

// center plus simple ideals of a compact-type algebra, orthogonal for G
template <class K> IdealDecomposition<K> ideal_decomposition(const LieAlgebra<K>& L, const Gram<K>& G) {
    if (!is_compact_type(L)) throw std::invalid_argument("ideal_decomposition: algebra not of compact type");
    if (!ad_invariant(L, G.matrix())) throw std::invalid_argument("ideal_decomposition: scalar product not ad-invariant");
    std::vector<Mat<K>> ads;
    for (size_t i = 0; i < L.dim(); ++i) ads.push_back(L.ad(i));
    auto sp = split_irreducible(ads, G);
    IdealDecomposition<K> out;
    out.center = sp.trivial;
    out.simple = sp.blocks;
    out.certified = sp.undecided.empty();
    for (auto& b : out.simple)
        if (!is_ideal(L, b)) throw std::logic_error("ideal_decomposition: block is not an ideal");
    return out;
}

// ------------------------------------------------------------ reductive pairs

template <class K> class ReductivePair {
  public:
    ReductivePair() = default;
    ReductivePair(LieAlgebra<K> g, Subspace<K> k, Subspace<K> m, Gram<K> gram_m,
                  std::optional<Gram<K>> full_gram = std::nullopt)
        : g_(std::move(g)), k_(std::move(k)), m_(std::move(m)), gm_(std::move(gram_m)), full_(std::move(full_gram)) {
        size_t n = g_.dim();
        if (k_.ambient() != n || m_.ambient() != n) throw std::invalid_argument("ReductivePair: ambient mismatch");
        if (k_.dim() + m_.dim() != n) throw std::invalid_argument("ReductivePair: dim k + dim m != dim g");
        if (gm_.dim() != m_.dim()) throw std::invalid_argument("ReductivePair: gram size != dim m");
        auto all = k_.basis();
        all.insert(all.end(), m_.basis().begin(), m_.basis().end());
        auto inv = try_inverse(Mat<K>::from_cols(all, n));
        if (!inv) throw std::invalid_argument("ReductivePair: k and m do not span g");
        binv_ = *inv;
        if (!is_subalgebra(g_, k_)) throw std::invalid_argument("ReductivePair: [k,k] not in k");
        for (auto& a : k_.basis())
            for (auto& x : m_.basis())
                if (!contains(m_, g_.bracket(a, x))) throw std::invalid_argument("ReductivePair: [k,m] not in m");
        for (size_t a = 0; a < k_.dim(); ++a) {
            auto A = ad_k(a);
            if (!(A.transpose() * gm_.matrix() + gm_.matrix() * A).is_zero())
                throw std::invalid_argument("ReductivePair: gram on m not ad(k)-invariant");
        }
        if (full_) {
            if (full_->dim() != n || !ad_invariant(g_, full_->matrix()))
                throw std::invalid_argument("ReductivePair: full gram not ad-invariant");
        }
    }

    const LieAlgebra<K>& g() const { return g_; }
    const Subspace<K>& k() const { return k_; }
    const Subspace<K>& m() const { return m_; }
    const Gram<K>& gram() const { return gm_; }
    const std::optional<Gram<K>>& full_gram() const { return full_; }
    size_t dim_m() const { return m_.dim(); }
    size_t dim_k() const { return k_.dim(); }

    // (k-coords, m-coords) of a vector of g
    std::pair<Vec<K>, Vec<K>> split(const Vec<K>& v) const {
        auto c = binv_ * v;
        return {Vec<K>(c.begin(), c.begin() + k_.dim()), Vec<K>(c.begin() + k_.dim(), c.end())};
    }
    Vec<K> from_m(const Vec<K>& x) const { return combine(m_, x); }
    Vec<K> from_k(const Vec<K>& a) const { return combine(k_, a); }

    // brackets of m-coordinate vectors, split into parts
    Vec<K> bracket_m(const Vec<K>& x, const Vec<K>& y) const { return split(g_.bracket(from_m(x), from_m(y))).second; }
    Vec<K> bracket_k(const Vec<K>& x, const Vec<K>& y) const { return split(g_.bracket(from_m(x), from_m(y))).first; }

    // ad_A restricted to m, for A = a-th basis element of k (or k-coords)
    Mat<K> ad_k(size_t a) const { return ad_k_vec(unit<K>(k_.dim(), a)); }
    Mat<K> ad_k_vec(const Vec<K>& a) const {
        size_t d = m_.dim();
        Mat<K> M(d, d);
        auto A = from_k(a);
        for (size_t j = 0; j < d; ++j) {
            auto col = split(g_.bracket(A, m_[j])).second;
            for (size_t i = 0; i < d; ++i) M(i, j) = col[i];
        }
        return M;
    }

    bool symmetric() const {
        for (size_t i = 0; i < m_.dim(); ++i)
            for (size_t j = i + 1; j < m_.dim(); ++j)
                if (!is_zero(bracket_m(unit<K>(m_.dim(), i), unit<K>(m_.dim(), j)))) return false;
        return true;
    }

  private:
    LieAlgebra<K> g_;
    Subspace<K> k_, m_;
    Gram<K> gm_;
    std::optional<Gram<K>> full_;
    Mat<K> binv_;
};

// the Lie group itself: k = 0, m = g
template <class K> ReductivePair<K> group_pair(const LieAlgebra<K>& L, const Gram<K>& G) {
    return ReductivePair<K>(L, Subspace<K>(L.dim()), Subspace<K>::full(L.dim()), G, G);
}

template <class K> struct NRWitness {
    size_t x, y, z;
    K value;
};

// <[X,Y]_m, Z> + <Y, [X,Z]_m> on basis triples
template <class K> std::optional<NRWitness<K>> natural_reductivity_witness(const ReductivePair<K>& P) {
    size_t d = P.dim_m();
    const auto& G = P.gram();
    for (size_t x = 0; x < d; ++x)
        for (size_t y = 0; y < d; ++y)
            for (size_t z = y; z < d; ++z) {
                auto ex = unit<K>(d, x), ey = unit<K>(d, y), ez = unit<K>(d, z);
                K v = G(P.bracket_m(ex, ey), ez) + G(ey, P.bracket_m(ex, ez));
                if (!is_zero(v)) return NRWitness<K>{x, y, z, v};
            }
    return std::nullopt;
}

template <class K> bool natural_reductivity_check(const ReductivePair<K>& P) {
    return !natural_reductivity_witness(P).has_value();
}

} // namespace skewtor
