#pragma once

// Covariant tensors on R^n with dense storage.  Alternating forms are tensors
// that happen to be antisymmetric; the metric identifications need a Gram.
//
//   2-form <-> skew endo:    w(X,Y) = g(AX, Y)
//   3-form contraction:      g(tau_X Y, Z) = tau(X,Y,Z)
//   derivation action:       (A.w)(X1..Xp) = -sum_k w(.., A Xk, ..)
//   p-form scalar product:   det-Gram, so <w, X^Y> = w(X,Y)

#include "linalg.hpp"

#include <array>
#include <functional>
#include <numeric>

namespace skewtor {

template <class K> class Tensor {
  public:
    Tensor() = default;
    Tensor(size_t n, size_t r) : n_(n), r_(r), a_(ipow(n, r), K(0)) {}

    size_t dim() const { return n_; }
    size_t degree() const { return r_; }
    size_t size() const { return a_.size(); }
    const std::vector<K>& data() const { return a_; }
    std::vector<K>& data() { return a_; }

    size_t flat(const std::vector<size_t>& idx) const {
        size_t f = 0;
        for (size_t i : idx) f = f * n_ + i;
        return f;
    }
    std::vector<size_t> unflat(size_t f) const {
        std::vector<size_t> idx(r_);
        for (size_t k = r_; k-- > 0;) {
            idx[k] = f % n_;
            f /= n_;
        }
        return idx;
    }
    K& operator[](const std::vector<size_t>& idx) { return a_[flat(idx)]; }
    const K& operator[](const std::vector<size_t>& idx) const { return a_[flat(idx)]; }
    K& operator()(size_t i, size_t j) { return a_[i * n_ + j]; }
    const K& operator()(size_t i, size_t j) const { return a_[i * n_ + j]; }
    K& operator()(size_t i, size_t j, size_t k) { return a_[(i * n_ + j) * n_ + k]; }
    const K& operator()(size_t i, size_t j, size_t k) const { return a_[(i * n_ + j) * n_ + k]; }
    K& operator()(size_t i, size_t j, size_t k, size_t l) { return a_[((i * n_ + j) * n_ + k) * n_ + l]; }
    const K& operator()(size_t i, size_t j, size_t k, size_t l) const { return a_[((i * n_ + j) * n_ + k) * n_ + l]; }

    // multilinear evaluation on vectors
    K eval(const std::vector<Vec<K>>& xs) const {
        K s(0);
        for (size_t f = 0; f < a_.size(); ++f) {
            if (skewtor::is_zero(a_[f])) continue;
            auto idx = unflat(f);
            K t = a_[f];
            for (size_t k = 0; k < r_ && !skewtor::is_zero(t); ++k) t *= xs[k][idx[k]];
            s += t;
        }
        return s;
    }

    bool is_zero() const {
        for (auto& x : a_)
            if (!skewtor::is_zero(x)) return false;
        return true;
    }
    Tensor& operator+=(const Tensor& o) {
        check(o);
        for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    Tensor& operator-=(const Tensor& o) {
        check(o);
        for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    Tensor& operator*=(const K& s) {
        for (auto& x : a_) x *= s;
        return *this;
    }
    friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
    friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
    friend Tensor operator*(const K& s, Tensor a) { return a *= s; }
    friend bool operator==(const Tensor& a, const Tensor& b) {
        return a.n_ == b.n_ && a.r_ == b.r_ && (a - b).is_zero();
    }

    // first index position where a and b differ, for witnesses
    std::optional<std::vector<size_t>> first_nonzero() const {
        for (size_t f = 0; f < a_.size(); ++f)
            if (!skewtor::is_zero(a_[f])) return unflat(f);
        return std::nullopt;
    }

    // pull back along a linear map: (L^*T)(x..) = T(Lx, ..); L is n x m
    Tensor pullback(const Mat<K>& L) const {
        size_t m = L.cols();
        Tensor out(m, r_);
        Tensor cur = *this;
        // contract one slot at a time
        for (size_t slot = 0; slot < r_; ++slot) {
            std::vector<size_t> dims(r_);
            for (size_t k = 0; k < r_; ++k) dims[k] = k < slot ? m : n_;
            Tensor nxt = mixed(dims, slot, m);
            nxt.a_.assign(nxt.a_.size(), K(0));
            // iterate over all entries of cur
            std::vector<size_t> shape = dims;
            std::vector<size_t> oshape = dims;
            oshape[slot] = m;
            size_t total = 1;
            for (auto d : shape) total *= d;
            std::vector<size_t> idx(r_, 0);
            for (size_t f = 0; f < total; ++f) {
                size_t rem = f;
                for (size_t k = r_; k-- > 0;) {
                    idx[k] = rem % shape[k];
                    rem /= shape[k];
                }
                const K& v = cur.a_[f];
                if (skewtor::is_zero(v)) continue;
                size_t i = idx[slot];
                for (size_t j = 0; j < m; ++j) {
                    if (skewtor::is_zero(L(i, j))) continue;
                    idx[slot] = j;
                    size_t g = 0;
                    for (size_t k = 0; k < r_; ++k) g = g * oshape[k] + idx[k];
                    nxt.a_[g] += v * L(i, j);
                }
                idx[slot] = i;
            }
            cur = std::move(nxt);
        }
        out.a_ = std::move(cur.a_);
        return out;
    }

  private:
    static size_t ipow(size_t b, size_t e) {
        size_t r = 1;
        while (e--) r *= b;
        return r;
    }
    // scratch tensor with non-uniform shape (only storage is used)
    Tensor mixed(const std::vector<size_t>& dims, size_t slot, size_t m) const {
        Tensor t;
        t.n_ = n_;
        t.r_ = r_;
        size_t total = 1;
        for (size_t k = 0; k < dims.size(); ++k) total *= (k == slot ? m : dims[k]);
        t.a_.assign(total, K(0));
        return t;
    }
    void check(const Tensor& o) const {
        if (n_ != o.n_ || r_ != o.r_) throw std::invalid_argument("Tensor: shape mismatch");
    }
    size_t n_ = 0, r_ = 0;
    std::vector<K> a_;
};

inline int perm_sign(std::vector<size_t> p) {
    int s = 1;
    for (size_t i = 0; i < p.size(); ++i)
        while (p[i] != i) {
            std::swap(p[i], p[p[i]]);
            s = -s;
        }
    return s;
}

template <class K> bool is_alternating(const Tensor<K>& T) {
    size_t r = T.degree();
    for (size_t f = 0; f < T.size(); ++f) {
        auto idx = T.unflat(f);
        for (size_t a = 0; a + 1 < r; ++a) {
            auto sw = idx;
            std::swap(sw[a], sw[a + 1]);
            if (!is_zero(T.data()[f] + T[sw])) return false;
        }
    }
    return true;
}

// value on the increasing tuple, copied to all permutations with sign
template <class K> void set_alt(Tensor<K>& T, std::vector<size_t> idx, const K& v) {
    std::vector<size_t> perm(idx.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<size_t> j(idx.size());
        for (size_t k = 0; k < idx.size(); ++k) j[k] = idx[perm[k]];
        T[j] = K(perm_sign(perm)) * v;
    } while (std::next_permutation(perm.begin(), perm.end()));
}

template <class K> Tensor<K> alternation(const Tensor<K>& T) {
    size_t r = T.degree();
    Tensor<K> out(T.dim(), r);
    std::vector<size_t> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    long fact = 0;
    do {
        ++fact;
        int s = perm_sign(perm);
        for (size_t f = 0; f < T.size(); ++f) {
            auto idx = T.unflat(f);
            std::vector<size_t> j(r);
            for (size_t k = 0; k < r; ++k) j[k] = idx[perm[k]];
            out.data()[f] += K(s) * T[j];
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return kq<K>(1, fact) * out;
}

template <class K> Tensor<K> tensor_product(const Tensor<K>& a, const Tensor<K>& b) {
    Tensor<K> out(a.dim(), a.degree() + b.degree());
    for (size_t i = 0; i < a.size(); ++i) {
        if (is_zero(a.data()[i])) continue;
        for (size_t j = 0; j < b.size(); ++j) out.data()[i * b.size() + j] = a.data()[i] * b.data()[j];
    }
    return out;
}

inline long factorial(size_t n) { return n <= 1 ? 1 : long(n) * factorial(n - 1); }

// (a^b) = (p+q)!/(p!q!) Alt(a (x) b); for 1-forms (a^b)(X,Y) = a(X)b(Y) - a(Y)b(X)
template <class K> Tensor<K> wedge(const Tensor<K>& a, const Tensor<K>& b) {
    size_t p = a.degree(), q = b.degree();
    return kq<K>(factorial(p + q), factorial(p) * factorial(q)) * alternation(tensor_product(a, b));
}

template <class K> Tensor<K> one_form(const Vec<K>& w) {
    Tensor<K> t(w.size(), 1);
    t.data() = w;
    return t;
}

// X^flat = g(X, .)
template <class K> Tensor<K> flat(const Vec<K>& x, const Gram<K>& g) { return one_form(g.matrix() * x); }

template <class K> Tensor<K> derivation_action(const Mat<K>& A, const Tensor<K>& T) {
    size_t n = T.dim(), r = T.degree();
    Tensor<K> out(n, r);
    for (size_t f = 0; f < T.size(); ++f) {
        auto idx = T.unflat(f);
        K s(0);
        for (size_t k = 0; k < r; ++k) {
            size_t ik = idx[k];
            for (size_t m = 0; m < n; ++m) {
                if (is_zero(A(m, ik))) continue;
                idx[k] = m;
                s -= A(m, ik) * T[idx];
            }
            idx[k] = ik;
        }
        out.data()[f] = s;
    }
    return out;
}

// interior product with e_i in the first slot
template <class K> Tensor<K> interior(const Vec<K>& x, const Tensor<K>& T) {
    size_t n = T.dim(), r = T.degree();
    Tensor<K> out(n, r - 1);
    for (size_t f = 0; f < out.size(); ++f) {
        auto idx = out.unflat(f);
        idx.insert(idx.begin(), 0);
        K s(0);
        for (size_t i = 0; i < n; ++i) {
            if (is_zero(x[i])) continue;
            idx[0] = i;
            s += x[i] * T[idx];
        }
        out.data()[f] = s;
    }
    return out;
}

// the same action written as sum_ij g^{ij} (A e_i)^flat ^ (e_j -| w); only for forms
template <class K> Tensor<K> derivation_action_wedge(const Mat<K>& A, const Tensor<K>& w, const Gram<K>& g) {
    size_t n = w.dim();
    Tensor<K> out(n, w.degree());
    const auto& Gi = g.inv();
    for (size_t i = 0; i < n; ++i) {
        auto Aei = flat(A * unit<K>(n, i), g);
        for (size_t j = 0; j < n; ++j) {
            if (is_zero(Gi(i, j))) continue;
            out += Gi(i, j) * wedge(Aei, interior(unit<K>(n, j), w));
        }
    }
    return out;
}

template <class K> Tensor<K> two_form(const Mat<K>& w) {
    Tensor<K> t(w.rows(), 2);
    t.data() = w.data();
    return t;
}
template <class K> Mat<K> as_matrix(const Tensor<K>& w) {
    if (w.degree() != 2) throw std::invalid_argument("as_matrix: degree != 2");
    Mat<K> m(w.dim(), w.dim());
    m.data() = w.data();
    return m;
}

// w(X,Y) = g(AX,Y)  =>  w = A^T G  =>  A = -G^{-1} w (w skew)
template <class K> Mat<K> two_form_to_endo(const Tensor<K>& w, const Gram<K>& g) {
    if (w.degree() != 2) throw std::invalid_argument("two_form_to_endo: degree != 2");
    return -(g.inv() * as_matrix(w));
}
template <class K> Tensor<K> endo_to_two_form(const Mat<K>& A, const Gram<K>& g) {
    return two_form(A.transpose() * g.matrix());
}

template <class K> bool is_skew(const Mat<K>& A, const Gram<K>& g) {
    auto GA = g.matrix() * A;
    return (GA + GA.transpose()).is_zero();
}

// g(tau_X Y, Z) = tau(X,Y,Z)
template <class K> Mat<K> three_form_contract(const Tensor<K>& tau, const Vec<K>& x, const Gram<K>& g) {
    if (tau.degree() != 3) throw std::invalid_argument("three_form_contract: degree != 3");
    return two_form_to_endo(interior(x, tau), g);
}

// vector tau_X Y
template <class K> Vec<K> tau_xy(const Tensor<K>& tau, const Vec<K>& x, const Vec<K>& y, const Gram<K>& g) {
    size_t n = tau.dim();
    Vec<K> low(n, K(0));
    for (size_t k = 0; k < n; ++k) low[k] = tau.eval({x, y, unit<K>(n, k)});
    return g.inv() * low;
}

// det-Gram scalar product of p-forms: (1/p!) sum a_I b^I
template <class K> K form_inner(const Tensor<K>& a, const Tensor<K>& b, const Gram<K>& g) {
    size_t r = a.degree();
    Tensor<K> raised = b;
    Mat<K> Gi = g.inv();
    // raise every index of b: pull back by G^{-1} (symmetric)
    raised = b.pullback(Gi);
    K s(0);
    for (size_t f = 0; f < a.size(); ++f) s += a.data()[f] * raised.data()[f];
    return kq<K>(1, factorial(r)) * s;
}

// ------------------------------------------------------------ invariant tensors

// one factor of a tensor-space layout: Sym^0/Lambda^d of a subspace (d=1: plain copy)
template <class K> struct SpaceFactor {
    Subspace<K> space;
    size_t degree = 1;
};

inline void increasing_tuples(size_t m, size_t d, std::vector<std::vector<size_t>>& out) {
    std::vector<size_t> t(d);
    std::function<void(size_t, size_t)> rec = [&](size_t pos, size_t start) {
        if (pos == d) {
            out.push_back(t);
            return;
        }
        for (size_t i = start; i < m; ++i) {
            t[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
}

// basis tensors of  (x) Lambda^{d_k} S_k  realised as covariant tensors through g
template <class K> std::vector<Tensor<K>> tensor_space_basis(const std::vector<SpaceFactor<K>>& layout, const Gram<K>& g) {
    size_t n = g.dim();
    std::vector<Tensor<K>> cur{Tensor<K>(n, 0)};
    cur[0].data() = {K(1)};
    for (auto& f : layout) {
        std::vector<std::vector<size_t>> tuples;
        increasing_tuples(f.space.dim(), f.degree, tuples);
        std::vector<Tensor<K>> pieces;
        for (auto& t : tuples) {
            Tensor<K> w(n, 0);
            w.data() = {K(1)};
            for (size_t i : t) w = wedge(w, flat(f.space[i], g));
            pieces.push_back(w);
        }
        std::vector<Tensor<K>> nxt;
        for (auto& a : cur)
            for (auto& b : pieces) nxt.push_back(tensor_product(a, b));
        cur = std::move(nxt);
    }
    return cur;
}

template <class K> struct InvariantTensors {
    std::vector<Tensor<K>> basis;   // basis of the ambient tensor space
    Subspace<K> invariant;          // coefficient vectors w.r.t. basis
    std::vector<Tensor<K>> tensors() const {
        std::vector<Tensor<K>> out;
        for (auto& c : invariant.basis()) {
            Tensor<K> t = basis.empty() ? Tensor<K>() : Tensor<K>(basis[0].dim(), basis[0].degree());
            for (size_t i = 0; i < c.size(); ++i)
                if (!is_zero(c[i])) t += c[i] * basis[i];
            out.push_back(t);
        }
        return out;
    }
};

template <class K>
InvariantTensors<K> invariant_subspace(const std::vector<Mat<K>>& gens, const std::vector<SpaceFactor<K>>& layout,
                                       const Gram<K>& g) {
    InvariantTensors<K> out;
    out.basis = tensor_space_basis(layout, g);
    size_t d = out.basis.size();
    if (gens.empty() || d == 0) {
        out.invariant = Subspace<K>::full(d);
        return out;
    }
    size_t tsz = out.basis[0].size();
    Mat<K> M(gens.size() * tsz, d);
    for (size_t j = 0; j < d; ++j)
        for (size_t a = 0; a < gens.size(); ++a) {
            auto img = derivation_action(gens[a], out.basis[j]);
            for (size_t f = 0; f < tsz; ++f) M(a * tsz + f, j) = img.data()[f];
        }
    out.invariant = kernel(M);
    return out;
}

} // namespace skewtor
