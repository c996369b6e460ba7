#pragma once

#include "field.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace skewtor {

template <class K> using Vec = std::vector<K>;

template <class K> Vec<K> zeros(size_t n) { return Vec<K>(n, K(0)); }
template <class K> Vec<K> unit(size_t n, size_t i) {
    Vec<K> v(n, K(0));
    v[i] = K(1);
    return v;
}
template <class K> bool is_zero(const Vec<K>& v) {
    for (auto& x : v)
        if (!is_zero(x)) return false;
    return true;
}
template <class K> Vec<K> operator+(Vec<K> a, const Vec<K>& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}
template <class K> Vec<K> operator-(Vec<K> a, const Vec<K>& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}
template <class K> Vec<K> operator*(const K& s, Vec<K> a) {
    for (auto& x : a) x *= s;
    return a;
}
template <class K> void axpy(Vec<K>& y, const K& a, const Vec<K>& x) {
    if (is_zero(a)) return;
    for (size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

template <class K> class Mat {
  public:
    Mat() = default;
    Mat(size_t r, size_t c) : r_(r), c_(c), a_(r * c, K(0)) {}

    static Mat identity(size_t n) {
        Mat m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = K(1);
        return m;
    }
    static Mat from_rows(const std::vector<Vec<K>>& rows, size_t cols) {
        Mat m(rows.size(), cols);
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        return m;
    }
    static Mat from_cols(const std::vector<Vec<K>>& cols, size_t rows) {
        Mat m(rows, cols.size());
        for (size_t j = 0; j < cols.size(); ++j)
            for (size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        return m;
    }
    static Mat diag(const Vec<K>& d) {
        Mat m(d.size(), d.size());
        for (size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    K& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const K& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }
    const std::vector<K>& data() const { return a_; }
    std::vector<K>& data() { return a_; }

    Vec<K> col(size_t j) const {
        Vec<K> v(r_);
        for (size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    Vec<K> row(size_t i) const { return Vec<K>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }
    std::vector<Vec<K>> columns() const {
        std::vector<Vec<K>> out;
        for (size_t j = 0; j < c_; ++j) out.push_back(col(j));
        return out;
    }

    Mat transpose() const {
        Mat t(c_, r_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    bool is_zero() const {
        for (auto& x : a_)
            if (!skewtor::is_zero(x)) return false;
        return true;
    }
    bool is_square() const { return r_ == c_; }
    K trace() const {
        K t(0);
        for (size_t i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
        return t;
    }

    Mat& operator+=(const Mat& o) {
        check_same(o);
        for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        check_same(o);
        for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    Mat& operator*=(const K& s) {
        for (auto& x : a_) x *= s;
        return *this;
    }
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(const K& s, Mat a) { return a *= s; }
    friend Mat operator-(Mat a) {
        for (auto& x : a.a_) x = -x;
        return a;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.c_ != b.r_) throw std::invalid_argument("Mat product: shape mismatch");
        Mat p(a.r_, b.c_);
        for (size_t i = 0; i < a.r_; ++i)
            for (size_t k = 0; k < a.c_; ++k) {
                const K& x = a(i, k);
                if (skewtor::is_zero(x)) continue;
                for (size_t j = 0; j < b.c_; ++j) p(i, j) += x * b(k, j);
            }
        return p;
    }
    friend Vec<K> operator*(const Mat& a, const Vec<K>& v) {
        if (a.c_ != v.size()) throw std::invalid_argument("Mat*Vec: shape mismatch");
        Vec<K> out(a.r_, K(0));
        for (size_t i = 0; i < a.r_; ++i)
            for (size_t j = 0; j < a.c_; ++j)
                if (!skewtor::is_zero(v[j])) out[i] += a(i, j) * v[j];
        return out;
    }
    friend bool operator==(const Mat& a, const Mat& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) return false;
        return (a - b).is_zero();
    }

    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (size_t i = 0; i < r_; ++i) {
            os << (i ? "; " : "");
            for (size_t j = 0; j < c_; ++j) os << (j ? " " : "") << Field<K>::str((*this)(i, j));
        }
        os << "]";
        return os.str();
    }

  private:
    void check_same(const Mat& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("Mat: shape mismatch");
    }
    size_t r_ = 0, c_ = 0;
    std::vector<K> a_;
};

template <class K> Mat<K> commutator(const Mat<K>& a, const Mat<K>& b) { return a * b - b * a; }

// flatten row-major, used whenever a matrix is an unknown of a linear system
template <class K> Vec<K> flatten(const Mat<K>& m) { return m.data(); }
template <class K> Mat<K> unflatten(const Vec<K>& v, size_t n) {
    Mat<K> m(n, n);
    m.data() = v;
    return m;
}

template <class K> K dot(const Vec<K>& a, const Vec<K>& b) {
    K s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// ---------------------------------------------------------------- elimination

template <class K> struct Echelon {
    Mat<K> R;                  // reduced row echelon form
    std::vector<size_t> pivots; // pivot column per nonzero row
};

template <class K> Echelon<K> rref(Mat<K> A) {
    Echelon<K> e;
    size_t r = 0;
    for (size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
        std::optional<size_t> piv;
        for (size_t i = r; i < A.rows(); ++i) {
            if (is_zero(A(i, c))) continue;
            if (!piv) {
                piv = i;
                if constexpr (Field<K>::exact) break;
            } else if (Field<K>::better_pivot(A(i, c), A(*piv, c))) {
                piv = i;
            }
        }
        if (!piv) {
            if constexpr (!Field<K>::exact)
                for (size_t i = r; i < A.rows(); ++i) A(i, c) = K(0);
            continue;
        }
        if (*piv != r)
            for (size_t j = 0; j < A.cols(); ++j) std::swap(A(r, j), A(*piv, j));
        K inv = K(1) / A(r, c);
        for (size_t j = c; j < A.cols(); ++j) A(r, j) *= inv;
        for (size_t i = 0; i < A.rows(); ++i) {
            if (i == r || is_zero(A(i, c))) continue;
            K f = A(i, c);
            for (size_t j = c; j < A.cols(); ++j) A(i, j) -= f * A(r, j);
            if constexpr (!Field<K>::exact) A(i, c) = K(0);
        }
        e.pivots.push_back(c);
        ++r;
    }
    e.R = std::move(A);
    return e;
}

template <class K> size_t rank(const Mat<K>& A) { return rref(A).pivots.size(); }

template <class K> K det(Mat<K> A) {
    if (!A.is_square()) throw std::invalid_argument("det: non-square");
    size_t n = A.rows();
    K d(1);
    for (size_t c = 0; c < n; ++c) {
        std::optional<size_t> piv;
        for (size_t i = c; i < n; ++i) {
            if (is_zero(A(i, c))) continue;
            if (!piv) {
                piv = i;
                if constexpr (Field<K>::exact) break;
            } else if (Field<K>::better_pivot(A(i, c), A(*piv, c))) {
                piv = i;
            }
        }
        if (!piv) return K(0);
        if (*piv != c) {
            for (size_t j = 0; j < n; ++j) std::swap(A(c, j), A(*piv, j));
            d = -d;
        }
        d *= A(c, c);
        for (size_t i = c + 1; i < n; ++i) {
            if (is_zero(A(i, c))) continue;
            K f = A(i, c) / A(c, c);
            for (size_t j = c; j < n; ++j) A(i, j) -= f * A(c, j);
        }
    }
    return d;
}

template <class K> std::optional<Vec<K>> solve(const Mat<K>& A, const Vec<K>& b) {
    if (A.rows() != b.size()) throw std::invalid_argument("solve: A.rows != |b|");
    Mat<K> M(A.rows(), A.cols() + 1);
    for (size_t i = 0; i < A.rows(); ++i) {
        for (size_t j = 0; j < A.cols(); ++j) M(i, j) = A(i, j);
        M(i, A.cols()) = b[i];
    }
    auto e = rref(M);
    Vec<K> x(A.cols(), K(0));
    for (size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == A.cols()) return std::nullopt;
        x[e.pivots[r]] = e.R(r, A.cols());
    }
    return x;
}

// solve X*A = B row by row style helper: returns X with A X = B (columns)
template <class K> std::optional<Mat<K>> solve_many(const Mat<K>& A, const Mat<K>& B) {
    Mat<K> X(A.cols(), B.cols());
    for (size_t j = 0; j < B.cols(); ++j) {
        auto x = solve(A, B.col(j));
        if (!x) return std::nullopt;
        for (size_t i = 0; i < A.cols(); ++i) X(i, j) = (*x)[i];
    }
    return X;
}

template <class K> std::optional<Mat<K>> try_inverse(const Mat<K>& A) {
    if (!A.is_square()) return std::nullopt;
    size_t n = A.rows();
    if (n == 0) return Mat<K>(0, 0);
    Mat<K> M(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) M(i, j) = A(i, j);
        M(i, n + i) = K(1);
    }
    auto e = rref(M);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    Mat<K> inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = e.R(i, n + j);
    return inv;
}

template <class K> Mat<K> inverse(const Mat<K>& A) {
    auto inv = try_inverse(A);
    if (!inv) throw std::domain_error("inverse: singular matrix");
    return *inv;
}

// ---------------------------------------------------------------- subspaces

template <class K> class Subspace {
  public:
    Subspace() = default;
    explicit Subspace(size_t ambient) : n_(ambient) {}
    // caller promises independence; span() is the checked constructor
    Subspace(size_t ambient, std::vector<Vec<K>> basis) : n_(ambient), b_(std::move(basis)) {
        for (auto& v : b_)
            if (v.size() != n_) throw std::invalid_argument("Subspace: vector of wrong length");
    }
    static Subspace full(size_t n) {
        Subspace s(n);
        for (size_t i = 0; i < n; ++i) s.b_.push_back(unit<K>(n, i));
        return s;
    }
    static Subspace coordinate(size_t n, const std::vector<size_t>& idx) {
        Subspace s(n);
        for (size_t i : idx) s.b_.push_back(unit<K>(n, i));
        return s;
    }

    size_t ambient() const { return n_; }
    size_t dim() const { return b_.size(); }
    const std::vector<Vec<K>>& basis() const { return b_; }
    const Vec<K>& operator[](size_t i) const { return b_[i]; }
    Mat<K> matrix() const { return Mat<K>::from_cols(b_, n_); }

  private:
    size_t n_ = 0;
    std::vector<Vec<K>> b_;
};

// independent subset of the given vectors, in order
template <class K> Subspace<K> span(size_t n, const std::vector<Vec<K>>& vs) {
    Subspace<K> s(n);
    if (vs.empty()) return s;
    auto e = rref(Mat<K>::from_cols(vs, n));
    std::vector<Vec<K>> keep;
    for (size_t p : e.pivots) keep.push_back(vs[p]);
    return Subspace<K>(n, keep);
}

template <class K> Subspace<K> kernel(const Mat<K>& A) {
    auto e = rref(A);
    std::vector<bool> is_piv(A.cols(), false);
    for (size_t p : e.pivots) is_piv[p] = true;
    std::vector<Vec<K>> basis;
    for (size_t f = 0; f < A.cols(); ++f) {
        if (is_piv[f]) continue;
        Vec<K> v(A.cols(), K(0));
        v[f] = K(1);
        for (size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.R(r, f);
        basis.push_back(std::move(v));
    }
    return Subspace<K>(A.cols(), basis);
}

template <class K> std::optional<Vec<K>> coords(const Subspace<K>& S, const Vec<K>& v) {
    if (S.dim() == 0) {
        if (is_zero(v)) return Vec<K>{};
        return std::nullopt;
    }
    return solve(S.matrix(), v);
}

template <class K> bool contains(const Subspace<K>& S, const Vec<K>& v) { return coords(S, v).has_value(); }

template <class K> bool contains(const Subspace<K>& S, const Subspace<K>& T) {
    for (auto& v : T.basis())
        if (!contains(S, v)) return false;
    return true;
}

template <class K> Vec<K> combine(const Subspace<K>& S, const Vec<K>& c) {
    Vec<K> v(S.ambient(), K(0));
    for (size_t i = 0; i < S.dim(); ++i) axpy(v, c[i], S[i]);
    return v;
}

template <class K> Subspace<K> sum(const Subspace<K>& a, const Subspace<K>& b) {
    auto vs = a.basis();
    vs.insert(vs.end(), b.basis().begin(), b.basis().end());
    return span(a.ambient(), vs);
}

template <class K> Subspace<K> intersect(const Subspace<K>& a, const Subspace<K>& b) {
    size_t n = a.ambient();
    if (a.dim() == 0 || b.dim() == 0) return Subspace<K>(n);
    Mat<K> M(n, a.dim() + b.dim());
    for (size_t j = 0; j < a.dim(); ++j)
        for (size_t i = 0; i < n; ++i) M(i, j) = a[j][i];
    for (size_t j = 0; j < b.dim(); ++j)
        for (size_t i = 0; i < n; ++i) M(i, a.dim() + j) = -b[j][i];
    auto ker = kernel(M);
    std::vector<Vec<K>> vs;
    for (auto& c : ker.basis()) vs.push_back(combine(a, Vec<K>(c.begin(), c.begin() + a.dim())));
    return span(n, vs);
}

// ---------------------------------------------------------------- gram

template <class K> class Gram {
  public:
    Gram() = default;
    explicit Gram(Mat<K> m) : m_(std::move(m)) {
        if (!m_.is_square()) throw std::invalid_argument("Gram: not square");
        if (!(m_ == m_.transpose())) throw std::invalid_argument("Gram: not symmetric");
        for (size_t k = 1; k <= m_.rows(); ++k) {
            Mat<K> lead(k, k);
            for (size_t i = 0; i < k; ++i)
                for (size_t j = 0; j < k; ++j) lead(i, j) = m_(i, j);
            K d = det(lead);
            if (is_zero(d) || Field<K>::sign(d) < 0)
                throw std::invalid_argument("Gram: not positive definite (leading minor " + std::to_string(k) + ")");
        }
    }
    static Gram identity(size_t n) { return Gram(Mat<K>::identity(n)); }

    size_t dim() const { return m_.rows(); }
    const Mat<K>& matrix() const { return m_; }
    const K& operator()(size_t i, size_t j) const { return m_(i, j); }
    K operator()(const Vec<K>& x, const Vec<K>& y) const { return dot(x, m_ * y); }
    const Mat<K>& inv() const {
        if (inv_.rows() != m_.rows()) inv_ = inverse(m_);
        return inv_;
    }
    // restriction to a subspace, in the subspace basis
    Gram restrict(const Subspace<K>& S) const {
        auto B = S.matrix();
        return Gram(B.transpose() * m_ * B);
    }

  private:
    Mat<K> m_;
    mutable Mat<K> inv_;
};

template <class K> Gram<K> block_gram(const Gram<K>& a, const Gram<K>& b) {
    size_t n = a.dim(), m = b.dim();
    Mat<K> g(n + m, n + m);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) g(i, j) = a(i, j);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) g(n + i, n + j) = b(i, j);
    return Gram<K>(g);
}

template <class K> Subspace<K> orth_complement(const Subspace<K>& S, const Gram<K>& g) {
    if (S.dim() == 0) return Subspace<K>::full(S.ambient());
    return kernel(S.matrix().transpose() * g.matrix());
}

template <class K> Mat<K> orth_project(const Subspace<K>& S, const Gram<K>& g) {
    if (S.ambient() != g.dim()) throw std::invalid_argument("orth_project: dimension mismatch");
    size_t n = S.ambient();
    if (S.dim() == 0) return Mat<K>(n, n);
    auto B = S.matrix();
    auto BtG = B.transpose() * g.matrix();
    auto small = try_inverse(BtG * B);
    if (!small) throw std::invalid_argument("orth_project: basis not independent");
    return B * (*small) * BtG;
}

template <class K> bool orthogonal(const Subspace<K>& a, const Subspace<K>& b, const Gram<K>& g) {
    for (auto& x : a.basis())
        for (auto& y : b.basis())
            if (!is_zero(g(x, y))) return false;
    return true;
}

// matrix of the endomorphism A restricted to an A-invariant subspace S, in S-basis
template <class K> std::optional<Mat<K>> restrict_endo(const Mat<K>& A, const Subspace<K>& S) {
    Mat<K> R(S.dim(), S.dim());
    for (size_t j = 0; j < S.dim(); ++j) {
        auto c = coords(S, A * S[j]);
        if (!c) return std::nullopt;
        for (size_t i = 0; i < S.dim(); ++i) R(i, j) = (*c)[i];
    }
    return R;
}

template <class K> bool invariant_under(const Subspace<K>& S, const Mat<K>& A) {
    for (auto& v : S.basis())
        if (!contains(S, A * v)) return false;
    return true;
}

// {S : S^T G = G S, S A_i = A_i S}; returned as flattened n x n matrices
template <class K> Subspace<K> symmetric_commutant(const std::vector<Mat<K>>& gens, const Gram<K>& g) {
    size_t n = g.dim();
    size_t N = n * n;
    std::vector<Vec<K>> rows;
    const auto& G = g.matrix();
    // (G S)_{ij} - (G S)_{ji} = 0
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Vec<K> r(N, K(0));
            for (size_t k = 0; k < n; ++k) {
                r[k * n + j] += G(i, k);
                r[k * n + i] -= G(j, k);
            }
            rows.push_back(std::move(r));
        }
    for (auto& A : gens) {
        if (A.rows() != n || A.cols() != n) throw std::invalid_argument("symmetric_commutant: generator shape");
        // (S A - A S)_{ij}
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                Vec<K> r(N, K(0));
                for (size_t k = 0; k < n; ++k) {
                    r[i * n + k] += A(k, j);
                    r[k * n + j] -= A(i, k);
                }
                rows.push_back(std::move(r));
            }
    }
    if (rows.empty()) return Subspace<K>::full(N);
    return kernel(Mat<K>::from_rows(rows, N));
}

} // namespace skewtor
