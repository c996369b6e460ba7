#pragma once

// Characteristic polynomials, factorization over Q and primary decomposition.
//
// Factoring uses a single large prime: p is chosen above twice a Mignotte-type
// coefficient bound, so every true factor is visible mod p without Hensel
// lifting.  Modular factoring is Berlekamp-free: distinct degree, then
// Cantor-Zassenhaus equal degree splitting with a fixed sequence of trial
// polynomials (no RNG).

#include "linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <complex>
#include <functional>
#include <map>

namespace skewtor {

namespace poly {

using Q = mpq_class;
using Z = mpz_class;
using QP = std::vector<Q>; // low degree first
using ZP = std::vector<Z>;

template <class P> void trim(P& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}
template <class P> long deg(const P& p) { return long(p.size()) - 1; }

inline QP mul(const QP& a, const QP& b) {
    if (a.empty() || b.empty()) return {};
    QP r(a.size() + b.size() - 1, Q(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

inline QP sub(QP a, const QP& b) {
    if (a.size() < b.size()) a.resize(b.size(), Q(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

// a = q*b + r
inline std::pair<QP, QP> divmod(QP a, const QP& b) {
    if (b.empty()) throw std::domain_error("poly divmod by zero");
    trim(a);
    if (a.size() < b.size()) return {{}, a};
    QP q(a.size() - b.size() + 1, Q(0));
    for (long i = deg(a); i >= deg(b); --i) {
        Q c = a[i] / b.back();
        q[i - deg(b)] = c;
        for (size_t j = 0; j < b.size(); ++j) a[i - deg(b) + j] -= c * b[j];
    }
    a.resize(b.size() - 1);
    trim(a);
    trim(q);
    return {q, a};
}

inline QP monic(QP a) {
    trim(a);
    if (a.empty()) return a;
    Q l = a.back();
    for (auto& c : a) c /= l;
    return a;
}

inline QP gcd(QP a, QP b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

inline QP derivative(const QP& a) {
    QP d;
    for (size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * Q(long(i)));
    trim(d);
    return d;
}

// Yun: monic squarefree factors s_1, s_2, ... with f = lc * prod s_i^i
inline std::vector<QP> squarefree_parts(const QP& f0) {
    QP f = monic(f0);
    std::vector<QP> out;
    if (deg(f) < 1) return out;
    QP fp = derivative(f);
    QP a = gcd(f, fp);
    QP b = divmod(f, a).first;
    QP c = divmod(fp, a).first;
    QP d = sub(c, derivative(b));
    while (deg(b) > 0) {
        QP g = gcd(b, d);
        out.push_back(g);
        b = divmod(b, g).first;
        c = divmod(d, g).first;
        d = sub(c, derivative(b));
    }
    return out;
}

inline ZP primitive_integer(const QP& f) {
    Z l = 1;
    for (auto& c : f) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    ZP z;
    for (auto& c : f) z.push_back(Z(c * l));
    Z g = 0;
    for (auto& c : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g != 0)
        for (auto& c : z) c /= g;
    if (!z.empty() && z.back() < 0)
        for (auto& c : z) c = -c;
    return z;
}

inline QP to_q(const ZP& z) { return QP(z.begin(), z.end()); }

// ---- arithmetic mod p (coefficients in [0,p))
struct ModP {
    Z p;
    Z red(const Z& x) const {
        Z r = x % p;
        if (r < 0) r += p;
        return r;
    }
    void trim(ZP& a) const {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    ZP reduce(const ZP& a) const {
        ZP r;
        for (auto& c : a) r.push_back(red(c));
        trim(r);
        return r;
    }
    Z inv(const Z& a) const {
        Z r;
        if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0) throw std::domain_error("no inverse mod p");
        return r;
    }
    ZP mul(const ZP& a, const ZP& b) const {
        if (a.empty() || b.empty()) return {};
        ZP r(a.size() + b.size() - 1, Z(0));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        return reduce(r);
    }
    ZP sub(ZP a, const ZP& b) const {
        if (a.size() < b.size()) a.resize(b.size(), Z(0));
        for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
        return reduce(a);
    }
    std::pair<ZP, ZP> divmod(ZP a, const ZP& b) const {
        a = reduce(a);
        if (b.empty()) throw std::domain_error("divmod by zero mod p");
        if (a.size() < b.size()) return {{}, a};
        Z il = inv(b.back());
        ZP q(a.size() - b.size() + 1, Z(0));
        for (long i = long(a.size()) - 1; i >= long(b.size()) - 1; --i) {
            Z c = red(a[i] * il);
            q[i - b.size() + 1] = c;
            for (size_t j = 0; j < b.size(); ++j) a[i - b.size() + 1 + j] = red(a[i - b.size() + 1 + j] - c * b[j]);
        }
        a.resize(b.size() - 1);
        trim(a);
        trim(q);
        return {q, a};
    }
    ZP rem(const ZP& a, const ZP& b) const { return divmod(a, b).second; }
    ZP monic(ZP a) const {
        trim(a);
        if (a.empty()) return a;
        Z il = inv(a.back());
        for (auto& c : a) c = red(c * il);
        return a;
    }
    ZP gcd(ZP a, ZP b) const {
        a = reduce(a);
        b = reduce(b);
        while (!b.empty()) {
            auto r = rem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }
    ZP powmod(ZP base, Z e, const ZP& m) const {
        ZP r{Z(1)};
        base = rem(base, m);
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = rem(mul(r, base), m);
            e >>= 1;
            if (e > 0) base = rem(mul(base, base), m);
        }
        return r;
    }
    ZP derivative(const ZP& a) const {
        ZP d;
        for (size_t i = 1; i < a.size(); ++i) d.push_back(red(a[i] * Z(long(i))));
        trim(d);
        return d;
    }
};

// fixed trial sequence for equal degree splitting
inline ZP trial_poly(size_t k, size_t n, const ModP& m) {
    ZP a(std::max<size_t>(2, std::min(n, 2 + k / 3)), Z(0));
    for (size_t i = 0; i < a.size(); ++i) a[i] = m.red(Z(long(k * 7 + i * i * 13 + 3 * i + 1)));
    a.back() = 1;
    return m.reduce(a);
}

inline void equal_degree(const ModP& m, const ZP& g, long d, std::vector<ZP>& out) {
    if (deg(g) == d) {
        out.push_back(g);
        return;
    }
    Z pd;
    mpz_pow_ui(pd.get_mpz_t(), m.p.get_mpz_t(), d);
    Z e = (pd - 1) / 2;
    for (size_t k = 0;; ++k) {
        if (k > 10000) throw std::runtime_error("equal degree splitting did not terminate");
        ZP a = trial_poly(k, size_t(deg(g)), m);
        ZP h = m.sub(m.powmod(a, e, g), ZP{Z(1)});
        ZP u = m.gcd(g, h);
        if (deg(u) > 0 && deg(u) < deg(g)) {
            equal_degree(m, u, d, out);
            equal_degree(m, m.monic(m.divmod(g, u).first), d, out);
            return;
        }
    }
}

inline std::vector<ZP> factor_mod_p(const ModP& m, ZP f) {
    f = m.monic(f);
    std::vector<ZP> out;
    ZP x{Z(0), Z(1)};
    ZP w = x;
    for (long d = 1; 2 * d <= deg(f); ++d) {
        w = m.powmod(w, m.p, f);
        ZP g = m.gcd(f, m.sub(w, x));
        if (deg(g) > 0) {
            equal_degree(m, g, d, out);
            f = m.divmod(f, g).first;
            w = m.rem(w, f);
        }
    }
    if (deg(f) > 0) out.push_back(m.monic(f));
    return out;
}

inline Z max_abs(const ZP& f) {
    Z b = 0;
    for (auto& c : f) b = std::max(b, Z(abs(c)));
    return b;
}

// f squarefree, primitive, positive leading coefficient
inline std::vector<ZP> factor_squarefree(ZP f) {
    if (deg(f) <= 1) return {f};
    long n = deg(f);
    Z lc = f.back();
    Z B = max_abs(f) * Z(n + 1) * lc;
    B <<= n;
    Z p;
    mpz_nextprime(p.get_mpz_t(), Z(2 * B + 1).get_mpz_t());
    ModP m;
    for (;;) {
        m.p = p;
        if (m.red(lc) != 0 && deg(m.gcd(m.reduce(f), m.derivative(m.reduce(f)))) == 0) break;
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    }
    auto modf = factor_mod_p(m, m.reduce(f));
    std::vector<ZP> found;
    auto sym = [&](const Z& c) {
        Z r = m.red(c);
        if (r > p / 2) r -= p;
        return r;
    };
    size_t s = 1;
    while (2 * s <= modf.size()) {
        bool hit = false;
        std::vector<size_t> idx(s);
        for (size_t i = 0; i < s; ++i) idx[i] = i;
        for (;;) {
            ZP g{m.red(f.back())};
            for (size_t i : idx) g = m.mul(g, modf[i]);
            ZP gz;
            for (auto& c : g) gz.push_back(sym(c));
            gz = primitive_integer(to_q(gz));
            auto [q, r] = divmod(to_q(f), to_q(gz));
            if (r.empty()) {
                found.push_back(gz);
                f = primitive_integer(q);
                for (size_t k = s; k-- > 0;) modf.erase(modf.begin() + idx[k]);
                hit = true;
                break;
            }
            // next combination
            long k = long(s) - 1;
            while (k >= 0 && idx[k] == modf.size() - s + size_t(k)) --k;
            if (k < 0) break;
            ++idx[k];
            for (size_t j = size_t(k) + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!hit) ++s;
    }
    if (deg(f) > 0) found.push_back(f);
    return found;
}

struct Factor {
    QP p; // monic, irreducible over Q
    int mult;
};

// irreducible factorization of a nonconstant rational polynomial
inline std::vector<Factor> factor(const QP& f) {
    std::vector<Factor> out;
    auto parts = squarefree_parts(f);
    for (size_t i = 0; i < parts.size(); ++i) {
        if (deg(parts[i]) < 1) continue;
        for (auto& z : factor_squarefree(primitive_integer(parts[i]))) out.push_back({monic(to_q(z)), int(i + 1)});
    }
    std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
        if (a.p.size() != b.p.size()) return a.p.size() < b.p.size();
        for (size_t i = a.p.size(); i-- > 0;)
            if (a.p[i] != b.p[i]) return a.p[i] < b.p[i];
        return a.mult < b.mult;
    });
    return out;
}

} // namespace poly

// Faddeev-LeVerrier, low degree first, monic
template <class K> std::vector<K> charpoly(const Mat<K>& A) {
    size_t n = A.rows();
    std::vector<K> c(n + 1, K(0));
    c[n] = K(1);
    Mat<K> M(n, n);
    auto I = Mat<K>::identity(n);
    for (size_t k = 1; k <= n; ++k) {
        M = A * M + c[n - k + 1] * I;
        c[n - k] = -(A * M).trace() / K(long(k));
    }
    return c;
}

template <class K> Mat<K> eval_poly(const std::vector<K>& p, const Mat<K>& T) {
    size_t n = T.rows();
    Mat<K> r(n, n);
    auto I = Mat<K>::identity(n);
    for (size_t i = p.size(); i-- > 0;) r = r * T + p[i] * I;
    return r;
}

template <class K> Mat<K> mat_pow(Mat<K> A, int e) {
    Mat<K> r = Mat<K>::identity(A.rows());
    while (e > 0) {
        if (e & 1) r = r * A;
        e >>= 1;
        if (e) A = A * A;
    }
    return r;
}

namespace detail {

inline std::vector<Subspace<double>> primary_float(const Mat<double>& T) {
    size_t n = T.rows();
    Eigen::MatrixXd E(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) E(i, j) = T(i, j);
    Eigen::EigenSolver<Eigen::MatrixXd> es(E, false);
    std::vector<std::complex<double>> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(ev.begin(), ev.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    const double ctol = 1e-6;
    std::vector<std::pair<std::complex<double>, int>> clusters;
    std::vector<bool> used(n, false);
    for (size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        int cnt = 0;
        for (size_t j = i; j < n; ++j)
            if (!used[j] && std::abs(ev[j] - ev[i]) < ctol) {
                used[j] = true;
                ++cnt;
            }
        if (ev[i].imag() < -ctol) continue; // handled with its conjugate
        clusters.push_back({ev[i], cnt});
    }
    std::vector<Subspace<double>> out;
    for (auto& [lam, m] : clusters) {
        Eigen::MatrixXd Q;
        size_t want;
        if (std::abs(lam.imag()) < ctol) {
            Q = E - lam.real() * Eigen::MatrixXd::Identity(n, n);
            want = size_t(m);
        } else {
            Q = E * E - 2 * lam.real() * E + std::norm(lam) * Eigen::MatrixXd::Identity(n, n);
            want = 2 * size_t(m);
        }
        Eigen::MatrixXd P = Eigen::MatrixXd::Identity(n, n);
        for (int k = 0; k < m; ++k) P = P * Q;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(P, Eigen::ComputeFullV);
        auto V = svd.matrixV();
        std::vector<Vec<double>> basis;
        for (size_t k = n - want; k < n; ++k) {
            Vec<double> v(n);
            for (size_t i = 0; i < n; ++i) v[i] = std::fabs(V(i, k)) < 1e-13 ? 0.0 : V(i, k);
            basis.push_back(v);
        }
        out.emplace_back(n, basis);
    }
    return out;
}

} // namespace detail

// T-invariant subspaces ker p_i(T)^{m_i}, one per rational irreducible factor
template <class K> std::vector<Subspace<K>> primary_decomposition(const Mat<K>& T) {
    if (!T.is_square()) throw std::invalid_argument("primary_decomposition: not square");
    if (T.rows() == 0) return {};
    if constexpr (Field<K>::exact) {
        auto cp = charpoly(T);
        std::vector<Subspace<K>> out;
        for (auto& f : poly::factor(cp)) {
            auto Q = eval_poly(f.p, T);
            out.push_back(kernel(mat_pow(Q, f.mult)));
        }
        return out;
    } else {
        return detail::primary_float(T);
    }
}

} // namespace skewtor
