#pragma once

#include "forms.hpp"
#include "lie.hpp"

namespace skewtor {

// A metric connection with skew torsion, frozen at one point:
//   gram, tau (3-form), Rtau(X,Y,Z,W) = g(R(X,Y)Z, W)
// `nomizu` holds the connection endomorphisms Lambda(e_i) of an invariant
// connection when the point is the origin of a homogeneous model whose
// connection is not the canonical one; it is empty for canonical connections.
template <class K> struct TorsionModel {
    Gram<K> g;
    Tensor<K> tau;
    Tensor<K> Rtau;
    std::vector<Mat<K>> nomizu;
    size_t dim() const { return g.dim(); }
};

template <class K> struct NatRedSpace {
    ReductivePair<K> pair;
    Tensor<K> tau;
};

template <class K> Tensor<K> canonical_torsion(const ReductivePair<K>& P) {
    if (auto w = natural_reductivity_witness(P))
        throw std::invalid_argument("canonical_torsion: pair is not naturally reductive (X=" + std::to_string(w->x) +
                                    ", Y=" + std::to_string(w->y) + ", Z=" + std::to_string(w->z) + ")");
    size_t d = P.dim_m();
    Tensor<K> t(d, 3);
    for (size_t x = 0; x < d; ++x)
        for (size_t y = 0; y < d; ++y) {
            auto b = P.bracket_m(unit<K>(d, x), unit<K>(d, y));
            auto gb = P.gram().matrix() * b;
            for (size_t z = 0; z < d; ++z) t(x, y, z) = kq<K>(-1, 2) * gb[z];
        }
    return t;
}

template <class K> NatRedSpace<K> make_natred(const ReductivePair<K>& P) { return {P, canonical_torsion(P)}; }

// R(X,Y,Z,W) = -<[[X,Y]_k, Z], W>
template <class K> Tensor<K> canonical_curvature(const ReductivePair<K>& P) {
    size_t d = P.dim_m();
    Tensor<K> R(d, 4);
    const auto& G = P.gram().matrix();
    for (size_t x = 0; x < d; ++x)
        for (size_t y = 0; y < d; ++y) {
            auto a = P.bracket_k(unit<K>(d, x), unit<K>(d, y));
            if (is_zero(a)) continue;
            auto M = G * P.ad_k_vec(a); // (G A)_{w z} = g(A e_z, e_w)
            for (size_t z = 0; z < d; ++z)
                for (size_t w = 0; w < d; ++w) R(x, y, z, w) = -M(w, z);
        }
    return R;
}

template <class K> std::vector<Mat<K>> contractions(const Tensor<K>& tau, const Gram<K>& g) {
    std::vector<Mat<K>> out;
    for (size_t i = 0; i < tau.dim(); ++i) out.push_back(three_form_contract(tau, unit<K>(tau.dim(), i), g));
    return out;
}

template <class K> Mat<K> combo(const std::vector<Mat<K>>& Ms, const Vec<K>& c, size_t n) {
    Mat<K> out(n, n);
    for (size_t i = 0; i < Ms.size(); ++i)
        if (!is_zero(c[i])) out += c[i] * Ms[i];
    return out;
}

// 4-tensor g(E_{xy} e_z, e_w) from endomorphisms E_{xy}
template <class K> void put_endo(Tensor<K>& R, size_t x, size_t y, const Mat<K>& E, const Gram<K>& g) {
    auto M = g.matrix() * E;
    size_t n = R.dim();
    for (size_t z = 0; z < n; ++z)
        for (size_t w = 0; w < n; ++w) R(x, y, z, w) = M(w, z);
}

// endomorphism R(X,Y) from the 4-tensor
template <class K> Mat<K> curvature_endo(const Tensor<K>& R, const Vec<K>& x, const Vec<K>& y, const Gram<K>& g) {
    size_t n = R.dim();
    Tensor<K> w(n, 2);
    for (size_t z = 0; z < n; ++z)
        for (size_t v = 0; v < n; ++v) w(z, v) = R.eval({x, y, unit<K>(n, z), unit<K>(n, v)});
    return two_form_to_endo(w, g);
}

// (tau^2)_{X,Y} Z = [tau_X, tau_Y] Z - tau_{tau_X Y} Z + tau_{tau_Y X} Z
template <class K> Tensor<K> tau_squared(const Tensor<K>& tau, const Gram<K>& g) {
    size_t n = tau.dim();
    auto T = contractions(tau, g);
    Tensor<K> R(n, 4);
    for (size_t x = 0; x < n; ++x)
        for (size_t y = 0; y < n; ++y) {
            auto txy = T[x] * unit<K>(n, y);
            auto tyx = T[y] * unit<K>(n, x);
            Mat<K> E = commutator(T[x], T[y]) - combo(T, txy, n) + combo(T, tyx, n);
            put_endo(R, x, y, E, g);
        }
    return R;
}

template <class K> Tensor<K> riemannian_curvature_via_rgt(const TorsionModel<K>& M) {
    return M.Rtau + tau_squared(M.tau, M.g);
}

// R^tau(X,Y,Z,W) - g(tau_Y Z, tau_X W) + g(tau_X Z, tau_Y W) - 2 g(tau_X Y, tau_Z W)
template <class K> Tensor<K> symm_expansion(const Tensor<K>& Rtau, const Tensor<K>& tau, const Gram<K>& g) {
    size_t n = tau.dim();
    std::vector<std::vector<Vec<K>>> t(n, std::vector<Vec<K>>(n));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) t[a][b] = tau_xy(tau, unit<K>(n, a), unit<K>(n, b), g);
    Tensor<K> R = Rtau;
    for (size_t x = 0; x < n; ++x)
        for (size_t y = 0; y < n; ++y)
            for (size_t z = 0; z < n; ++z)
                for (size_t w = 0; w < n; ++w)
                    R(x, y, z, w) += -g(t[y][z], t[x][w]) + g(t[x][z], t[y][w]) - K(2) * g(t[x][y], t[z][w]);
    return R;
}

template <class K> TorsionModel<K> model_from_pair(const ReductivePair<K>& P) {
    return {P.gram(), canonical_torsion(P), canonical_curvature(P), {}};
}

// ------------------------------------------------------------ identities

struct Witness {
    std::vector<size_t> idx;
    std::string value;
};

template <class K> std::optional<Witness> antisym12_witness(const Tensor<K>& R) {
    size_t n = R.dim();
    for (size_t x = 0; x < n; ++x)
        for (size_t y = 0; y < n; ++y)
            for (size_t z = 0; z < n; ++z)
                for (size_t w = 0; w < n; ++w) {
                    K v = R(x, y, z, w) + R(y, x, z, w);
                    if (!is_zero(v)) return Witness{{x, y, z, w}, Field<K>::str(v)};
                }
    return std::nullopt;
}
template <class K> std::optional<Witness> antisym34_witness(const Tensor<K>& R) {
    size_t n = R.dim();
    for (size_t x = 0; x < n; ++x)
        for (size_t y = 0; y < n; ++y)
            for (size_t z = 0; z < n; ++z)
                for (size_t w = 0; w < n; ++w) {
                    K v = R(x, y, z, w) + R(x, y, w, z);
                    if (!is_zero(v)) return Witness{{x, y, z, w}, Field<K>::str(v)};
                }
    return std::nullopt;
}
template <class K> std::optional<Witness> pair_symmetry_witness(const Tensor<K>& R) {
    size_t n = R.dim();
    for (size_t x = 0; x < n; ++x)
        for (size_t y = 0; y < n; ++y)
            for (size_t z = 0; z < n; ++z)
                for (size_t w = 0; w < n; ++w) {
                    K v = R(x, y, z, w) - R(z, w, x, y);
                    if (!is_zero(v)) return Witness{{x, y, z, w}, Field<K>::str(v)};
                }
    return std::nullopt;
}
template <class K> std::optional<Witness> bianchi_witness(const Tensor<K>& R) {
    size_t n = R.dim();
    for (size_t x = 0; x < n; ++x)
        for (size_t y = 0; y < n; ++y)
            for (size_t z = 0; z < n; ++z)
                for (size_t w = 0; w < n; ++w) {
                    K v = R(x, y, z, w) + R(y, z, x, w) + R(z, x, y, w);
                    if (!is_zero(v)) return Witness{{x, y, z, w}, Field<K>::str(v)};
                }
    return std::nullopt;
}
template <class K> bool pair_symmetry_check(const Tensor<K>& R) { return !pair_symmetry_witness(R); }

template <class K> struct CurvatureReport {
    std::optional<Witness> antisym12, antisym34, pair, bianchi, expansion;
    bool ok() const { return !antisym12 && !antisym34 && !pair && !bianchi && !expansion; }
};

template <class K> CurvatureReport<K> check_rgt(const TorsionModel<K>& M) {
    CurvatureReport<K> r;
    auto Rg = riemannian_curvature_via_rgt(M);
    r.antisym12 = antisym12_witness(Rg);
    r.antisym34 = antisym34_witness(Rg);
    r.pair = pair_symmetry_witness(Rg);
    r.bianchi = bianchi_witness(Rg);
    auto diff = Rg - symm_expansion(M.Rtau, M.tau, M.g);
    if (auto f = diff.first_nonzero()) r.expansion = Witness{*f, Field<K>::str(diff[*f])};
    return r;
}

template <class K> bool parallelism_check(const Tensor<K>& T, const std::vector<Mat<K>>& hol) {
    for (auto& A : hol)
        if (!derivation_action(A, T).is_zero()) return false;
    return true;
}

// R^tau(X,Y) in span{ad_A|m : A in k}
template <class K> bool curvature_in_isotropy(const ReductivePair<K>& P, const Tensor<K>& R) {
    size_t d = P.dim_m();
    std::vector<Vec<K>> ads;
    for (size_t a = 0; a < P.dim_k(); ++a) ads.push_back(flatten(P.ad_k(a)));
    auto S = span(d * d, ads);
    for (size_t x = 0; x < d; ++x)
        for (size_t y = x + 1; y < d; ++y) {
            auto E = curvature_endo(R, unit<K>(d, x), unit<K>(d, y), P.gram());
            if (!contains(S, flatten(E))) return false;
        }
    return true;
}

} // namespace skewtor
