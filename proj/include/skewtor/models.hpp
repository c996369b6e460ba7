#pragma once

// Concrete reductive pairs with rational structure constants.

#include "homogeneous.hpp"

namespace skewtor {

// Lie algebra spanned by the given (closed) matrix basis
template <class K> LieAlgebra<K> matrix_lie_algebra(const std::vector<Mat<K>>& mats, std::vector<std::string> labels = {}) {
    size_t d = mats.size();
    if (d == 0) return LieAlgebra<K>(0);
    size_t N = mats[0].rows() * mats[0].cols();
    std::vector<Vec<K>> fl;
    for (auto& m : mats) fl.push_back(flatten(m));
    Subspace<K> S(N, fl);
    LieAlgebra<K> L(d, std::move(labels));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = i + 1; j < d; ++j) {
            auto c = coords(S, flatten(commutator(mats[i], mats[j])));
            if (!c) throw std::invalid_argument("matrix_lie_algebra: basis not closed under commutators");
            L.set_bracket(i, j, *c);
        }
    return L;
}

// E_ij = e_i e_j^T - e_j e_i^T in so(n), indices 0-based, i<j
template <class K> Mat<K> so_unit(size_t n, size_t i, size_t j) {
    Mat<K> m(n, n);
    m(i, j) = K(1);
    m(j, i) = K(-1);
    return m;
}

template <class K> ReductivePair<K> su2_group() { return group_pair(su2<K>(), Gram<K>::identity(3)); }

// SU(2)/U(1): k = e3, m = e1,e2
template <class K> ReductivePair<K> s2_pair() {
    return ReductivePair<K>(su2<K>(), Subspace<K>::coordinate(3, {2}), Subspace<K>::coordinate(3, {0, 1}),
                            Gram<K>::identity(2), Gram<K>::identity(3));
}

// su2 + R f; k = e3 - f, m = (e1, e2, e3 + f), |e3+f|^2 = 2
template <class K> ReductivePair<K> berger_pair() {
    auto g = direct_sum(su2<K>(), abelian<K>(1));
    Subspace<K> k(4, {Vec<K>{0, 0, 1, -1}});
    Subspace<K> m(4, {unit<K>(4, 0), unit<K>(4, 1), Vec<K>{0, 0, 1, 1}});
    return ReductivePair<K>(g, k, m, Gram<K>(Mat<K>::diag({K(1), K(1), K(2)})));
}

template <class K> std::vector<std::pair<size_t, size_t>> so_index_pairs(size_t n) {
    std::vector<std::pair<size_t, size_t>> out;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) out.push_back({i, j});
    return out;
}

// so(5) in the basis E_ij (i<j, lexicographic); Gram -1/2 tr
template <class K> LieAlgebra<K> so5() {
    std::vector<Mat<K>> mats;
    std::vector<std::string> labels;
    for (auto [i, j] : so_index_pairs<K>(5)) {
        mats.push_back(so_unit<K>(5, i, j));
        labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    }
    return matrix_lie_algebra(mats, labels);
}

template <class K> size_t so5_index(size_t i, size_t j) {
    auto p = so_index_pairs<K>(5);
    for (size_t a = 0; a < p.size(); ++a)
        if (p[a].first == i && p[a].second == j) return a;
    throw std::out_of_range("so5_index");
}

// SO(5)/SO(4) = S^4; m = E_15..E_45
template <class K> ReductivePair<K> s4_pair() {
    std::vector<size_t> kidx, midx;
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = i + 1; j < 4; ++j) kidx.push_back(so5_index<K>(i, j));
    for (size_t i = 0; i < 4; ++i) midx.push_back(so5_index<K>(i, 4));
    return ReductivePair<K>(so5<K>(), Subspace<K>::coordinate(10, kidx), Subspace<K>::coordinate(10, midx),
                            Gram<K>::identity(4), Gram<K>::identity(10));
}

// sp(1)_+ (sign = +1) or sp(1)_- inside so(4) in so(5) coordinates:
// E12 +- E34, E13 -+ E24, E14 +- E23
template <class K> Subspace<K> s4_sp1(int sign) {
    K s(sign);
    auto v = [&](size_t a, size_t b, size_t c, size_t d, K coef) {
        Vec<K> x(10, K(0));
        x[so5_index<K>(a, b)] = K(1);
        x[so5_index<K>(c, d)] = coef;
        return x;
    };
    return Subspace<K>(10, {v(0, 1, 2, 3, s), v(0, 2, 1, 3, -s), v(0, 3, 1, 2, s)});
}

// (SU(2)/U(1))^2; g = su2 + su2, k = (e3, e3'), m = (e1, e2, e1', e2')
template <class K> ReductivePair<K> cp1xcp1_pair() {
    auto g = direct_sum(su2<K>(), su2<K>());
    return ReductivePair<K>(g, Subspace<K>::coordinate(6, {2, 5}), Subspace<K>::coordinate(6, {0, 1, 3, 4}),
                            Gram<K>::identity(4), Gram<K>::identity(6));
}

template <class K> ReductivePair<K> su2xsu2_group() {
    return group_pair(direct_sum(su2<K>(), su2<K>()), Gram<K>::identity(6));
}

template <class K> ReductivePair<K> point_pair() {
    return ReductivePair<K>(LieAlgebra<K>(0), Subspace<K>(0), Subspace<K>(0), Gram<K>(Mat<K>(0, 0)), Gram<K>(Mat<K>(0, 0)));
}

} // namespace skewtor
