#pragma once

// Splitting an orthogonal representation into irreducible pieces.
// Shared by the ideal decomposition (adjoint action) and by holonomy.

#include "poly.hpp"

namespace skewtor {

template <class K> struct IrreducibleSplit {
    Subspace<K> trivial;                 // joint kernel of the generators
    std::vector<Subspace<K>> blocks;     // irreducible, g-orthogonal, nontrivial action
    std::vector<size_t> undecided;       // indices into blocks we could not certify
};

template <class K> Subspace<K> joint_kernel(const std::vector<Mat<K>>& gens, size_t n) {
    if (gens.empty()) return Subspace<K>::full(n);
    std::vector<Vec<K>> rows;
    for (auto& A : gens)
        for (size_t i = 0; i < n; ++i) rows.push_back(A.row(i));
    return kernel(Mat<K>::from_rows(rows, n));
}

template <class K> std::vector<Mat<K>> restrict_all(const std::vector<Mat<K>>& gens, const Subspace<K>& S) {
    std::vector<Mat<K>> out;
    for (auto& A : gens) {
        auto r = restrict_endo(A, S);
        if (!r) throw std::logic_error("restrict_all: subspace not invariant");
        out.push_back(*r);
    }
    return out;
}

template <class K> bool is_irreducible(const std::vector<Mat<K>>& gens, const Subspace<K>& S, const Gram<K>& g) {
    if (S.dim() == 0) return false;
    return symmetric_commutant(restrict_all(gens, S), g.restrict(S)).dim() == 1;
}

namespace detail {

template <class K>
void split_rec(const std::vector<Mat<K>>& gens, const Gram<K>& g, const Subspace<K>& S, IrreducibleSplit<K>& out) {
    if (S.dim() == 0) return;
    auto rg = restrict_all(gens, S);
    auto gs = g.restrict(S);
    auto C = symmetric_commutant(rg, gs);
    size_t d = S.dim();
    if (C.dim() <= 1) {
        out.blocks.push_back(S);
        return;
    }
    std::vector<Mat<K>> cands;
    for (int pass = 0; pass < 2; ++pass) {
        Vec<K> x(d * d, K(0));
        for (size_t i = 0; i < C.dim(); ++i) {
            long w = long(i) + 1;
            axpy(x, kq<K>(pass == 0 ? w : w * w), C[i]);
        }
        cands.push_back(unflatten(x, d));
    }
    for (size_t i = 0; i < C.dim(); ++i) cands.push_back(unflatten(C[i], d));
    auto B = S.matrix();
    for (auto& X : cands) {
        auto parts = primary_decomposition(X);
        if (parts.size() < 2) continue;
        for (auto& p : parts) {
            std::vector<Vec<K>> amb;
            for (auto& v : p.basis()) amb.push_back(B * v);
            split_rec(gens, g, Subspace<K>(S.ambient(), amb), out);
        }
        return;
    }
    out.undecided.push_back(out.blocks.size());
    out.blocks.push_back(S);
}

} // namespace detail

// gens must be g-skew
template <class K> IrreducibleSplit<K> split_irreducible(const std::vector<Mat<K>>& gens, const Gram<K>& g) {
    IrreducibleSplit<K> out;
    size_t n = g.dim();
    out.trivial = joint_kernel(gens, n);
    detail::split_rec(gens, g, orth_complement(out.trivial, g), out);
    return out;
}

} // namespace skewtor
