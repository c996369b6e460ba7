#pragma once

// Built-in examples with the values their pipelines are expected to produce.

#include "models.hpp"
#include "pipeline.hpp"

namespace skewtor {

struct Expectation {
    std::string name, value;
};

template <class K> struct CatalogEntry {
    std::string id, description;
    Input<K> data;
    std::vector<Expectation> expectations;
};

struct UnknownEntry : std::out_of_range {
    explicit UnknownEntry(const std::string& id) : std::out_of_range("unknown catalog id: " + id) {}
};

inline const std::vector<std::string>& catalog_ids() {
    static const std::vector<std::string> ids = {
        "su2-biinvariant", "s2-symmetric",  "berger-s3",   "s4-so5",         "cp1xcp1",          "su2xsu2-product",
        "s2-u1",           "s2-u1-berger",  "s2-u1m",      "s4-sp1",         "s4-so4",           "s4-whitney",
        "cp1xcp1-kpm",     "cp1xcp1-orth",  "cp1xcp1-split", "point-base-su2", "s2-hopf-pcg",     "s2-berger-pcg"};
    return ids;
}

namespace detail {

template <class K> std::vector<Subspace<K>> cp1_factors() {
    return {Subspace<K>::coordinate(4, {0, 1}), Subspace<K>::coordinate(4, {2, 3})};
}

template <class K> ParallelGStructure<K> s2_u1() {
    auto P = s2_pair<K>();
    auto S = from_symmetric_space<K>("s2-u1", P, P.k());
    S.kahler_factors = {Subspace<K>::full(2)};
    return S;
}

template <class K> ParallelGStructure<K> cp1xcp1_c(std::string id, const std::vector<std::vector<int>>& c) {
    return u1m_structure<K>(std::move(id), cp1xcp1_pair<K>(), cp1_factors<K>(), cmatrix_from_ints<K>(c));
}

// S^2 with u(1), |xi|^2 = t, Rgamma(e1,e2) = -2
template <class K> ParallelCurvatureGeometry<K> s2_pcg(std::string id, K t) {
    std::vector<std::vector<Vec<K>>> R(2, std::vector<Vec<K>>(2, Vec<K>{K(0)}));
    R[0][1] = {K(-2)};
    R[1][0] = {K(2)};
    return make_pcg<K>(std::move(id), s2_pair<K>(), abelian<K>(1), Gram<K>(Mat<K>::diag({t})), Subspace<K>(1), R);
}

} // namespace detail

template <class K> CatalogEntry<K> catalog_get(const std::string& id) {
    using namespace detail;
    auto P4 = [] { return s4_pair<K>(); };
    if (id == "su2-biinvariant")
        return {id, "SU(2) with a bi-invariant metric, torsion -1/2 [X,Y]", su2_group<K>(),
                {{"tau.zero", "false"}, {"hol.dim", "0"}, {"dec.h_dims", "[]"}, {"dec.v_dims", "[3]"}, {"decomposable", "false"}}};
    if (id == "s2-symmetric")
        return {id, "SU(2)/U(1), round S^2", s2_pair<K>(),
                {{"symmetric", "true"}, {"tau.zero", "true"}, {"hol.dim", "1"}, {"dec.h_dims", "[2]"}, {"dec.v_dims", "[]"}}};
    if (id == "berger-s3")
        return {id, "(SU(2) x R)/R, S^3 with a Berger metric; the lift of s2-u1", berger_pair<K>(),
                {{"tau.zero", "false"}, {"hol.dim", "1"}, {"dec.h_dims", "[2]"}, {"dec.v_dims", "[1]"}, {"dec.h_cap", "[1]"}, {"taum.rank", "0"}}};
    if (id == "s4-so5")
        return {id, "SO(5)/SO(4), round S^4", s4_pair<K>(),
                {{"symmetric", "true"}, {"hol.dim", "6"}, {"dec.h_dims", "[4]"}, {"dec.v_dims", "[]"}, {"dec.h_cap", "[6]"}, {"taum.rank", "0"}}};
    if (id == "cp1xcp1")
        return {id, "S^2 x S^2 as (SU(2)/U(1))^2", cp1xcp1_pair<K>(),
                {{"symmetric", "true"}, {"hol.dim", "2"}, {"dec.h_dims", "[2,2]"}, {"dec.v_dims", "[]"}, {"decomposable", "true"}}};
    if (id == "su2xsu2-product")
        return {id, "SU(2) x SU(2) bi-invariant; splits into two factors", su2xsu2_group<K>(),
                {{"hol.dim", "0"}, {"dec.v_dims", "[6]"}, {"decomposable", "true"}, {"split.dims", "[3,3]"}}};
    if (id == "s2-u1")
        return {id, "S^2 with its isotropy u(1), fibre metric equal to the Killing-type metric", s2_u1<K>(),
                {{"psi.e1.x1x2", "2"}, {"nondegenerate", "true"}, {"classify.tag", "SYMMETRIC_IDEAL"},
                 {"classify.alternatives", "[KAHLER_PRODUCT_MIX]"}, {"special.roundtrip", "false"}}};
    if (id == "s2-u1-berger")
        return {id, "s2-u1 with fibre metric halved; lifts to a Berger sphere", rescale_fibre(s2_u1<K>(), kq<K>(1, 2), id),
                {{"nondegenerate", "true"}, {"classify.tag", "SYMMETRIC_IDEAL"}, {"special.roundtrip", "true"}}};
    if (id == "s2-u1m") {
        Mat<K> one(1, 1);
        one(0, 0) = K(1);
        return {id, "u(1)-structure on S^2 from the c-matrix (1)", u1m_structure<K>(id, s2_pair<K>(), {Subspace<K>::full(2)}, one),
                {{"psi.e1.x1x2", "-1"}, {"nondegenerate", "true"}, {"classify.tag", "SYMMETRIC_IDEAL"}}};
    }
    if (id == "s4-sp1")
        return {id, "S^4 = HP^1 with one sp(1) factor of the isotropy", from_symmetric_space<K>(id, P4(), s4_sp1<K>(1)),
                {{"nondegenerate", "true"}, {"classify.tag", "QK_SP1"}, {"classify.alternatives", "[SYMMETRIC_IDEAL]"}, {"special.roundtrip", "true"}}};
    if (id == "s4-so4")
        // fibre metric restricted from so(5): the lift is SO(5) bi-invariant, flat canonical connection
        return {id, "S^4 with the full isotropy so(4)", from_symmetric_space<K>(id, P4(), P4().k()),
                {{"nondegenerate", "true"}, {"classify.tag", "SYMMETRIC_IDEAL"}, {"special.roundtrip", "false"}}};
    if (id == "s4-whitney")
        return {id, "Whitney product of the two sp(1) structures on S^4",
                whitney_product(from_symmetric_space<K>("p", P4(), s4_sp1<K>(1)), from_symmetric_space<K>("m", P4(), s4_sp1<K>(-1)), id),
                {{"nondegenerate", "true"}, {"classify.tag", "SYMMETRIC_IDEAL"}}};
    if (id == "cp1xcp1-kpm")
        return {id, "u(1)^2 on S^2 x S^2, c = ((1,1),(0,1))", cp1xcp1_c<K>(id, {{1, 1}, {0, 1}}),
                {{"nondegenerate", "true"}, {"classify.tag", "KAHLER_PRODUCT_MIX"}, {"special.roundtrip", "true"}}};
    if (id == "cp1xcp1-orth")
        return {id, "u(1)^2 on S^2 x S^2, c = ((1,1),(1,-1)); orthogonal columns decouple", cp1xcp1_c<K>(id, {{1, 1}, {1, -1}}),
                {{"nondegenerate", "false"}, {"witness.A", "[1]"}, {"witness.B", "[2]"}}};
    if (id == "cp1xcp1-split")
        return {id, "u(1)^2 on S^2 x S^2, c = ((1,0),(0,1))", cp1xcp1_c<K>(id, {{1, 0}, {0, 1}}),
                {{"nondegenerate", "false"}, {"witness.A", "[1]"}, {"witness.B", "[2]"}, {"witness.dims", "[1,1]"}}};
    if (id == "point-base-su2")
        return {id, "su(2) over a point: the lift is the group itself",
                make_pcg<K>(id, point_pair<K>(), su2<K>(), Gram<K>::identity(3), Subspace<K>(3), {}),
                {{"lift.dims", "[0,3]"}, {"lift.tau_zero", "false"}, {"roundtrip.recovers", "true"}}};
    if (id == "s2-hopf-pcg")
        return {id, "S^2 with u(1), |xi|^2 = 1; the lift is the flat-holonomy round S^3", s2_pcg<K>(id, K(1)),
                {{"lift.dims", "[2,1]"}, {"roundtrip.recovers", "false"}}};
    if (id == "s2-berger-pcg")
        return {id, "S^2 with u(1), |xi|^2 = 1/2; the lift is a Berger sphere", s2_pcg<K>(id, kq<K>(1, 2)),
                {{"lift.dims", "[2,1]"}, {"roundtrip.recovers", "true"}}};
    throw UnknownEntry(id);
}

// every pipeline that applies to the entry's kind, then the expectations
template <class K> Outcome run_entry(const CatalogEntry<K>& e) {
    Outcome o;
    auto take = [&](const Outcome& x) {
        o.report.append(x.report);
        for (auto& kv : x.values) o.set(kv.first, kv.second);
    };
    try {
        if (auto* P = std::get_if<ReductivePair<K>>(&e.data)) {
            take(verify_pair(*P));
            if (o.report.ok()) take(decompose_pair(*P));
        } else if (auto* S = std::get_if<ParallelGStructure<K>>(&e.data)) {
            take(gstructure_pipeline(*S, false));
        } else {
            take(lift_pcg(std::get<ParallelCurvatureGeometry<K>>(e.data), false));
        }
    } catch (const std::exception& ex) {
        o.report.add("pipeline", false, ex.what());
    }
    for (auto& x : e.expectations) {
        auto got = o.value(x.name);
        bool ok = got && *got == x.value;
        o.report.add("expect." + x.name, ok, ok ? "" : "expected " + x.value + ", got " + (got ? *got : std::string("nothing")));
    }
    o.report.id = e.id;
    return o;
}

} // namespace skewtor
