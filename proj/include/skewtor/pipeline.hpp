#pragma once

// The module pipelines the front end runs, with the scalar values that
// catalog expectations are stated against.

#include "gstruct.hpp"

#include <map>
#include <variant>

namespace skewtor {

struct Outcome {
    Report report;
    std::vector<std::pair<std::string, std::string>> values; // in computation order

    void set(const std::string& k, const std::string& v) {
        for (auto& kv : values)
            if (kv.first == k) {
                kv.second = v;
                return;
            }
        values.emplace_back(k, v);
    }
    const std::string* value(const std::string& k) const {
        for (auto& kv : values)
            if (kv.first == k) return &kv.second;
        return nullptr;
    }
};

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

inline std::string list_str(const std::vector<size_t>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

// ------------------------------------------------------------ reductive pairs

template <class K> Outcome verify_pair(const ReductivePair<K>& P) {
    Outcome o;
    K jd = jacobi_defect(P.g());
    o.report.add("jacobi", is_zero(jd), is_zero(jd) ? "" : Field<K>::str(jd));
    auto nw = natural_reductivity_witness(P);
    o.report.add("natural_reductivity", !nw, nw ? idx_str({nw->x, nw->y, nw->z}) : "");
    o.set("symmetric", bool_str(P.symmetric()));
    if (nw) return o;
    auto M = model_from_pair(P);
    auto cr = check_rgt(M);
    auto wit = [](const std::optional<Witness>& w) { return w ? idx_str(w->idx) + " = " + w->value : std::string(); };
    o.report.add("rgt.antisym12", !cr.antisym12, wit(cr.antisym12));
    o.report.add("rgt.antisym34", !cr.antisym34, wit(cr.antisym34));
    o.report.add("rgt.pair_symmetry", !cr.pair, wit(cr.pair));
    o.report.add("rgt.bianchi", !cr.bianchi, wit(cr.bianchi));
    o.report.add("rgt.expansion", !cr.expansion, wit(cr.expansion));
    o.report.add("rtau.pair_symmetry", pair_symmetry_check(M.Rtau));
    o.report.add("rtau.in_isotropy", curvature_in_isotropy(P, M.Rtau));
    auto hol = holonomy_algebra(M.Rtau, M.g);
    o.report.add("tau.parallel", parallelism_check(M.tau, hol));
    o.report.add("rtau.parallel", parallelism_check(M.Rtau, hol));
    o.set("tau.zero", bool_str(M.tau.is_zero()));
    o.set("hol.dim", std::to_string(hol.size()));
    return o;
}

template <class K> Outcome decompose_pair(const ReductivePair<K>& P) {
    Outcome o;
    if (auto nw = natural_reductivity_witness(P)) {
        o.report.add("natural_reductivity", false, idx_str({nw->x, nw->y, nw->z}));
        return o;
    }
    auto M = model_from_pair(P);
    auto hol = holonomy_algebra(M.Rtau, M.g);
    o.set("hol.dim", std::to_string(hol.size()));
    StandardDecomposition<K> d;
    try {
        d = standard_decomposition(hol, M.g);
    } catch (const std::runtime_error& ex) {
        o.report.add_undecided("decomposition", ex.what());
        return o;
    }
    std::vector<size_t> hd, vd;
    for (auto& b : d.h_blocks) hd.push_back(b.dim());
    for (auto& b : d.v_blocks) vd.push_back(b.dim());
    o.set("dec.h_dims", list_str(hd));
    o.set("dec.v_dims", list_str(vd));
    o.set("dec.h_cap", list_str(d.h_cap));
    o.set("dec.H", std::to_string(d.H.dim()));
    o.set("dec.V", std::to_string(d.V.dim()));
    for (auto& b : d.h_blocks) {
        bool inv = true;
        for (auto& A : hol) inv = inv && invariant_under(b, A);
        o.report.add("dec.block_invariant", inv);
        if (!inv) break;
    }
    auto ts = torsion_split(M.tau, d);
    o.report.add("tors.forbidden_residual", ts.forbidden.is_zero());
    size_t tr = taum_invariant_rank(d);
    o.set("taum.rank", std::to_string(tr));
    o.report.add("taum.rank_zero", tr == 0, tr ? std::to_string(tr) : "");
    o.report.add("tauv_dot_tauh", tauv_dot_tauh_check(M.tau, d));
    auto sp = decomposability_test(M.tau, d);
    o.set("decomposable", bool_str(sp.has_value()));
    if (sp) {
        o.set("split.dims", list_str({sp->first.dim(), sp->second.dim()}));
        o.report.add("split.consistent", split_is_consistent(M, d, *sp));
    }
    if (d.V.dim() > 0) {
        o.report.add("vertical_curvature_invariance", vertical_curvature_invariance(M, d));
        try {
            auto A = build_lifted_algebra(extract_lift_constants(M, d), M.g);
            K jd = jacobi_defect(A.alg);
            o.report.add("lifted_algebra.jacobi", is_zero(jd), is_zero(jd) ? "" : Field<K>::str(jd));
            o.report.add("lifted_algebra.natr", lifted_natr(A));
            o.set("lifted_algebra.dim", std::to_string(A.alg.dim()));
        } catch (const JacobiViolation& ex) {
            o.report.add("lifted_algebra.jacobi", false, ex.what());
        }
    }
    return o;
}

// ------------------------------------------------------------ geometries with parallel curvature

template <class K> Outcome lift_pcg(const ParallelCurvatureGeometry<K>& G, bool with_roundtrip_checks) {
    Outcome o;
    o.report.append(pgwt_axioms_check(G));
    if (!o.report.ok()) return o;
    LiftedGeometry<K> L;
    try {
        L = inverse_construct(G);
    } catch (const std::exception& ex) {
        o.report.add("lift.construct", false, ex.what());
        return o;
    }
    o.report.append(verify_parallel_torsion(L), "lift.");
    o.set("lift.dim", std::to_string(L.dim()));
    o.set("lift.dims", list_str({L.dN, L.dv}));
    o.set("lift.tau_zero", bool_str(L.tau.is_zero()));
    auto rt = round_trip(L);
    if (with_roundtrip_checks) o.report.append(rt.report);
    else o.set("roundtrip.recovers", bool_str(rt.report.ok()));
    return o;
}

// ------------------------------------------------------------ parallel g-structures

template <class K> Outcome gstructure_pipeline(const ParallelGStructure<K>& S, bool with_special_checks) {
    Outcome o;
    o.report.append(axioms_check(S));
    if (S.dN() >= 2 && S.dg() >= 1) o.set("psi.e1.x1x2", Field<K>::str(S.psi[0](0, 1)));
    auto nd = nondegeneracy_test(S);
    o.set("nondegenerate", bool_str(nd.nondegenerate));
    if (nd.nondegenerate) o.report.add("nondegeneracy_test", true, "", "nondegenerate (" + nd.method + ")");
    if (!nd.nondegenerate) {
        auto plus1 = [](std::vector<size_t> v) {
            for (auto& x : v) ++x;
            return v;
        };
        o.set("witness.A", list_str(plus1(nd.A)));
        o.set("witness.B", list_str(plus1(nd.B)));
        o.set("witness.dims", list_str({nd.V1.dim(), nd.V2.dim()}));
        o.report.add("nondegeneracy_test", true, "",
                     "degenerate, witness A=" + *o.value("witness.A") + " B=" + *o.value("witness.B") + " dim V1,V2=" + *o.value("witness.dims"));
        return o;
    }
    auto c = classify(S);
    o.set("classify.tag", case_name(c.tag));
    std::string alts = "[";
    for (size_t i = 0; i < c.alternatives.size(); ++i) alts += std::string(i ? "," : "") + case_name(c.alternatives[i]);
    o.set("classify.alternatives", alts + "]");
    o.report.add("classify.recognized", c.tag != CaseTag::UNRECOGNIZED, c.tag == CaseTag::UNRECOGNIZED ? c.notes.front() : "");
    if (S.symmetric_base) {
        auto sr = special_roundtrip(S);
        if (with_special_checks) o.report.append(sr);
        else o.set("special.roundtrip", bool_str(sr.ok()));
    }
    return o;
}

// ------------------------------------------------------------ inputs

template <class K>
using Input = std::variant<ReductivePair<K>, ParallelGStructure<K>, ParallelCurvatureGeometry<K>>;

template <class K> const char* input_kind(const Input<K>& in) {
    switch (in.index()) {
    case 0: return "reductive_pair";
    case 1: return "gstructure";
    default: return "pcg";
    }
}

} // namespace skewtor
