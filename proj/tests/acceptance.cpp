// One line per acceptance criterion; exit status 0 iff all pass.
// usage: acceptance <path to skewtor cli>

#include <skewtor/io.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <unistd.h>

using namespace skewtor;
using Q = mpq_class;

namespace {

struct Verdict {
    bool ok;
    std::string detail;
};

std::vector<std::pair<std::string, ReductivePair<Q>>> natred_entries() {
    std::vector<std::pair<std::string, ReductivePair<Q>>> out;
    for (auto& id : catalog_ids()) {
        auto e = catalog_get<Q>(id);
        if (auto* P = std::get_if<ReductivePair<Q>>(&e.data)) out.emplace_back(id, *P);
    }
    return out;
}

std::vector<ParallelGStructure<Q>> catalog_structures() {
    std::vector<ParallelGStructure<Q>> out;
    for (auto& id : catalog_ids()) {
        auto e = catalog_get<Q>(id);
        if (auto* S = std::get_if<ParallelGStructure<Q>>(&e.data)) out.push_back(*S);
    }
    return out;
}

Verdict c1() {
    size_t n = 0;
    for (auto& [id, P] : natred_entries()) {
        auto M = model_from_pair(P);
        if (!check_rgt(M).ok()) return {false, id + " violates an identity"};
        ++n;
    }
    std::vector<TorsionModel<Q>> muts;
    {
        auto M = model_from_pair(berger_pair<Q>());
        M.Rtau(0, 1, 0, 2) += 1;
        muts.push_back(M);
    }
    {
        auto M = model_from_pair(cp1xcp1_pair<Q>());
        for (auto [a, b, c, d, v] : std::vector<std::tuple<int, int, int, int, int>>{
                 {0, 1, 2, 3, 1}, {1, 0, 3, 2, 1}, {1, 0, 2, 3, -1}, {0, 1, 3, 2, -1},
                 {2, 3, 0, 1, 1}, {3, 2, 1, 0, 1}, {3, 2, 0, 1, -1}, {2, 3, 1, 0, -1}})
            M.Rtau(a, b, c, d) += v;
        muts.push_back(M);
    }
    {
        auto M = model_from_pair(su2_group<Q>());
        M.tau(0, 1, 2) = -2;
        muts.push_back(M);
    }
    {
        auto M = model_from_pair(s2_pair<Q>());
        M.Rtau(0, 1, 0, 1) = 4;
        muts.push_back(M);
    }
    size_t caught = 0;
    for (auto& M : muts) caught += !check_rgt(M).ok();
    return {caught == muts.size(), std::to_string(n) + " spaces exact, " + std::to_string(caught) + "/" + std::to_string(muts.size()) + " mutations rejected"};
}

Verdict c2() {
    size_t n = 0;
    for (auto& [id, P] : natred_entries()) {
        auto M = model_from_pair(P);
        if (!parallelism_check(M.tau, holonomy_algebra(M.Rtau, M.g))) return {false, id};
        ++n;
    }
    // lifted spaces too, with their own connection
    for (auto& id : catalog_ids()) {
        auto e = catalog_get<Q>(id);
        if (auto* G = std::get_if<ParallelCurvatureGeometry<Q>>(&e.data)) {
            auto L = inverse_construct(*G);
            auto hol = holonomy_algebra(L.model.Rtau, L.model.g, L.model.nomizu);
            if (!parallelism_check(L.model.tau, hol)) return {false, id};
            ++n;
        }
    }
    return {true, std::to_string(n) + " torsions annihilated by their holonomy"};
}

Verdict c3() {
    auto dec = [](const ReductivePair<Q>& P) {
        auto M = model_from_pair(P);
        return standard_decomposition(holonomy_algebra(M.Rtau, M.g), M.g);
    };
    auto b = dec(berger_pair<Q>());
    if (b.H.dim() != 2 || b.V.dim() != 1) return {false, "berger-s3 H/V"};
    auto s = dec(su2_group<Q>());
    if (s.H.dim() != 0 || s.V.dim() != 3) return {false, "su2-biinvariant H/V"};
    auto f = dec(s4_pair<Q>());
    if (f.h_blocks.size() != 1 || f.h_blocks[0].dim() != 4 || f.V.dim() != 0) return {false, "s4-so5 blocks"};
    size_t red = 0;
    for (auto& [id, P] : natred_entries()) {
        auto d = dec(P);
        if (d.h_blocks.size() + d.v_blocks.size() < 2 && d.V.dim() == 0) continue;
        auto M = model_from_pair(P);
        if (!torsion_split(M.tau, d).forbidden.is_zero()) return {false, id + " tors residual"};
        if (taum_invariant_rank(d) != 0) return {false, id + " taum rank"};
        ++red;
    }
    return {true, "berger 2/1, su2 0/3, s4 one block of 4; residual 0 and taum rank 0 on " + std::to_string(red) + " reducible entries"};
}

Verdict c4() {
    size_t n = 0;
    for (auto& [id, P] : natred_entries()) {
        auto M = model_from_pair(P);
        auto d = standard_decomposition(holonomy_algebra(M.Rtau, M.g), M.g);
        if (d.V.dim() == 0) continue;
        auto A = build_lifted_algebra(extract_lift_constants(M, d), M.g);
        if (!is_zero(jacobi_defect(A.alg)) || !lifted_natr(A)) return {false, id};
        ++n;
    }
    for (auto& id : catalog_ids()) {
        auto e = catalog_get<Q>(id);
        if (auto* G = std::get_if<ParallelCurvatureGeometry<Q>>(&e.data)) {
            auto L = inverse_construct(*G);
            auto hol = holonomy_algebra(L.model.Rtau, L.model.g, L.model.nomizu);
            auto d = standard_decomposition(hol, L.model.g);
            if (d.V.dim() == 0) continue;
            auto A = build_lifted_algebra(extract_lift_constants(L.model, d), L.model.g);
            if (!is_zero(jacobi_defect(A.alg)) || !lifted_natr(A)) return {false, id};
            ++n;
        }
    }
    size_t thrown = 0;
    {
        LiftConstants<Q> m;
        m.T = Tensor<Q>(5, 3);
        set_alt(m.T, {0, 1, 2}, Q(1));
        set_alt(m.T, {0, 3, 4}, Q(1));
        m.V = Subspace<Q>::full(5);
        m.R1.assign(5, std::vector<Vec<Q>>(5));
        try {
            build_lifted_algebra(m, Gram<Q>::identity(5));
        } catch (const JacobiViolation&) {
            ++thrown;
        }
    }
    {
        LiftConstants<Q> m;
        m.T = Tensor<Q>(3, 3);
        set_alt(m.T, {0, 1, 2}, Q(1));
        m.V = Subspace<Q>::full(3);
        m.hol = {Mat<Q>::diag({1, -1, 0})};
        m.R1.assign(3, std::vector<Vec<Q>>(3, Vec<Q>{0}));
        try {
            build_lifted_algebra(m, Gram<Q>::identity(3));
        } catch (const JacobiViolation&) {
            ++thrown;
        }
    }
    return {thrown == 2, std::to_string(n) + " lifted algebras exact, " + std::to_string(thrown) + "/2 mutations throw JacobiViolation"};
}

Verdict c5() {
    for (auto id : {"s2-berger-pcg", "s2-hopf-pcg", "point-base-su2"}) {
        auto G = std::get<ParallelCurvatureGeometry<Q>>(catalog_get<Q>(id).data);
        auto ax = pgwt_axioms_check(G);
        if (!ax.ok() || !ax.find("iii.s2") || !ax.find("s1")) return {false, std::string(id) + " " + ax.first_failure()};
        auto r = verify_parallel_torsion(inverse_construct(G));
        if (!r.ok()) return {false, std::string(id) + " " + r.first_failure()};
    }
    return {true, "S2 u(1) at |xi|^2 = 1 and 1/2, point-base su(2): s1, s2 and all frame identities exact"};
}

Verdict c6() {
    auto S = std::get<ParallelGStructure<Q>>(catalog_get<Q>("s2-u1-berger").data);
    auto r = special_roundtrip(S);
    if (!r.ok()) return {false, r.first_failure()};
    auto rt = round_trip(inverse_construct(to_pcg(S)));
    if (!rt.recovered) return {false, "nothing recovered"};
    auto& G = *rt.recovered;
    bool same = G.Rgamma[0][1] == S.Rgamma[0][1] && G.gram.matrix() == S.gram.matrix() && G.g.dim() == 1;
    return {same, "S2 u(1) with |xi|^2 = 1/2: g, gram, Rgamma recovered; tau_h = 0, vertical directions parallel"};
}

Verdict c7() {
    auto t0 = std::chrono::steady_clock::now();
    auto sample = cmatrix_sample(3, 2);
    size_t agree = 0;
    for (auto& c : sample) {
        auto M = cmatrix_from_ints<Q>(c);
        agree += cdec_fast(M).nondegenerate == cdec_brute(M);
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = agree == sample.size() && sample.size() >= 2000 && sec < 60;
    std::ostringstream os;
    os << agree << "/" << sample.size() << " deduplicated matrices agree in " << (sec < 1 ? "<1" : std::to_string(int(sec))) << " s";
    return {ok, os.str()};
}

Verdict c8() {
    auto all = catalog_structures();
    auto P4 = s4_pair<Q>();
    all.push_back(reduce_to_ideal(std::get<ParallelGStructure<Q>>(catalog_get<Q>("s4-whitney").data),
                                  Subspace<Q>::coordinate(6, {3, 4, 5}), "s4-whitney-reduced"));
    for (auto& S : all) {
        auto r = axioms_check(S);
        if (!r.ok() || !r.find("e50") || !r.find("v.epsi")) return {false, S.id + " " + r.first_failure()};
    }
    auto S = std::get<ParallelGStructure<Q>>(catalog_get<Q>("s2-u1").data);
    auto gN = S.base.gram();
    Q lhs = form_inner(S.psi[0], wedge(flat(unit<Q>(2, 0), gN), flat(unit<Q>(2, 1), gN)), gN);
    Q rhs = -S.gram(unit<Q>(1, 0), S.Rgamma[0][1]);
    bool v = lhs == 2 && rhs == 2;
    return {v, std::to_string(all.size()) + " structures pass; S2 value " + lhs.get_str() + " = " + rhs.get_str()};
}

Verdict c9() {
    size_t n = 0;
    for (auto& id : catalog_ids()) {
        auto e = catalog_get<Q>(id);
        auto* S = std::get_if<ParallelGStructure<Q>>(&e.data);
        if (!S || !nondegeneracy_test(*S).nondegenerate) continue;
        auto c = classify(*S);
        if (c.tag == CaseTag::UNRECOGNIZED) return {false, id + " unrecognized"};
        for (auto& x : e.expectations)
            if (x.name == "classify.tag" && x.value != case_name(c.tag)) return {false, id + " got " + case_name(c.tag)};
        ++n;
    }
    return {true, std::to_string(n) + " nondegenerate catalog structures tagged as annotated"};
}

Verdict c10(const std::string& cli) {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / ("skewtor_acc_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto a = (dir / "a.json").string(), b = (dir / "b.json").string();
    auto run = [&](const std::string& out) { return std::system((cli + " catalog run --json " + out + " > /dev/null").c_str()); };
    int ra = run(a), rb = run(b);
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    auto sa = slurp(a), sb = slurp(b);
    fs::remove_all(dir);
    bool ok = ra == 0 && rb == 0 && !sa.empty() && sa == sb;
    return {ok, std::to_string(sa.size()) + " bytes, " + (sa == sb ? "identical" : "different") + ", exit " + std::to_string(ra) + "/" + std::to_string(rb)};
}

} // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "skewtor";
    std::vector<std::function<Verdict()>> crit = {c1, c2, c3, c4, c5, c6, c7, c8, c9, [&] { return c10(cli); }};
    bool all = true;
    for (size_t i = 0; i < crit.size(); ++i) {
        Verdict v;
        try {
            v = crit[i]();
        } catch (const std::exception& ex) {
            v = {false, std::string("exception: ") + ex.what()};
        }
        all = all && v.ok;
        std::cout << "criterion " << (i + 1) << ": " << (v.ok ? "PASS" : "FAIL") << "  " << v.detail << std::endl;
    }
    return all ? 0 : 1;
}
