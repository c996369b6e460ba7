#pragma once

// JSON for inputs and reports (schema_version 1).  Scalars are strings
// "p/q" or integers; float mode also takes JSON numbers.

#include "catalog.hpp"

#include <json.hpp>

#include <cstdint>

namespace skewtor {

using json = nlohmann::ordered_json;

constexpr int schema_version = 1;

struct SchemaError : std::runtime_error {
    std::string field;
    SchemaError(std::string f, const std::string& msg) : std::runtime_error(f + ": " + msg), field(std::move(f)) {}
};

namespace jio {

inline const json& at(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(path + "." + key, "missing field");
    return *it;
}

inline const json& arr(const json& j, const std::string& path, std::optional<size_t> len = {}) {
    if (!j.is_array()) throw SchemaError(path, "expected an array");
    if (len && j.size() != *len)
        throw SchemaError(path, "expected " + std::to_string(*len) + " entries, got " + std::to_string(j.size()));
    return j;
}

inline size_t index(const json& j, const std::string& path) {
    if (j.is_number_unsigned()) return j.get<size_t>();
    if (j.is_number_integer() && j.get<long>() >= 0) return size_t(j.get<long>());
    if (j.is_string()) {
        try {
            size_t pos = 0;
            long v = std::stol(j.get<std::string>(), &pos);
            if (pos == j.get<std::string>().size() && v >= 0) return size_t(v);
        } catch (const std::exception&) {
        }
    }
    throw SchemaError(path, "expected a non-negative index");
}

template <class K> K scalar(const json& j, const std::string& path) {
    try {
        if (j.is_string()) return parse_scalar<K>(j.get<std::string>());
        if (j.is_number_integer()) return Field<K>::from_ratio(j.get<long>());
        if (j.is_number_float()) {
            if constexpr (Field<K>::exact) throw SchemaError(path, "floating-point literal in exact mode; write it as \"p/q\"");
            else return j.get<double>();
        }
    } catch (const std::invalid_argument& ex) {
        throw SchemaError(path, ex.what());
    }
    throw SchemaError(path, "expected a scalar (\"p/q\" string or integer)");
}

template <class K> Vec<K> vec(const json& j, const std::string& path, std::optional<size_t> len = {}) {
    arr(j, path, len);
    Vec<K> v;
    for (size_t i = 0; i < j.size(); ++i) v.push_back(scalar<K>(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

template <class K> Mat<K> mat(const json& j, const std::string& path, size_t rows, size_t cols) {
    arr(j, path, rows);
    Mat<K> M(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        auto r = vec<K>(j[i], path + "[" + std::to_string(i) + "]", cols);
        for (size_t c = 0; c < cols; ++c) M(i, c) = r[c];
    }
    return M;
}

template <class K> std::vector<Vec<K>> vecs(const json& j, const std::string& path, size_t len) {
    arr(j, path);
    std::vector<Vec<K>> out;
    for (size_t i = 0; i < j.size(); ++i) out.push_back(vec<K>(j[i], path + "[" + std::to_string(i) + "]", len));
    return out;
}

template <class K> Gram<K> gram(const json& j, const std::string& path, size_t n) {
    try {
        return Gram<K>(mat<K>(j, path, n, n));
    } catch (const std::invalid_argument& ex) {
        throw SchemaError(path, ex.what());
    }
}

template <class K> std::string s(const K& x) { return Field<K>::str(x); }

template <class K> json vec_json(const Vec<K>& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(s(x));
    return a;
}

template <class K> json mat_json(const Mat<K>& M) {
    json a = json::array();
    for (size_t i = 0; i < M.rows(); ++i) {
        json r = json::array();
        for (size_t c = 0; c < M.cols(); ++c) r.push_back(s(M(i, c)));
        a.push_back(r);
    }
    return a;
}

template <class K> json subspace_json(const Subspace<K>& S) {
    json a = json::array();
    for (auto& v : S.basis()) a.push_back(vec_json(v));
    return a;
}

} // namespace jio

// ------------------------------------------------------------ Lie algebras

template <class K> LieAlgebra<K> lie_from_json(const json& j, const std::string& path) {
    size_t n = jio::index(jio::at(j, "dim", path), path + ".dim");
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        jio::arr(j["labels"], path + ".labels", n);
        for (auto& l : j["labels"]) {
            if (!l.is_string()) throw SchemaError(path + ".labels", "labels must be strings");
            labels.push_back(l.get<std::string>());
        }
    }
    LieAlgebra<K> L(n, labels);
    const auto& br = jio::arr(jio::at(j, "brackets", path), path + ".brackets");
    for (size_t b = 0; b < br.size(); ++b) {
        std::string p = path + ".brackets[" + std::to_string(b) + "]";
        size_t i = jio::index(jio::at(br[b], "i", p), p + ".i"), k = jio::index(jio::at(br[b], "j", p), p + ".j");
        if (i >= n || k >= n) throw SchemaError(p, "index out of range");
        if (i == k) throw SchemaError(p, "[e_i, e_i] is zero by antisymmetry");
        Vec<K> v(n, K(0));
        const auto& co = jio::arr(jio::at(br[b], "coeffs", p), p + ".coeffs");
        for (size_t c = 0; c < co.size(); ++c) {
            std::string pc = p + ".coeffs[" + std::to_string(c) + "]";
            jio::arr(co[c], pc, 2);
            size_t t = jio::index(co[c][0], pc + "[0]");
            if (t >= n) throw SchemaError(pc, "index out of range");
            v[t] += jio::scalar<K>(co[c][1], pc + "[1]");
        }
        L.set_bracket(i, k, v);
    }
    return L;
}

template <class K> json lie_to_json(const LieAlgebra<K>& L) {
    json j;
    j["dim"] = L.dim();
    j["labels"] = L.labels();
    json br = json::array();
    for (size_t i = 0; i < L.dim(); ++i)
        for (size_t k = i + 1; k < L.dim(); ++k) {
            auto v = L.bracket(i, k);
            json co = json::array();
            for (size_t t = 0; t < v.size(); ++t)
                if (!is_zero(v[t])) co.push_back(json::array({t, jio::s(v[t])}));
            if (!co.empty()) br.push_back({{"i", i}, {"j", k}, {"coeffs", co}});
        }
    j["brackets"] = br;
    return j;
}

// ------------------------------------------------------------ reductive pairs

template <class K> ReductivePair<K> pair_from_json(const json& j, const std::string& path) {
    if (j.is_string()) {
        auto id = j.get<std::string>();
        try {
            auto e = catalog_get<K>(id);
            if (auto* P = std::get_if<ReductivePair<K>>(&e.data)) return *P;
        } catch (const UnknownEntry&) {
        }
        throw SchemaError(path, "'" + id + "' is not a catalog reductive pair");
    }
    auto L = lie_from_json<K>(jio::at(j, "algebra", path), path + ".algebra");
    size_t n = L.dim();
    auto k = jio::vecs<K>(jio::at(j, "k", path), path + ".k", n);
    auto m = jio::vecs<K>(jio::at(j, "m", path), path + ".m", n);
    auto g = jio::gram<K>(jio::at(j, "gram", path), path + ".gram", m.size());
    std::optional<Gram<K>> full;
    if (j.contains("full_gram")) full = jio::gram<K>(j["full_gram"], path + ".full_gram", n);
    try {
        return ReductivePair<K>(L, Subspace<K>(n, k), Subspace<K>(n, m), g, full);
    } catch (const std::invalid_argument& ex) {
        throw SchemaError(path, ex.what());
    }
}

template <class K> json pair_to_json(const ReductivePair<K>& P) {
    json j;
    j["algebra"] = lie_to_json(P.g());
    j["k"] = jio::subspace_json(P.k());
    j["m"] = jio::subspace_json(P.m());
    j["gram"] = jio::mat_json(P.gram().matrix());
    if (P.full_gram()) j["full_gram"] = jio::mat_json(P.full_gram()->matrix());
    return j;
}

// ------------------------------------------------------------ g-structures

template <class K> ParallelGStructure<K> gstructure_from_json(const json& j, const std::string& id) {
    auto base = pair_from_json<K>(jio::at(j, "base", "$"), "$.base");
    size_t d = base.dim_m();
    std::vector<Subspace<K>> factors;
    if (j.contains("kahler_factors")) {
        jio::arr(j["kahler_factors"], "$.kahler_factors");
        for (size_t f = 0; f < j["kahler_factors"].size(); ++f)
            factors.emplace_back(d, jio::vecs<K>(j["kahler_factors"][f], "$.kahler_factors[" + std::to_string(f) + "]", d));
    }
    if (j.contains("cmatrix")) {
        const auto& c = jio::arr(j["cmatrix"], "$.cmatrix");
        if (c.empty()) throw SchemaError("$.cmatrix", "empty c-matrix");
        auto M = jio::mat<K>(c, "$.cmatrix", c.size(), jio::arr(c[0], "$.cmatrix[0]").size());
        if (factors.empty()) throw SchemaError("$.kahler_factors", "a c-matrix needs the Kahler factors of the base");
        try {
            return u1m_structure<K>(id, base, factors, M);
        } catch (const std::invalid_argument& ex) {
            throw SchemaError("$.cmatrix", ex.what());
        }
    }
    ParallelGStructure<K> S;
    S.id = id;
    S.base = base;
    S.g = lie_from_json<K>(jio::at(j, "g", "$"), "$.g");
    size_t dg = S.g.dim();
    S.gram = jio::gram<K>(jio::at(j, "gram", "$"), "$.gram", dg);
    const auto& psi = jio::arr(jio::at(j, "psi", "$"), "$.psi", dg);
    for (size_t a = 0; a < dg; ++a) {
        auto M = jio::mat<K>(psi[a], "$.psi[" + std::to_string(a) + "]", d, d);
        Tensor<K> w(d, 2);
        for (size_t x = 0; x < d; ++x)
            for (size_t y = 0; y < d; ++y) w(x, y) = M(x, y);
        S.psi.push_back(w);
    }
    S.Rgamma = rgamma_from_psi(S.psi, S.gram, d);
    S.symmetric_base = base.symmetric();
    S.kahler_factors = factors;
    return S;
}

template <class K> json gstructure_to_json(const ParallelGStructure<K>& S) {
    json j;
    j["base"] = pair_to_json(S.base);
    if (!S.kahler_factors.empty()) {
        json f = json::array();
        for (auto& b : S.kahler_factors) f.push_back(jio::subspace_json(b));
        j["kahler_factors"] = f;
    }
    if (S.cmatrix) {
        j["cmatrix"] = jio::mat_json(*S.cmatrix);
        return j;
    }
    j["g"] = lie_to_json(S.g);
    j["gram"] = jio::mat_json(S.gram.matrix());
    json psi = json::array();
    for (auto& w : S.psi) {
        Mat<K> M(S.dN(), S.dN());
        for (size_t x = 0; x < S.dN(); ++x)
            for (size_t y = 0; y < S.dN(); ++y) M(x, y) = w(x, y);
        psi.push_back(jio::mat_json(M));
    }
    j["psi"] = psi;
    return j;
}

// ------------------------------------------------------------ geometries with parallel curvature

template <class K> ParallelCurvatureGeometry<K> pcg_from_json(const json& j, const std::string& id) {
    auto base = pair_from_json<K>(jio::at(j, "base", "$"), "$.base");
    auto g = lie_from_json<K>(jio::at(j, "g", "$"), "$.g");
    size_t d = base.dim_m(), dg = g.dim();
    auto gram = jio::gram<K>(jio::at(j, "gram", "$"), "$.gram", dg);
    Subspace<K> k1(dg);
    if (j.contains("k1")) k1 = Subspace<K>(dg, jio::vecs<K>(j["k1"], "$.k1", dg));
    std::vector<std::vector<Vec<K>>> R(d, std::vector<Vec<K>>(d, Vec<K>(dg, K(0))));
    const auto& rg = jio::arr(jio::at(j, "rgamma", "$"), "$.rgamma");
    for (size_t e = 0; e < rg.size(); ++e) {
        std::string p = "$.rgamma[" + std::to_string(e) + "]";
        size_t x = jio::index(jio::at(rg[e], "x", p), p + ".x"), y = jio::index(jio::at(rg[e], "y", p), p + ".y");
        if (x >= d || y >= d || x == y) throw SchemaError(p, "need x != y, both below dim m = " + std::to_string(d));
        auto v = jio::vec<K>(jio::at(rg[e], "value", p), p + ".value", dg);
        R[x][y] = v;
        for (auto& c : v) c = -c;
        R[y][x] = v;
    }
    try {
        return make_pcg<K>(id, base, g, gram, k1, R);
    } catch (const std::invalid_argument& ex) {
        throw SchemaError("$", ex.what());
    }
}

template <class K> json pcg_to_json(const ParallelCurvatureGeometry<K>& G) {
    json j;
    j["base"] = pair_to_json(G.base);
    j["g"] = lie_to_json(G.g);
    j["gram"] = jio::mat_json(G.gram.matrix());
    j["k1"] = jio::subspace_json(G.k1);
    json rg = json::array();
    for (size_t x = 0; x < G.dN(); ++x)
        for (size_t y = x + 1; y < G.dN(); ++y)
            if (!is_zero(G.Rgamma[x][y])) rg.push_back({{"x", x}, {"y", y}, {"value", jio::vec_json(G.Rgamma[x][y])}});
    j["rgamma"] = rg;
    return j;
}

// ------------------------------------------------------------ documents

template <class K> json input_to_json(const Input<K>& in, const std::string& id) {
    json j;
    j["schema_version"] = schema_version;
    j["kind"] = input_kind(in);
    j["id"] = id;
    json body;
    if (auto* P = std::get_if<ReductivePair<K>>(&in)) body = pair_to_json(*P);
    else if (auto* S = std::get_if<ParallelGStructure<K>>(&in)) body = gstructure_to_json(*S);
    else body = pcg_to_json(std::get<ParallelCurvatureGeometry<K>>(in));
    for (auto& [k, v] : body.items()) j[k] = v;
    return j;
}

template <class K> Input<K> input_from_json(const json& j, std::string& id) {
    if (!j.is_object()) throw SchemaError("$", "top level must be an object");
    const auto& sv = jio::at(j, "schema_version", "$");
    if (!sv.is_number_integer() || sv.get<int>() != schema_version)
        throw SchemaError("$.schema_version", "expected " + std::to_string(schema_version) + ", got " + sv.dump());
    const auto& kind = jio::at(j, "kind", "$");
    if (!kind.is_string()) throw SchemaError("$.kind", "expected a string");
    id = j.contains("id") && j["id"].is_string() ? j["id"].get<std::string>() : "input";
    auto k = kind.get<std::string>();
    if (k == "reductive_pair") return pair_from_json<K>(j, "$");
    if (k == "gstructure") return gstructure_from_json<K>(j, id);
    if (k == "pcg") return pcg_from_json<K>(j, id);
    throw SchemaError("$.kind", "unknown kind '" + k + "' (reductive_pair, gstructure, pcg)");
}

// parse with line/column on syntax errors
inline json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& ex) {
        size_t line = 1, col = 1;
        for (size_t i = 0; i + 1 < ex.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else
                ++col;
        }
        throw SchemaError("line " + std::to_string(line) + ", column " + std::to_string(col), "malformed JSON");
    }
}

// FNV-1a of the canonical export, so equal inputs get equal hashes
inline std::string input_hash(const json& canonical) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical.dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ------------------------------------------------------------ reports

inline json report_json(const Outcome& o, const std::string& kind, const std::string& hash) {
    json j;
    j["id"] = o.report.id;
    j["kind"] = kind;
    j["input_hash"] = hash;
    j["ok"] = o.report.ok();
    json checks = json::array();
    for (auto& c : o.report.checks) {
        json cj;
        cj["name"] = c.name;
        cj["status"] = status_name(c.status);
        if (!c.witness.empty()) cj["witness"] = c.witness;
        if (!c.detail.empty()) cj["detail"] = c.detail;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    json values = json::object();
    for (auto& kv : o.values) values[kv.first] = kv.second;
    j["values"] = values;
    return j;
}

template <class K> json lifted_json(const LiftedGeometry<K>& L) {
    json j;
    j["dims"] = {{"horizontal", L.dN}, {"vertical", L.dv}, {"k1", L.dk1}};
    j["gram"] = jio::mat_json(L.gram.matrix());
    json tau = json::array();
    size_t n = L.dim();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            for (size_t c = b + 1; c < n; ++c)
                if (!is_zero(L.tau(a, b, c))) tau.push_back(json::array({a, b, c, jio::s(L.tau(a, b, c))}));
    j["tau"] = tau;
    json tab = json::array();
    for (size_t u = 0; u < n; ++u)
        for (size_t v = 0; v < n; ++v)
            if (!is_zero(L.table[u][v])) tab.push_back({{"u", u}, {"v", v}, {"value", jio::vec_json(L.table[u][v])}});
    j["connection"] = tab;
    return j;
}

} // namespace skewtor
