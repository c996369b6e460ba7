// skewtor <verify|decompose|lift|gstructure|roundtrip|catalog> [args]

#include <skewtor/io.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace skewtor;

namespace {

struct Options {
    std::string command, mode = "exact", json_path, input;
    std::string catalog_action;
    std::vector<std::string> catalog_ids_arg;
    bool fail_fast = false, seedless = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// one result per input: the outcome plus what the JSON needs
struct Result {
    Outcome outcome;
    std::string kind, hash;
    std::optional<json> lifted;
    double ms = 0;
};

void truncate_after_failure(Report& r) {
    for (size_t i = 0; i < r.checks.size(); ++i)
        if (r.checks[i].status != Status::pass) {
            r.checks.resize(i + 1);
            return;
        }
}

template <class K> Input<K> load_input(const std::string& arg, std::string& id) {
    if (std::filesystem::is_regular_file(arg)) {
        std::ifstream in(arg);
        std::stringstream ss;
        ss << in.rdbuf();
        return input_from_json<K>(parse_document(ss.str()), id);
    }
    try {
        auto e = catalog_get<K>(arg);
        id = e.id;
        return e.data;
    } catch (const UnknownEntry&) {
        throw UsageError("'" + arg + "' is neither a readable file nor a catalog id");
    }
}

template <class K> Result run_command(const Options& opt, const Input<K>& in, const std::string& id) {
    Result res;
    res.kind = input_kind(in);
    res.hash = input_hash(input_to_json(in, id));
    auto* P = std::get_if<ReductivePair<K>>(&in);
    auto* S = std::get_if<ParallelGStructure<K>>(&in);
    auto* G = std::get_if<ParallelCurvatureGeometry<K>>(&in);
    auto wrong = [&](const char* want) { return UsageError(opt.command + " takes " + want + ", got " + res.kind); };
    Outcome& o = res.outcome;
    const auto& c = opt.command;
    if (c == "verify") {
        if (P) o = verify_pair(*P);
        else if (S) o.report = axioms_check(*S);
        else o.report = pgwt_axioms_check(*G);
    } else if (c == "decompose") {
        if (!P) throw wrong("a reductive pair");
        o = decompose_pair(*P);
    } else if (c == "lift" || c == "roundtrip") {
        if (P) throw wrong("a pcg or gstructure input");
        if (S && c == "roundtrip") {
            o.report = special_roundtrip(*S);
        } else {
            auto geo = S ? to_pcg(*S) : *G;
            o = lift_pcg(geo, c == "roundtrip");
            if (c == "lift" && o.report.ok()) res.lifted = lifted_json(inverse_construct(geo));
        }
    } else if (c == "gstructure") {
        if (!S) throw wrong("a gstructure");
        o = gstructure_pipeline(*S, false);
    }
    o.report.id = id;
    return res;
}

void print_text(const Result& r, std::ostream& os) {
    const auto& rep = r.outcome.report;
    os << (rep.ok() ? "PASS " : "FAIL ") << rep.id << " (" << r.kind << ", " << r.ms << " ms)\n";
    for (auto& c : rep.checks) {
        os << "  " << status_name(c.status) << "  " << c.name;
        if (!c.witness.empty()) os << "  [" << c.witness << "]";
        if (!c.detail.empty()) os << "  " << c.detail;
        os << "\n";
    }
    for (auto& kv : r.outcome.values) os << "  = " << kv.first << ": " << kv.second << "\n";
}

template <class K> int run(const Options& opt) {
    std::vector<Result> results;
    auto timed = [&](auto&& f) {
        auto t0 = std::chrono::steady_clock::now();
        Result r = f();
        r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        if (opt.fail_fast) truncate_after_failure(r.outcome.report);
        results.push_back(std::move(r));
    };
    std::string cmd = opt.command;
    if (opt.command == "catalog") {
        cmd += " " + opt.catalog_action;
        if (opt.catalog_action == "list") {
            for (auto& id : catalog_ids()) std::cout << id << "  " << catalog_get<K>(id).description << "\n";
            return 0;
        }
        if (opt.catalog_action == "show") {
            if (opt.catalog_ids_arg.size() != 1) throw UsageError("catalog show takes exactly one id");
            auto e = catalog_get<K>(opt.catalog_ids_arg[0]);
            auto j = input_to_json(e.data, e.id);
            json ex = json::array();
            for (auto& x : e.expectations) ex.push_back({{"name", x.name}, {"value", x.value}});
            j["expectations"] = ex;
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (opt.catalog_action != "run") throw UsageError("catalog takes list, show <id> or run [id...]");
        auto ids = opt.catalog_ids_arg.empty() ? catalog_ids() : opt.catalog_ids_arg;
        for (auto& id : ids) {
            auto e = catalog_get<K>(id);
            timed([&] {
                Result r;
                r.kind = input_kind(e.data);
                r.hash = input_hash(input_to_json(e.data, e.id));
                r.outcome = run_entry(e);
                return r;
            });
            if (opt.fail_fast && !results.back().outcome.report.ok()) break;
        }
    } else {
        std::string id;
        auto in = load_input<K>(opt.input, id);
        timed([&] { return run_command<K>(opt, in, id); });
    }

    bool ok = true;
    for (auto& r : results) {
        print_text(r, std::cout);
        ok = ok && r.outcome.report.ok();
    }
    size_t npass = 0;
    for (auto& r : results) npass += r.outcome.report.ok();
    std::cout << npass << "/" << results.size() << " passed\n";

    if (!opt.json_path.empty()) {
        json doc;
        doc["schema_version"] = schema_version;
        doc["command"] = cmd;
        doc["mode"] = Field<K>::name;
        json arr = json::array();
        for (auto& r : results) {
            auto j = report_json(r.outcome, r.kind, r.hash);
            if (r.lifted) j["lifted"] = *r.lifted;
            arr.push_back(j);
        }
        doc["results"] = arr;
        doc["ok"] = ok;
        std::ofstream out(opt.json_path, std::ios::binary);
        if (!out) throw UsageError("cannot write " + opt.json_path);
        out << doc.dump(2) << "\n";
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"skewtor: exact checks for geometries with parallel skew torsion"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    auto add_globals = [&](CLI::App* a) {
        a->add_option("--mode", opt.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
        a->add_option("--json", opt.json_path, "write the report as JSON");
        a->add_flag("--fail-fast", opt.fail_fast, "stop at the first failing check");
        a->add_flag("--seedless", opt.seedless, "refuse any randomness (nothing here draws random numbers)");
    };
    add_globals(&app);
    for (auto name : {"verify", "decompose", "lift", "gstructure", "roundtrip"}) {
        auto* sc = app.add_subcommand(name);
        add_globals(sc);
        sc->add_option("input", opt.input, "JSON file or catalog id")->required();
        sc->callback([&opt, name] { opt.command = name; });
    }
    auto* cat = app.add_subcommand("catalog", "list | show <id> | run [id...]");
    add_globals(cat);
    cat->add_option("action", opt.catalog_action)->required()->check(CLI::IsMember({"list", "show", "run"}));
    cat->add_option("ids", opt.catalog_ids_arg);
    cat->callback([&] { opt.command = "catalog"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    if (const char* env = std::getenv("SKEWTOR_MODE")) {
        std::string m = env;
        if (m != "exact" && m != "float") {
            std::cerr << "SKEWTOR_MODE must be exact or float, got '" << m << "'\n";
            return 2;
        }
        opt.mode = m;
    }
    try {
        return opt.mode == "float" ? run<double>(opt) : run<mpq_class>(opt);
    } catch (const SchemaError& e) {
        std::cerr << "schema error at " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownEntry& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
