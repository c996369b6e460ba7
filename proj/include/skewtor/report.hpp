#pragma once

#include <string>
#include <vector>

namespace skewtor {

enum class Status { pass, fail, undecided };

inline const char* status_name(Status s) {
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    default: return "undecided";
    }
}

struct Check {
    std::string name;
    Status status = Status::pass;
    std::string witness; // empty on pass
    std::string detail;  // informational, e.g. a computed value
};

struct Report {
    std::string id;
    std::vector<Check> checks;

    Check& add(std::string name, bool ok, std::string witness = {}, std::string detail = {}) {
        checks.push_back({std::move(name), ok ? Status::pass : Status::fail, ok ? std::string() : std::move(witness),
                          std::move(detail)});
        return checks.back();
    }
    void add_undecided(std::string name, std::string why) {
        checks.push_back({std::move(name), Status::undecided, std::move(why), {}});
    }
    void append(const Report& r, const std::string& prefix = {}) {
        for (auto c : r.checks) {
            if (!prefix.empty()) c.name = prefix + c.name;
            checks.push_back(std::move(c));
        }
    }
    bool ok() const {
        for (auto& c : checks)
            if (c.status != Status::pass) return false;
        return true;
    }
    const Check* find(const std::string& name) const {
        for (auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
    std::string first_failure() const {
        for (auto& c : checks)
            if (c.status != Status::pass) return c.name + (c.witness.empty() ? "" : ": " + c.witness);
        return {};
    }
};

inline std::string idx_str(const std::vector<size_t>& idx) {
    std::string s = "(";
    for (size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
    return s + ")";
}

} // namespace skewtor
