#pragma once

#include <string>
#include <vector>

namespace covgl {

// One verification record: the stable anchor id of the statement checked,
// pass/fail, and a human-readable detail line.
struct CheckRecord {
    std::string anchor;
    bool pass = false;
    std::string detail;
};

struct VerificationReport {
    std::string name;
    std::vector<CheckRecord> checks;

    void add(std::string anchor, bool pass, std::string detail) {
        checks.push_back({std::move(anchor), pass, std::move(detail)});
    }
    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

} // namespace covgl
