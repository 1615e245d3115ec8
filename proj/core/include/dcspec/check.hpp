#pragma once

#include <string>

namespace dcspec {

enum class CheckStatus { Pass, Fail, Vacuous };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Vacuous: return "vacuous";
    }
    return "fail";
}

// One evaluated identity or inequality. `anchor` is the mathematical
// statement under test written out as a formula.
struct CheckRecord {
    std::string name;
    std::string anchor;
    CheckStatus status = CheckStatus::Fail;
    double deviation = 0.0;
    double tolerance = 0.0;

    bool passed() const { return status == CheckStatus::Pass; }
};

inline CheckRecord make_check(std::string name, std::string anchor, double deviation, double tolerance) {
    CheckRecord r{std::move(name), std::move(anchor), CheckStatus::Fail, deviation, tolerance};
    r.status = (deviation <= tolerance) ? CheckStatus::Pass : CheckStatus::Fail;
    return r;
}

}  // namespace dcspec
