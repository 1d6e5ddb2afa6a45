#pragma once

#include <string>
#include <vector>

namespace wittforge {

struct VerifyCheck {
    std::string name;
    std::string detail;
    std::string expected;
    std::string got;
    bool pass = false;
};

/// The golden cross-check suite: every worked example the library is
/// expected to reproduce, with frozen expected values.
std::vector<VerifyCheck> run_verify_suite();

}  // namespace wittforge
