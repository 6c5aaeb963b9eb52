#pragma once
// the named end-to-end check suites; each one exercises a documented claim
// at full scale and reports pass/fail with a one-line summary

#include <string>
#include <vector>

namespace usph {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double elapsed_s = 0.0;
};

// suite names, in canonical execution order
std::vector<std::string> suite_names();

// run one suite by name; throws index_error for unknown names
CheckResult run_suite(const std::string& name);

std::vector<CheckResult> run_all_suites();

} // namespace usph
