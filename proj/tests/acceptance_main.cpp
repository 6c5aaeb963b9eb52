// acceptance gate: runs every check suite at full scale and prints one
// pass/fail line per criterion, in the canonical order
#include <cstdio>

#include "usph/suites.hpp"

int main() {
    const auto names = usph::suite_names();
    int failures = 0;
    double total = 0.0;

    for (std::size_t i = 0; i < names.size(); ++i) {
        usph::CheckResult r;
        try {
            r = usph::run_suite(names[i]);
        } catch (const std::exception& e) {
            r.name = names[i];
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        total += r.elapsed_s;
        if (!r.pass) ++failures;
        std::printf("criterion %02zu [%s] %-18s %6.1fs  %s\n", i + 1,
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), r.elapsed_s,
                    r.detail.c_str());
        std::fflush(stdout);
    }

    std::printf("%d/%zu criteria passed (%.1fs total)\n",
                static_cast<int>(names.size()) - failures, names.size(), total);
    return failures == 0 ? 0 : 1;
}
