// Runs every acceptance criterion and prints one line per check. The exit
// status is the number of failed (non-informational) checks, capped at 100.

#include <algorithm>
#include <cstdio>

#include "asrr/validate.hpp"

int main() {
    const auto results = asrr::validate::run_all();
    for (const auto& r : results) std::printf("%s\n", asrr::validate::format(r).c_str());

    // One summary line per criterion.
    for (int c = 1; c <= 10; ++c) {
        bool ok = true;
        for (const auto& r : results) {
            if (r.criterion == c && !r.informational && !r.passed) ok = false;
        }
        std::printf("criterion %2d: %s\n", c, ok ? "PASS" : "FAIL");
    }
    const auto failed = asrr::validate::failures(results);
    std::printf("%zu failed check(s)\n", failed.size());
    return static_cast<int>(std::min<std::size_t>(failed.size(), 100));
}
