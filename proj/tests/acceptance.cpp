// Runs the twelve acceptance criteria and prints one PASS/FAIL line each.
// Tolerances are pinned in src/verify.cpp.

#include "trunclap/verify.hpp"

#include <iostream>

int main() {
    trunclap::VerifyOptions o;
    o.on_result = [](const trunclap::CheckResult& r) {
        std::cout << trunclap::format_result(r) << " (" << r.seconds << " s)" << std::endl;
    };
    const auto results = trunclap::run_suite("all", o);
    int failed = 0;
    for (const auto& r : results) failed += !r.passed;
    std::cout << "summary: " << results.size() - failed << "/" << results.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
