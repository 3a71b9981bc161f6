#pragma once

/// @file verify.hpp
/// @brief The acceptance checks, runnable from the command line and ctest.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace trunclap {

struct CheckResult {
    std::string id;    ///< "1".."12", or a named extra check
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    std::uint64_t seed = 0;
    int jobs = 1;
    /// Called after every check, e.g. to print progress.
    std::function<void(const CheckResult&)> on_result;
};

/// Suite names: analytic, inequalities, scheme, all.
std::vector<std::string> suite_names();

/// Throws std::invalid_argument for an unknown suite.
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& options = {});

/// "PASS [id] name: detail" or "FAIL ...".
std::string format_result(const CheckResult& r);

/// Individual criteria, exposed for tests.
CheckResult check_ball(const VerifyOptions& o);                // 1
CheckResult check_rectangles(const VerifyOptions& o);          // 2
CheckResult check_scaling(const VerifyOptions& o);             // 3
CheckResult check_inclusion(const VerifyOptions& o);           // 4
CheckResult check_diameter_bounds(const VerifyOptions& o);     // 5
CheckResult check_equality_case(const VerifyOptions& o);       // 6
CheckResult check_reverse_faber_krahn(const VerifyOptions& o); // 7
CheckResult check_degenerate_rectangles(const VerifyOptions& o); // 8
CheckResult check_shrinking(const VerifyOptions& o);           // 9
CheckResult check_hausdorff(const VerifyOptions& o);           // 10
CheckResult check_reuleaux(const VerifyOptions& o);            // 11
CheckResult check_scheme(const VerifyOptions& o);              // 12
CheckResult check_ball_radius_two(const VerifyOptions& o);     // analytic extra

}  // namespace trunclap
