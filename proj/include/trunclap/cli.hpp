#pragma once

/// @file cli.hpp
/// @brief Command-line front end. Exit codes: 0 success, 1 input error,
///        2 solver failure or failed assertion.

#include <iosfwd>

namespace trunclap {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trunclap
