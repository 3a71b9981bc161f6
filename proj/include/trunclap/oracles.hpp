#pragma once

/// @file oracles.hpp
/// @brief Reference computations written without the grid/operator/solver
///        code paths, used to cross-check them.

#include <cstdint>
#include <vector>

namespace trunclap::oracles {

struct ToyResult {
    double mu = 0.0;      ///< mean over starts
    double spread = 0.0;  ///< max - min over starts
    std::vector<double> u;  ///< 3x3 eigenvector from the first start, max = 1, row-major
};

/// Principal eigenvalue of the discrete operator with directions (1,0),
/// (0,1), (1,1), (1,-1) on the 3x3 interior nodes of the square (-1,1)^2 at
/// h = 1/2, by normalized explicit iteration u <- u + tau (Lambda u) from
/// `starts` random positive fields.
ToyResult toy_square_eigenvalue(int starts = 100, std::uint64_t seed = 0);

}  // namespace trunclap::oracles
