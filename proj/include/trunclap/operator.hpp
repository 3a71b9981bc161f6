#pragma once

/// @file operator.hpp
/// @brief Discrete truncated Laplacian: the largest eigenvalue of the Hessian
///        approximated by a maximum of directional second differences over a
///        wide stencil.

#include "trunclap/grid.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace trunclap {

/// Three-point second difference on a non-uniform stencil:
///   2 [ s- u(+) + s+ u(-) - (s+ + s-) u(0) ] / (s+ s- (s+ + s-)).
/// Exact for quadratics along the line.
inline double second_difference(double center, double plus_value, double minus_value, double s_plus,
                                double s_minus) {
    return 2.0 * (s_minus * plus_value + s_plus * minus_value - (s_plus + s_minus) * center) /
           (s_plus * s_minus * (s_plus + s_minus));
}

struct OperatorOutput {
    std::vector<double> values;           ///< per interior node
    std::vector<std::uint16_t> argmax;    ///< lowest maximising direction index
};

class OperatorError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Second difference of u along one stencil direction at an interior node,
/// in physical units.
double directional_second_difference(const ScalarField& u, std::size_t node, std::size_t direction);

/// max over stencil directions of the clipped second difference, physical units.
OperatorOutput apply(const ScalarField& u, const Grid2& grid, const StencilSet& stencil);

namespace detail {

/// Lattice-unit kernel shared by the solvers (no 1/h^2 factor).
inline double lattice_second_difference(std::span<const double> u, std::size_t node, const Arm& arm) {
    const double up = arm.plus_node >= 0 ? u[static_cast<std::size_t>(arm.plus_node)] : 0.0;
    const double um = arm.minus_node >= 0 ? u[static_cast<std::size_t>(arm.minus_node)] : 0.0;
    return second_difference(u[node], up, um, arm.plus, arm.minus);
}

/// Fills out[k] = max_e D_e u (lattice units); argmax optional.
void apply_lattice(const Grid2& grid, std::span<const double> u, std::span<double> out,
                   std::span<std::uint16_t> argmax = {});

}  // namespace detail

}  // namespace trunclap
