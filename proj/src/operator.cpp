#include "trunclap/operator.hpp"

#include <limits>

namespace trunclap {

namespace {

void check_binding(const ScalarField& u, const Grid2& grid, const StencilSet& stencil) {
    if (&u.grid() != &grid) throw OperatorError("field is bound to a different grid");
    if (stencil.width() != grid.stencil().width() || stencil.size() != grid.stencil().size())
        throw OperatorError("stencil does not match the one the grid was built with");
}

}  // namespace

namespace detail {

void apply_lattice(const Grid2& grid, std::span<const double> u, std::span<double> out,
                   std::span<std::uint16_t> argmax) {
    const std::size_t K = grid.stencil().size();
    const bool want_arg = !argmax.empty();
    for (std::size_t k = 0; k < grid.interior_count(); ++k) {
        double best = -std::numeric_limits<double>::infinity();
        std::uint16_t best_d = 0;
        for (std::size_t d = 0; d < K; ++d) {
            const double v = lattice_second_difference(u, k, grid.arm(k, d));
            if (v > best) {
                best = v;
                best_d = static_cast<std::uint16_t>(d);
            }
        }
        out[k] = best;
        if (want_arg) argmax[k] = best_d;
    }
}

}  // namespace detail

double directional_second_difference(const ScalarField& u, std::size_t node, std::size_t direction) {
    const Grid2& grid = u.grid();
    if (node >= grid.interior_count()) throw OperatorError("node index out of range");
    if (direction >= grid.stencil().size()) throw OperatorError("direction index out of range");
    const double h = grid.spacing();
    return detail::lattice_second_difference(u.values(), node, grid.arm(node, direction)) / (h * h);
}

OperatorOutput apply(const ScalarField& u, const Grid2& grid, const StencilSet& stencil) {
    check_binding(u, grid, stencil);
    OperatorOutput out;
    out.values.resize(grid.interior_count());
    out.argmax.resize(grid.interior_count());
    detail::apply_lattice(grid, u.values(), out.values, out.argmax);
    const double h2 = grid.spacing() * grid.spacing();
    for (double& v : out.values) v /= h2;
    return out;
}

}  // namespace trunclap
