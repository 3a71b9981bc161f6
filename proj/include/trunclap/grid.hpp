#pragma once

/// @file grid.hpp
/// @brief Uniform lattice restricted to a planar convex domain, wide-stencil
///        direction sets and boundary-clipped stencil arms.

#include "trunclap/domain.hpp"
#include "trunclap/geometry.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace trunclap {

/// Lattice direction (p, q) with gcd(|p|,|q|) = 1, one per antipodal pair.
struct Direction {
    int p = 1;
    int q = 0;
    double length = 1.0;  ///< |(p,q)| in lattice units
    Point2 unit;          ///< (p,q)/|(p,q)|
    double angle = 0.0;   ///< in [0, pi)
};

/// Coprime lattice directions with max(|p|,|q|) <= width.
///
/// Ordered by width ring first (W=1 directions come first), then by angle,
/// so a wider stencil extends a narrower one and ties in the operator's
/// argmax favour short arms.
class StencilSet {
public:
    explicit StencilSet(int width);

    int width() const { return width_; }
    std::size_t size() const { return directions_.size(); }
    std::span<const Direction> directions() const { return directions_; }
    const Direction& operator[](std::size_t k) const { return directions_[k]; }

    /// Largest angle between consecutive directions on the half circle.
    double max_angular_gap() const;

private:
    int width_;
    std::vector<Direction> directions_;
};

StencilSet build_stencil(int width);

class GridError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arm lengths of one stencil direction at one node, in lattice units
/// (multiples of h). A neighbour index of -1 means the endpoint carries the
/// Dirichlet value 0, either because the arm was clipped at the boundary or
/// because the full-length endpoint is a boundary node.
struct Arm {
    double plus = 1.0;
    double minus = 1.0;
    std::int32_t plus_node = -1;
    std::int32_t minus_node = -1;
};

struct LatticeNode {
    int i = 0;
    int j = 0;
};

struct GridOptions {
    /// Physical position of lattice node (0,0). Defaults to the centre of the
    /// domain's bounding box, so symmetric domains keep their symmetry.
    std::optional<Point2> anchor;
    /// Arms shorter than arm_floor * h are raised to arm_floor * h.
    double arm_floor = 1e-6;
    /// Nodes closer than this to the boundary (lattice units) count as boundary.
    double boundary_margin = 1e-9;
};

/// Interior lattice nodes of a domain plus their clipped arms.
///
/// Geometry is evaluated in lattice units (coordinates relative to the
/// anchor divided by h), so similar domains rasterized with proportional
/// spacings produce identical grids up to rounding of that normalisation.
class Grid2 {
public:
    Point2 origin() const { return origin_; }
    double spacing() const { return h_; }
    const StencilSet& stencil() const { return stencil_; }

    /// Index box: i in [i_min, i_min + nx), j in [j_min, j_min + ny).
    int i_min() const { return i_min_; }
    int j_min() const { return j_min_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }

    std::size_t interior_count() const { return nodes_.size(); }
    LatticeNode node(std::size_t k) const { return nodes_[k]; }
    Point2 position(std::size_t k) const;
    Point2 position(int i, int j) const { return {origin_.x + h_ * i, origin_.y + h_ * j}; }

    /// Interior index of lattice node (i, j), or -1.
    std::int32_t index_of(int i, int j) const;
    bool is_interior(int i, int j) const { return index_of(i, j) >= 0; }

    /// Arm in lattice units.
    const Arm& arm(std::size_t node, std::size_t direction) const {
        return arms_[node * stencil_.size() + direction];
    }
    /// Arm lengths in physical units.
    double arm_plus(std::size_t node, std::size_t direction) const { return h_ * arm(node, direction).plus; }
    double arm_minus(std::size_t node, std::size_t direction) const { return h_ * arm(node, direction).minus; }

    /// min over nodes and directions of s+ * s- (lattice units).
    double min_arm_product() const;

    void write_mask_csv(std::ostream& out) const;
    void write_arms_csv(std::ostream& out) const;

private:
    friend Grid2 rasterize(const PlanarRegion&, double, const StencilSet&, const GridOptions&);

    explicit Grid2(StencilSet stencil) : stencil_(std::move(stencil)) {}

    Point2 origin_;
    double h_ = 1.0;
    StencilSet stencil_;
    int i_min_ = 0;
    int j_min_ = 0;
    int nx_ = 0;
    int ny_ = 0;
    std::vector<LatticeNode> nodes_;
    std::vector<std::int32_t> index_;  // nx * ny, row-major in j
    std::vector<Arm> arms_;            // interior_count * stencil.size()
};

Grid2 rasterize(const PlanarRegion& region, double h, const StencilSet& stencil, const GridOptions& options = {});
Grid2 rasterize(const DomainSpec& domain, double h, const StencilSet& stencil, const GridOptions& options = {});

std::shared_ptr<const Grid2> make_grid(const DomainSpec& domain, double h, const StencilSet& stencil,
                                       const GridOptions& options = {});

/// Grid-node values of a function vanishing off the interior.
///
/// Only interior values are stored; every other lattice node reads as 0.
class ScalarField {
public:
    explicit ScalarField(std::shared_ptr<const Grid2> grid);
    ScalarField(std::shared_ptr<const Grid2> grid, std::vector<double> values);

    const Grid2& grid() const { return *grid_; }
    const std::shared_ptr<const Grid2>& grid_ptr() const { return grid_; }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    double operator[](std::size_t k) const { return values_[k]; }
    double& operator[](std::size_t k) { return values_[k]; }
    std::size_t size() const { return values_.size(); }

    double at(int i, int j) const;

    /// Samples f at every interior node.
    template <class F>
    static ScalarField sample(std::shared_ptr<const Grid2> grid, F&& f) {
        ScalarField out(std::move(grid));
        for (std::size_t k = 0; k < out.size(); ++k) {
            const Point2 x = out.grid().position(k);
            out.values_[k] = f(x);
        }
        return out;
    }

    void write_csv(std::ostream& out) const;

private:
    std::shared_ptr<const Grid2> grid_;
    std::vector<double> values_;
};

}  // namespace trunclap
