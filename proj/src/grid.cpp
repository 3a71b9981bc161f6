#include "trunclap/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

namespace trunclap {

namespace {

constexpr double kPi = std::numbers::pi;

// Lattice-frame coordinates are rounded to multiples of 2^-32 lattice units.
// Similar domains rasterized at proportional spacings then see bit-identical
// geometry instead of geometry that differs in the last few bits.
double quantize(double x) {
    constexpr double q = 4294967296.0;
    return std::nearbyint(x * q) / q;
}

// Boundary of a region expressed in lattice units. The two shapes share the
// same queries: signed distance to the boundary and exit distance of a ray.
struct LatticeHalfplanes {
    struct Plane {
        Point2 normal;  // outward, unit
        double offset;  // inside iff <normal, x> < offset
    };
    std::vector<Plane> planes;
    BoundingBox box;

    double inner_distance(Point2 x) const {
        double d = std::numeric_limits<double>::infinity();
        for (const Plane& pl : planes) d = std::min(d, pl.offset - dot(pl.normal, x));
        return d;
    }

    double exit_distance(Point2 x, Point2 dir) const {
        double t = std::numeric_limits<double>::infinity();
        for (const Plane& pl : planes) {
            const double rate = dot(pl.normal, dir);
            if (rate > 0.0) t = std::min(t, (pl.offset - dot(pl.normal, x)) / rate);
        }
        return std::max(t, 0.0);
    }
};

struct LatticeDisk {
    Point2 center;
    double radius;
    BoundingBox box;

    double inner_distance(Point2 x) const { return radius - distance(x, center); }

    double exit_distance(Point2 x, Point2 dir) const {
        const Point2 rel = x - center;
        const double b = dot(rel, dir);
        const double c = dot(rel, rel) - radius * radius;
        const double disc = std::max(b * b - c, 0.0);
        // stable root of t^2 + 2 b t + c = 0 with t >= 0
        const double t = b > 0.0 ? -c / (b + std::sqrt(disc)) : -b + std::sqrt(disc);
        return std::max(t, 0.0);
    }
};

LatticeHalfplanes to_lattice(const ConvexPolygon& poly, Point2 anchor, double h) {
    std::vector<Point2> v;
    v.reserve(poly.size());
    for (const Point2& p : poly.vertices())
        v.push_back({quantize((p.x - anchor.x) / h), quantize((p.y - anchor.y) / h)});

    LatticeHalfplanes out;
    out.box = {v.front(), v.front()};
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2 a = v[i];
        const Point2 b = v[(i + 1) % v.size()];
        const Point2 e = b - a;
        const double len = norm(e);
        const Point2 normal{e.y / len, -e.x / len};
        out.planes.push_back({normal, dot(normal, a)});
        out.box.min = {std::min(out.box.min.x, a.x), std::min(out.box.min.y, a.y)};
        out.box.max = {std::max(out.box.max.x, a.x), std::max(out.box.max.y, a.y)};
    }
    return out;
}

LatticeDisk to_lattice(const Disk& disk, Point2 anchor, double h) {
    const Point2 c{quantize((disk.center.x - anchor.x) / h), quantize((disk.center.y - anchor.y) / h)};
    const double r = quantize(disk.radius / h);
    return {c, r, {{c.x - r, c.y - r}, {c.x + r, c.y + r}}};
}

template <class Shape>
void fill_grid(const Shape& shape, const StencilSet& stencil, const GridOptions& options, int& i_min, int& j_min,
               int& nx, int& ny, std::vector<LatticeNode>& nodes, std::vector<std::int32_t>& index,
               std::vector<Arm>& arms) {
    const double span_limit = 1e8;
    if (!(std::abs(shape.box.min.x) < span_limit && std::abs(shape.box.max.x) < span_limit &&
          std::abs(shape.box.min.y) < span_limit && std::abs(shape.box.max.y) < span_limit))
        throw GridError("grid would be too large for the requested spacing");

    i_min = static_cast<int>(std::floor(shape.box.min.x)) - 1;
    j_min = static_cast<int>(std::floor(shape.box.min.y)) - 1;
    nx = static_cast<int>(std::ceil(shape.box.max.x)) + 2 - i_min;
    ny = static_cast<int>(std::ceil(shape.box.max.y)) + 2 - j_min;
    if (static_cast<double>(nx) * ny > 2.5e8) throw GridError("grid would be too large for the requested spacing");

    index.assign(static_cast<std::size_t>(nx) * ny, -1);
    for (int j = j_min; j < j_min + ny; ++j)
        for (int i = i_min; i < i_min + nx; ++i) {
            const Point2 x{static_cast<double>(i), static_cast<double>(j)};
            if (shape.inner_distance(x) > options.boundary_margin) {
                index[static_cast<std::size_t>(j - j_min) * nx + (i - i_min)] = static_cast<std::int32_t>(nodes.size());
                nodes.push_back({i, j});
            }
        }
    if (nodes.empty()) throw GridError("grid too coarse: the domain contains no interior lattice node");

    auto lookup = [&](int i, int j) -> std::int32_t {
        if (i < i_min || j < j_min || i >= i_min + nx || j >= j_min + ny) return -1;
        return index[static_cast<std::size_t>(j - j_min) * nx + (i - i_min)];
    };

    double longest = 0.0;
    for (const Direction& d : stencil.directions()) longest = std::max(longest, d.length);

    const std::size_t K = stencil.size();
    arms.resize(nodes.size() * K);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const auto [i, j] = nodes[k];
        const Point2 x{static_cast<double>(i), static_cast<double>(j)};
        const bool deep = shape.inner_distance(x) >= longest;
        for (std::size_t d = 0; d < K; ++d) {
            const Direction& dir = stencil[d];
            Arm& arm = arms[k * K + d];
            auto resolve = [&](int sign, double& s, std::int32_t& neighbour) {
                const double t = deep ? longest : shape.exit_distance(x, sign * dir.unit);
                if (t >= dir.length * (1.0 - 1e-12)) {
                    s = dir.length;
                    neighbour = lookup(i + sign * dir.p, j + sign * dir.q);
                } else {
                    s = std::max(t, options.arm_floor);
                    neighbour = -1;
                }
            };
            resolve(+1, arm.plus, arm.plus_node);
            resolve(-1, arm.minus, arm.minus_node);
        }
    }
}

}  // namespace

StencilSet::StencilSet(int width) : width_(width) {
    if (width < 1) throw GridError("stencil width must be >= 1, got " + std::to_string(width));
    for (int p = 0; p <= width; ++p)
        for (int q = -width; q <= width; ++q) {
            if (p == 0 && q <= 0) continue;
            if (std::gcd(p, std::abs(q)) != 1) continue;
            Direction d;
            d.p = p;
            d.q = q;
            d.length = std::hypot(static_cast<double>(p), static_cast<double>(q));
            d.unit = {p / d.length, q / d.length};
            d.angle = std::atan2(static_cast<double>(q), static_cast<double>(p));
            if (d.angle < 0.0) d.angle += kPi;
            directions_.push_back(d);
        }
    std::sort(directions_.begin(), directions_.end(), [](const Direction& a, const Direction& b) {
        const int ra = std::max(a.p, std::abs(a.q));
        const int rb = std::max(b.p, std::abs(b.q));
        if (ra != rb) return ra < rb;
        const int la = a.p + std::abs(a.q);
        const int lb = b.p + std::abs(b.q);
        if (la != lb) return la < lb;
        return a.angle < b.angle;
    });
}

double StencilSet::max_angular_gap() const {
    std::vector<double> angles;
    for (const Direction& d : directions_) angles.push_back(d.angle);
    std::sort(angles.begin(), angles.end());
    double gap = kPi - angles.back() + angles.front();
    for (std::size_t k = 1; k < angles.size(); ++k) gap = std::max(gap, angles[k] - angles[k - 1]);
    return gap;
}

StencilSet build_stencil(int width) { return StencilSet(width); }

Point2 Grid2::position(std::size_t k) const {
    const LatticeNode n = nodes_[k];
    return position(n.i, n.j);
}

std::int32_t Grid2::index_of(int i, int j) const {
    if (i < i_min_ || j < j_min_ || i >= i_min_ + nx_ || j >= j_min_ + ny_) return -1;
    return index_[static_cast<std::size_t>(j - j_min_) * nx_ + (i - i_min_)];
}

double Grid2::min_arm_product() const {
    double m = std::numeric_limits<double>::infinity();
    for (const Arm& a : arms_) m = std::min(m, a.plus * a.minus);
    return m;
}

void Grid2::write_mask_csv(std::ostream& out) const {
    out << "i,j,x,y,interior\n";
    out.precision(17);
    for (int j = j_min_; j < j_min_ + ny_; ++j)
        for (int i = i_min_; i < i_min_ + nx_; ++i) {
            const Point2 p = position(i, j);
            out << i << ',' << j << ',' << p.x << ',' << p.y << ',' << (is_interior(i, j) ? 1 : 0) << '\n';
        }
}

void Grid2::write_arms_csv(std::ostream& out) const {
    out << "node,i,j,direction,p,q,s_plus,s_minus,plus_node,minus_node\n";
    out.precision(17);
    for (std::size_t k = 0; k < nodes_.size(); ++k)
        for (std::size_t d = 0; d < stencil_.size(); ++d) {
            const Arm& a = arm(k, d);
            out << k << ',' << nodes_[k].i << ',' << nodes_[k].j << ',' << d << ',' << stencil_[d].p << ','
                << stencil_[d].q << ',' << h_ * a.plus << ',' << h_ * a.minus << ',' << a.plus_node << ','
                << a.minus_node << '\n';
        }
}

Grid2 rasterize(const PlanarRegion& region, double h, const StencilSet& stencil, const GridOptions& options) {
    if (!(h > 0.0) || !std::isfinite(h)) throw GridError("grid spacing must be positive");
    if (!(options.arm_floor > 0.0 && options.arm_floor < 1.0)) throw GridError("arm floor must lie in (0, 1)");

    Grid2 grid(stencil);
    grid.h_ = h;
    if (const auto* disk = std::get_if<Disk>(&region)) {
        grid.origin_ = options.anchor.value_or(disk->center);
        fill_grid(to_lattice(*disk, grid.origin_, h), stencil, options, grid.i_min_, grid.j_min_, grid.nx_,
                  grid.ny_, grid.nodes_, grid.index_, grid.arms_);
    } else {
        const auto& poly = std::get<ConvexPolygon>(region);
        grid.origin_ = options.anchor.value_or(poly.bounding_box().center());
        fill_grid(to_lattice(poly, grid.origin_, h), stencil, options, grid.i_min_, grid.j_min_, grid.nx_,
                  grid.ny_, grid.nodes_, grid.index_, grid.arms_);
    }
    return grid;
}

Grid2 rasterize(const DomainSpec& domain, double h, const StencilSet& stencil, const GridOptions& options) {
    return rasterize(planar_region(domain), h, stencil, options);
}

std::shared_ptr<const Grid2> make_grid(const DomainSpec& domain, double h, const StencilSet& stencil,
                                       const GridOptions& options) {
    return std::make_shared<const Grid2>(rasterize(domain, h, stencil, options));
}

ScalarField::ScalarField(std::shared_ptr<const Grid2> grid) : grid_(std::move(grid)) {
    if (!grid_) throw GridError("scalar field needs a grid");
    values_.assign(grid_->interior_count(), 0.0);
}

ScalarField::ScalarField(std::shared_ptr<const Grid2> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) throw GridError("scalar field needs a grid");
    if (values_.size() != grid_->interior_count())
        throw GridError("scalar field has " + std::to_string(values_.size()) + " values for " +
                        std::to_string(grid_->interior_count()) + " interior nodes");
    for (double v : values_)
        if (!std::isfinite(v)) throw GridError("scalar field value is not finite");
}

double ScalarField::at(int i, int j) const {
    const std::int32_t k = grid_->index_of(i, j);
    return k < 0 ? 0.0 : values_[static_cast<std::size_t>(k)];
}

void ScalarField::write_csv(std::ostream& out) const {
    out << "x,y,u\n";
    out.precision(17);
    for (std::size_t k = 0; k < values_.size(); ++k) {
        const Point2 p = grid_->position(k);
        out << p.x << ',' << p.y << ',' << values_[k] << '\n';
    }
}

}  // namespace trunclap
