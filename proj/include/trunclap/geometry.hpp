#pragma once

/// @file geometry.hpp
/// @brief Planar convex-geometry primitives: diameter, perimeter, area,
///        minimal enclosing circle, Reuleaux polygons, Hausdorff distance.

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace trunclap {

/// Absolute tolerance for geometric equality checks at unit scale.
inline constexpr double kGeomTol = 1e-9;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(double t, Point2 a) { return {t * a.x, t * a.y}; }
    friend bool operator==(Point2 a, Point2 b) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct BoundingBox {
    Point2 min;
    Point2 max;

    Point2 center() const { return {0.5 * (min.x + max.x), 0.5 * (min.y + max.y)}; }
};

/// Convex polygon with counterclockwise vertices.
///
/// Construction validates the input and merges collinear consecutive
/// vertices, so every instance satisfies: at least 3 vertices, strictly
/// convex turns, positive signed area, finite coordinates.
class ConvexPolygon {
public:
    explicit ConvexPolygon(std::vector<Point2> vertices);

    std::span<const Point2> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    const Point2& operator[](std::size_t i) const { return vertices_[i]; }
    const Point2& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

    BoundingBox bounding_box() const;

    /// Signed distance to the boundary, positive inside (exact for convex polygons).
    double inner_distance(Point2 p) const;

    bool contains(Point2 p, double tol = kGeomTol) const { return inner_distance(p) >= -tol; }

private:
    std::vector<Point2> vertices_;
};

struct Circle {
    Point2 center;
    double radius = 0.0;
};

double diameter(const ConvexPolygon& poly);
/// Longest chord parallel to the unit vector u. The chord length is concave in
/// the line offset, so the maximum is attained on a line through a vertex.
double chord_length(const ConvexPolygon& poly, Point2 u);
double perimeter(const ConvexPolygon& poly);
double area(const ConvexPolygon& poly);

/// Smallest circle containing every vertex (randomized incremental
/// construction with a fixed visiting order, so the result is deterministic).
Circle min_enclosing_circle(const ConvexPolygon& poly);

/// (N+1)/(2N) * pi^2 / diam^2: the eigenvalue floor obtained from Jung's
/// enclosing-ball radius.
double jung_bound(double diam, int dim);

/// Regular polygon with vertices at angle phase + 2*pi*k/n.
ConvexPolygon regular_polygon(int n, double circumradius, double phase = 0.0);

/// Inscribed polygonal approximation of the Reuleaux n-gon of constant width
/// `width`. Each of the n arcs is sampled at `arc_samples` points including
/// both endpoints, so arc_samples = 2 returns the underlying regular n-gon.
ConvexPolygon reuleaux_polygon(int n, double width, int arc_samples);

ConvexPolygon scale(const ConvexPolygon& poly, double t);
ConvexPolygon translate(const ConvexPolygon& poly, Point2 offset);

/// Support function h(theta) = max_v <v, (cos theta, sin theta)>.
double support(const ConvexPolygon& poly, double theta);

/// max_k |h_a(theta_k) - h_b(theta_k)| over K uniformly spaced angles.
/// A lower bound for the Hausdorff distance that converges as K grows.
double support_hausdorff(const ConvexPolygon& a, const ConvexPolygon& b, int samples);

/// Distance from a point to a convex polygon (zero inside).
double point_distance(const ConvexPolygon& poly, Point2 p);

/// Symmetric Hausdorff distance between convex polygons.
///
/// Combines the support-function estimate with vertex-to-polygon distances.
/// The vertex term is exact for convex polygons (the distance to a convex set
/// is convex, so its maximum over a polygon sits at a vertex); the sampled
/// support term never exceeds it and serves as a cross-check.
double hausdorff_distance(const ConvexPolygon& a, const ConvexPolygon& b, int samples = 720);

/// Intersection with the half-plane {p : <n, p> <= c}.
ConvexPolygon clip_halfplane(const ConvexPolygon& poly, Point2 normal, double offset);

std::string to_string(const ConvexPolygon& poly);

}  // namespace trunclap
