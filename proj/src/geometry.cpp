#include "trunclap/geometry.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace trunclap {

namespace {

constexpr double kPi = std::numbers::pi;

bool in_circle(const Circle& c, Point2 p) {
    return distance(c.center, p) <= c.radius * (1.0 + 1e-12) + 1e-15;
}

Circle circle_from(Point2 a, Point2 b) {
    return {0.5 * (a + b), 0.5 * distance(a, b)};
}

Circle circle_from(Point2 a, Point2 b, Point2 c) {
    const Point2 ab = b - a;
    const Point2 ac = c - a;
    const double d = 2.0 * cross(ab, ac);
    if (std::abs(d) <= 1e-300) {
        // collinear: the widest pair spans the circle
        Circle best = circle_from(a, b);
        for (const Circle& cand : {circle_from(a, c), circle_from(b, c)})
            if (cand.radius > best.radius) best = cand;
        return best;
    }
    const double ab2 = dot(ab, ab);
    const double ac2 = dot(ac, ac);
    const Point2 offset{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
    const Point2 center = a + offset;
    const double r = std::max({distance(center, a), distance(center, b), distance(center, c)});
    return {center, r};
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Point2> vertices) {
    for (const Point2& p : vertices)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw GeometryError("polygon vertex has non-finite coordinate");
    if (vertices.size() < 3)
        throw GeometryError("polygon needs at least 3 vertices, got " + std::to_string(vertices.size()));

    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Point2& a = vertices[i];
        const Point2& b = vertices[(i + 1) % vertices.size()];
        if (distance(a, b) <= kGeomTol)
            throw GeometryError("polygon has coincident consecutive vertices at index " + std::to_string(i));
    }

    // Merge collinear runs; reject reflex turns.
    bool changed = true;
    while (changed && vertices.size() >= 3) {
        changed = false;
        const std::size_t n = vertices.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point2& prev = vertices[(i + n - 1) % n];
            const Point2& cur = vertices[i];
            const Point2& next = vertices[(i + 1) % n];
            const Point2 e1 = cur - prev;
            const Point2 e2 = next - cur;
            const double scale_ = norm(e1) * norm(e2);
            const double c = cross(e1, e2);
            if (std::abs(c) <= kGeomTol * scale_) {
                if (dot(e1, e2) < 0.0) throw GeometryError("polygon folds back on itself");
                vertices.erase(vertices.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
            if (c < 0.0) throw GeometryError("polygon is not convex and counterclockwise (reflex turn at vertex " + std::to_string(i) + ")");
        }
    }
    if (vertices.size() < 3) throw GeometryError("polygon is degenerate after merging collinear vertices");

    double turning = 0.0;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 e1 = vertices[(i + 1) % n] - vertices[i];
        const Point2 e2 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
        turning += std::atan2(cross(e1, e2), dot(e1, e2));
    }
    if (std::abs(turning - 2.0 * kPi) > 1e-6) throw GeometryError("polygon winds more than once");

    vertices_ = std::move(vertices);
    if (!(area(*this) > 0.0)) throw GeometryError("polygon has non-positive area");
}

BoundingBox ConvexPolygon::bounding_box() const {
    BoundingBox box{vertices_.front(), vertices_.front()};
    for (const Point2& p : vertices_) {
        box.min.x = std::min(box.min.x, p.x);
        box.min.y = std::min(box.min.y, p.y);
        box.max.x = std::max(box.max.x, p.x);
        box.max.y = std::max(box.max.y, p.y);
    }
    return box;
}

double ConvexPolygon::inner_distance(Point2 p) const {
    double d = std::numeric_limits<double>::infinity();
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 e = vertices_[(i + 1) % n] - vertices_[i];
        d = std::min(d, cross(e, p - vertices_[i]) / norm(e));
    }
    return d;
}

double diameter(const ConvexPolygon& poly) {
    const auto v = poly.vertices();
    const std::size_t n = v.size();
    auto at = [&](std::size_t i) -> const Point2& { return v[i % n]; };

    double best = 0.0;
    std::size_t j = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 edge = at(i + 1) - at(i);
        std::size_t guard = 0;
        while (cross(edge, at(j + 1) - at(j)) > 0.0 && guard++ < n) j = (j + 1) % n;
        best = std::max({best, distance(at(i), at(j)), distance(at(i + 1), at(j)),
                         distance(at(i), at(j + 1)), distance(at(i + 1), at(j + 1))});
    }
    return best;
}

double chord_length(const ConvexPolygon& poly, Point2 u) {
    const Point2 n{-u.y, u.x};
    double best = 0.0;
    for (const Point2& v : poly.vertices()) {
        const double c = dot(n, v);
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const Point2 a = poly.vertex(i), b = poly.vertex(i + 1);
            const double fa = dot(n, a) - c, fb = dot(n, b) - c;
            if (fa * fb > 0.0) continue;
            if (fa == fb) {
                lo = std::min({lo, dot(u, a), dot(u, b)});
                hi = std::max({hi, dot(u, a), dot(u, b)});
                continue;
            }
            const double t = dot(u, a + (fa / (fa - fb)) * (b - a));
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
        best = std::max(best, hi - lo);
    }
    return best;
}

double perimeter(const ConvexPolygon& poly) {
    double sum = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) sum += distance(poly.vertex(i), poly.vertex(i + 1));
    return sum;
}

double area(const ConvexPolygon& poly) {
    // shoelace relative to the first vertex
    const Point2 o = poly[0];
    double twice = 0.0;
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) twice += cross(poly[i] - o, poly[i + 1] - o);
    return 0.5 * twice;
}

Circle min_enclosing_circle(const ConvexPolygon& poly) {
    std::vector<Point2> pts(poly.vertices().begin(), poly.vertices().end());
    // fixed pseudo-random order keeps the expected running time linear
    std::uint64_t state = 0x9E3779B97F4A7C15ull;
    for (std::size_t i = pts.size(); i > 1; --i) {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        std::swap(pts[i - 1], pts[state % i]);
    }

    Circle c{pts[0], 0.0};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (in_circle(c, pts[i])) continue;
        c = {pts[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (in_circle(c, pts[j])) continue;
            c = circle_from(pts[i], pts[j]);
            for (std::size_t k = 0; k < j; ++k)
                if (!in_circle(c, pts[k])) c = circle_from(pts[i], pts[j], pts[k]);
        }
    }
    return c;
}

double jung_bound(double diam, int dim) {
    if (!(diam > 0.0) || !std::isfinite(diam)) throw GeometryError("jung_bound: diameter must be positive");
    if (dim < 1) throw GeometryError("jung_bound: dimension must be >= 1");
    const double n = static_cast<double>(dim);
    return (n + 1.0) / (2.0 * n) * kPi * kPi / (diam * diam);
}

ConvexPolygon regular_polygon(int n, double circumradius, double phase) {
    if (n < 3) throw GeometryError("regular_polygon: need n >= 3");
    if (!(circumradius > 0.0) || !std::isfinite(circumradius))
        throw GeometryError("regular_polygon: circumradius must be positive");
    std::vector<Point2> v;
    v.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double a = phase + 2.0 * kPi * k / n;
        v.push_back({circumradius * std::cos(a), circumradius * std::sin(a)});
    }
    return ConvexPolygon(std::move(v));
}

ConvexPolygon reuleaux_polygon(int n, double width, int arc_samples) {
    if (n < 3 || n % 2 == 0) throw GeometryError("reuleaux_polygon: number of sides must be odd and >= 3");
    if (!(width > 0.0) || !std::isfinite(width)) throw GeometryError("reuleaux_polygon: width must be positive");
    if (arc_samples < 2) throw GeometryError("reuleaux_polygon: arc_samples must be >= 2");

    // regular n-gon whose longest diagonal equals the width
    const double circumradius = width / (2.0 * std::cos(kPi / (2.0 * n)));
    std::vector<Point2> corners;
    for (int k = 0; k < n; ++k) {
        const double a = 0.5 * kPi + 2.0 * kPi * k / n;
        corners.push_back({circumradius * std::cos(a), circumradius * std::sin(a)});
    }

    const double sweep = kPi / n;
    std::vector<Point2> v;
    v.reserve(static_cast<std::size_t>(n * (arc_samples - 1)));
    for (int i = 0; i < n; ++i) {
        const Point2 start = corners[static_cast<std::size_t>(i)];
        const Point2 pivot = corners[static_cast<std::size_t>((i + (n + 1) / 2) % n)];
        const double a0 = std::atan2(start.y - pivot.y, start.x - pivot.x);
        v.push_back(start);
        for (int j = 1; j < arc_samples - 1; ++j) {
            const double a = a0 + sweep * j / (arc_samples - 1);
            v.push_back({pivot.x + width * std::cos(a), pivot.y + width * std::sin(a)});
        }
    }
    return ConvexPolygon(std::move(v));
}

ConvexPolygon scale(const ConvexPolygon& poly, double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw GeometryError("scale: factor must be positive");
    std::vector<Point2> v;
    v.reserve(poly.size());
    for (const Point2& p : poly.vertices()) v.push_back(t * p);
    return ConvexPolygon(std::move(v));
}

ConvexPolygon translate(const ConvexPolygon& poly, Point2 offset) {
    std::vector<Point2> v;
    v.reserve(poly.size());
    for (const Point2& p : poly.vertices()) v.push_back(p + offset);
    return ConvexPolygon(std::move(v));
}

double support(const ConvexPolygon& poly, double theta) {
    const Point2 dir{std::cos(theta), std::sin(theta)};
    double best = -std::numeric_limits<double>::infinity();
    for (const Point2& p : poly.vertices()) best = std::max(best, dot(p, dir));
    return best;
}

double support_hausdorff(const ConvexPolygon& a, const ConvexPolygon& b, int samples) {
    if (samples < 1) throw GeometryError("support_hausdorff: need at least one sample angle");
    double best = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double theta = 2.0 * kPi * k / samples;
        best = std::max(best, std::abs(support(a, theta) - support(b, theta)));
    }
    return best;
}

double point_distance(const ConvexPolygon& poly, Point2 p) {
    if (poly.inner_distance(p) >= 0.0) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point2 a = poly.vertex(i);
        const Point2 e = poly.vertex(i + 1) - a;
        const double t = std::clamp(dot(p - a, e) / dot(e, e), 0.0, 1.0);
        best = std::min(best, distance(p, a + t * e));
    }
    return best;
}

double hausdorff_distance(const ConvexPolygon& a, const ConvexPolygon& b, int samples) {
    double vertex_term = 0.0;
    for (const Point2& p : a.vertices()) vertex_term = std::max(vertex_term, point_distance(b, p));
    for (const Point2& p : b.vertices()) vertex_term = std::max(vertex_term, point_distance(a, p));
    return std::max(vertex_term, support_hausdorff(a, b, samples));
}

ConvexPolygon clip_halfplane(const ConvexPolygon& poly, Point2 normal, double offset) {
    std::vector<Point2> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 p = poly.vertex(i);
        const Point2 q = poly.vertex(i + 1);
        const double fp = dot(normal, p) - offset;
        const double fq = dot(normal, q) - offset;
        if (fp <= 0.0) out.push_back(p);
        if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
            const double t = fp / (fp - fq);
            out.push_back(p + t * (q - p));
        }
    }
    // drop near-duplicates produced by cuts through a vertex
    std::vector<Point2> cleaned;
    for (const Point2& p : out)
        if (cleaned.empty() || distance(cleaned.back(), p) > kGeomTol) cleaned.push_back(p);
    while (cleaned.size() > 1 && distance(cleaned.front(), cleaned.back()) <= kGeomTol) cleaned.pop_back();
    return ConvexPolygon(std::move(cleaned));
}

std::string to_string(const ConvexPolygon& poly) {
    std::ostringstream os;
    os.precision(17);
    os << '[';
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (i) os << ',';
        os << '[' << poly[i].x << ',' << poly[i].y << ']';
    }
    os << ']';
    return os.str();
}

}  // namespace trunclap
