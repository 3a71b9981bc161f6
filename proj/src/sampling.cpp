#include "trunclap/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace trunclap {

ConvexPolygon PolygonSampler::polygon(int min_vertices, int max_vertices) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const int n = uniform_int(min_vertices, max_vertices);
    const double a = uniform(0.5, 1.0);
    const double b = uniform(0.3, 1.0);
    const double rot = uniform(0.0, two_pi);
    const Point2 centre{uniform(-0.5, 0.5), uniform(-0.5, 0.5)};

    // n gaps of at least 40% of the mean gap, randomly distributed
    std::vector<double> gaps(n);
    double total = 0.0;
    for (double& g : gaps) total += (g = 0.4 + uniform(0.0, 1.2));
    double theta = uniform(0.0, two_pi);
    std::vector<Point2> v;
    v.reserve(n);
    const double c = std::cos(rot), s = std::sin(rot);
    for (int k = 0; k < n; ++k) {
        const Point2 e{a * std::cos(theta), b * std::sin(theta)};
        v.push_back({centre.x + c * e.x - s * e.y, centre.y + s * e.x + c * e.y});
        theta += two_pi * gaps[k] / total;
    }
    return ConvexPolygon(std::move(v));
}

std::pair<ConvexPolygon, ConvexPolygon> PolygonSampler::nested_pair() {
    ConvexPolygon outer = polygon();
    // interior point: random convex combination of the vertices
    Point2 p{0.0, 0.0};
    double wsum = 0.0;
    for (const Point2& q : outer.vertices()) {
        const double w = uniform(0.1, 1.0);
        p = p + w * q;
        wsum += w;
    }
    p = (1.0 / wsum) * p;

    const double t = uniform(0.85, 1.0);
    std::vector<Point2> shrunk;
    for (const Point2& q : outer.vertices()) shrunk.push_back(p + t * (q - p));
    ConvexPolygon inner(std::move(shrunk));

    // a cut that keeps p and at least part of the shrunken body on its far side
    const double phi = uniform(0.0, 2.0 * std::numbers::pi);
    const Point2 normal{std::cos(phi), std::sin(phi)};
    const double reach = support(inner, phi) - dot(normal, p);
    const double offset = dot(normal, p) + uniform(0.7, 0.98) * reach;
    return {clip_halfplane(inner, normal, offset), std::move(outer)};
}

ConvexPolygon PolygonSampler::perturb(const ConvexPolygon& poly, double delta) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Point2> v;
        for (const Point2& q : poly.vertices()) {
            const double r = delta * std::sqrt(uniform(0.0, 1.0));
            const double phi = uniform(0.0, 2.0 * std::numbers::pi);
            v.push_back({q.x + r * std::cos(phi), q.y + r * std::sin(phi)});
        }
        try {
            return ConvexPolygon(std::move(v));
        } catch (const GeometryError&) {
        }
    }
    throw GeometryError("could not perturb polygon while keeping it convex");
}

}  // namespace trunclap
