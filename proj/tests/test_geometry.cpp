#include "trunclap/geometry.hpp"
#include "trunclap/sampling.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace trunclap;

namespace {

constexpr double kPi = std::numbers::pi;

ConvexPolygon unit_square() { return ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

double brute_diameter(const ConvexPolygon& p) {
    double d = 0;
    for (const Point2& a : p.vertices())
        for (const Point2& b : p.vertices()) d = std::max(d, distance(a, b));
    return d;
}

double fan_area(const ConvexPolygon& p) {
    double s = 0;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) s += 0.5 * cross(p[i] - p[0], p[i + 1] - p[0]);
    return s;
}

// exhaustive: every circle through 2 or 3 vertices that holds all of them
double brute_enclosing_radius(const ConvexPolygon& p) {
    const auto v = p.vertices();
    const std::size_t n = v.size();
    double best = 1e300;
    auto holds = [&](Point2 c, double r) {
        for (const Point2& q : v)
            if (distance(q, c) > r * (1 + 1e-12) + 1e-12) return false;
        return true;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Point2 c = 0.5 * (v[i] + v[j]);
            const double r = 0.5 * distance(v[i], v[j]);
            if (holds(c, r)) best = std::min(best, r);
            for (std::size_t k = j + 1; k < n; ++k) {
                const Point2 a = v[i], b = v[j], cc = v[k];
                const double d = 2 * (a.x * (b.y - cc.y) + b.x * (cc.y - a.y) + cc.x * (a.y - b.y));
                if (std::abs(d) < 1e-14) continue;
                const double a2 = dot(a, a), b2 = dot(b, b), c2 = dot(cc, cc);
                const Point2 o{(a2 * (b.y - cc.y) + b2 * (cc.y - a.y) + c2 * (a.y - b.y)) / d,
                               (a2 * (cc.x - b.x) + b2 * (a.x - cc.x) + c2 * (b.x - a.x)) / d};
                const double r = distance(o, a);
                if (holds(o, r)) best = std::min(best, r);
            }
        }
    return best;
}

}  // namespace

TEST_SUITE("geometry") {
    TEST_CASE("unit square measures") {
        const ConvexPolygon sq = unit_square();
        CHECK(diameter(sq) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
        CHECK(perimeter(sq) == doctest::Approx(4.0));
        CHECK(area(sq) == doctest::Approx(1.0));
        const Circle c = min_enclosing_circle(sq);
        CHECK(c.center.x == doctest::Approx(0.5));
        CHECK(c.center.y == doctest::Approx(0.5));
        CHECK(c.radius == doctest::Approx(std::sqrt(2.0) / 2));
    }

    TEST_CASE("simple triangles") {
        CHECK(area(ConvexPolygon({{0, 0}, {1, 0}, {0, 1}})) == doctest::Approx(0.5));
        const ConvexPolygon eq = regular_polygon(3, 1 / std::sqrt(3.0));
        CHECK(perimeter(eq) == doctest::Approx(3.0));
        // an equilateral triangle needs the full circumradius, more than diam/2
        CHECK(min_enclosing_circle(eq).radius == doctest::Approx(1 / std::sqrt(3.0)));
        CHECK(min_enclosing_circle(eq).radius > 0.5 * diameter(eq) + 0.01);
    }

    TEST_CASE("validation rejects malformed input") {
        CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}}), GeometryError);
        CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), GeometryError);
        CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {0, 1}, {1, 0}}), GeometryError);             // clockwise
        CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {2, 0}, {1, 0.1}, {2, 1}, {0, 1}}), GeometryError);  // reflex
        CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}, {2, 0}}), GeometryError);             // no area
        CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}, {0, NAN}}), GeometryError);
    }

    TEST_CASE("collinear vertices are merged") {
        const ConvexPolygon p({{0, 0}, {0.5, 0}, {1, 0}, {1, 1}, {0, 1}});
        CHECK(p.size() == 4);
        CHECK(area(p) == doctest::Approx(1.0));
    }

    TEST_CASE("diameter matches all-pairs brute force on random polygons") {
        PolygonSampler s(11);
        for (int k = 0; k < 1000; ++k) {
            const ConvexPolygon p = s.polygon(3, 12);
            REQUIRE(diameter(p) == doctest::Approx(brute_diameter(p)).epsilon(1e-14));
        }
    }

    TEST_CASE("area matches fan triangulation") {
        PolygonSampler s(12);
        for (int k = 0; k < 200; ++k) {
            const ConvexPolygon p = s.polygon(6, 6);
            REQUIRE(area(p) == doctest::Approx(fan_area(p)).epsilon(1e-13));
        }
    }

    TEST_CASE("regular polygon perimeter 2nR sin(pi/n)") {
        for (int n : {3, 4, 5, 7, 12, 50}) {
            const double R = 0.7;
            const ConvexPolygon p = regular_polygon(n, R);
            double edges = 0;
            for (std::size_t i = 0; i < p.size(); ++i) edges += distance(p.vertex(i), p.vertex(i + 1));
            CHECK(perimeter(p) == doctest::Approx(edges).epsilon(1e-14));
            CHECK(perimeter(p) == doctest::Approx(2 * n * R * std::sin(kPi / n)).epsilon(1e-13));
        }
        CHECK(perimeter(regular_polygon(2000, 1.0)) == doctest::Approx(2 * kPi).epsilon(1e-5));
        CHECK(diameter(regular_polygon(6, 1.0)) == doctest::Approx(2.0));
        CHECK(diameter(regular_polygon(4, std::sqrt(2.0) / 2, kPi / 4)) == doctest::Approx(std::sqrt(2.0)));
    }

    TEST_CASE("enclosing circle matches exhaustive search and Jung's range") {
        PolygonSampler s(13);
        for (int k = 0; k < 300; ++k) {
            const ConvexPolygon p = s.polygon(3, 9);
            const double r = min_enclosing_circle(p).radius;
            REQUIRE(r == doctest::Approx(brute_enclosing_radius(p)).epsilon(1e-10));
            const double d = diameter(p);
            REQUIRE(r >= d / 2 - 1e-12);
            REQUIRE(r <= d / std::sqrt(3.0) + 1e-12);
        }
        // even regular polygons attain the lower end
        const ConvexPolygon hex = regular_polygon(6, 0.5);
        CHECK(min_enclosing_circle(hex).radius == doctest::Approx(diameter(hex) / 2).epsilon(1e-12));
    }

    TEST_CASE("jung bound") {
        CHECK(jung_bound(1.0, 2) == doctest::Approx(3 * kPi * kPi / 4));
        CHECK(jung_bound(2.0, 2) == doctest::Approx(3 * kPi * kPi / 16));
        CHECK(jung_bound(1.0, 100000) == doctest::Approx(kPi * kPi / 2).epsilon(1e-4));
        CHECK_THROWS(jung_bound(0.0, 2));
        CHECK_THROWS(jung_bound(1.0, 0));
    }

    TEST_CASE("reuleaux polygons have constant width") {
        for (int n : {3, 5, 7, 9})
            for (int m : {2, 3, 8, 64}) {
                const ConvexPolygon r = reuleaux_polygon(n, 1.0, m);
                REQUIRE(diameter(r) == doctest::Approx(1.0).epsilon(1e-12));
            }
        CHECK(reuleaux_polygon(3, 1.0, 2).size() == 3);
        CHECK_THROWS_AS(reuleaux_polygon(4, 1.0, 8), GeometryError);
        CHECK_THROWS_AS(reuleaux_polygon(3, 0.0, 8), GeometryError);
        CHECK_THROWS_AS(reuleaux_polygon(3, 1.0, 1), GeometryError);
    }

    TEST_CASE("reuleaux triangle perimeter rises to pi (Barbier)") {
        double prev = 0;
        for (int m : {2, 3, 5, 9, 17, 33, 65, 129}) {
            const double p = perimeter(reuleaux_polygon(3, 1.0, m));
            // chord-sum oracle: 3 arcs of angle pi/3, radius 1, split into m-1 chords
            const double chords = 3 * (m - 1) * 2 * std::sin(kPi / 3 / (2 * (m - 1)));
            CHECK(p == doctest::Approx(chords).epsilon(1e-12));
            CHECK(p > prev);
            CHECK(p < kPi);
            prev = p;
        }
        CHECK(prev == doctest::Approx(kPi).epsilon(1e-4));
    }

    TEST_CASE("reuleaux pentagon is larger than the triangle") {
        CHECK(area(reuleaux_polygon(5, 1.0, 256)) > area(reuleaux_polygon(3, 1.0, 256)));
    }

    TEST_CASE("scaling is homogeneous") {
        PolygonSampler s(14);
        for (int k = 0; k < 100; ++k) {
            const ConvexPolygon p = s.polygon();
            const double t = s.uniform(0.1, 5);
            const ConvexPolygon q = scale(p, t);
            REQUIRE(diameter(q) == doctest::Approx(t * diameter(p)).epsilon(1e-14));
            REQUIRE(perimeter(q) == doctest::Approx(t * perimeter(p)).epsilon(1e-14));
            REQUIRE(area(q) == doctest::Approx(t * t * area(p)).epsilon(1e-14));
        }
        const ConvexPolygon sq = unit_square();
        CHECK(to_string(scale(sq, 1.0)) == to_string(sq));
        CHECK(diameter(scale(sq, 2)) == doctest::Approx(2 * std::sqrt(2.0)));
        CHECK(area(scale(sq, 2)) == doctest::Approx(4.0));
        CHECK_THROWS_AS(scale(sq, 0.0), GeometryError);
    }

    TEST_CASE("hausdorff distance") {
        const ConvexPolygon sq = translate(unit_square(), {-0.5, -0.5});
        CHECK(hausdorff_distance(sq, sq) == 0.0);
        const ConvexPolygon big = scale(sq, 1.1);
        const double expected = 0.1 * std::sqrt(2.0) / 2;
        CHECK(hausdorff_distance(sq, big) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(support_hausdorff(sq, big, 7200) == doctest::Approx(expected).epsilon(1e-6));
        CHECK(hausdorff_distance(sq, translate(sq, {3.0, 0.0})) >= 3.0);
    }

    TEST_CASE("hausdorff is a metric on random polygons") {
        PolygonSampler s(15);
        for (int k = 0; k < 100; ++k) {
            const ConvexPolygon a = s.polygon(), b = s.polygon(), c = s.polygon();
            const double ab = hausdorff_distance(a, b), ba = hausdorff_distance(b, a);
            REQUIRE(ab == doctest::Approx(ba).epsilon(1e-12));
            REQUIRE(ab > 0.0);
            REQUIRE(ab <= hausdorff_distance(a, c) + hausdorff_distance(c, b) + 1e-12);
            // the sampled support term is a lower bound
            REQUIRE(support_hausdorff(a, b, 720) <= ab + 1e-12);
        }
    }

    TEST_CASE("longest chord in a direction") {
        const ConvexPolygon sq = unit_square();
        CHECK(chord_length(sq, {1, 0}) == doctest::Approx(1.0));
        CHECK(chord_length(sq, {std::sqrt(0.5), std::sqrt(0.5)}) == doctest::Approx(std::sqrt(2.0)));
        PolygonSampler s(16);
        for (int k = 0; k < 100; ++k) {
            const ConvexPolygon p = s.polygon();
            const double t = s.uniform(0, kPi);
            const Point2 u{std::cos(t), std::sin(t)};
            // oracle: clip many parallel lines against the polygon
            double brute = 0;
            const Point2 n{-u.y, u.x};
            double lo = 1e300, hi = -1e300;
            for (const Point2& v : p.vertices()) {
                lo = std::min(lo, dot(n, v));
                hi = std::max(hi, dot(n, v));
            }
            for (int i = 0; i <= 4000; ++i) {
                const double c = lo + (hi - lo) * i / 4000.0;
                const ConvexPolygon* q = &p;
                double a = -1e300, b = 1e300;
                for (std::size_t e = 0; e < q->size(); ++e) {
                    const Point2 x = q->vertex(e), y = q->vertex(e + 1);
                    const double fx = dot(n, x) - c, fy = dot(n, y) - c;
                    if (fx * fy > 0 || fx == fy) continue;
                    const double t0 = dot(u, x + (fx / (fx - fy)) * (y - x));
                    a = std::max(a, t0);
                    b = std::min(b, t0);
                }
                if (a > b) brute = std::max(brute, a - b);
            }
            const double L = chord_length(p, u);
            REQUIRE(L >= brute - 1e-12);
            REQUIRE(L <= brute * (1 + 2e-3) + 1e-9);
            REQUIRE(L <= diameter(p) + 1e-12);
        }
    }

    TEST_CASE("half-plane clipping") {
        const ConvexPolygon sq = unit_square();
        const ConvexPolygon half = clip_halfplane(sq, {1, 0}, 0.5);
        CHECK(area(half) == doctest::Approx(0.5));
        CHECK(half.contains({0.25, 0.5}));
        CHECK(!half.contains({0.75, 0.5}));
    }
}
