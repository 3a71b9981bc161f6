#include "trunclap/grid.hpp"
#include "trunclap/sampling.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

using namespace trunclap;

namespace {

std::size_t count_primitive(int W) {
    std::size_t n = 0;
    for (int p = -W; p <= W; ++p)
        for (int q = -W; q <= W; ++q)
            if ((p || q) && std::gcd(std::abs(p), std::abs(q)) == 1) ++n;
    return n / 2;
}

std::size_t direction_index(const StencilSet& s, int p, int q) {
    for (std::size_t k = 0; k < s.size(); ++k)
        if (s[k].p == p && s[k].q == q) return k;
    FAIL("direction not in stencil");
    return 0;
}

double polygon_signed_distance(const ConvexPolygon& poly, Point2 x) {
    double d = 1e300;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point2 a = poly.vertex(i), b = poly.vertex(i + 1);
        const Point2 e = b - a;
        d = std::min(d, cross(e, x - a) / norm(e));
    }
    return d;
}

}  // namespace

TEST_SUITE("grid") {
    TEST_CASE("stencil directions match a gcd enumeration") {
        for (int W = 1; W <= 8; ++W) {
            const StencilSet s(W);
            CHECK(s.size() == count_primitive(W));
            for (const Direction& d : s.directions()) {
                CHECK(std::gcd(std::abs(d.p), std::abs(d.q)) == 1);
                CHECK(std::max(std::abs(d.p), std::abs(d.q)) <= W);
                CHECK(d.angle >= 0.0);
                CHECK(d.angle < std::numbers::pi);
                CHECK(d.length == doctest::Approx(std::hypot(d.p, d.q)));
            }
        }
        CHECK(StencilSet(1).size() == 4);
        CHECK(StencilSet(2).size() == 8);
        CHECK(StencilSet(4).size() == 24);
        CHECK_THROWS_AS(StencilSet(0), GridError);
    }

    TEST_CASE("wider stencils extend narrower ones and shrink the angular gap") {
        double prev = 10.0;
        for (int W = 1; W <= 6; ++W) {
            const StencilSet narrow(W), wide(W + 1);
            for (std::size_t k = 0; k < narrow.size(); ++k) {
                CHECK(wide[k].p == narrow[k].p);
                CHECK(wide[k].q == narrow[k].q);
            }
            CHECK(narrow.max_angular_gap() < prev);
            prev = narrow.max_angular_gap();
        }
        CHECK(StencilSet(1).max_angular_gap() == doctest::Approx(std::numbers::pi / 4));
        CHECK(StencilSet(4).max_angular_gap() == doctest::Approx(std::atan(0.25)));
    }

    TEST_CASE("unit disk at h = 1/2") {
        const Grid2 g = rasterize(BallSpec{1.0, 2}, 0.5, StencilSet(1));
        // i^2 + j^2 < 4
        CHECK(g.interior_count() == 9);
        CHECK(g.is_interior(1, 1));
        CHECK(!g.is_interior(2, 0));
        const std::size_t c = static_cast<std::size_t>(g.index_of(1, 0));
        // (2,0) lies on the circle: full arm, Dirichlet endpoint
        const Arm& a = g.arm(c, direction_index(g.stencil(), 1, 0));
        CHECK(a.plus == doctest::Approx(1.0));
        CHECK(a.plus_node == -1);
        CHECK(a.minus_node == g.index_of(0, 0));
        const std::size_t corner = static_cast<std::size_t>(g.index_of(1, 1));
        const Arm& b = g.arm(corner, direction_index(g.stencil(), 1, 0));
        CHECK(b.plus == doctest::Approx((std::sqrt(0.75) - 0.5) / 0.5).epsilon(1e-12));
        CHECK(b.minus_node == g.index_of(0, 1));
    }

    TEST_CASE("clipped arms on the square (-1,1)^2 at h = 0.4") {
        const Grid2 g = rasterize(HyperRectSpec{{1.0, 1.0}}, 0.4, StencilSet(2));
        CHECK(g.interior_count() == 25);
        const std::size_t k = static_cast<std::size_t>(g.index_of(2, 2));  // (0.8, 0.8)
        const StencilSet& s = g.stencil();
        const Arm& e1 = g.arm(k, direction_index(s, 1, 0));
        CHECK(e1.plus == doctest::Approx(0.5));
        CHECK(e1.minus == doctest::Approx(1.0));
        CHECK(e1.minus_node == g.index_of(1, 2));
        CHECK(g.arm(k, direction_index(s, 1, 1)).plus == doctest::Approx(0.5 * std::sqrt(2.0)));
        // (1,2) leaves through y = 1 after 0.2 / (0.4 * 2/sqrt5) lattice units
        CHECK(g.arm(k, direction_index(s, 1, 2)).plus == doctest::Approx(std::sqrt(5.0) / 4));
        // (1,-1) runs to the corner (1, 0.6)
        CHECK(g.arm(k, direction_index(s, 1, -1)).plus == doctest::Approx(0.5 * std::sqrt(2.0)));
        CHECK(g.arm_plus(k, direction_index(s, 1, 0)) == doctest::Approx(0.2));
        CHECK(g.min_arm_product() > 0.0);
    }

    TEST_CASE("clipped arm endpoints sit on the boundary") {
        PolygonSampler sampler(21);
        for (int trial = 0; trial < 20; ++trial) {
            const ConvexPolygon p = sampler.polygon();
            const double h = sampler.uniform(1.0 / 24, 1.0 / 8);
            const Grid2 g = rasterize(PlanarRegion{p}, h, StencilSet(3));
            for (std::size_t k = 0; k < g.interior_count(); ++k) {
                const Point2 x = g.position(k);
                REQUIRE(polygon_signed_distance(p, x) > 0.0);
                for (std::size_t d = 0; d < g.stencil().size(); ++d) {
                    const Arm& a = g.arm(k, d);
                    const Point2 u = g.stencil()[d].unit;
                    if (a.plus < g.stencil()[d].length && a.plus > 1e-5)
                        REQUIRE(std::abs(polygon_signed_distance(p, x + (h * a.plus) * u)) < 1e-9);
                    if (a.minus < g.stencil()[d].length && a.minus > 1e-5)
                        REQUIRE(std::abs(polygon_signed_distance(p, x - (h * a.minus) * u)) < 1e-9);
                    if (a.plus_node >= 0) REQUIRE(a.plus == g.stencil()[d].length);
                }
            }
        }
    }

    TEST_CASE("interior node count approximates area") {
        const ConvexPolygon p({{0, 0}, {2, 0.3}, {1.4, 1.1}, {0.2, 0.9}});
        for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
            const Grid2 g = rasterize(PlanarRegion{p}, h, StencilSet(1));
            const double approx = static_cast<double>(g.interior_count()) * h * h;
            CHECK(std::abs(approx - area(p)) <= perimeter(p) * h + h * h);
        }
        const double h = 1.0 / 64;
        const Grid2 disk = rasterize(BallSpec{1.0, 2}, h, StencilSet(1));
        CHECK(std::abs(disk.interior_count() * h * h - std::numbers::pi) <= 2 * std::numbers::pi * h);
    }

    TEST_CASE("scaled domain on a scaled grid gives the same lattice") {
        PolygonSampler sampler(22);
        for (int trial = 0; trial < 20; ++trial) {
            const ConvexPolygon p = sampler.polygon();
            const double t = sampler.uniform(0.3, 4.0);
            const double h = 1.0 / 20;
            const Grid2 a = rasterize(PlanarRegion{p}, h, StencilSet(4));
            const Grid2 b = rasterize(PlanarRegion{scale(p, t)}, t * h, StencilSet(4));
            REQUIRE(a.interior_count() == b.interior_count());
            for (std::size_t k = 0; k < a.interior_count(); ++k) {
                REQUIRE(a.node(k).i == b.node(k).i);
                REQUIRE(a.node(k).j == b.node(k).j);
                for (std::size_t d = 0; d < a.stencil().size(); ++d) {
                    REQUIRE(a.arm(k, d).plus == doctest::Approx(b.arm(k, d).plus).epsilon(1e-12));
                    REQUIRE(a.arm(k, d).minus == doctest::Approx(b.arm(k, d).minus).epsilon(1e-12));
                    REQUIRE(a.arm(k, d).plus_node == b.arm(k, d).plus_node);
                }
            }
        }
    }

    TEST_CASE("mirror symmetry of a centred rectangle") {
        const Grid2 g = rasterize(HyperRectSpec{{1.0, 0.6}}, 1.0 / 7, StencilSet(3));
        const StencilSet& s = g.stencil();
        for (std::size_t k = 0; k < g.interior_count(); ++k) {
            const auto [i, j] = g.node(k);
            const std::int32_t m = g.index_of(-i, j);
            REQUIRE(m >= 0);
            for (std::size_t d = 0; d < s.size(); ++d) {
                // x -> -x maps (p,q) to -(p,-q) unless p = 0
                const bool vertical = s[d].p == 0;
                const std::size_t r = vertical ? d : direction_index(s, s[d].p, -s[d].q);
                const Arm& a = g.arm(k, d);
                const Arm& b = g.arm(static_cast<std::size_t>(m), r);
                REQUIRE(a.plus == doctest::Approx(vertical ? b.plus : b.minus).epsilon(1e-12));
                REQUIRE(a.minus == doctest::Approx(vertical ? b.minus : b.plus).epsilon(1e-12));
            }
        }
    }

    TEST_CASE("domains thinner than the lattice are rejected") {
        const ConvexPolygon sliver({{0, 0}, {1, 0}, {0.5, 0.01}});
        GridOptions opt;
        opt.anchor = Point2{0, 0};
        CHECK_THROWS_AS(rasterize(PlanarRegion{sliver}, 0.1, StencilSet(1), opt), GridError);
        CHECK_THROWS_AS(rasterize(BallSpec{1.0, 2}, 0.0, StencilSet(1)), GridError);
        CHECK_THROWS_AS(rasterize(BallSpec{1.0, 2}, 1e-9, StencilSet(1)), GridError);
        CHECK_THROWS(rasterize(BallSpec{1.0, 3}, 0.1, StencilSet(1)));
    }

    TEST_CASE("scalar field reads zero off the interior") {
        auto g = make_grid(BallSpec{1.0, 2}, 0.25, StencilSet(2));
        const ScalarField f = ScalarField::sample(g, [](Point2 x) { return 1.0 - dot(x, x); });
        CHECK(f.size() == g->interior_count());
        CHECK(f.at(0, 0) == doctest::Approx(1.0));
        CHECK(f.at(4, 0) == 0.0);
        CHECK(f.at(100, 100) == 0.0);
        CHECK_THROWS_AS(ScalarField(g, std::vector<double>(3, 1.0)), GridError);
        std::vector<double> bad(g->interior_count(), 1.0);
        bad[0] = NAN;
        CHECK_THROWS_AS(ScalarField(g, bad), GridError);
        std::ostringstream mask, arms;
        g->write_mask_csv(mask);
        g->write_arms_csv(arms);
        CHECK(!mask.str().empty());
        CHECK(arms.str().rfind("node,i,j,direction", 0) == 0);
    }
}
