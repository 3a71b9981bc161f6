#include "trunclap/operator.hpp"
#include "trunclap/sampling.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace trunclap;

namespace {

constexpr double kPi = std::numbers::pi;

bool full_stencil(const Grid2& g, std::size_t k) {
    for (std::size_t d = 0; d < g.stencil().size(); ++d)
        if (g.arm(k, d).plus_node < 0 || g.arm(k, d).minus_node < 0) return false;
    return true;
}

// max over stencil directions of e^T H e, H = [[a, b], [b, c]]
double directional_max(const StencilSet& s, double a, double b, double c) {
    double m = -1e300;
    for (const Direction& d : s.directions()) {
        const Point2 e = d.unit;
        m = std::max(m, a * e.x * e.x + 2 * b * e.x * e.y + c * e.y * e.y);
    }
    return m;
}

}  // namespace

TEST_SUITE("operator") {
    TEST_CASE("second difference is exact on quadratics with uneven arms") {
        for (double sp : {1.0, 0.3, 1e-3})
            for (double sm : {1.0, 0.7, 2.2}) {
                auto f = [](double t) { return 3.0 * t * t - 2.0 * t + 0.5; };
                CHECK(second_difference(f(0), f(sp), f(-sm), sp, sm) == doctest::Approx(6.0).epsilon(1e-9));
            }
    }

    TEST_CASE("W = 1 on a diagonal quadratic gives max(a, c)") {
        auto g = make_grid(HyperRectSpec{{1.0, 1.0}}, 0.125, StencilSet(1));
        for (auto [a, c] : {std::pair{1.0, 3.0}, {-2.0, -5.0}, {4.0, 4.0}}) {
            const ScalarField u =
                ScalarField::sample(g, [&](Point2 x) { return 0.5 * a * x.x * x.x + 0.5 * c * x.y * x.y + 7.0; });
            const OperatorOutput out = apply(u, *g, g->stencil());
            for (std::size_t k = 0; k < g->interior_count(); ++k)
                if (full_stencil(*g, k)) REQUIRE(out.values[k] == doctest::Approx(std::max(a, c)).epsilon(1e-10));
        }
    }

    TEST_CASE("zero field maps to zero") {
        auto g = make_grid(BallSpec{1.0, 2}, 0.1, StencilSet(4));
        const OperatorOutput out = apply(ScalarField(g), *g, g->stencil());
        for (double v : out.values) CHECK(v == 0.0);
    }

    TEST_CASE("affine fields have zero second differences away from the boundary") {
        auto g = make_grid(HyperRectSpec{{1.0, 0.7}}, 1.0 / 16, StencilSet(3));
        const ScalarField u = ScalarField::sample(g, [](Point2 x) { return 2.0 * x.x - 0.7 * x.y + 3.0; });
        const OperatorOutput out = apply(u, *g, g->stencil());
        int checked = 0;
        for (std::size_t k = 0; k < g->interior_count(); ++k)
            if (full_stencil(*g, k)) {
                REQUIRE(std::abs(out.values[k]) < 1e-9);
                ++checked;
            }
        CHECK(checked > 100);
    }

    TEST_CASE("t^2 along a stencil direction") {
        auto g = make_grid(HyperRectSpec{{1.0, 1.0}}, 1.0 / 16, StencilSet(2));
        const Point2 e = g->stencil()[0].unit;
        const ScalarField u = ScalarField::sample(g, [&](Point2 x) {
            const double t = dot(x, e);
            return t * t;
        });
        for (std::size_t k = 0; k < g->interior_count(); ++k)
            if (full_stencil(*g, k)) REQUIRE(directional_second_difference(u, k, 0) == doctest::Approx(2.0));
    }

    TEST_CASE("random quadratics: max of e^T H e over the stencil") {
        PolygonSampler rng(31);
        for (int W : {1, 2, 4}) {
            auto g = make_grid(BallSpec{1.0, 2}, 1.0 / 12, StencilSet(W));
            for (int trial = 0; trial < 30; ++trial) {
                const double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3), c = rng.uniform(-3, 3);
                const ScalarField u = ScalarField::sample(
                    g, [&](Point2 x) { return 0.5 * (a * x.x * x.x + 2 * b * x.x * x.y + c * x.y * x.y) + x.x; });
                const OperatorOutput out = apply(u, *g, g->stencil());
                const double expected = directional_max(g->stencil(), a, b, c);
                for (std::size_t k = 0; k < g->interior_count(); ++k)
                    if (full_stencil(*g, k)) REQUIRE(out.values[k] == doctest::Approx(expected).epsilon(1e-8));
            }
        }
    }

    TEST_CASE("clipped arms are exact for a quadratic vanishing on the circle") {
        // 1 - |x|^2 restricted to any line is a quadratic that is zero where the arm is clipped
        for (int W : {1, 3, 4}) {
            auto g = make_grid(BallSpec{1.0, 2}, 1.0 / 10, StencilSet(W));
            const ScalarField u = ScalarField::sample(g, [](Point2 x) { return 1.0 - dot(x, x); });
            const OperatorOutput out = apply(u, *g, g->stencil());
            for (std::size_t k = 0; k < g->interior_count(); ++k) REQUIRE(out.values[k] == doctest::Approx(-2.0).epsilon(1e-8));
        }
    }

    TEST_CASE("degenerate ellipticity and positive homogeneity") {
        PolygonSampler rng(32);
        int instances = 0;
        while (instances < 1000) {
            const ConvexPolygon p = rng.polygon();
            const int W = rng.uniform_int(1, 4);
            auto g = make_grid(PolygonSpec{p}, rng.uniform(1.0 / 12, 1.0 / 6), StencilSet(W));
            ScalarField u(g), v(g);
            for (std::size_t k = 0; k < u.size(); ++k) {
                u[k] = rng.uniform(-1, 1);
                v[k] = u[k] + rng.uniform(0, 1);
            }
            for (int rep = 0; rep < 10 && instances < 1000; ++rep, ++instances) {
                const std::size_t k = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(u.size()) - 1));
                ScalarField w = v;
                w[k] = u[k];  // w >= u with contact at k
                const double lu = apply(u, *g, g->stencil()).values[k];
                const double lw = apply(w, *g, g->stencil()).values[k];
                REQUIRE(lu <= lw);
            }
            for (double t : {0.25, 2.0, 8.0}) {
                ScalarField tu = u;
                for (std::size_t k = 0; k < u.size(); ++k) tu[k] = t * u[k];
                const OperatorOutput a = apply(u, *g, g->stencil());
                const OperatorOutput b = apply(tu, *g, g->stencil());
                for (std::size_t k = 0; k < u.size(); ++k) REQUIRE(b.values[k] == t * a.values[k]);
            }
        }
    }

    TEST_CASE("cosine profile on the disk approaches the eigen relation") {
        // sup of |Lambda u + (pi^2/4) u| over all nodes and over |x| <= 0.6
        auto residual = [](double h, int W) {
            auto g = make_grid(BallSpec{1.0, 2}, h, StencilSet(W));
            const ScalarField u = ScalarField::sample(g, [](Point2 x) { return std::cos(kPi / 2 * norm(x)); });
            const OperatorOutput out = apply(u, *g, g->stencil());
            std::pair<double, double> r{0, 0};
            for (std::size_t k = 0; k < u.size(); ++k) {
                const double e = std::abs(out.values[k] + kPi * kPi / 4 * u[k]);
                r.first = std::max(r.first, e);
                if (norm(g->position(k)) <= 0.6) r.second = std::max(r.second, e);
            }
            return r;
        };
        CHECK(residual(1.0 / 32, 4).first < residual(1.0 / 8, 4).first);
        CHECK(residual(1.0 / 64, 4).first < 0.1);
        // with the grid fine, what is left inside is the angular error of the stencil
        const double w1 = residual(1.0 / 64, 1).second, w2 = residual(1.0 / 64, 2).second,
                     w4 = residual(1.0 / 64, 4).second;
        CHECK(w4 < w2);
        CHECK(w2 < w1);
        CHECK(w4 < 0.01);
    }

    TEST_CASE("quarter turns of the square commute with the operator") {
        auto g = make_grid(HyperRectSpec{{1.0, 1.0}}, 1.0 / 9, StencilSet(4));
        PolygonSampler rng(33);
        ScalarField u(g), r(g);
        for (std::size_t k = 0; k < u.size(); ++k) u[k] = rng.uniform(0, 1);
        for (std::size_t k = 0; k < u.size(); ++k) {
            const auto [i, j] = g->node(k);
            r[k] = u.at(j, -i);  // r(x) = u(R^{-1} x), R the quarter turn
        }
        const OperatorOutput lu = apply(u, *g, g->stencil());
        const OperatorOutput lr = apply(r, *g, g->stencil());
        for (std::size_t k = 0; k < u.size(); ++k) {
            const auto [i, j] = g->node(k);
            REQUIRE(lr.values[k] == doctest::Approx(lu.values[static_cast<std::size_t>(g->index_of(j, -i))]).epsilon(1e-12));
        }
    }

    TEST_CASE("argument checks") {
        auto g = make_grid(BallSpec{1.0, 2}, 0.25, StencilSet(2));
        auto other = make_grid(BallSpec{1.0, 2}, 0.25, StencilSet(2));
        const ScalarField u(g);
        CHECK_THROWS_AS(apply(u, *other, other->stencil()), OperatorError);
        CHECK_THROWS_AS(apply(u, *g, StencilSet(3)), OperatorError);
        CHECK_THROWS_AS(directional_second_difference(u, g->interior_count(), 0), OperatorError);
        CHECK_THROWS_AS(directional_second_difference(u, 0, 99), OperatorError);
    }
}
