#include "trunclap/verify.hpp"

#include "trunclap/bounds.hpp"
#include "trunclap/eigensolver.hpp"
#include "trunclap/explorer.hpp"
#include "trunclap/operator.hpp"
#include "trunclap/oracles.hpp"
#include "trunclap/sampling.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace trunclap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

// Tolerances pinned for the acceptance suite.
constexpr double kAnalyticRelTol = 0.02;
constexpr double kMaxSecondsPerLevel = 60.0;
constexpr long kScalingUlps = 8;
constexpr double kHausdorffFinalGap = 0.03;
constexpr double kToyTol = 1e-10;
constexpr int kPropertyInstances = 1000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x, int precision = 6) {
    std::ostringstream s;
    s.precision(precision);
    s << x;
    return s.str();
}

long ulp_distance(double a, double b) {
    if (std::signbit(a) != std::signbit(b)) return a == b ? 0 : std::numeric_limits<long>::max();
    std::int64_t x, y;
    std::memcpy(&x, &a, sizeof a);
    std::memcpy(&y, &b, sizeof b);
    return static_cast<long>(x > y ? x - y : y - x);
}

SolverConfig config(double h, int W = 4) {
    SolverConfig c;
    c.h = h;
    c.stencil_width = W;
    return c;
}

// Runs body, fills timing, turns exceptions into failures.
template <class F>
CheckResult run_check(std::string id, std::string name, F&& body) {
    CheckResult r;
    r.id = std::move(id);
    r.name = std::move(name);
    const auto t0 = Clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail += std::string(r.detail.empty() ? "" : "; ") + "exception: " + e.what();
    }
    r.seconds = seconds_since(t0);
    return r;
}

}  // namespace

CheckResult check_ball(const VerifyOptions&) {
    return run_check("1", "ball eigenvalue pi^2/4", [](CheckResult& r) {
        const double exact = kPi2 / 4.0;
        bool ok = true;
        double prev_err = std::numeric_limits<double>::infinity();
        std::ostringstream d;
        for (double h : {1.0 / 32, 1.0 / 64, 1.0 / 128}) {
            const auto t0 = Clock::now();
            const EigenEstimate e = solve(BallSpec{1.0, 2}, config(h));
            const double secs = seconds_since(t0);
            const double err = std::abs(e.mu / exact - 1.0);
            // bracket holds a value within tolerance iff it meets the tolerance band
            const bool bracket_ok =
                e.mu_high >= exact * (1 - kAnalyticRelTol) && e.mu_low <= exact * (1 + kAnalyticRelTol);
            ok = ok && err <= kAnalyticRelTol && bracket_ok && err < prev_err && secs <= kMaxSecondsPerLevel;
            prev_err = err;
            d << "h=1/" << std::lround(1 / h) << " mu=" << fmt(e.mu, 8) << " err=" << fmt(err, 3) << " t=" << fmt(secs, 3)
              << "s; ";
        }
        r.passed = ok;
        r.detail = d.str() + "tol " + fmt(kAnalyticRelTol) + ", error must decrease, <= 60 s per level";
    });
}

CheckResult check_rectangles(const VerifyOptions&) {
    return run_check("2", "rectangle eigenvalues pi^2/(4 sum alpha^2)", [](CheckResult& r) {
        bool ok = true;
        std::ostringstream d;
        for (const HyperRectSpec& rect : {HyperRectSpec{{1.0, 1.0}}, HyperRectSpec{{1.0, 0.5}}}) {
            const double exact = *analytic_mu(rect);
            const EigenEstimate e = solve(rect, config(1.0 / 64));
            const double err = std::abs(e.mu / exact - 1.0);
            ok = ok && err <= kAnalyticRelTol;
            d << describe(rect) << " mu=" << fmt(e.mu, 8) << " exact=" << fmt(exact, 8) << " err=" << fmt(err, 3)
              << "; ";
        }
        r.passed = ok;
        r.detail = d.str() + "h=1/64 W=4 tol " + fmt(kAnalyticRelTol);
    });
}

CheckResult check_ball_radius_two(const VerifyOptions&) {
    return run_check("A", "ball of radius 2", [](CheckResult& r) {
        const BallSpec ball{2.0, 2};
        const double exact = *analytic_mu(ball);
        const EigenEstimate e = solve(ball, config(1.0 / 32));
        const double err = std::abs(e.mu / exact - 1.0);
        r.passed = err <= kAnalyticRelTol && std::abs(exact - kPi2 / 16.0) < 1e-15;
        r.detail = "mu=" + fmt(e.mu, 8) + " exact=" + fmt(exact, 8) + " err=" + fmt(err, 3) + " (h=1/32 W=4)";
    });
}

CheckResult check_scaling(const VerifyOptions& o) {
    return run_check("3", "scaling law mu(t Omega) = mu(Omega)/t^2", [&](CheckResult& r) {
        PolygonSampler sampler(o.seed);
        long worst = 0;
        const SolverConfig base = config(1.0 / 32);
        for (int k = 0; k < 5; ++k) {
            const ConvexPolygon p = sampler.polygon();
            const double mu = solve(PolygonSpec{p}, base).mu;
            for (double t : {0.5, 2.0, 3.0}) {
                SolverConfig c = base;
                c.h = t * base.h;
                const double mut = solve(PolygonSpec{scale(p, t)}, c).mu;
                worst = std::max(worst, ulp_distance(mut, mu / (t * t)));
            }
        }
        r.passed = worst <= kScalingUlps;
        r.detail = "5 random polygons x t in {0.5,2,3}, h=1/32: worst deviation " + std::to_string(worst) +
                   " ulp (limit " + std::to_string(kScalingUlps) + ")";
    });
}

CheckResult check_inclusion(const VerifyOptions& o) {
    return run_check("4", "monotonicity under inclusion", [&](CheckResult& r) {
        PolygonSampler sampler(o.seed + 1);
        int failures = 0;
        double worst = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 20; ++k) {
            const auto [inner, outer] = sampler.nested_pair();
            SolverConfig c = config(1.0 / 32);
            c.grid.anchor = outer.bounding_box().center();  // matched lattices
            const EigenEstimate ei = solve(PolygonSpec{inner}, c);
            const EigenEstimate eo = solve(PolygonSpec{outer}, c);
            const double margin = ei.mu - (eo.mu - c.tol_bracket * eo.mu);
            worst = std::min(worst, margin);
            if (margin < 0.0) ++failures;
        }
        r.passed = failures == 0;
        r.detail = "20 nested pairs on matched grids (h=1/32): " + std::to_string(failures) +
                   " violations, smallest margin " + fmt(worst);
    });
}

CheckResult check_diameter_bounds(const VerifyOptions& o) {
    return run_check("5", "diameter upper bound and Jung floor", [&](CheckResult& r) {
        PolygonSampler sampler(o.seed + 2);
        const SolverConfig c = config(1.0 / 64);
        int upper_fail = 0, lower_fail = 0;
        double upper_margin = 1e300, lower_margin = 1e300, worst_deficit = 0.0;
        for (int k = 0; k < 20; ++k) {
            const PolygonSpec p{sampler.polygon(3, 8)};
            const EigenEstimate e = solve(p, c);
            const BoundsReport b = bounds_report(p);
            const double s = slack(c.h, b.diam, c.stencil_width);
            const double su = upper_slack(c.h, p, c.stencil_width);
            worst_deficit = std::max(worst_deficit, su - s);
            const double um = (b.diam_upper * (1 + su) - e.mu_low) / b.diam_upper;
            const double lm = (e.mu_high - b.jung_lower * (1 - s)) / b.jung_lower;
            upper_margin = std::min(upper_margin, um);
            lower_margin = std::min(lower_margin, lm);
            upper_fail += um < 0.0;
            lower_fail += lm < 0.0;
        }
        r.passed = upper_fail == 0 && lower_fail == 0;
        r.detail = "20 random polygons (h=1/64 W=4): upper violations " + std::to_string(upper_fail) +
                   " (min rel margin " + fmt(upper_margin, 3) + ", largest chord deficit " + fmt(worst_deficit, 3) +
                   "), Jung violations " + std::to_string(lower_fail) + " (min rel margin " + fmt(lower_margin, 3) +
                   ")";
    });
}

CheckResult check_equality_case(const VerifyOptions&) {
    return run_check("6", "equality mu = pi^2/diam^2 for hexagon and square", [](CheckResult& r) {
        const double d = 1.0;
        const SolverConfig c = config(1.0 / 64);
        bool ok = true;
        std::ostringstream out;
        const std::pair<const char*, ConvexPolygon> shapes[] = {
            {"hexagon", regular_polygon(6, d / 2)},
            {"square", regular_polygon(4, d / 2, kPi / 4)},
        };
        for (const auto& [name, p] : shapes) {
            const BoundsReport b = bounds_report(PolygonSpec{p});
            const EigenEstimate e = solve(PolygonSpec{p}, c);
            const double s = slack(c.h, b.diam, c.stencil_width);
            const double dev = std::abs(e.mu - b.diam_upper) / b.diam_upper;
            ok = ok && b.equality_certified && dev <= s;
            out << name << " mu=" << fmt(e.mu, 8) << " pi^2/d^2=" << fmt(b.diam_upper, 8) << " rel dev "
                << fmt(dev, 3) << " slack " << fmt(s, 3) << " certified=" << b.equality_certified << "; ";
        }
        r.passed = ok;
        r.detail = out.str();
    });
}

CheckResult check_reverse_faber_krahn(const VerifyOptions& o) {
    return run_check("7", "ball maximizes mu at fixed area", [&](CheckResult& r) {
        PolygonSampler sampler(o.seed + 3);
        std::vector<NamedDomain> domains = {
            {"square", PolygonSpec{regular_polygon(4, 1.0, kPi / 4)}},
            {"hexagon", PolygonSpec{regular_polygon(6, 1.0)}},
            {"triangle", PolygonSpec{regular_polygon(3, 1.0, kPi / 2)}},
            {"rectangle_2x1", HyperRectSpec{{1.0, 0.5}}},
            {"reuleaux_3", ReuleauxSpec{3, 1.0, 64}},
            {"random_pentagon", PolygonSpec{sampler.polygon(5, 5)}},
        };
        const MaximalityResult m = check_maximality(domains, Constraint::Volume, kPi, config(1.0 / 64), o.jobs);
        double best = 0.0;
        for (std::size_t i = 0; i + 1 < m.table.size(); ++i) best = std::max(best, m.table.number(i, "mu_high"));
        r.passed = m.ball_dominates;
        r.detail = std::to_string(domains.size()) + " domains at area pi (h=1/64): largest mu_high " + fmt(best, 8) +
                   " vs ball " + fmt(kPi2 / 4, 8);
        for (const auto& v : m.violations) r.detail += "; " + v;
    });
}

CheckResult check_degenerate_rectangles(const VerifyOptions&) {
    return run_check("8", "degenerating rectangles at volume 1", [](CheckResult& r) {
        const Table t = degenerate_rectangles(Constraint::Volume, 1.0, {1, 2, 4, 8});
        const double mu8 = t.number(3, "mu");
        const double closed = kPi2 / (64.0 + 1.0 / 64.0);
        const double mu1 = t.number(0, "mu");
        r.passed = t.metadata().at("strictly_decreasing").get<bool>() && mu8 < 0.16 &&
                   std::abs(mu8 - closed) <= 1e-14 * closed && std::abs(mu1 - kPi2 / 2) <= 1e-14 * mu1;
        r.detail = "n=1,2,4,8: mu(1)=" + fmt(mu1, 10) + " mu(8)=" + fmt(mu8, 10) + " (closed form " +
                   fmt(closed, 10) + ", limit 0.16)";
    });
}

CheckResult check_shrinking(const VerifyOptions& o) {
    return run_check("9", "thin rectangles tend to pi^2/d^2", [&](CheckResult& r) {
        const SolverConfig c = config(1.0 / 128);
        const std::vector<double> eps = {0.4, 0.2, 0.1};
        const Table t = shrinking_sequence(1.0, eps, c, ThinFamily::Rectangle, o.jobs);
        bool ok = t.metadata().at("gap_shrinking").get<bool>();
        std::ostringstream d;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double exact = t.number(i, "exact");
            const double mu = t.number(i, "mu");
            const double s = slack(c.h, t.number(i, "diam"), c.stencil_width);
            const double dev = std::abs(mu - exact) / exact;
            ok = ok && dev <= s;
            d << "eps=" << eps[i] << " mu=" << fmt(mu, 8) << " exact=" << fmt(exact, 8) << " dev " << fmt(dev, 3)
              << " slack " << fmt(s, 3) << "; ";
        }
        r.passed = ok;
        r.detail = d.str() + "gap to pi^2 shrinking: " + (t.metadata().at("gap_shrinking").get<bool>() ? "yes" : "no");
    });
}

CheckResult check_hausdorff(const VerifyOptions& o) {
    return run_check("10", "inscribed n-gons approach the disk", [&](CheckResult& r) {
        const std::vector<int> ns = {8, 16, 32};
        const Table t = hausdorff_continuity_experiment(BallSpec{1.0, 2}, inscribed_polygons(ns), config(1.0 / 64),
                                                        o.jobs);
        const bool decreasing = t.metadata().at("gap_strictly_decreasing").get<bool>();
        const double final_gap = t.metadata().at("final_rel_gap").get<double>();
        bool sandwich = true;
        std::ostringstream d;
        for (std::size_t i = 0; i < t.size(); ++i) {
            sandwich = sandwich && t.flag(i, "sandwich_ok");
            d << "n=" << ns[i] << " mu=" << fmt(t.number(i, "mu"), 8) << " gap=" << fmt(t.number(i, "abs_diff"), 3)
              << "; ";
        }
        r.passed = decreasing && final_gap <= kHausdorffFinalGap;
        r.detail = d.str() + "gap decreasing: " + (decreasing ? "yes" : "no") + ", final rel gap " +
                   fmt(final_gap, 3) + " (limit 0.03), sandwich bounds " + (sandwich ? "hold" : "violated");
    });
}

CheckResult check_reuleaux(const VerifyOptions&) {
    return run_check("11", "Reuleaux triangle strictly below pi^2", [](CheckResult& r) {
        const SolverConfig c = config(1.0 / 128);
        const EigenEstimate e = solve(ReuleauxSpec{3, 1.0, 64}, c);
        const double s = slack(c.h, 1.0, c.stencil_width);
        const double cap = kPi2;
        const double floor = 0.75 * kPi2;
        r.passed = e.mu_high < cap * (1 - s) && e.mu_low >= floor * (1 - s);
        r.detail = "mu=" + fmt(e.mu, 8) + " [" + fmt(e.mu_low, 8) + ", " + fmt(e.mu_high, 8) + "], margin below pi^2 " +
                   fmt(cap - e.mu_high, 6) + " (" + fmt((cap - e.mu_high) / cap * 100, 3) + "%), above Jung floor " +
                   fmt(e.mu_low - floor, 6) + ", slack " + fmt(s, 3);
    });
}

CheckResult check_scheme(const VerifyOptions& o) {
    return run_check("12", "scheme properties and 3x3 oracle", [&](CheckResult& r) {
        PolygonSampler sampler(o.seed + 4);
        int mono_fail = 0, homo_fail = 0, quad_fail = 0, quad_checked = 0;
        for (int k = 0; k < kPropertyInstances; ++k) {
            const ConvexPolygon p = sampler.polygon(3, 8);
            const int W = sampler.uniform_int(1, 4);
            auto grid = std::make_shared<const Grid2>(
                rasterize(PlanarRegion{p}, sampler.uniform(1.0 / 16, 1.0 / 8), StencilSet(W)));
            const std::size_t n = grid->interior_count();
            const StencilSet& st = grid->stencil();

            ScalarField u(grid), v(grid);
            const std::size_t x0 = static_cast<std::size_t>(sampler.uniform_int(0, static_cast<int>(n) - 1));
            for (std::size_t i = 0; i < n; ++i) {
                u[i] = sampler.uniform(0.0, 1.0);
                v[i] = i == x0 ? u[i] : u[i] + sampler.uniform(0.0, 1.0);
            }
            if (apply(u, *grid, st).values[x0] > apply(v, *grid, st).values[x0]) ++mono_fail;

            const bool power_of_two = k % 2 == 0;
            const double c = power_of_two ? std::ldexp(1.0, sampler.uniform_int(-8, 8)) : sampler.uniform(0.0, 10.0);
            ScalarField cu(grid);
            for (std::size_t i = 0; i < n; ++i) cu[i] = c * u[i];
            const auto au = apply(u, *grid, st).values;
            const auto acu = apply(cu, *grid, st).values;
            double scale = 0.0;
            for (double a : au) scale = std::max(scale, std::abs(a));
            for (std::size_t i = 0; i < n; ++i) {
                const double diff = std::abs(acu[i] - c * au[i]);
                if (power_of_two ? diff != 0.0 : diff > 1e-13 * c * scale) {
                    ++homo_fail;
                    break;
                }
            }

            // quadratic 1/2 x^T H x + g.x: exact at nodes whose arms are all full
            const double a = sampler.uniform(-2, 2), b = sampler.uniform(-2, 2);
            const double off = k % 2 ? sampler.uniform(-2, 2) : 0.0;
            const Point2 g{sampler.uniform(-1, 1), sampler.uniform(-1, 1)};
            const ScalarField q = ScalarField::sample(grid, [&](Point2 x) {
                return 0.5 * (a * x.x * x.x + 2 * off * x.x * x.y + b * x.y * x.y) + g.x * x.x + g.y * x.y;
            });
            const auto aq = apply(q, *grid, st).values;
            double expect = -1e300;
            for (const Direction& e : st.directions())
                expect = std::max(expect, a * e.unit.x * e.unit.x + 2 * off * e.unit.x * e.unit.y +
                                              b * e.unit.y * e.unit.y);
            for (std::size_t i = 0; i < n; ++i) {
                bool full = true;
                for (std::size_t d = 0; d < st.size(); ++d) {
                    const Arm& arm = grid->arm(i, d);
                    full = full && arm.plus_node >= 0 && arm.minus_node >= 0;
                }
                if (!full) continue;
                ++quad_checked;
                if (std::abs(aq[i] - expect) > 1e-8 * (1 + std::abs(expect))) {
                    ++quad_fail;
                    break;
                }
            }
        }

        SolverConfig c = config(0.5, 1);
        c.tol_bracket = 1e-14;
        c.tol_inner = 1e-14;
        const EigenEstimate toy = solve(HyperRectSpec{{1.0, 1.0}}, c);
        const oracles::ToyResult oracle = oracles::toy_square_eigenvalue(100, o.seed);
        const double toy_diff = std::abs(toy.mu - oracle.mu);
        const bool toy_ok = toy.eigenfunction.size() == 9 && toy_diff <= kToyTol && oracle.spread <= kToyTol;

        r.passed = mono_fail == 0 && homo_fail == 0 && quad_fail == 0 && quad_checked > 0 && toy_ok;
        r.detail = std::to_string(kPropertyInstances) + " instances each: monotonicity failures " +
                   std::to_string(mono_fail) + ", homogeneity failures " + std::to_string(homo_fail) +
                   ", quadratic failures " + std::to_string(quad_fail) + " over " + std::to_string(quad_checked) +
                   " full-stencil nodes; 3x3 toy mu=" + fmt(toy.mu, 15) + " oracle=" + fmt(oracle.mu, 15) +
                   " |diff|=" + fmt(toy_diff, 3) + " (tol 1e-10)";
    });
}

std::vector<std::string> suite_names() { return {"analytic", "inequalities", "scheme", "all"}; }

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& options) {
    using Check = CheckResult (*)(const VerifyOptions&);
    std::vector<Check> checks;
    if (suite == "analytic")
        checks = {check_ball, check_ball_radius_two, check_rectangles, check_degenerate_rectangles};
    else if (suite == "inequalities")
        checks = {check_diameter_bounds, check_equality_case, check_reverse_faber_krahn,
                  check_shrinking,       check_hausdorff,     check_reuleaux};
    else if (suite == "scheme")
        checks = {check_scaling, check_inclusion, check_scheme};
    else if (suite == "all")
        checks = {check_ball,       check_rectangles,           check_scaling,   check_inclusion,
                  check_diameter_bounds, check_equality_case, check_reverse_faber_krahn,
                  check_degenerate_rectangles, check_shrinking, check_hausdorff, check_reuleaux, check_scheme};
    else
        throw std::invalid_argument("unknown suite '" + suite + "' (expected analytic, inequalities, scheme or all)");

    std::vector<CheckResult> out;
    for (Check c : checks) {
        out.push_back(c(options));
        if (options.on_result) options.on_result(out.back());
    }
    return out;
}

std::string format_result(const CheckResult& r) {
    return std::string(r.passed ? "PASS" : "FAIL") + " [" + r.id + "] " + r.name + ": " + r.detail;
}

}  // namespace trunclap
