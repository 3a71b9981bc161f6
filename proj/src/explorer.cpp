#include "trunclap/explorer.hpp"

#include "trunclap/parallel.hpp"
#include "trunclap/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace trunclap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

struct Solved {
    bool ok = false;
    std::string status;
    double mu = std::nan("");
    double mu_low = std::nan("");
    double mu_high = std::nan("");
};

Solved try_solve(const DomainSpec& d, const SolverConfig& cfg) {
    Solved s;
    try {
        const EigenEstimate e = solve(d, cfg);
        s = {true, "ok", e.mu, e.mu_low, e.mu_high};
    } catch (const SolverError& e) {
        s.status = std::string(e.kind() == SolverError::Kind::GridTooCoarse ? "skipped: " : "failed: ") + e.what();
    }
    return s;
}

Cell num_or_empty(double x) { return std::isnan(x) ? Cell{} : Cell{x}; }

// Edges of a polygon containing the origin as (unit outward normal, offset > 0).
std::vector<std::pair<Point2, double>> support_lines(const ConvexPolygon& p) {
    std::vector<std::pair<Point2, double>> out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Point2 e = p.vertex(i + 1) - p.vertex(i);
        const double len = norm(e);
        const Point2 n{e.y / len, -e.x / len};
        const double c = dot(n, p.vertex(i));
        if (!(c > 0.0)) throw GeometryError("scaling sandwich needs the origin inside the polygon");
        out.emplace_back(n, c);
    }
    return out;
}

// Minkowski gauge: smallest t with x in t * polygon.
double gauge(const std::vector<std::pair<Point2, double>>& lines, Point2 x) {
    double g = 0.0;
    for (const auto& [n, c] : lines) g = std::max(g, dot(n, x) / c);
    return g;
}

// Least-squares line y = a + b x.
std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return {(sy - b * sx) / n, b};
}

}  // namespace

Table degenerate_rectangles(Constraint c, double level, const std::vector<int>& n_values) {
    if (c == Constraint::Diameter) throw std::invalid_argument("degenerate rectangles take a volume or perimeter constraint");
    if (!(level > 0.0)) throw std::invalid_argument("constraint level must be positive");
    Table t("rectangles_" + std::string(to_string(c)),
            {"n", "side_long", "side_short", "constraint_value", "mu", "jung_lower", "diam_upper"});
    std::vector<std::pair<double, double>> series;
    bool decreasing = true;
    double prev = std::numeric_limits<double>::infinity();
    for (int n : n_values) {
        if (n < 1) throw std::invalid_argument("rectangle parameter n must be >= 1, got " + std::to_string(n));
        double a, b;
        if (c == Constraint::Volume) {
            a = n;
            b = level / n;
        } else {
            b = level / (2.0 * (n + 1));
            a = n * b;
        }
        const HyperRectSpec rect{{a / 2.0, b / 2.0}};
        const double mu = *analytic_mu(rect);
        const BoundsReport r = bounds_report(rect);
        t.add_row({static_cast<long long>(n), std::max(a, b), std::min(a, b), constraint_value(rect, c), mu,
                   r.jung_lower, r.diam_upper});
        decreasing = decreasing && mu < prev;
        prev = mu;
        series.emplace_back(n, mu);
    }
    t.metadata()["constraint"] = to_string(c);
    t.metadata()["level"] = level;
    t.metadata()["strictly_decreasing"] = decreasing;
    // volume: mu -> 0; perimeter: the rectangles collapse onto a segment of length c/2
    t.metadata()["limit"] = c == Constraint::Volume ? 0.0 : 4.0 * kPi2 / (level * level);
    t.metadata()["path"] = "analytic";
    t.add_series("mu_vs_n", std::move(series));
    return t;
}

Table shrinking_sequence(double d, const std::vector<double>& thickness, const SolverConfig& cfg, ThinFamily family,
                         int jobs) {
    if (!(d > 0.0)) throw std::invalid_argument("length d must be positive");
    const bool rect = family == ThinFamily::Rectangle;
    std::vector<DomainSpec> domains;
    for (double eps : thickness) {
        if (!(eps > 0.0)) throw std::invalid_argument("thickness must be positive");
        if (rect)
            domains.push_back(HyperRectSpec{{d / 2.0, eps / 2.0}});
        else
            domains.push_back(PolygonSpec{ConvexPolygon({{-d / 2, -eps / 2}, {d / 2, 0.0}, {-d / 2, eps / 2}})});
    }
    const auto solved =
        parallel_map<Solved>(domains.size(), jobs, [&](std::size_t i) { return try_solve(domains[i], cfg); });

    const double target = kPi2 / (d * d);
    Table t(std::string("shrinking_") + (rect ? "rectangle" : "triangle"),
            {"eps", "status", "mu", "mu_low", "mu_high", "exact", "rel_error", "target", "gap", "diam",
             "jung_lower", "diam_upper"});
    std::vector<double> x, y;
    std::vector<std::pair<double, double>> series;
    bool gap_shrinking = true;
    double prev_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < domains.size(); ++i) {
        const double eps = thickness[i];
        const Solved& s = solved[i];
        const BoundsReport b = bounds_report(domains[i]);
        const double exact = rect ? *analytic_mu(domains[i]) : std::nan("");
        const double gap = std::abs(s.mu - target);
        t.add_row({eps, s.status, num_or_empty(s.mu), num_or_empty(s.mu_low), num_or_empty(s.mu_high),
                   num_or_empty(exact), num_or_empty(rect && s.ok ? s.mu / exact - 1.0 : std::nan("")), target,
                   num_or_empty(gap), b.diam, b.jung_lower, b.diam_upper});
        if (!s.ok) continue;
        x.push_back(eps * eps);
        y.push_back(s.mu);
        series.emplace_back(eps, s.mu);
        gap_shrinking = gap_shrinking && gap < prev_gap;
        prev_gap = gap;
    }
    auto& m = t.metadata();
    m["d"] = d;
    m["target"] = target;
    m["h"] = cfg.h;
    m["W"] = cfg.stencil_width;
    m["gap_shrinking"] = gap_shrinking;
    if (x.size() >= 2) {
        const auto [intercept, slope] = linear_fit(x, y);
        m["fit_intercept"] = intercept;
        m["fit_slope"] = slope;
        m["extrapolated_rel_error"] = intercept / target - 1.0;
    } else {
        m["fit_intercept"] = nullptr;
    }
    t.add_series("mu_vs_eps", std::move(series));
    return t;
}

Table reuleaux_scan(double d, const std::vector<int>& n_values, const SolverConfig& cfg, int arc_samples, int jobs) {
    if (!(d > 0.0)) throw std::invalid_argument("width d must be positive");
    std::vector<DomainSpec> domains;
    for (int n : n_values) {
        const DomainSpec r = ReuleauxSpec{n, d, arc_samples};
        validate(r);
        domains.push_back(r);
    }
    SolverConfig coarse = cfg;
    coarse.h = 2.0 * cfg.h;
    struct Pair {
        Solved fine, coarse;
    };
    const auto solved = parallel_map<Pair>(domains.size(), jobs, [&](std::size_t i) {
        return Pair{try_solve(domains[i], cfg), try_solve(domains[i], coarse)};
    });

    const double cap = kPi2 / (d * d);
    const double floor = jung_bound(d, 2);
    const double rel_slack = slack(cfg.h, d, cfg.stencil_width);
    Table t("reuleaux_scan", {"n", "status", "mu", "mu_low", "mu_high", "mu_coarse", "refinement_change",
                              "diam_upper", "jung_lower", "margin_below_upper", "within_bounds", "is_min"});

    std::size_t argmin = solved.size();
    for (std::size_t i = 0; i < solved.size(); ++i)
        if (solved[i].fine.ok && (argmin == solved.size() || solved[i].fine.mu < solved[argmin].fine.mu)) argmin = i;

    bool monotone = true;
    double prev = -std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, double>> series;
    for (std::size_t i = 0; i < solved.size(); ++i) {
        const Solved& s = solved[i].fine;
        const Solved& c = solved[i].coarse;
        const double tol = rel_slack * cap;
        const double tol_up = upper_slack(cfg.h, domains[i], cfg.stencil_width) * cap;
        const bool within = s.ok && s.mu_low >= floor - tol && s.mu_high <= cap + tol_up;
        t.add_row({static_cast<long long>(n_values[i]), s.status, num_or_empty(s.mu), num_or_empty(s.mu_low),
                   num_or_empty(s.mu_high), num_or_empty(c.mu), num_or_empty(s.mu - c.mu), cap, floor,
                   num_or_empty(cap - s.mu_high), within, i == argmin});
        if (s.ok) {
            monotone = monotone && s.mu >= prev - 2.0 * rel_slack * s.mu;
            prev = s.mu;
            series.emplace_back(n_values[i], s.mu);
        }
    }

    const bool has3 = std::find(n_values.begin(), n_values.end(), 3) != n_values.end();
    const bool three_is_min = argmin < n_values.size() && n_values[argmin] == 3;
    std::string verdict;
    if (!has3)
        verdict = "undecided: n=3 not scanned";
    else
        verdict = std::string(three_is_min ? "supports" : "contradicts") +
                  " the conjecture that the Reuleaux triangle minimizes mu_1 at fixed width (h=" +
                  format_number(cfg.h) + ", W=" + std::to_string(cfg.stencil_width) + ")";
    auto& m = t.metadata();
    m["d"] = d;
    m["h"] = cfg.h;
    m["W"] = cfg.stencil_width;
    m["arc_samples"] = arc_samples;
    m["verdict"] = verdict;
    m["reuleaux_triangle_is_min"] = three_is_min;
    m["monotone_nondecreasing_in_n"] = monotone;
    m["bias"] =
        "inscribed polygonal approximations: by inclusion monotonicity the values are biased upward relative to the "
        "true Reuleaux bodies";
    m["refinement"] = "refinement_change = mu(h) - mu(2h)";
    t.add_series("mu_vs_n", std::move(series));
    return t;
}

std::vector<ConvexPolygon> inscribed_polygons(const std::vector<int>& n_values, double r) {
    std::vector<ConvexPolygon> out;
    for (int n : n_values) out.push_back(regular_polygon(n, r));
    return out;
}

ScalingSandwich scaling_sandwich(const DomainSpec& target, const ConvexPolygon& poly) {
    const auto lines = support_lines(poly);
    ScalingSandwich s{};
    if (const auto* b = std::get_if<BallSpec>(&target)) {
        double cmin = std::numeric_limits<double>::infinity();
        for (const auto& l : lines) cmin = std::min(cmin, l.second);
        s.t_in = cmin / b->radius;
        s.t_out = 0.0;
        for (const Point2& v : poly.vertices()) s.t_out = std::max(s.t_out, norm(v) / b->radius);
        return s;
    }
    const ConvexPolygon tp = as_polygon(target);
    const auto target_lines = support_lines(tp);
    double g = 0.0;
    for (const Point2& v : tp.vertices()) g = std::max(g, gauge(lines, v));
    s.t_in = 1.0 / g;
    s.t_out = 0.0;
    for (const Point2& v : poly.vertices()) s.t_out = std::max(s.t_out, gauge(target_lines, v));
    return s;
}

Table hausdorff_continuity_experiment(const DomainSpec& target, const std::vector<ConvexPolygon>& approximants,
                                      const SolverConfig& cfg, int jobs) {
    const std::optional<double> exact = analytic_mu(target);
    double mu_target;
    if (exact) {
        mu_target = *exact;
    } else {
        mu_target = solve(target, cfg).mu;
    }
    const auto solved = parallel_map<Solved>(approximants.size(), jobs, [&](std::size_t i) {
        return try_solve(PolygonSpec{approximants[i]}, cfg);
    });

    // Hausdorff distance to a disk is exact from the vertex radii and edge offsets.
    auto distance_to_target = [&](const ConvexPolygon& p) {
        if (const auto* b = std::get_if<BallSpec>(&target)) {
            double out = 0.0;
            for (const Point2& v : p.vertices()) out = std::max(out, std::abs(norm(v) - b->radius));
            for (const auto& l : support_lines(p)) out = std::max(out, b->radius - l.second);
            return out;
        }
        return hausdorff_distance(as_polygon(target), p);
    };

    Table t("hausdorff_continuity", {"index", "vertices", "status", "hausdorff", "mu", "mu_low", "mu_high",
                                     "mu_target", "abs_diff", "t_in", "t_out", "sandwich_low", "sandwich_high",
                                     "sandwich_ok"});
    std::vector<std::pair<double, double>> series;
    bool decreasing = true;
    double prev = std::numeric_limits<double>::infinity();
    double last_gap = std::nan("");
    for (std::size_t i = 0; i < approximants.size(); ++i) {
        const ConvexPolygon& p = approximants[i];
        const Solved& s = solved[i];
        const double dh = distance_to_target(p);
        const ScalingSandwich sw = scaling_sandwich(target, p);
        const double lo = mu_target / (sw.t_out * sw.t_out);
        const double hi = mu_target / (sw.t_in * sw.t_in);
        const double tol_lo = slack(cfg.h, diameter(p), cfg.stencil_width) * mu_target;
        const double tol_hi = upper_slack(cfg.h, PolygonSpec{p}, cfg.stencil_width) * mu_target;
        const bool ok = s.ok && s.mu_high >= lo - tol_lo && s.mu_low <= hi + tol_hi;
        const double gap = std::abs(s.mu - mu_target);
        t.add_row({static_cast<long long>(i), static_cast<long long>(p.size()), s.status, dh, num_or_empty(s.mu),
                   num_or_empty(s.mu_low), num_or_empty(s.mu_high), mu_target, num_or_empty(gap), sw.t_in, sw.t_out,
                   lo, hi, ok});
        if (s.ok) {
            decreasing = decreasing && gap < prev;
            prev = gap;
            last_gap = gap;
            series.emplace_back(dh, gap);
        }
    }
    auto& m = t.metadata();
    m["target"] = describe(target);
    m["mu_target"] = mu_target;
    m["mu_target_source"] = exact ? "closed form" : "solver";
    m["h"] = cfg.h;
    m["W"] = cfg.stencil_width;
    m["gap_strictly_decreasing"] = decreasing;
    m["final_rel_gap"] = last_gap / mu_target;
    t.add_series("gap_vs_hausdorff", std::move(series));
    return t;
}

Table perturbation_trials(const ConvexPolygon& base, double delta, int trials, const SolverConfig& cfg,
                          std::uint64_t seed, int jobs) {
    if (!(delta > 0.0) || trials < 1) throw std::invalid_argument("perturbation needs delta > 0 and trials >= 1");
    PolygonSampler sampler(seed);
    std::vector<ConvexPolygon> polys;
    for (int k = 0; k < trials; ++k) polys.push_back(sampler.perturb(base, delta * sampler.uniform(0.1, 1.0)));
    const Solved ref = try_solve(PolygonSpec{base}, cfg);
    if (!ref.ok) throw std::runtime_error("base polygon: " + ref.status);
    const auto solved = parallel_map<Solved>(polys.size(), jobs, [&](std::size_t i) {
        return try_solve(PolygonSpec{polys[i]}, cfg);
    });

    Table t("perturbation_trials", {"trial", "status", "hausdorff", "mu", "abs_dmu", "ratio"});
    double cmax = 0.0;
    std::vector<std::pair<double, double>> series;
    for (std::size_t i = 0; i < polys.size(); ++i) {
        const double dh = hausdorff_distance(base, polys[i]);
        const Solved& s = solved[i];
        const double dmu = std::abs(s.mu - ref.mu);
        const double ratio = dh > 0.0 ? dmu / dh : std::nan("");
        t.add_row({static_cast<long long>(i), s.status, dh, num_or_empty(s.mu), num_or_empty(dmu),
                   num_or_empty(ratio)});
        if (s.ok && dh > 0.0) {
            cmax = std::max(cmax, ratio);
            series.emplace_back(dh, dmu);
        }
    }
    auto& m = t.metadata();
    m["base_mu"] = ref.mu;
    m["delta"] = delta;
    m["seed"] = seed;
    m["empirical_C"] = cmax;
    m["h"] = cfg.h;
    m["W"] = cfg.stencil_width;
    t.add_series("dmu_vs_hausdorff", std::move(series));
    return t;
}

}  // namespace trunclap
