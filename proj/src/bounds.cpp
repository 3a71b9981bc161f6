#include "trunclap/bounds.hpp"

#include "trunclap/parallel.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace trunclap {

namespace {

constexpr double kPi = std::numbers::pi;

double ball_volume(int N, double r) { return std::pow(kPi, 0.5 * N) * std::pow(r, N) / std::tgamma(0.5 * N + 1.0); }

double ball_surface(int N, double r) { return N * ball_volume(N, r) / r; }

}  // namespace

BoundsReport bounds_report(const DomainSpec& domain, int N) {
    validate(domain);
    const int dim = dimension(domain);
    if (N == 0) N = dim;
    if (N != dim)
        throw GeometryError("requested dimension " + std::to_string(N) + " but " + describe(domain) + " has dimension " +
                            std::to_string(dim));

    BoundsReport r;
    r.dim = N;
    if (const auto* b = std::get_if<BallSpec>(&domain)) {
        r.diam = 2.0 * b->radius;
        r.area = ball_volume(N, b->radius);
        r.perimeter = ball_surface(N, b->radius);
        r.enclosing_radius = b->radius;
    } else if (const auto* h = std::get_if<HyperRectSpec>(&domain)) {
        double sq = 0.0, vol = 1.0;
        for (double a : h->halfsides) {
            sq += a * a;
            vol *= 2.0 * a;
        }
        r.diam = 2.0 * std::sqrt(sq);
        r.area = vol;
        r.perimeter = 0.0;
        for (double a : h->halfsides) r.perimeter += vol / (2.0 * a);
        r.perimeter *= 2.0;
        r.enclosing_radius = std::sqrt(sq);
    } else {
        const ConvexPolygon poly = as_polygon(domain);
        r.diam = diameter(poly);
        r.area = area(poly);
        r.perimeter = perimeter(poly);
        r.enclosing_radius = min_enclosing_circle(poly).radius;
    }
    r.jung_lower = jung_bound(r.diam, N);
    r.diam_upper = kPi * kPi / (r.diam * r.diam);
    r.equality_certified = r.enclosing_radius <= 0.5 * r.diam + kGeomTol;
    return r;
}

nlohmann::json to_json(const BoundsReport& r) {
    return {{"dim", r.dim},
            {"diam", r.diam},
            {"perimeter", r.perimeter},
            {"area", r.area},
            {"jung_lower", r.jung_lower},
            {"diam_upper", r.diam_upper},
            {"enclosing_radius", r.enclosing_radius},
            {"equality_certified", r.equality_certified}};
}

double slack(double h, double diam, int W) {
    const double gap = StencilSet(W).max_angular_gap();
    return kSlack.a * h / diam + kSlack.b * gap * gap;
}

double stencil_diameter(const DomainSpec& domain, int W) {
    if (const auto* b = std::get_if<BallSpec>(&domain)) return 2.0 * b->radius;
    if (dimension(domain) != 2) return bounds_report(domain).diam;
    const ConvexPolygon p = as_polygon(domain);
    double best = 0.0;
    for (const Direction& d : StencilSet(W).directions()) best = std::max(best, chord_length(p, d.unit));
    return best;
}

double chord_deficit(const DomainSpec& domain, int W) {
    if (std::holds_alternative<BallSpec>(domain)) return 0.0;
    const double r = bounds_report(domain).diam / stencil_diameter(domain, W);
    return std::max(0.0, r * r - 1.0);
}

double upper_slack(double h, const DomainSpec& domain, int W) {
    return slack(h, bounds_report(domain).diam, W) + chord_deficit(domain, W);
}

Constraint parse_constraint(const std::string& s) {
    if (s == "diameter") return Constraint::Diameter;
    if (s == "perimeter") return Constraint::Perimeter;
    if (s == "volume" || s == "area") return Constraint::Volume;
    throw std::invalid_argument("unknown constraint '" + s + "' (expected diameter, perimeter or volume)");
}

const char* to_string(Constraint c) {
    switch (c) {
        case Constraint::Diameter: return "diameter";
        case Constraint::Perimeter: return "perimeter";
        case Constraint::Volume: return "volume";
    }
    return "?";
}

double constraint_value(const DomainSpec& domain, Constraint c) {
    const BoundsReport r = bounds_report(domain);
    switch (c) {
        case Constraint::Diameter: return r.diam;
        case Constraint::Perimeter: return r.perimeter;
        case Constraint::Volume: return r.area;
    }
    return 0.0;
}

DomainSpec normalize(const DomainSpec& domain, Constraint c, double level) {
    if (!(level > 0.0) || !std::isfinite(level)) throw std::invalid_argument("constraint level must be positive");
    const double current = constraint_value(domain, c);
    const int N = dimension(domain);
    // diameter and perimeter scale like t (perimeter like t^(N-1)), volume like t^N
    const double power = c == Constraint::Diameter ? 1.0 : c == Constraint::Perimeter ? N - 1.0 : double(N);
    if (power <= 0.0) throw std::invalid_argument("perimeter constraint needs dimension >= 2");
    const double t = std::pow(level / current, 1.0 / power);
    DomainSpec out = scaled(domain, t);
    const double achieved = constraint_value(out, c);
    if (std::abs(achieved - level) > 1e-6 * level)
        throw std::runtime_error("could not normalize " + describe(domain) + " to " + to_string(c) + " " +
                                 std::to_string(level));
    return out;
}

MaximalityResult check_maximality(const std::vector<NamedDomain>& domains, Constraint c, double level,
                                  const SolverConfig& cfg, int jobs) {
    struct Row {
        double mu, mu_low, mu_high;
        BoundsReport b;
    };
    std::vector<DomainSpec> normalized;
    for (const auto& d : domains) {
        if (dimension(d.domain) != 2) throw GeometryError("check_maximality compares planar domains only");
        normalized.push_back(normalize(d.domain, c, level));
    }

    const std::vector<Row> rows = parallel_map<Row>(normalized.size(), jobs, [&](std::size_t i) {
        const DomainSpec& d = normalized[i];
        if (std::holds_alternative<BallSpec>(d)) {
            const double mu = *analytic_mu(d);
            return Row{mu, mu, mu, bounds_report(d)};
        }
        const EigenEstimate e = solve(d, cfg);
        return Row{e.mu, e.mu_low, e.mu_high, bounds_report(d)};
    });

    MaximalityResult out{Table("maximality_" + std::string(to_string(c)),
                               {"domain_id", "constraint", "mu", "mu_low", "mu_high", "diam", "jung_lower",
                                "diam_upper", "equality_certified"}),
                         true,
                         {}};
    const DomainSpec ball = normalize(BallSpec{1.0, 2}, c, level);
    const double ball_mu = *analytic_mu(ball);
    auto add = [&](const std::string& id, const Row& r) {
        out.table.add_row({id, std::string(to_string(c)), r.mu, r.mu_low, r.mu_high, r.b.diam, r.b.jung_lower,
                           r.b.diam_upper, r.b.equality_certified});
    };
    for (std::size_t i = 0; i < rows.size(); ++i) {
        add(domains[i].id, rows[i]);
        const double tol = upper_slack(cfg.h, normalized[i], cfg.stencil_width) * rows[i].mu;
        if (ball_mu < rows[i].mu_high - tol) {
            out.ball_dominates = false;
            out.violations.push_back(domains[i].id + ": mu_high " + format_number(rows[i].mu_high) +
                                     " exceeds ball value " + format_number(ball_mu) + " by more than slack " +
                                     format_number(tol));
        }
    }
    add("ball", Row{ball_mu, ball_mu, ball_mu, bounds_report(ball)});

    auto& meta = out.table.metadata();
    meta["constraint"] = to_string(c);
    meta["level"] = level;
    meta["h"] = cfg.h;
    meta["W"] = cfg.stencil_width;
    meta["ball_mu"] = ball_mu;
    meta["ball_dominates"] = out.ball_dominates;
    return out;
}

}  // namespace trunclap
