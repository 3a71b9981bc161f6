// Fits the slack model  rel_slack(h, diam, W) = a * h/diam + b * dtheta(W)^2
// on disks and rectangles with closed-form eigenvalues. The result is pasted
// into kSlack in bounds.hpp; this tool is not part of the test run.
//
// The fit does not cover diameters that end in a corner: there the angular
// error is first order and is accounted for separately by chord_deficit.
//
//   calibrate_slack [--margin 1.5]

#include "trunclap/bounds.hpp"
#include "trunclap/eigensolver.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <vector>

using namespace trunclap;

int main(int argc, char** argv) {
    CLI::App app{"fit the discretization slack constants"};
    double margin = 1.5;
    app.add_option("--margin", margin, "safety factor applied to both constants")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    struct Case {
        const char* name;
        DomainSpec domain;
    };
    const std::vector<Case> cases = {
        {"disk r=1/2", BallSpec{0.5, 2}},           {"disk r=1", BallSpec{1.0, 2}},
        {"square", HyperRectSpec{{1.0, 1.0}}},      {"rect 2:1", HyperRectSpec{{1.0, 0.5}}},
        {"rect 1x0.4", HyperRectSpec{{0.5, 0.2}}},  {"rect 1x0.2", HyperRectSpec{{0.5, 0.1}}},
        {"rect 1x0.1", HyperRectSpec{{0.5, 0.05}}},
    };
    const std::vector<double> hs = {1.0 / 32, 1.0 / 64, 1.0 / 128};
    const std::vector<int> widths = {3, 4};

    struct Sample {
        double h_over_d, gap2, err;
        bool finest;
    };
    std::vector<Sample> samples;
    for (int W : widths) {
        const double gap = StencilSet(W).max_angular_gap();
        for (double h : hs)
            for (const Case& c : cases) {
                SolverConfig cfg;
                cfg.h = h;
                cfg.stencil_width = W;
                const double exact = *analytic_mu(c.domain);
                const EigenEstimate e = solve(c.domain, cfg);
                const double diam = bounds_report(c.domain).diam;
                const double err = std::abs(e.mu / exact - 1.0);
                samples.push_back({h / diam, gap * gap, err, h == hs.back()});
                std::printf("W=%d h=%-9.6f %-11s h/diam=%.5f rel_err=%.3e\n", W, h, c.name, h / diam, err);
            }
    }

    // angular term from the finest level, then the h term covers the rest
    double b = 0.0;
    for (const Sample& s : samples)
        if (s.finest) b = std::max(b, s.err / s.gap2);
    double a = 0.0;
    for (const Sample& s : samples) a = std::max(a, std::max(0.0, s.err - b * s.gap2) / s.h_over_d);
    std::printf("\nraw fit:  a = %.4f  b = %.4f\n", a, b);
    std::printf("frozen (x%.2f, rounded up to 2 digits):  a = %.2f  b = %.2f\n", margin,
                std::ceil(margin * a * 100) / 100, std::ceil(margin * b * 100) / 100);
    return 0;
}
