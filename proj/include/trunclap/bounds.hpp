#pragma once

/// @file bounds.hpp
/// @brief Closed-form bounds on mu_1 and their checks against computed values.

#include "trunclap/domain.hpp"
#include "trunclap/eigensolver.hpp"
#include "trunclap/table.hpp"

#include <string>
#include <utility>
#include <vector>

namespace trunclap {

struct BoundsReport {
    int dim = 2;
    double diam = 0.0;
    double perimeter = 0.0;  ///< boundary measure (surface area for N > 2)
    double area = 0.0;       ///< volume for N > 2
    double jung_lower = 0.0;  ///< (N+1)/(2N) pi^2 / diam^2
    double diam_upper = 0.0;  ///< pi^2 / diam^2
    double enclosing_radius = 0.0;
    bool equality_certified = false;  ///< enclosing_radius <= diam/2 + 1e-9
};

/// N = 0 means the domain's own dimension. Planar-only shapes (polygons,
/// Reuleaux) accept N = 2 only.
BoundsReport bounds_report(const DomainSpec& domain, int N = 0);

nlohmann::json to_json(const BoundsReport& r);

/// Discretization slack, relative to the value it guards:
///   slack(h, diam, W) = a * h / diam + b * dtheta(W)^2,
/// dtheta the largest angular gap of the width-W stencil. (a, b) were fitted
/// by tools/calibrate_slack on disks and rectangles with a 1.5x margin, then
/// frozen here.
struct SlackModel {
    double a;
    double b;
};
inline constexpr SlackModel kSlack{0.72, 0.11};

double slack(double h, double diam, int W);

/// Longest chord of the domain along a width-W stencil direction.
double stencil_diameter(const DomainSpec& domain, int W);

/// (diam / stencil_diameter)^2 - 1. The discrete eigenfunction only sees
/// chords along stencil directions, so the computed value can exceed
/// pi^2/diam^2 by this factor when the diameter ends in a corner and no
/// stencil direction is parallel to it. Zero for disks.
double chord_deficit(const DomainSpec& domain, int W);

/// slack plus chord_deficit: the allowance for a computed value above a
/// continuum upper bound.
double upper_slack(double h, const DomainSpec& domain, int W);

enum class Constraint { Diameter, Perimeter, Volume };

Constraint parse_constraint(const std::string& s);
const char* to_string(Constraint c);

double constraint_value(const DomainSpec& domain, Constraint c);

/// Rescales the domain so the constraint equals level.
DomainSpec normalize(const DomainSpec& domain, Constraint c, double level);

struct NamedDomain {
    std::string id;
    DomainSpec domain;
};

struct MaximalityResult {
    Table table;
    bool ball_dominates = true;
    std::vector<std::string> violations;
};

/// Normalizes every domain to the constraint level, solves each one, appends
/// the ball meeting the same constraint (closed form) and checks that the
/// ball's value is at least every computed mu_high minus slack.
MaximalityResult check_maximality(const std::vector<NamedDomain>& domains, Constraint c, double level,
                                  const SolverConfig& cfg, int jobs = 1);

}  // namespace trunclap
