#pragma once

/// @file explorer.hpp
/// @brief Limiting sequences and conjecture experiments. Every function
///        returns a Table whose metadata records the verdict and the
///        discretization it was obtained at.

#include "trunclap/bounds.hpp"
#include "trunclap/eigensolver.hpp"
#include "trunclap/table.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace trunclap {

/// Rectangles meeting a volume or perimeter constraint, closed-form values.
///   volume c:    sides n x c/n,             mu = pi^2 / (n^2 + c^2/n^2)
///   perimeter c: aspect n:1, perimeter c,   mu = 4 pi^2 (n+1)^2 / (c^2 (n^2+1))
/// n must be >= 1. Metadata: strictly_decreasing, limit.
Table degenerate_rectangles(Constraint c, double level, const std::vector<int>& n_values);

enum class ThinFamily { Rectangle, Triangle };

/// Thin domains of length d and thickness eps: the rectangle d x eps or the
/// isosceles triangle with base eps and height d. Rows whose grid has no
/// interior node are kept with status "skipped". Metadata carries the linear
/// fit of mu against eps^2 and its intercept.
Table shrinking_sequence(double d, const std::vector<double>& thickness, const SolverConfig& cfg,
                         ThinFamily family = ThinFamily::Rectangle, int jobs = 1);

/// Reuleaux n-gons of width d (inscribed polygons with arc_samples points per
/// arc), with the cap pi^2/d^2, the Jung floor and a coarser solve at 2h.
Table reuleaux_scan(double d, const std::vector<int>& n_values, const SolverConfig& cfg, int arc_samples = 64,
                    int jobs = 1);

/// Regular n-gons inscribed in the circle of radius r centred at the origin.
std::vector<ConvexPolygon> inscribed_polygons(const std::vector<int>& n_values, double r = 1.0);

/// Largest t with t*target inside poly and smallest t with poly inside
/// t*target, both scalings about the origin (which must be interior to both).
struct ScalingSandwich {
    double t_in;
    double t_out;
};
ScalingSandwich scaling_sandwich(const DomainSpec& target, const ConvexPolygon& poly);

/// mu on each approximant against mu on the target (closed form when known,
/// otherwise solved with cfg), with Hausdorff distances and the bounds
/// mu/t_out^2 <= mu_n <= mu/t_in^2 from inclusion and scaling.
Table hausdorff_continuity_experiment(const DomainSpec& target, const std::vector<ConvexPolygon>& approximants,
                                      const SolverConfig& cfg, int jobs = 1);

/// Random vertex perturbations of size <= delta; reports |dmu| against the
/// Hausdorff distance and the empirical constant max |dmu| / d_H.
Table perturbation_trials(const ConvexPolygon& base, double delta, int trials, const SolverConfig& cfg,
                          std::uint64_t seed = 0, int jobs = 1);

}  // namespace trunclap
