#pragma once

/// @file domain.hpp
/// @brief Domain descriptions accepted by the solver and the command line.
///
/// JSON schema (one object per domain):
///   {"type":"ball","r":1,"dim":2}
///   {"type":"hyperrect","alphas":[1,0.5]}          // half side lengths
///   {"type":"polygon","vertices":[[x,y],...]}      // convex, counterclockwise
///   {"type":"reuleaux","n":3,"width":1,"arc_samples":64}

#include "trunclap/geometry.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace trunclap {

struct BallSpec {
    double radius = 1.0;
    int dim = 2;
};

/// Hyperrectangle prod_i (-alpha_i, alpha_i).
struct HyperRectSpec {
    std::vector<double> halfsides;
};

struct PolygonSpec {
    ConvexPolygon polygon;
};

struct ReuleauxSpec {
    int sides = 3;
    double width = 1.0;
    int arc_samples = 64;
};

using DomainSpec = std::variant<BallSpec, HyperRectSpec, PolygonSpec, ReuleauxSpec>;

/// Checks the per-variant invariants; throws GeometryError.
void validate(const DomainSpec& domain);

int dimension(const DomainSpec& domain);

/// Short human-readable identifier, e.g. "ball(r=1,dim=2)".
std::string describe(const DomainSpec& domain);

DomainSpec scaled(const DomainSpec& domain, double t);

/// Disk used by the rasterizer for planar balls.
struct Disk {
    Point2 center;
    double radius = 1.0;
};

/// Planar region in the form consumed by the grid builder.
using PlanarRegion = std::variant<Disk, ConvexPolygon>;

/// Throws GeometryError for domains that are not two-dimensional.
PlanarRegion planar_region(const DomainSpec& domain);

/// Polygonal form of a planar domain; balls are refused because the grid
/// treats them exactly.
ConvexPolygon as_polygon(const DomainSpec& domain);

class DomainParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

DomainSpec domain_from_json(const nlohmann::json& j);
nlohmann::json domain_to_json(const DomainSpec& domain);

/// Accepts inline JSON (first non-blank character '{') or a path to a JSON file.
DomainSpec load_domain(std::string_view arg);

}  // namespace trunclap
