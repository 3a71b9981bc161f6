#pragma once

/// @file sampling.hpp
/// @brief Seeded generators of random convex polygons for tests and experiments.

#include "trunclap/geometry.hpp"

#include <cstdint>
#include <random>
#include <utility>

namespace trunclap {

class PolygonSampler {
public:
    explicit PolygonSampler(std::uint64_t seed = 0) : rng_(seed) {}

    /// Vertices on a randomly rotated ellipse of diameter about 1..2, with
    /// angular gaps bounded away from zero so no edge is tiny.
    ConvexPolygon polygon(int min_vertices = 5, int max_vertices = 10);

    /// Inner polygon obtained from the outer one by shrinking toward an
    /// interior point and cutting with a random half-plane; inner is a subset of outer.
    std::pair<ConvexPolygon, ConvexPolygon> nested_pair();

    /// Vertex-wise perturbation of a polygon by at most delta, kept convex.
    ConvexPolygon perturb(const ConvexPolygon& poly, double delta);

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

private:
    std::mt19937_64 rng_;
};

}  // namespace trunclap
