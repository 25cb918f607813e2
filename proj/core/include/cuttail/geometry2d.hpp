#pragma once

#include <array>
#include <vector>

#include "cuttail/spectra.hpp"

namespace cuttail {

using Point2 = std::array<double, 2>;

enum class Location { Interior, Boundary, Exterior };

/// Convex, centrally symmetric polygon in counterclockwise vertex order.
struct PlanarHull {
    std::vector<Point2> vertices;
    bool symmetric = true;

    double diameter() const;
    double area() const;
};

/// Convex hull of {points} u {-points} by monotone chain.
/// Throws when the symmetrized input is degenerate (collinear).
PlanarHull symmetrized_hull(const std::vector<Point2>& points);

/// Classification of q by signed distance to the hull edges.
Location interiority(const PlanarHull& hull, const Point2& q, double margin);

struct Geometric2dOptions {
    double horizon = 0.0; ///< <= 0 selects the default 12/min|alpha|
    int samples = 4000;
    /// Boundary margin (times hull diameter) for classifying points that are
    /// not trajectory samples; the cut-tail scan classifies its own samples,
    /// which sit exactly on the hull, with a near-zero margin instead.
    double margin_factor = 1e-3;
};

/// Brute-force cut-tail estimate for a 2-dimensional spectrum: sample the
/// canonical trajectory, build the symmetrized hull, and return the largest
/// sampled time whose point still classifies as boundary.
double cut_tail_geometric(const Spectrum& s, const Geometric2dOptions& opts = {});

/// Canonical planar trajectory of a 2-dimensional spectrum:
/// (e^{a1 t}, e^{a2 t}) for a real pair, e^{alpha t}(cos beta t, sin beta t)
/// for a complex pair.
Point2 canonical_trajectory_point(const Spectrum& s, double t);

} // namespace cuttail
