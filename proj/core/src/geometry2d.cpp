#include "cuttail/geometry2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cuttail {
namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

} // namespace

double PlanarHull::diameter() const {
    double best = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            best = std::max(best, std::hypot(vertices[i][0] - vertices[j][0],
                                             vertices[i][1] - vertices[j][1]));
    return best;
}

double PlanarHull::area() const {
    double s = 0.0;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = vertices[i];
        const auto& b = vertices[(i + 1) % n];
        s += a[0] * b[1] - b[0] * a[1];
    }
    return 0.5 * std::abs(s);
}

PlanarHull symmetrized_hull(const std::vector<Point2>& points) {
    if (points.empty())
        throw std::invalid_argument("symmetrized_hull: empty input");
    std::vector<Point2> pts;
    pts.reserve(2 * points.size());
    for (const auto& p : points) {
        pts.push_back(p);
        pts.push_back({-p[0], -p[1]});
    }
    std::sort(pts.begin(), pts.end());
    const double dup_tol = 1e-12;
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [&](const Point2& a, const Point2& b) {
                              return std::abs(a[0] - b[0]) <= dup_tol &&
                                     std::abs(a[1] - b[1]) <= dup_tol;
                          }),
              pts.end());

    const std::size_t n = pts.size();
    std::vector<Point2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) { // lower chain
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) { // upper chain
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3)
        throw std::invalid_argument("symmetrized_hull: degenerate (collinear) input");
    return {std::move(hull), true};
}

Location interiority(const PlanarHull& hull, const Point2& q, double margin) {
    if (hull.vertices.size() < 3) throw std::invalid_argument("interiority: invalid hull");
    double min_signed = std::numeric_limits<double>::infinity();
    const std::size_t n = hull.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = hull.vertices[i];
        const auto& b = hull.vertices[(i + 1) % n];
        const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
        if (len == 0.0) continue;
        // positive on the interior side of a CCW edge
        const double d = cross(a, b, q) / len;
        min_signed = std::min(min_signed, d);
    }
    if (min_signed > margin) return Location::Interior;
    if (min_signed >= -margin) return Location::Boundary;
    return Location::Exterior;
}

Point2 canonical_trajectory_point(const Spectrum& s, double t) {
    if (s.dim_pa() != 2)
        throw std::invalid_argument("canonical_trajectory_point: spectrum must be 2-dimensional");
    if (s.components.size() == 2) { // two distinct real exponents
        return {std::exp(s.components[0].alpha * t), std::exp(s.components[1].alpha * t)};
    }
    const auto& c = s.components[0];
    if (c.beta > 0.0) {
        const double r = std::exp(c.alpha * t);
        return {r * std::cos(c.beta * t), r * std::sin(c.beta * t)};
    }
    // one real eigenvalue with a size-2 Jordan block: (e^{at}, t e^{at})
    return {std::exp(c.alpha * t), t * std::exp(c.alpha * t)};
}

double cut_tail_geometric(const Spectrum& s, const Geometric2dOptions& opts) {
    if (s.dim_pa() != 2)
        throw std::invalid_argument("cut_tail_geometric: spectrum must be 2-dimensional");
    if (!is_hurwitz(s)) throw std::invalid_argument("cut_tail_geometric: spectrum not Hurwitz");

    const double horizon = opts.horizon > 0.0 ? opts.horizon : 12.0 / s.min_abs_alpha();
    const int n = std::max(opts.samples, 16);

    std::vector<Point2> traj(n);
    std::vector<double> times(n);
    for (int i = 0; i < n; ++i) {
        times[i] = horizon * double(i) / double(n - 1);
        traj[i] = canonical_trajectory_point(s, times[i]);
    }
    const double norm0 = std::hypot(traj[0][0], traj[0][1]);
    const double norm_end = std::hypot(traj[n - 1][0], traj[n - 1][1]);
    if (norm_end > 1e-4 * norm0)
        throw std::invalid_argument(
            "cut_tail_geometric: horizon too short, trajectory has not decayed");

    const PlanarHull hull = symmetrized_hull(traj);
    // The classified points are the hull's own input samples: every sample on
    // the boundary arc is a hull vertex with exactly zero edge distance, so a
    // near-zero margin is sound here and avoids the sqrt(margin) bias the
    // interior distance's flat quadratic growth would otherwise cause.
    const double margin = 1e-9 * hull.diameter();

    double last_boundary = 0.0;
    for (int i = 0; i < n; ++i)
        if (interiority(hull, traj[i], margin) != Location::Interior) last_boundary = times[i];
    return last_boundary;
}

} // namespace cuttail
