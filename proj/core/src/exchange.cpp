#include "cuttail/exchange.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cuttail {
namespace {

// Column equilibration: near-degenerate spectra give basis columns of wildly
// different magnitude; the LP is solved in scaled coefficients.
Vec column_scales(const std::vector<double>& points, const Basis& basis, double T) {
    Vec scales(basis.dim(), 0.0);
    auto absorb = [&](double t) {
        const Vec phi = basis.evaluate_all(t);
        for (std::size_t j = 0; j < phi.size(); ++j)
            scales[j] = std::max(scales[j], std::abs(phi[j]));
    };
    for (double t : points) absorb(t);
    absorb(T);
    return scales;
}

std::vector<double> merge_points(const std::vector<double>& raw, double T) {
    const double tol = 1e-12 * std::max(1.0, T);
    std::vector<double> pts = raw;
    pts.push_back(T);
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    for (double t : pts) {
        t = std::clamp(t, 0.0, T);
        if (out.empty() || t - out.back() > tol) out.push_back(t);
    }
    if (std::abs(out.back() - T) > tol) out.push_back(T);
    else out.back() = T;
    return out;
}

} // namespace

std::pair<double, QuasiPolynomial> lp_subproblem(const std::vector<double>& points,
                                                 const Basis& basis, double T) {
    const std::size_t n = basis.dim();
    if (n == 0) throw std::invalid_argument("lp_subproblem: empty basis");

    const Vec scales = column_scales(points, basis, T);
    for (std::size_t j = 0; j < n; ++j)
        if (scales[j] == 0.0)
            throw std::runtime_error(
                "lp_subproblem: basis function " + std::to_string(j) +
                " vanishes on the whole point set (degenerate evaluation matrix)");

    // variables: scaled coefficients c_1..c_n, then r
    LinearProgram lp;
    lp.var_count = n + 1;
    lp.objective.assign(n + 1, 0.0);
    lp.objective[n] = 1.0;
    for (double t : points) {
        Vec phi = basis.evaluate_all(t);
        for (std::size_t j = 0; j < n; ++j) phi[j] /= scales[j];
        Vec pos(n + 1), neg(n + 1);
        for (std::size_t j = 0; j < n; ++j) {
            pos[j] = phi[j];
            neg[j] = -phi[j];
        }
        pos[n] = -1.0;
        neg[n] = -1.0;
        lp.rows.push_back({std::move(pos), Relation::LessEqual, 0.0});
        lp.rows.push_back({std::move(neg), Relation::LessEqual, 0.0});
    }
    {
        Vec eq(n + 1, 0.0);
        const Vec phi = basis.evaluate_all(T);
        for (std::size_t j = 0; j < n; ++j) eq[j] = phi[j] / scales[j];
        lp.rows.push_back({std::move(eq), Relation::Equal, 1.0});
    }

    const LpResult res = solve_lp(lp);
    if (res.status == LpStatus::Infeasible)
        throw std::runtime_error("lp_subproblem: infeasible subproblem");
    if (res.status == LpStatus::Unbounded)
        throw std::runtime_error("lp_subproblem: unbounded subproblem");

    QuasiPolynomial p{basis, Vec(n)};
    for (std::size_t j = 0; j < n; ++j) p.coeffs[j] = res.solution[j] / scales[j];
    return {res.optimum, std::move(p)};
}

ExtremalResult exchange_solve(const Basis& basis, double T, double eps) {
    ExchangeOptions opts;
    opts.eps = eps;
    return exchange_solve(basis, T, opts);
}

ExtremalResult exchange_solve(const Basis& basis, double T, const ExchangeOptions& opts) {
    if (!(T > 0.0) || !(opts.eps > 0.0))
        throw std::invalid_argument("exchange_solve: T and eps must be positive");
    const std::size_t n = basis.dim();

    ExchangeState st;
    {
        // Chebyshev-distributed starting points plus the constraint point T
        std::vector<double> init;
        for (std::size_t i = 0; i < n; ++i) {
            const double node =
                (n > 1) ? 0.5 * T * (1.0 - std::cos(M_PI * double(i) / double(n - 1))) : 0.0;
            init.push_back(node);
        }
        st.points = merge_points(init, T);
    }
    {
        // minimal-norm admissible start: p(T) = 1 solved by least squares
        const Vec phi = basis.evaluate_all(T);
        const double nn = dot(phi, phi);
        if (nn == 0.0) throw std::runtime_error("exchange_solve: basis vanishes at T");
        st.incumbent = {basis, Vec(n)};
        for (std::size_t j = 0; j < n; ++j) st.incumbent.coeffs[j] = phi[j] / nn;
        st.lower = 1.0;
        st.upper = sup_abs_on_interval(st.incumbent, T).max_value;
    }

    double grid_factor = 1.0;
    bool accumulate = false;
    int stalled = 0;
    double prev_lower = st.lower, prev_upper = st.upper;

    for (st.iteration = 1; st.iteration <= opts.max_iterations; ++st.iteration) {
        auto [r, pbar] = lp_subproblem(st.points, basis, T);
        st.lower = std::max(st.lower, r);

        const SupResult sup = sup_abs_on_interval(pbar, T, grid_factor);
        if (sup.max_value < st.upper) {
            st.upper = sup.max_value;
            st.incumbent = pbar;
        }

        if (opts.on_iteration) opts.on_iteration(st);

        if (st.upper - st.lower < opts.eps) {
            ExtremalResult out;
            out.value = 0.5 * (st.lower + st.upper);
            out.certificate = st.incumbent;
            out.lower = st.lower;
            out.upper = st.upper;
            out.iterations = st.iteration;
            const SupResult cert = sup_abs_on_interval(st.incumbent, T, grid_factor);
            const double act_tol =
                std::max(1e-9 * (1.0 + st.upper), 10.0 * (st.upper - st.lower));
            for (const auto& [v, t] : cert.local_maxima)
                if (v >= cert.max_value - act_tol) out.active_points.push_back(t);
            return out;
        }

        // stall remedy: densify the maximization grid and stop removing
        // points (the pure removal rule can cycle among degenerate LP vertices
        // when the true value is exactly one)
        if (st.lower - prev_lower < opts.eps / 10.0 && prev_upper - st.upper < opts.eps / 10.0) {
            if (++stalled >= opts.stall_window) {
                grid_factor *= 4.0;
                accumulate = true;
                stalled = 0;
            }
        } else {
            stalled = 0;
        }
        prev_lower = st.lower;
        prev_upper = st.upper;

        std::vector<double> next;
        if (accumulate) {
            next = st.points;
        } else {
            for (double t : st.points)
                if (std::abs(pbar.evaluate(t)) >= r - 1e-9 * (1.0 + r)) next.push_back(t);
        }
        // add every near-global maximizer, not only the single best point
        const double add_tol = 1e-9 * (1.0 + sup.max_value);
        for (const auto& [v, t] : sup.local_maxima)
            if (v >= sup.max_value - add_tol) next.push_back(t);
        st.points = merge_points(next, T);
    }

    throw ExchangeError("exchange_solve: iteration cap exceeded, bracket [" +
                            std::to_string(st.lower) + ", " + std::to_string(st.upper) + "]",
                        st.lower, st.upper);
}

} // namespace cuttail
