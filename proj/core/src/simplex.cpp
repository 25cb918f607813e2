#include "cuttail/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cuttail {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kFeasTol = 1e-9;

struct Tableau {
    std::size_t m;       // rows
    std::size_t n_total; // columns excluding RHS
    std::vector<Vec> a;  // m rows of length n_total + 1 (last entry = RHS)
    std::vector<std::size_t> basis;

    double& at(std::size_t i, std::size_t j) { return a[i][j]; }
    double& rhs(std::size_t i) { return a[i][n_total]; }

    void pivot(std::size_t row, std::size_t col) {
        const double p = a[row][col];
        for (double& v : a[row]) v /= p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row) continue;
            const double f = a[i][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= n_total; ++j) a[i][j] -= f * a[row][j];
        }
        basis[row] = col;
    }
};

// Reduced costs for objective c over currently allowed columns.
Vec reduced_costs(const Tableau& t, const Vec& c) {
    Vec y(t.m); // multipliers c_B applied through the (implicit) inverse
    for (std::size_t i = 0; i < t.m; ++i) y[i] = c[t.basis[i]];
    Vec red(t.n_total);
    for (std::size_t j = 0; j < t.n_total; ++j) {
        double s = c[j];
        for (std::size_t i = 0; i < t.m; ++i) s -= y[i] * t.a[i][j];
        red[j] = s;
    }
    return red;
}

double objective_value(const Tableau& t, const Vec& c) {
    double s = 0.0;
    for (std::size_t i = 0; i < t.m; ++i) s += c[t.basis[i]] * t.a[i][t.n_total];
    return s;
}

// Returns true on optimality, false on unboundedness.
bool simplex_iterate(Tableau& t, const Vec& c, const std::vector<bool>& allowed) {
    const std::size_t iter_cap = 2000 + 200 * (t.m + t.n_total);
    double last_obj = objective_value(t, c);
    std::size_t stalled = 0;
    bool bland = false;
    for (std::size_t iter = 0; iter < iter_cap; ++iter) {
        const Vec red = reduced_costs(t, c);
        std::size_t enter = t.n_total;
        if (bland) {
            for (std::size_t j = 0; j < t.n_total; ++j)
                if (allowed[j] && red[j] < -kPivotTol) { enter = j; break; }
        } else {
            double best = -kPivotTol;
            for (std::size_t j = 0; j < t.n_total; ++j)
                if (allowed[j] && red[j] < best) { best = red[j]; enter = j; }
        }
        if (enter == t.n_total) return true; // optimal

        std::size_t leave = t.m;
        double best_ratio = 0.0;
        for (std::size_t i = 0; i < t.m; ++i) {
            const double aij = t.a[i][enter];
            if (aij <= kPivotTol) continue;
            const double ratio = t.a[i][t.n_total] / aij;
            if (leave == t.m || ratio < best_ratio - 1e-15 ||
                (std::abs(ratio - best_ratio) <= 1e-15 && t.basis[i] < t.basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == t.m) return false; // unbounded
        t.pivot(leave, enter);

        const double obj = objective_value(t, c);
        if (obj < last_obj - 1e-13 * (1.0 + std::abs(last_obj))) {
            stalled = 0;
            bland = false;
        } else if (++stalled > t.m + 10) {
            bland = true; // degenerate: switch to Bland's anti-cycling rule
        }
        last_obj = obj;
    }
    throw std::runtime_error("solve_lp: simplex iteration cap exceeded");
}

} // namespace

LpResult solve_lp(const LinearProgram& lp) {
    const std::size_t n = lp.var_count;
    const std::size_t m = lp.rows.size();
    for (const auto& row : lp.rows)
        if (row.coeffs.size() != n)
            throw std::invalid_argument("solve_lp: row length does not match variable count");
    if (lp.objective.size() != n)
        throw std::invalid_argument("solve_lp: objective length does not match variable count");
    if (!lp.nonneg.empty() && lp.nonneg.size() != n)
        throw std::invalid_argument("solve_lp: nonneg mask length does not match variable count");

    auto is_nonneg = [&](std::size_t j) { return !lp.nonneg.empty() && lp.nonneg[j]; };

    // columns: one per nonneg variable, a +/- pair per free variable,
    // then slacks (#LE rows) and artificials (one per row)
    std::vector<std::size_t> col_pos(n), col_neg(n, SIZE_MAX);
    std::size_t next = 0;
    for (std::size_t j = 0; j < n; ++j) {
        col_pos[j] = next++;
        if (!is_nonneg(j)) col_neg[j] = next++;
    }
    std::size_t n_slack = 0;
    for (const auto& row : lp.rows)
        if (row.relation == Relation::LessEqual) ++n_slack;
    const std::size_t slack0 = next;
    const std::size_t art0 = slack0 + n_slack;
    const std::size_t n_total = art0 + m;

    Tableau t;
    t.m = m;
    t.n_total = n_total;
    t.a.assign(m, Vec(n_total + 1, 0.0));
    t.basis.resize(m);

    std::size_t slack_idx = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& row = lp.rows[i];
        const double sign = (row.bound < 0.0) ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            t.at(i, col_pos[j]) = sign * row.coeffs[j];
            if (col_neg[j] != SIZE_MAX) t.at(i, col_neg[j]) = -sign * row.coeffs[j];
        }
        if (row.relation == Relation::LessEqual) {
            t.at(i, slack0 + slack_idx) = sign;
            ++slack_idx;
        }
        t.rhs(i) = sign * row.bound;
        t.at(i, art0 + i) = 1.0;
        t.basis[i] = art0 + i;
    }

    // Phase 1: minimize the sum of artificials.
    Vec c1(n_total, 0.0);
    for (std::size_t i = 0; i < m; ++i) c1[art0 + i] = 1.0;
    std::vector<bool> all_cols(n_total, true);
    simplex_iterate(t, c1, all_cols);
    if (objective_value(t, c1) > kFeasTol) return {LpStatus::Infeasible, 0.0, {}};

    // Drive any remaining artificials out of the basis.
    for (std::size_t i = 0; i < m; ++i) {
        if (t.basis[i] < art0) continue;
        std::size_t col = n_total;
        for (std::size_t j = 0; j < art0; ++j)
            if (std::abs(t.a[i][j]) > kPivotTol) { col = j; break; }
        if (col < n_total) t.pivot(i, col);
        // a fully zero row is redundant; its artificial stays basic at zero
    }

    // Phase 2.
    Vec c2(n_total, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        c2[col_pos[j]] = lp.objective[j];
        if (col_neg[j] != SIZE_MAX) c2[col_neg[j]] = -lp.objective[j];
    }
    std::vector<bool> structural(n_total, true);
    for (std::size_t i = 0; i < m; ++i) structural[art0 + i] = false;
    if (!simplex_iterate(t, c2, structural)) return {LpStatus::Unbounded, 0.0, {}};

    Vec x(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t b = t.basis[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (b == col_pos[j]) x[j] += t.rhs(i);
            else if (b == col_neg[j]) x[j] -= t.rhs(i);
        }
    }
    return {LpStatus::Optimal, dot(lp.objective, x), std::move(x)};
}

} // namespace cuttail
