#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "cuttail/quasipoly.hpp"
#include "cuttail/simplex.hpp"

namespace cuttail {

/// State of the exchange loop: reference point set, certified bounds and the
/// incumbent polynomial.
struct ExchangeState {
    std::vector<double> points; ///< sorted, always contains T
    double lower = 1.0;         ///< nondecreasing over iterations
    double upper = 0.0;         ///< nonincreasing once set
    QuasiPolynomial incumbent;
    int iteration = 0;
};

struct ExtremalResult {
    double value = 0.0; ///< midpoint of the final certified bracket
    QuasiPolynomial certificate;
    std::vector<double> active_points;
    double lower = 0.0;
    double upper = 0.0;
    int iterations = 0;
};

class ExchangeError : public std::runtime_error {
public:
    ExchangeError(const std::string& what, double lower, double upper)
        : std::runtime_error(what), lower(lower), upper(upper) {}
    double lower;
    double upper;
};

/// Finite minimax subproblem: minimize r over coefficient vectors subject to
/// |p(t_j)| <= r for the given points and p(T) = 1. Returns the optimal r
/// (a lower bound for the interval problem) and the optimizing polynomial.
std::pair<double, QuasiPolynomial> lp_subproblem(const std::vector<double>& points,
                                                 const Basis& basis, double T);

struct ExchangeOptions {
    double eps = 1e-6;
    int max_iterations = 500;
    /// Iterations with < eps/10 progress on both bounds before the stall
    /// remedy kicks in (grid densification plus point accumulation).
    int stall_window = 20;
    /// Called after every iteration with the current state (for monitoring
    /// and for invariant checks in tests).
    std::function<void(const ExchangeState&)> on_iteration;
};

/// Exchange loop: solve min ||p||_[0,T] over p(T) = 1 to bracket width < eps.
ExtremalResult exchange_solve(const Basis& basis, double T, double eps);
ExtremalResult exchange_solve(const Basis& basis, double T, const ExchangeOptions& opts);

} // namespace cuttail
