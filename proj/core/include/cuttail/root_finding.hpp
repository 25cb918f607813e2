#pragma once

#include <functional>

namespace cuttail {

/// Safeguarded Newton iteration on a bracketed root: takes a Newton step when
/// it stays inside the current bracket and shrinks it fast enough, otherwise
/// bisects. Requires f(lo) and f(hi) of opposite sign.
double newton_bisect(const std::function<double(double)>& f,
                     const std::function<double(double)>& df,
                     double lo, double hi,
                     double x_tol, int max_iter = 100);

/// Plain bisection on a sign change.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double x_tol, int max_iter = 200);

} // namespace cuttail
