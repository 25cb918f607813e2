#include "cuttail/root_finding.hpp"

#include <cmath>
#include <stdexcept>

namespace cuttail {

double newton_bisect(const std::function<double(double)>& f,
                     const std::function<double(double)>& df,
                     double lo, double hi, double x_tol, int max_iter) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::invalid_argument("newton_bisect: endpoints do not bracket a root");
    if (flo > 0.0) std::swap(lo, hi); // keep f(lo) < 0 < f(hi)

    double x = 0.5 * (lo + hi);
    double step = std::abs(hi - lo);
    double step_prev = step;
    double fx = f(x);
    for (int it = 0; it < max_iter; ++it) {
        const double d = df(x);
        const bool newton_ok =
            d != 0.0 &&
            ((x - hi) * d - fx) * ((x - lo) * d - fx) < 0.0 &&
            std::abs(2.0 * fx) <= std::abs(step_prev * d);
        step_prev = step;
        if (newton_ok) {
            step = fx / d;
            x -= step;
        } else {
            step = 0.5 * (hi - lo);
            x = lo + step;
        }
        if (std::abs(step) <= x_tol) return x;
        fx = f(x);
        if (fx == 0.0) return x;
        (fx < 0.0 ? lo : hi) = x;
    }
    return x;
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double x_tol, int max_iter) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    if (f(hi) == 0.0) return hi;
    if ((flo > 0.0) == (f(hi) > 0.0))
        throw std::invalid_argument("bisect: endpoints do not bracket a root");
    for (int it = 0; it < max_iter && (hi - lo) > x_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace cuttail
