#include "cuttail/cut_tail.hpp"

#include <cmath>
#include <stdexcept>

#include "cuttail/root_finding.hpp"

namespace cuttail {

double effective_value_tol(double value_tol, int dim_pa) {
    const double f = double(std::max(dim_pa, 2) - 1);
    return value_tol * f * f;
}

bool boundary_predicate(const Basis& basis, double T, double eps, double value_tol) {
    const ExtremalResult res = exchange_solve(basis, T, eps);
    return res.value <= 1.0 + value_tol;
}

CutTailResult find_cut_tail(const Spectrum& s, const CutTailOptions& opts) {
    if (!is_hurwitz(s)) throw std::invalid_argument("find_cut_tail: spectrum is not Hurwitz");

    CutTailResult out;
    if (s.dim_pa() == 1) {
        // single real exponential: the trajectory is a ray and enters the
        // hull interior immediately
        out.t_cut = 0.0;
        out.method = CutTailMethod::ClosedFormReal;
        out.degenerate = true;
        return out;
    }

    const Basis basis = build_basis(s);
    const double vtol = effective_value_tol(opts.value_tol, s.dim_pa());

    QuasiPolynomial last_boundary_cert;
    auto probe = [&](double T) {
        const ExtremalResult res = exchange_solve(basis, T, opts.eps);
        out.predicate_evals.emplace_back(T, res.value);
        const bool on_boundary = res.value <= 1.0 + vtol;
        if (on_boundary) last_boundary_cert = res.certificate;
        return on_boundary;
    };

    double T = 1.0 / s.min_abs_alpha();
    double lo = 0.0, hi = 0.0;
    if (probe(T)) {
        lo = T;
        for (int k = 0;; ++k) {
            if (k >= opts.max_doublings)
                throw std::runtime_error("find_cut_tail: no flip found within the doubling cap");
            T *= 2.0;
            if (!probe(T)) { hi = T; break; }
            lo = T;
        }
    } else {
        hi = T;
        for (int k = 0;; ++k) {
            if (k >= opts.max_doublings)
                throw std::runtime_error("find_cut_tail: no flip found within the halving cap");
            T *= 0.5;
            if (T < opts.time_tol) { lo = 0.0; break; }
            if (probe(T)) { lo = T; break; }
            hi = T;
        }
    }

    while (hi - lo > opts.time_tol && lo > 0.0) {
        const double mid = 0.5 * (lo + hi);
        (probe(mid) ? lo : hi) = mid;
    }

    out.t_cut = 0.5 * (lo + hi);
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    out.certificate = last_boundary_cert;
    out.method = CutTailMethod::ExchangeBisection;
    return out;
}

double cut_tail_2d_real(double a1, double a2) {
    if (!(a1 < 0.0) || !(a2 < 0.0) || a1 == a2)
        throw std::invalid_argument("cut_tail_2d_real: needs two distinct negative exponents");
    auto f = [&](double t) {
        return (1.0 + std::exp(-a1 * t)) / a1 - (1.0 + std::exp(-a2 * t)) / a2;
    };
    auto df = [&](double t) { return -std::exp(-a1 * t) + std::exp(-a2 * t); };

    // f(0) != 0 and f -> -inf: double until the sign flips
    const double f0 = f(1e-12);
    double hi = 1.0 / std::min(std::abs(a1), std::abs(a2));
    int guard = 0;
    while ((f(hi) > 0.0) == (f0 > 0.0)) {
        hi *= 2.0;
        if (++guard > 200) throw std::runtime_error("cut_tail_2d_real: bracketing failed");
    }
    return newton_bisect(f, df, 1e-12, hi, 1e-12 * std::max(1.0, hi));
}

double cut_tail_2d_complex(double alpha, double beta) {
    if (!(alpha < 0.0) || !(beta > 0.0))
        throw std::invalid_argument("cut_tail_2d_complex: needs alpha < 0 and beta > 0");
    auto g = [&](double t) {
        return alpha * std::sin(beta * t) + beta * std::cos(beta * t) +
               beta * std::exp(alpha * t);
    };
    const double period = 2.0 * M_PI / beta;
    const int n = 4096;
    double prev = g(0.0); // = 2 beta > 0
    for (int i = 1; i <= n; ++i) {
        const double t = period * double(i) / double(n);
        const double cur = g(t);
        if ((cur > 0.0) != (prev > 0.0) || cur == 0.0)
            return bisect(g, period * double(i - 1) / double(n), t, 1e-13 * period);
        prev = cur;
    }
    throw std::runtime_error("cut_tail_2d_complex: no sign change within one period");
}

std::string to_string(CutTailMethod m) {
    switch (m) {
        case CutTailMethod::ExchangeBisection: return "exchange-bisection";
        case CutTailMethod::ClosedFormReal: return "closed-form-real";
        case CutTailMethod::ClosedFormComplex: return "closed-form-complex";
    }
    return "?";
}

} // namespace cuttail
