#include "cuttail/quasipoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cuttail/root_finding.hpp"

namespace cuttail {

double BasisFunction::value(double t) const {
    const double trig = (phase == Phase::Cosine) ? std::cos(beta * t) : std::sin(beta * t);
    if (power == 0) return std::exp(alpha * t) * trig;
    if (t == 0.0) return 0.0;
    if (t > 0.0) {
        // log-magnitude form keeps t^k e^{alpha t} representable for large t
        return std::exp(power * std::log(t) + alpha * t) * trig;
    }
    return std::pow(t, power) * std::exp(alpha * t) * trig;
}

Vec Basis::evaluate_all(double t) const {
    Vec out(functions.size());
    for (std::size_t i = 0; i < functions.size(); ++i) out[i] = functions[i].value(t);
    return out;
}

double Basis::min_abs_alpha() const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& f : functions) best = std::min(best, std::abs(f.alpha));
    return best;
}

double Basis::max_beta() const {
    double best = 0.0;
    for (const auto& f : functions) best = std::max(best, f.beta);
    return best;
}

double QuasiPolynomial::evaluate(double t) const {
    if (coeffs.size() != basis.dim())
        throw std::invalid_argument("QuasiPolynomial: coefficient/basis size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) s += coeffs[i] * basis.functions[i].value(t);
    return s;
}

Basis build_basis(const Spectrum& s) {
    Basis b;
    for (const auto& c : s.components) {
        for (int k = 0; k < c.block; ++k) {
            b.functions.push_back({k, c.alpha, c.beta, Phase::Cosine});
            if (c.beta > 0.0) b.functions.push_back({k, c.alpha, c.beta, Phase::Sine});
        }
    }
    return b;
}

namespace {

std::size_t find_function(const Basis& b, int power, double alpha, double beta, Phase phase) {
    for (std::size_t i = 0; i < b.functions.size(); ++i) {
        const auto& f = b.functions[i];
        if (f.power == power && f.alpha == alpha && f.beta == beta && f.phase == phase) return i;
    }
    throw std::logic_error("derivative: basis not closed under differentiation");
}

} // namespace

QuasiPolynomial derivative(const QuasiPolynomial& p) {
    QuasiPolynomial out{p.basis, Vec(p.basis.dim(), 0.0)};
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
        const double c = p.coeffs[i];
        if (c == 0.0) continue;
        const auto& f = p.basis.functions[i];
        if (f.power > 0)
            out.coeffs[find_function(p.basis, f.power - 1, f.alpha, f.beta, f.phase)] +=
                c * f.power;
        out.coeffs[i] += c * f.alpha;
        if (f.beta > 0.0) {
            if (f.phase == Phase::Cosine)
                out.coeffs[find_function(p.basis, f.power, f.alpha, f.beta, Phase::Sine)] -=
                    c * f.beta;
            else
                out.coeffs[find_function(p.basis, f.power, f.alpha, f.beta, Phase::Cosine)] +=
                    c * f.beta;
        }
    }
    return out;
}

SupResult sup_abs_on_interval(const QuasiPolynomial& p, double T, double grid_factor) {
    if (!(T > 0.0)) throw std::invalid_argument("sup_abs_on_interval: T must be positive");
    const double two_pi = 2.0 * M_PI;
    const std::size_t base =
        static_cast<std::size_t>(std::ceil(64.0 * T * p.basis.max_beta() / two_pi)) +
        64 * p.basis.dim();
    std::size_t n = std::max<std::size_t>(2048, base);
    n = static_cast<std::size_t>(n * std::max(1.0, grid_factor));

    const QuasiPolynomial dp = derivative(p);
    const QuasiPolynomial ddp = derivative(dp);
    // stationary points of p^2 solve g(t) = p(t) p'(t) = 0
    auto g = [&](double t) { return p.evaluate(t) * dp.evaluate(t); };
    auto dg = [&](double t) {
        const double d1 = dp.evaluate(t);
        return d1 * d1 + p.evaluate(t) * ddp.evaluate(t);
    };

    const double step = T / static_cast<double>(n - 1);
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = std::abs(p.evaluate(step * i));

    SupResult res;
    res.local_maxima.emplace_back(vals.front(), 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (vals[i] < vals[i - 1] || vals[i] < vals[i + 1]) continue;
        const double lo = step * (i - 1), hi = step * (i + 1);
        double t_star = step * i;
        const double glo = g(lo), ghi = g(hi);
        if ((glo > 0.0) != (ghi > 0.0) && glo != 0.0 && ghi != 0.0) {
            t_star = newton_bisect(g, dg, lo, hi, 1e-12, 60);
            t_star = std::clamp(t_star, 0.0, T);
        }
        res.local_maxima.emplace_back(std::abs(p.evaluate(t_star)), t_star);
    }
    res.local_maxima.emplace_back(vals.back(), T);

    for (const auto& [v, t] : res.local_maxima) {
        if (v >= res.max_value) { // ties break toward the largest argmax
            res.max_value = v;
            res.argmax = t;
        }
    }
    return res;
}

} // namespace cuttail
