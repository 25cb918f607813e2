#pragma once

#include <vector>

#include "cuttail/spectra.hpp"

namespace cuttail {

enum class Phase { Cosine, Sine };

/// One basis function t^k e^{alpha t} cos(beta t) or t^k e^{alpha t} sin(beta t).
struct BasisFunction {
    int power = 0;      ///< k >= 0
    double alpha = 0.0; ///< exponent
    double beta = 0.0;  ///< frequency, >= 0; beta == 0 implies cosine phase
    Phase phase = Phase::Cosine;

    double value(double t) const;

    bool operator==(const BasisFunction& o) const {
        return power == o.power && alpha == o.alpha && beta == o.beta && phase == o.phase;
    }
};

/// Ordered basis of the quasipolynomial space generated by a spectrum.
struct Basis {
    std::vector<BasisFunction> functions;

    std::size_t dim() const { return functions.size(); }
    Vec evaluate_all(double t) const; ///< (phi_1(t), ..., phi_n(t))
    double min_abs_alpha() const;
    double max_beta() const;

    bool operator==(const Basis& o) const { return functions == o.functions; }
};

struct QuasiPolynomial {
    Basis basis;
    Vec coeffs;

    double operator()(double t) const { return evaluate(t); }
    double evaluate(double t) const;
};

/// For each spectral component (alpha, beta, r): t^k e^{alpha t} cos(beta t)
/// for k = 0..r-1, plus the sine branch when beta > 0.
Basis build_basis(const Spectrum& s);

/// Exact derivative, expressed in the same basis (P_A is closed under d/dt).
QuasiPolynomial derivative(const QuasiPolynomial& p);

struct SupResult {
    double max_value = 0.0;
    double argmax = 0.0;
    /// Refined local maximizers of |p|, as (value, time) pairs sorted by time;
    /// includes the endpoints as candidates.
    std::vector<std::pair<double, double>> local_maxima;
};

/// Global maximum of |p| on [0, T]: uniform grid resolving every oscillation
/// followed by safeguarded Newton on (p^2)' within each bracketing triple.
/// grid_factor scales the default grid density (>= 1). Ties in the global
/// maximum break toward the largest argmax.
SupResult sup_abs_on_interval(const QuasiPolynomial& p, double T, double grid_factor = 1.0);

} // namespace cuttail
