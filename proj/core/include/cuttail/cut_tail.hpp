#pragma once

#include <string>
#include <vector>

#include "cuttail/exchange.hpp"

namespace cuttail {

enum class CutTailMethod { ExchangeBisection, ClosedFormReal, ClosedFormComplex };

struct CutTailResult {
    double t_cut = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    QuasiPolynomial certificate; ///< extremal polynomial at the last boundary probe
    std::vector<std::pair<double, double>> predicate_evals; ///< (T, exchange value)
    CutTailMethod method = CutTailMethod::ExchangeBisection;
    bool degenerate = false; ///< dim P_A = 1 convention: T_cut = 0
};

struct CutTailOptions {
    double eps = 1e-6;
    double time_tol = 1e-4;
    /// Baseline predicate tolerance for a 2-dimensional space; the effective
    /// threshold is value_tol * (dim_pa - 1)^2, growing with dimension because
    /// the exchange value approaches one ever more flatly near T_cut.
    double value_tol = 1e-5;
    int max_doublings = 60;
};

double effective_value_tol(double value_tol, int dim_pa);

/// Theorem-4 predicate: true iff the exchange value at T is within value_tol
/// of one, i.e. x(T) still lies on the boundary of the symmetrized hull
/// (T <= T_cut).
bool boundary_predicate(const Basis& basis, double T, double eps, double value_tol);

/// Locate T_cut: double T from 1/min|alpha| until the boundary predicate
/// turns false, then bisect the flip to width time_tol.
CutTailResult find_cut_tail(const Spectrum& s, const CutTailOptions& opts = {});

/// Closed form for a 2x2 real spectrum {a1, a2}: the positive root of
/// (1 + e^{-a1 t})/a1 = (1 + e^{-a2 t})/a2.
double cut_tail_2d_real(double a1, double a2);

/// Closed form for a complex pair alpha +- i beta: the smallest positive root
/// of alpha sin(beta t) + beta cos(beta t) + beta e^{alpha t} = 0 in (0, 2pi/beta].
double cut_tail_2d_complex(double alpha, double beta);

std::string to_string(CutTailMethod m);

} // namespace cuttail
