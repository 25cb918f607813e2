#pragma once

#include <optional>
#include <vector>

#include "cuttail/matrix.hpp"

namespace cuttail {

/// One conjugate-closed eigenvalue group: alpha + i*beta with beta >= 0
/// (a conjugate pair is stored once) and the size of its largest Jordan block.
struct SpectralComponent {
    double alpha = 0.0;
    double beta = 0.0; ///< >= 0
    int block = 1;     ///< >= 1

    /// Dimension this component contributes to the quasipolynomial space.
    int dim_contribution() const { return block * (beta == 0.0 ? 1 : 2); }
};

struct Spectrum {
    std::vector<SpectralComponent> components;

    int dim_pa() const;
    double min_abs_alpha() const;
    double max_beta() const;
    Spectrum time_scaled(double c) const; ///< spectrum of c*A
};

/// true iff every component has alpha < -margin.
bool is_hurwitz(const Spectrum& s, double margin = 0.0);

double default_cluster_tol(const Matrix& m);

/// Smallest k such that {I, m, m^2, ..., m^k} is linearly dependent in
/// vectorized form at the given rank tolerance. When rank_tol <= 0 a
/// scale-invariant default is used (1e-8 times the leading singular value
/// of the Krylov family).
int minimal_poly_degree(const Matrix& m, double rank_tol = 0.0);

/// All eigenvalues of m, grouped into conjugate-closed components.
/// Eigenvalues within cluster_tol of each other are merged; Jordan block
/// sizes are assigned so that the total dimension matches
/// minimal_poly_degree(m), extra powers going to the cluster of highest
/// algebraic multiplicity. Throws on QR-iteration non-convergence.
Spectrum eigenvalues(const Matrix& m, double cluster_tol = 0.0);

/// e^{t m} by scaling and squaring with a degree-13 Pade kernel.
/// Throws on overflow (strongly unstable m with large t).
Matrix matrix_exponential(const Matrix& m, double t);

/// Points e^{t_i m} x0 for sorted nonnegative times, stepping with cached
/// exponentials of the time increments.
std::vector<Vec> sample_trajectory(const Matrix& m, const Vec& x0,
                                   const std::vector<double>& times);

/// Block-diagonal real matrix realizing a prescribed spectrum (companion-style
/// Jordan blocks); used to build test matrices with known structure.
Matrix matrix_from_spectrum(const Spectrum& s);

} // namespace cuttail
