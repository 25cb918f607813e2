#include <cmath>
#include <random>

#include <doctest.h>

#include "cuttail/cut_tail.hpp"
#include "support/oracles.hpp"

using namespace cuttail;

TEST_CASE("closed form for two real eigenvalues") {
    const double t = cut_tail_2d_real(-0.2, -0.5);
    CHECK(t == doctest::Approx(3.868743).epsilon(1e-5));
    CHECK(cut_tail_2d_real(-0.5, -0.2) == doctest::Approx(t).epsilon(1e-12));
    CHECK(cut_tail_2d_real(-0.4, -1.0) == doctest::Approx(t / 2.0).epsilon(1e-9));
    // root residual
    const double res = (1 + std::exp(0.2 * t)) / -0.2 - (1 + std::exp(0.5 * t)) / -0.5;
    CHECK(std::abs(res) < 1e-8);
}

TEST_CASE("closed form for a complex pair") {
    const double t = cut_tail_2d_complex(-0.1, 0.3);
    CHECK(t == doctest::Approx(5.990737).epsilon(1e-5));
    CHECK(cut_tail_2d_complex(-0.05, 0.15) == doctest::Approx(2.0 * t).epsilon(1e-9));
    const double res = -0.1 * std::sin(0.3 * t) + 0.3 * std::cos(0.3 * t) +
                       0.3 * std::exp(-0.1 * t);
    CHECK(std::abs(res) <= 1e-10 * (0.1 + 0.3));
    CHECK(t <= 2 * M_PI / 0.3 + 1e-12);
}

TEST_CASE("find_cut_tail on the diagonal study spectrum") {
    Spectrum s{{{-0.2, 0.0, 1}, {-0.5, 0.0, 1}}};
    CutTailResult r = find_cut_tail(s);
    CHECK(r.t_cut >= 3.85);
    CHECK(r.t_cut <= 3.89);
    CHECK(r.bracket_hi - r.bracket_lo <= 1e-4 + 1e-12);
    CHECK(r.t_cut >= r.bracket_lo);
    CHECK(r.t_cut <= r.bracket_hi);
    CHECK(r.method == CutTailMethod::ExchangeBisection);
    CHECK_FALSE(r.predicate_evals.empty());
}

TEST_CASE("boundary predicate flips exactly once over a T grid") {
    Basis b = build_basis(Spectrum{{{-0.2, 0.0, 1}, {-0.5, 0.0, 1}}});
    const double vtol = effective_value_tol(1e-5, 2);
    int flips = 0;
    bool prev = true;
    for (int i = 0; i < 20; ++i) {
        const double T = 2.0 + (5.5 - 2.0) * i / 19.0;
        const bool cur = boundary_predicate(b, T, 1e-6, vtol);
        if (i == 0) CHECK(cur);
        if (i > 0 && cur != prev) {
            ++flips;
            CHECK(prev); // only true -> false transitions
        }
        prev = cur;
    }
    CHECK(flips == 1);
}

TEST_CASE("time-scale covariance") {
    Spectrum s{{{-0.1, 0.3, 1}}};
    const double base = find_cut_tail(s).t_cut;
    for (double c : {0.5, 2.0}) {
        const double scaled = find_cut_tail(s.time_scaled(c)).t_cut;
        CHECK(std::abs(scaled - base / c) <= 2e-4 * (1.0 + 1.0 / c));
    }
}

TEST_CASE("similarity invariance through the eigenvalue path") {
    std::mt19937 rng(29);
    Matrix a = oracles::example2();
    const double base = find_cut_tail(eigenvalues(a)).t_cut;
    for (int trial = 0; trial < 3; ++trial) {
        Matrix s = oracles::random_similarity(2, rng);
        // b = s a s^{-1} via solving s^{-1} columns
        Matrix sa = s * a;
        // build s^{-1}
        Matrix sinv(2, 2);
        for (std::size_t j = 0; j < 2; ++j) {
            Vec e(2, 0.0);
            e[j] = 1.0;
            Vec col = solve_linear(s, e);
            for (std::size_t i = 0; i < 2; ++i) sinv(i, j) = col[i];
        }
        Matrix b = sa * sinv;
        const double t = find_cut_tail(eigenvalues(b)).t_cut;
        CHECK(std::abs(t - base) <= 2e-4 + 1e-6);
    }
}

TEST_CASE("degenerate one-dimensional spectrum") {
    Spectrum s{{{-0.4, 0.0, 1}}};
    CutTailResult r = find_cut_tail(s);
    CHECK(r.degenerate);
    CHECK(r.t_cut == 0.0);
    CHECK(r.method == CutTailMethod::ClosedFormReal);
}

TEST_CASE("non-Hurwitz spectra are rejected") {
    Spectrum s{{{0.1, 0.0, 1}, {-0.5, 0.0, 1}}};
    CHECK_THROWS_AS(find_cut_tail(s), std::invalid_argument);
}

TEST_CASE("exchange path agrees with the closed forms in 2-d") {
    // the exchange value rises quadratically off one near the cut point, so
    // the predicate threshold (value_tol = 1e-5) shifts the flip by ~0.015
    Spectrum real{{{-0.2, 0.0, 1}, {-0.5, 0.0, 1}}};
    CHECK(std::abs(find_cut_tail(real).t_cut - cut_tail_2d_real(-0.2, -0.5)) <= 0.02);
    Spectrum cplx{{{-0.1, 0.3, 1}}};
    CHECK(std::abs(find_cut_tail(cplx).t_cut - cut_tail_2d_complex(-0.1, 0.3)) <= 0.02);
}

TEST_CASE("certificate at the lower bracket peaks at the endpoint") {
    Spectrum s{{{-0.2, 0.0, 1}, {-0.5, 0.0, 1}}};
    CutTailResult r = find_cut_tail(s);
    // at T <= T_cut the extremal polynomial attains its maximum modulus at T
    const SupResult sup = sup_abs_on_interval(r.certificate, r.bracket_lo);
    CHECK(std::abs(r.certificate(r.bracket_lo)) >=
          sup.max_value - 1e-4 * (1.0 + sup.max_value));
}

TEST_CASE("effective tolerance scales with the squared codimension") {
    CHECK(effective_value_tol(1e-5, 2) == doctest::Approx(1e-5));
    CHECK(effective_value_tol(1e-5, 4) == doctest::Approx(9e-5));
    CHECK(effective_value_tol(1e-5, 1) == doctest::Approx(1e-5));
}
