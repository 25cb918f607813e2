#include <cmath>
#include <random>

#include <doctest.h>

#include "cuttail/cut_tail.hpp"
#include "cuttail/exchange.hpp"
#include "support/oracles.hpp"

using namespace cuttail;

namespace {
Basis example1_basis() {
    return build_basis(Spectrum{{{-0.2, 0.0, 1}, {-0.5, 0.0, 1}}});
}
} // namespace

TEST_CASE("lp_subproblem with only the constraint point") {
    Basis b = example1_basis();
    auto [r, p] = lp_subproblem({1.0}, b, 1.0);
    CHECK(r == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(p(1.0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("lp_subproblem one-function hand case") {
    Basis b = build_basis(Spectrum{{{-0.2, 0.0, 1}}});
    auto [r, p] = lp_subproblem({0.0, 1.0}, b, 1.0);
    CHECK(r == doctest::Approx(std::exp(0.2)).epsilon(1e-9));
    CHECK(p.coeffs[0] == doctest::Approx(std::exp(0.2)).epsilon(1e-9));
}

TEST_CASE("lp_subproblem rejects a vanishing basis column") {
    Basis b;
    b.functions.push_back({0, -0.2, 0.0, Phase::Cosine});
    b.functions.push_back({0, -0.1, 0.3, Phase::Sine}); // sin(0.3 t) = 0 at t = 0
    CHECK_THROWS_AS(lp_subproblem({0.0}, b, 0.0), std::runtime_error);
}

TEST_CASE("exchange value is one below the flip and above one past it") {
    Basis b = example1_basis();
    ExtremalResult below = exchange_solve(b, 3.0, 1e-6);
    CHECK(below.value == doctest::Approx(1.0).epsilon(1e-5));
    ExtremalResult above = exchange_solve(b, 5.0, 1e-6);
    CHECK(above.value > 1.0 + 1e-6);
}

TEST_CASE("bounds are monotone and bracketing throughout the iteration") {
    Basis b = example1_basis();
    ExchangeOptions opts;
    opts.eps = 1e-6;
    double last_lower = -1e300, last_upper = 1e300;
    opts.on_iteration = [&](const ExchangeState& st) {
        CHECK(st.lower >= last_lower - 1e-12);
        CHECK(st.upper <= last_upper + 1e-12);
        CHECK(st.lower <= st.upper + 1e-12);
        CHECK(st.lower >= 1.0 - 1e-12);
        last_lower = st.lower;
        last_upper = st.upper;
    };
    ExtremalResult r = exchange_solve(b, 4.5, opts);
    CHECK(r.upper - r.lower < opts.eps);
}

TEST_CASE("certificate is feasible and attains the certified level") {
    Basis b = example1_basis();
    ExtremalResult r = exchange_solve(b, 4.5, 1e-6);
    CHECK(r.certificate(4.5) == doctest::Approx(1.0).epsilon(1e-10));
    const double sup = sup_abs_on_interval(r.certificate, 4.5).max_value;
    CHECK(sup <= r.upper + 1e-9 * (1.0 + r.upper));
    CHECK(r.value >= 1.0 - 1e-9);
}

TEST_CASE("active points are few and alternate in sign for a real spectrum") {
    Basis b = example1_basis();
    const double T = cut_tail_2d_real(-0.2, -0.5);
    ExtremalResult r = exchange_solve(b, T, 1e-6);
    CHECK(r.active_points.size() <= b.dim() + 1); // includes the point T itself
    std::vector<double> pts = r.active_points;
    std::sort(pts.begin(), pts.end());
    int flips = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (r.certificate(pts[i - 1]) * r.certificate(pts[i]) < 0) ++flips;
    CHECK(flips == static_cast<int>(pts.size()) - 1);
}

TEST_CASE("final bracket contains the dense-grid brute-force value") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 4; ++trial) {
        Basis b = build_basis(oracles::random_spectrum(rng));
        const double T = 2.0 / b.min_abs_alpha();
        ExtremalResult r = exchange_solve(b, T, 1e-6);
        const double brute = oracles::dense_grid_minimax(b, T, 20001);
        CHECK(r.upper - r.lower < 1e-6);
        CHECK(brute <= r.upper + 1e-9 * (1.0 + r.upper));
        CHECK(brute >= r.lower - 1e-6 * (1.0 + r.lower)); // grid bias is downward
    }
}

TEST_CASE("iteration cap raises an error carrying the last bracket") {
    Basis b = example1_basis();
    ExchangeOptions opts;
    opts.eps = 1e-15; // unattainably tight
    opts.max_iterations = 1;
    try {
        exchange_solve(b, 4.5, opts);
        FAIL("expected ExchangeError");
    } catch (const ExchangeError& e) {
        CHECK(e.lower <= e.upper);
        CHECK(e.lower >= 1.0 - 1e-12);
    }
}
