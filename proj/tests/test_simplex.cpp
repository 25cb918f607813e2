#include <cmath>

#include <doctest.h>

#include "cuttail/simplex.hpp"
#include "support/oracles.hpp"

using namespace cuttail;

TEST_CASE("min x subject to x >= 3") {
    LinearProgram lp;
    lp.var_count = 1;
    lp.objective = {1.0};
    lp.rows.push_back({{-1.0}, Relation::LessEqual, -3.0});
    LpResult r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.optimum == doctest::Approx(3.0));
    CHECK(r.solution[0] == doctest::Approx(3.0));
}

TEST_CASE("hand-solvable two-variable minimax") {
    // min r subject to |c e^{-0.2*0}| <= r and c e^{-0.2*1} = 1
    LinearProgram lp;
    lp.var_count = 2; // c, r
    lp.objective = {0.0, 1.0};
    lp.rows.push_back({{1.0, -1.0}, Relation::LessEqual, 0.0});
    lp.rows.push_back({{-1.0, -1.0}, Relation::LessEqual, 0.0});
    lp.rows.push_back({{std::exp(-0.2), 0.0}, Relation::Equal, 1.0});
    LpResult r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.optimum == doctest::Approx(std::exp(0.2)).epsilon(1e-10));
    CHECK(r.solution[0] == doctest::Approx(std::exp(0.2)).epsilon(1e-10));
}

TEST_CASE("infeasible program is reported") {
    LinearProgram lp;
    lp.var_count = 1;
    lp.objective = {1.0};
    lp.rows.push_back({{1.0}, Relation::LessEqual, -1.0});
    lp.rows.push_back({{-1.0}, Relation::LessEqual, -1.0}); // x >= 1 and x <= -1
    CHECK(solve_lp(lp).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded program is reported") {
    LinearProgram lp;
    lp.var_count = 1;
    lp.objective = {-1.0};
    lp.rows.push_back({{-1.0}, Relation::LessEqual, 0.0}); // x >= 0, min -x
    CHECK(solve_lp(lp).status == LpStatus::Unbounded);
}

TEST_CASE("nonnegativity mask constrains selected variables") {
    // min x + y subject to x + y >= 1, x >= 0 via mask, y free.
    LinearProgram lp;
    lp.var_count = 2;
    lp.objective = {1.0, 2.0};
    lp.rows.push_back({{-1.0, -1.0}, Relation::LessEqual, -1.0});
    lp.nonneg = {true, true};
    LpResult r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.optimum == doctest::Approx(1.0));
    CHECK(r.solution[0] == doctest::Approx(1.0));
    CHECK(r.solution[1] == doctest::Approx(0.0));
}

TEST_CASE("dual dense-grid oracle reproduces a closed-form minimax") {
    // One basis function e^{-0.2 t} on [0, 1] with p(1) = 1: the best
    // polynomial is c = e^{0.2} and its grid maximum sits at t = 0.
    Basis b = build_basis(Spectrum{{{-0.2, 0.0, 1}}});
    const double v = oracles::dense_grid_minimax(b, 1.0, 2001);
    CHECK(v == doctest::Approx(std::exp(0.2)).epsilon(1e-9));
}

TEST_CASE("degenerate equality-only program") {
    LinearProgram lp;
    lp.var_count = 1;
    lp.objective = {1.0};
    lp.rows.push_back({{2.0}, Relation::Equal, 4.0});
    LpResult r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.solution[0] == doctest::Approx(2.0));
}
