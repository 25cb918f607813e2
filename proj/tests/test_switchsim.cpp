#include <cmath>

#include <doctest.h>

#include "cuttail/cut_tail.hpp"
#include "cuttail/switchsim.hpp"
#include "support/oracles.hpp"

using namespace cuttail;

namespace {

SwitchingSystem two_mode_system() {
    SwitchingSystem sys;
    Spectrum s1{{{-0.2, 0.0, 1}, {-0.5, 0.0, 1}}};
    Spectrum s2{{{-0.1, 0.3, 1}}};
    sys.modes.push_back({"real", oracles::example1(), s1, find_cut_tail(s1).t_cut, 0.1});
    sys.modes.push_back({"spiral", oracles::example2(), s2, find_cut_tail(s2).t_cut, 0.1});
    return sys;
}

} // namespace

TEST_CASE("validate_law endpoints") {
    SwitchingSystem sys = two_mode_system();
    SwitchingLaw at_min{{{0, sys.modes[0].dwell_min}}};
    CHECK(validate_law(sys, at_min, true));
    CHECK(validate_law(sys, at_min, false));

    SwitchingLaw over{{{0, sys.modes[0].dwell_min + sys.modes[0].t_cut + 0.1}}};
    CHECK_FALSE(validate_law(sys, over, true));
    CHECK(validate_law(sys, over, false));

    SwitchingLaw repeat{{{0, 1.0}, {0, 1.0}}};
    CHECK_FALSE(validate_law(sys, repeat, true)); // consecutive equal modes
}

TEST_CASE("empty law leaves the state unchanged") {
    SwitchingSystem sys = two_mode_system();
    Vec x0 = {0.3, -0.7};
    SimulationResult r = simulate(sys, SwitchingLaw{}, x0);
    CHECK(r.final_point == x0);
}

TEST_CASE("long single-mode dwell decays the norm") {
    SwitchingSystem sys = two_mode_system();
    Vec x0 = {1.0, 1.0};
    SimulationResult r = simulate(sys, SwitchingLaw{{{0, 120.0}}}, x0);
    CHECK(norm2(r.final_point) < 1e-6 * norm2(x0));
    // norm samples are recorded along the way
    CHECK(r.norm_samples.size() >= 10);
}

TEST_CASE("single-segment propagation equals the matrix exponential") {
    SwitchingSystem sys = two_mode_system();
    Vec x0 = {0.4, 0.9};
    SimulationResult r = simulate(sys, SwitchingLaw{{{1, 2.31}}}, x0);
    Vec ref = matrix_exponential(sys.modes[1].matrix, 2.31) * x0;
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(r.final_point[i] == doctest::Approx(ref[i]).epsilon(1e-12));
}

TEST_CASE("six-segment law matches an RK4 integration") {
    SwitchingSystem sys = two_mode_system();
    SwitchingLaw law{{{0, 0.8}, {1, 1.3}, {0, 0.5}, {1, 2.0}, {0, 1.1}, {1, 0.7}}};
    Vec x0 = {1.0, -0.5};
    SimulationResult r = simulate(sys, law, x0);
    Vec ref = x0;
    for (const auto& seg : law.segments)
        ref = oracles::rk4_integrate(sys.modes[seg.mode].matrix, ref, seg.duration, 40000);
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(r.final_point[i] == doctest::Approx(ref[i]).epsilon(1e-6));
}

TEST_CASE("worst-case search is deterministic and produces valid laws") {
    SwitchingSystem sys = two_mode_system();
    SearchResult a = worst_case_search(sys, 20.0, true, 8, 99);
    SearchResult b = worst_case_search(sys, 20.0, true, 8, 99);
    CHECK(a.growth_exponent == b.growth_exponent);
    REQUIRE(a.law.segments.size() == b.law.segments.size());
    for (std::size_t i = 0; i < a.law.segments.size(); ++i) {
        CHECK(a.law.segments[i].mode == b.law.segments[i].mode);
        CHECK(a.law.segments[i].duration == b.law.segments[i].duration);
    }
    CHECK(validate_law(sys, a.law, true));
    CHECK(validate_law(sys, a.law, false)); // feasibility nesting
}

TEST_CASE("uncapped search laws are uncapped-valid") {
    SwitchingSystem sys = two_mode_system();
    SearchResult r = worst_case_search(sys, 20.0, false, 8, 7);
    CHECK(validate_law(sys, r.law, false));
}

TEST_CASE("single-mode system cannot beat its spectral abscissa") {
    SwitchingSystem sys;
    Spectrum s{{{-0.2, 0.0, 1}, {-0.5, 0.0, 1}}};
    sys.modes.push_back({"only", oracles::example1(), s, find_cut_tail(s).t_cut, 0.1});
    SearchResult r = worst_case_search(sys, 25.0, false, 16, 3);
    CHECK(r.growth_exponent <= -0.2 + 0.01);
}
