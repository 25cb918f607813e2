#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cuttail/spectra.hpp"

namespace cuttail {

struct Mode {
    std::string label;
    Matrix matrix;
    Spectrum spectrum;
    double t_cut = 0.0;
    double dwell_min = 0.0; ///< m(A) > 0
};

struct SwitchingSystem {
    std::vector<Mode> modes;
};

struct Segment {
    int mode = 0;
    double duration = 0.0;
};

/// Finite switching law: consecutive segments use distinct modes.
struct SwitchingLaw {
    std::vector<Segment> segments;

    double total_time() const;
};

/// true iff every segment duration lies in [m(A), M(A)], where
/// M(A) = m(A) + t_cut(A) when capped and +inf otherwise.
bool validate_law(const SwitchingSystem& sys, const SwitchingLaw& law, bool capped);

struct SimulationResult {
    Vec final_point;
    std::vector<std::pair<double, double>> norm_samples; ///< (time, |x|)
};

/// Exact piecewise propagation x <- e^{duration A} x, with the norm recorded
/// at segment boundaries and 10 interior samples per segment.
SimulationResult simulate(const SwitchingSystem& sys, const SwitchingLaw& law, const Vec& x0);

struct SearchResult {
    SwitchingLaw law;
    double growth_exponent = 0.0; ///< log(spectral norm of the product) / time
};

/// Randomized greedy worst-case search: grow the law segment by segment,
/// sampling candidate (mode, duration) pairs and keeping the one that
/// maximizes the spectral norm of the accumulated product. Deterministic for
/// a fixed seed.
SearchResult worst_case_search(const SwitchingSystem& sys, double horizon, bool capped,
                               int budget, std::uint64_t seed);

} // namespace cuttail
