#include "cuttail/switchsim.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace cuttail {

double SwitchingLaw::total_time() const {
    double t = 0.0;
    for (const auto& s : segments) t += s.duration;
    return t;
}

bool validate_law(const SwitchingSystem& sys, const SwitchingLaw& law, bool capped) {
    int last = -1;
    for (const auto& seg : law.segments) {
        if (seg.mode < 0 || seg.mode >= static_cast<int>(sys.modes.size())) return false;
        if (seg.mode == last) return false;
        const Mode& m = sys.modes[seg.mode];
        if (seg.duration < m.dwell_min) return false;
        if (capped && seg.duration > m.dwell_min + m.t_cut) return false;
        last = seg.mode;
    }
    return true;
}

SimulationResult simulate(const SwitchingSystem& sys, const SwitchingLaw& law, const Vec& x0) {
    SimulationResult out;
    out.final_point = x0;
    double t = 0.0;
    out.norm_samples.emplace_back(t, norm2(x0));
    for (const auto& seg : law.segments) {
        const Matrix& a = sys.modes[seg.mode].matrix;
        const Matrix sub = matrix_exponential(a, seg.duration / 10.0);
        Vec x = out.final_point;
        for (int j = 1; j < 10; ++j) {
            x = sub * x;
            out.norm_samples.emplace_back(t + seg.duration * j / 10.0, norm2(x));
        }
        // segment end computed with the full-step exponential, not the
        // composed tenths, so one segment matches matrix_exponential exactly
        out.final_point = matrix_exponential(a, seg.duration) * out.final_point;
        t += seg.duration;
        out.norm_samples.emplace_back(t, norm2(out.final_point));
    }
    return out;
}

SearchResult worst_case_search(const SwitchingSystem& sys, double horizon, bool capped,
                               int budget, std::uint64_t seed) {
    if (budget < 1) throw std::invalid_argument("worst_case_search: budget must be >= 1");
    if (sys.modes.empty()) throw std::invalid_argument("worst_case_search: empty system");

    std::mt19937_64 rng(seed);
    const std::size_t d = sys.modes[0].matrix.rows();
    Matrix product = Matrix::identity(d);
    SearchResult out;
    double elapsed = 0.0;
    int last = -1;

    while (elapsed < horizon) {
        bool found = false;
        double best_growth = 0.0;
        int best_mode = -1;
        double best_duration = 0.0;
        Matrix best_product;

        for (int c = 0; c < budget; ++c) {
            int mode = static_cast<int>(rng() % sys.modes.size());
            if (mode == last) {
                if (sys.modes.size() == 1) break; // no switching freedom left
                mode = (mode + 1 + static_cast<int>(rng() % (sys.modes.size() - 1))) %
                       static_cast<int>(sys.modes.size());
            }
            const Mode& m = sys.modes[mode];
            // beyond m + T_cut longer stretches only add decay, so sampling is
            // capped at m + 4 T_cut even in the "uncapped" regime
            const double hi = m.dwell_min + (capped ? 1.0 : 4.0) * m.t_cut;
            std::uniform_real_distribution<double> dist(std::log(m.dwell_min), std::log(hi));
            const double duration = std::exp(dist(rng));
            const Matrix cand = matrix_exponential(m.matrix, duration) * product;
            const double growth = cand.norm_spectral();
            if (!found || growth > best_growth) {
                found = true;
                best_growth = growth;
                best_mode = mode;
                best_duration = duration;
                best_product = cand;
            }
        }
        if (!found) break;
        out.law.segments.push_back({best_mode, best_duration});
        product = best_product;
        elapsed += best_duration;
        last = best_mode;
    }

    out.growth_exponent =
        elapsed > 0.0 ? std::log(product.norm_spectral()) / elapsed : 0.0;
    return out;
}

} // namespace cuttail
