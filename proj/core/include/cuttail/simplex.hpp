#pragma once

#include <string>
#include <vector>

#include "cuttail/matrix.hpp"

namespace cuttail {

enum class Relation { LessEqual, Equal };

struct LpRow {
    Vec coeffs;
    Relation relation = Relation::LessEqual;
    double bound = 0.0;
};

/// min objective . x  subject to the rows. Variables are free by default;
/// a nonempty `nonneg` mask marks variables constrained to x_i >= 0.
struct LinearProgram {
    Vec objective;
    std::vector<LpRow> rows;
    std::size_t var_count = 0;
    std::vector<bool> nonneg; ///< empty = all free
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Optimal;
    double optimum = 0.0;
    Vec solution;
};

/// Dense two-phase simplex. Free variables are split internally; pivoting is
/// Dantzig with a switch to Bland's rule once degeneracy stalls progress.
LpResult solve_lp(const LinearProgram& lp);

} // namespace cuttail
