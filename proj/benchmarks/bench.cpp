#include <benchmark/benchmark.h>

#include "cuttail/cut_tail.hpp"
#include "cuttail/geometry2d.hpp"

using namespace cuttail;

namespace {

Matrix study_4x4() {
    return Matrix::from_rows({{4.8, 7.5, 16.0, 12.0},
                              {-3.0, -4.7, -9.6, -7.2},
                              {-3.2, -4.8, -5.4, -3.6},
                              {4.0, 6.0, 6.0, 3.9}});
}

void bm_matrix_exponential(benchmark::State& state) {
    Matrix m = study_4x4();
    for (auto _ : state) benchmark::DoNotOptimize(matrix_exponential(m, 1.7));
}
BENCHMARK(bm_matrix_exponential);

void bm_eigenvalues(benchmark::State& state) {
    Matrix m = study_4x4();
    for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(m));
}
BENCHMARK(bm_eigenvalues);

void bm_sup_abs(benchmark::State& state) {
    Basis b = build_basis(Spectrum{{{-0.1, 0.7, 1}, {-0.5, 0.3, 1}}});
    QuasiPolynomial p{b, {0.4, -1.1, 0.7, 0.2}};
    for (auto _ : state) benchmark::DoNotOptimize(sup_abs_on_interval(p, 20.0));
}
BENCHMARK(bm_sup_abs);

void bm_exchange_solve_2d(benchmark::State& state) {
    Basis b = build_basis(Spectrum{{{-0.2, 0.0, 1}, {-0.5, 0.0, 1}}});
    for (auto _ : state) benchmark::DoNotOptimize(exchange_solve(b, 3.5, 1e-6));
}
BENCHMARK(bm_exchange_solve_2d);

void bm_find_cut_tail_4d(benchmark::State& state) {
    Spectrum s{{{-0.1, 0.7, 1}, {-0.5, 0.3, 1}}};
    for (auto _ : state) benchmark::DoNotOptimize(find_cut_tail(s));
}
BENCHMARK(bm_find_cut_tail_4d);

void bm_symmetrized_hull(benchmark::State& state) {
    Spectrum s{{{-0.1, 0.3, 1}}};
    std::vector<Point2> pts;
    for (int i = 0; i < 4000; ++i)
        pts.push_back(canonical_trajectory_point(s, 120.0 * i / 3999.0));
    for (auto _ : state) benchmark::DoNotOptimize(symmetrized_hull(pts));
}
BENCHMARK(bm_symmetrized_hull);

} // namespace

BENCHMARK_MAIN();
