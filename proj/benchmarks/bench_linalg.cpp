#include <benchmark/benchmark.h>

#include <random>

#include "ramct/linalg.hpp"

using namespace ramct;

namespace {

RealMatrix randn(std::mt19937& rng, int rows, int cols) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    RealMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = gauss(rng);
    return m;
}

void BM_Gsvd(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937 rng(17);
    const RealMatrix A = randn(rng, n + 4, n);
    const RealMatrix L = randn(rng, n, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gsvd(A, L));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_Gsvd)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_TikhonovSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937 rng(19);
    const RealMatrix A = randn(rng, n + 4, n);
    const RealMatrix L = randn(rng, n, n);
    const GsvdFactors f = gsvd(A, L);
    RealVector b(n + 4);
    for (int i = 0; i < n + 4; ++i) b(i) = i * 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tikhonov_solve_gsvd(f, b, 0.6));
    }
}
BENCHMARK(BM_TikhonovSolve)->RangeMultiplier(2)->Range(4, 64);

void BM_DenseNormalSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937 rng(23);
    std::vector<NormalTerm> terms{{randn(rng, n + 2, n), RealVector::Ones(n + 2), 1.0}};
    std::vector<NormalReg> regs{{RealMatrix::Identity(n, n), 0.6}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(dense_normal_solve(terms, regs, 0.001));
    }
}
BENCHMARK(BM_DenseNormalSolve)->RangeMultiplier(2)->Range(4, 64);

}  // namespace
