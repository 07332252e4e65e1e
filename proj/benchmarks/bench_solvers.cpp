#include <benchmark/benchmark.h>

#include "ramct/problem_gen.hpp"
#include "ramct/solvers.hpp"

using namespace ramct;

namespace {

// The two optimizers head to head on the same seeded instance.
void BM_OnlineOptimizer(benchmark::State& state) {
    const ProblemInstance p = seeded_instance(static_cast<int>(state.range(0)), 2, 5);
    SolverConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_online_optimizer(p, cfg));
    }
}
BENCHMARK(BM_OnlineOptimizer)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_AuxOptimizer(benchmark::State& state) {
    const ProblemInstance p = seeded_instance(static_cast<int>(state.range(0)), 2, 5);
    SolverConfig cfg;
    cfg.mode = SolverMode::auxiliary;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_aux_optimizer(p, cfg));
    }
}
BENCHMARK(BM_AuxOptimizer)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SubproblemA(benchmark::State& state) {
    const ProblemInstance p = seeded_instance(static_cast<int>(state.range(0)), 2, 7);
    SolverState st{p.w0, p.u0, p.v0, 0.1, 0, {}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(subproblem_a_update(p, st));
    }
}
BENCHMARK(BM_SubproblemA)->Arg(8)->Arg(16)->Arg(32);

void BM_AuxWUpdate(benchmark::State& state) {
    const ProblemInstance p = seeded_instance(static_cast<int>(state.range(0)), 2, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(aux_w_update(p, p.u0));
    }
}
BENCHMARK(BM_AuxWUpdate)->Arg(8)->Arg(16)->Arg(32);

}  // namespace
