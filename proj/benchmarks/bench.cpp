#include <benchmark/benchmark.h>

#include "nifem/analysis.hpp"
#include "nifem/assembly.hpp"
#include "nifem/mesh.hpp"
#include "nifem/problems.hpp"
#include "nifem/solver.hpp"

namespace {

const nifem::ManufacturedProblem& problem() {
    static const nifem::ManufacturedProblem p = nifem::example1(1.0, 100.0);
    return p;
}

void bm_fitted_mesh(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto bg = nifem::build_background(n);
    for (auto _ : state) {
        auto fm = nifem::generate_fitted(bg, problem().levelset);
        benchmark::DoNotOptimize(fm.cells.data());
    }
    state.SetComplexityN(n);
}
BENCHMARK(bm_fitted_mesh)->Arg(32)->Arg(64)->Arg(128)->Complexity();

void bm_assembly(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto& prob = problem();
    const auto fm = nifem::generate_fitted(nifem::build_background(n), prob.levelset);
    const auto dm = nifem::build_dofmap(fm);
    for (auto _ : state) {
        auto sys = nifem::assemble_system(fm, dm, prob.beta_on(nifem::SideTag::Omega1),
                                          prob.beta_on(nifem::SideTag::Omega2), prob.f);
        benchmark::DoNotOptimize(sys.rhs.data());
    }
    state.SetComplexityN(n);
}
BENCHMARK(bm_assembly)->Arg(32)->Arg(64)->Arg(128)->Complexity();

void bm_pcg_solve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto& prob = problem();
    const auto fm = nifem::generate_fitted(nifem::build_background(n), prob.levelset);
    const auto dm = nifem::build_dofmap(fm);
    const auto sys = nifem::assemble_system(fm, dm, prob.beta_on(nifem::SideTag::Omega1),
                                            prob.beta_on(nifem::SideTag::Omega2), prob.f);
    for (auto _ : state) {
        auto x = nifem::solve_spd(sys.A, sys.rhs, 1e-12).first;
        benchmark::DoNotOptimize(x.data());
    }
    state.SetComplexityN(n);
}
BENCHMARK(bm_pcg_solve)->Arg(32)->Arg(64)->Complexity();

void bm_full_level(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto& prob = problem();
    for (auto _ : state) {
        const auto fm = nifem::generate_fitted(nifem::build_background(n), prob.levelset);
        const auto dm = nifem::build_dofmap(fm);
        const auto sys = nifem::assemble_system(fm, dm, prob.beta_on(nifem::SideTag::Omega1),
                                                prob.beta_on(nifem::SideTag::Omega2), prob.f);
        const auto x = nifem::solve_spd(sys.A, sys.rhs, 1e-12).first;
        const auto [e0, e1] = nifem::error_norms(fm, x, dm, prob.u, prob.grad_u);
        benchmark::DoNotOptimize(e0 + e1);
    }
    state.SetComplexityN(n);
}
BENCHMARK(bm_full_level)->Arg(16)->Arg(32)->Arg(64)->Complexity();

}  // namespace

BENCHMARK_MAIN();
