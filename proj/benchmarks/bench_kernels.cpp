// Microbenchmarks of the per-step kernels, sized like the acceptance runs.

#include "haptolab/curve.hpp"
#include "haptolab/diffuse.hpp"
#include "haptolab/grid.hpp"
#include "haptolab/initial_data.hpp"
#include "haptolab/sharp.hpp"

#include <benchmark/benchmark.h>

using namespace haptolab;

namespace {

InitialData circle_data(int n, double eps)
{
    return make_initial_data(ShapeSpec::circle({0.5, 0.5}, 0.3), eps, ModeSum{1.0, {{1, 1, 0.3}}},
                             ModeSum::uniform(0.0), Grid::unit_square(n), 1e6, 0.01);
}

HaptoParams params(double eps)
{
    HaptoParams p;
    p.eps = eps;
    return p;
}

}  // namespace

static void BM_Laplacian(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const ScalarField u = circle_data(n, 4.0 / n).u0;
    ScalarField out(u.grid());
    for (auto _ : state) {
        laplacian_neumann(u, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(u.size()));
}
BENCHMARK(BM_Laplacian)->Arg(100)->Arg(200)->Arg(400);

static void BM_DiffuseStep(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const double eps = 4.0 / n;
    const InitialData d = circle_data(n, eps);
    DiffuseState s = DiffuseState::initial(d.u0, d.v0, d.m0);
    DiffuseStepper stepper(s.grid(), params(eps));
    const double dt = stepper.dt_max(s);
    for (auto _ : state) {
        stepper.step(s, dt);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(s.u.size()));
}
BENCHMARK(BM_DiffuseStep)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_SharpStep(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const Grid grid = Grid::unit_square(n);
    const SharpParams sp{4.0 / n, 5, 8};
    const SharpState s0 = SharpState::initial(ShapeSpec::circle({0.5, 0.5}, 0.3).polyline(),
                                              ModeSum{1.0, {{1, 1, 0.3}}}.sample(grid), ScalarField(grid), sp);
    SharpState s = s0;
    SharpStepper stepper(grid, params(0.01), sp);
    for (auto _ : state) {
        stepper.step(s, stepper.dt_max(s));
        if (s.t > 0.01) {
            // keep the circle well away from extinction
            state.PauseTiming();
            s = s0;
            state.ResumeTiming();
        }
    }
}
BENCHMARK(BM_SharpStep)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_Redistance(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const Grid grid = Grid::unit_square(n);
    const SharpParams sp{4.0 / n, 5, 8};
    SharpState s = SharpState::initial(ShapeSpec::star({0.5, 0.5}, 0.3, 0.05, 5).polyline(), ScalarField(grid, 1.0),
                                       ScalarField(grid), sp);
    SharpStepper stepper(grid, params(0.01), sp);
    for (auto _ : state) {
        stepper.redistance_now(s);
    }
}
BENCHMARK(BM_Redistance)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_LevelCurveAndHausdorff(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const ScalarField u = circle_data(n, 4.0 / n).u0;
    const InterfaceCurve ref = ShapeSpec::circle({0.5, 0.5}, 0.3).polyline(4096);
    for (auto _ : state) {
        const InterfaceCurve c = extract_level_curve(u, 0.5).main();
        benchmark::DoNotOptimize(hausdorff(c, ref, 0.5 / n));
    }
}
BENCHMARK(BM_LevelCurveAndHausdorff)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
