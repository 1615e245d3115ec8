#include <benchmark/benchmark.h>

#include "dcspec/antisym.hpp"
#include "dcspec/eigensolver.hpp"
#include "dcspec/hamiltonians.hpp"
#include "dcspec/kron.hpp"
#include "dcspec/model.hpp"
#include "dcspec/probes.hpp"

using namespace dcspec;

namespace {

GridSpec grid(int n, double l) {
    GridSpec g;
    g.N = n;
    g.L = l;
    return g;
}

PotentialSpec coulomb() {
    PotentialSpec p;
    p.k = -0.5;
    p.k0 = 1.0;
    return p;
}

void BM_TwoBodySymbol(benchmark::State& state) {
    const Vec3 x1(0.3, -0.2, 0.5), x2(-0.1, 0.4, 0.7);
    for (auto _ : state) benchmark::DoNotOptimize(two_body_free_symbol(x1, x2, 1.0));
}
BENCHMARK(BM_TwoBodySymbol);

void BM_Fft3d(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Field f = random_field(Lattice{grid(n, 10.0), 3}, 4, 1);
    for (auto _ : state) {
        fft_forward(f);
        fft_inverse(f);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(f.size()));
}
BENCHMARK(BM_Fft3d)->Arg(16)->Arg(32)->Arg(48);

void BM_ApplyHdc(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Lattice lat{grid(n, 8.0), 6};
    const StructuredOperator h = build_hdc(lat, coulomb(), 1.0);
    const Field in = random_band_limited(lat, 16, 1, 1);
    Field out = h.make_field();
    for (auto _ : state) h.apply(in, out);
    state.SetItemsProcessed(state.iterations() * static_cast<long>(h.dim()));
}
BENCHMARK(BM_ApplyHdc)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Exchange(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const TwoBodyField psi(random_field(two_body_lattice(grid(n, 8.0)), 16, 1));
    for (auto _ : state) benchmark::DoNotOptimize(exchange(psi));
}
BENCHMARK(BM_Exchange)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ApplyDirac3d(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Lattice lat{grid(n, 12.0), 3};
    const StructuredOperator h = build_dirac3d(lat, 1.0);
    const Field in = random_field(lat, 4, 1);
    Field out = h.make_field();
    for (auto _ : state) h.apply(in, out);
}
BENCHMARK(BM_ApplyDirac3d)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMicrosecond);

void BM_LanczosHdcGrid2(benchmark::State& state) {
    const StructuredOperator h = build_hdc(Lattice{grid(2, 4.0), 6}, coulomb(), 1.0);
    LanczosOptions o;
    o.howMany = 4;
    o.tol = 1e-9;
    for (auto _ : state) benchmark::DoNotOptimize(lanczos(as_apply(h), h.dim(), o));
}
BENCHMARK(BM_LanczosHdcGrid2)->Unit(benchmark::kMillisecond);

void BM_WeylProbe(benchmark::State& state) {
    WeylProbeSpec s;
    s.pot = coulomb();
    s.gridPoints = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(weyl_probe(s));
}
BENCHMARK(BM_WeylProbe)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_HardyWin(benchmark::State& state) {
    const std::vector<Field> fam = hardy_trial_family(grid(32, 16.0), 1, 1);
    for (auto _ : state) benchmark::DoNotOptimize(hardy_win(fam.front()));
}
BENCHMARK(BM_HardyWin)->Unit(benchmark::kMillisecond);

void BM_ModelEigenvalues(benchmark::State& state) {
    ModelSpec s;
    for (auto _ : state) benchmark::DoNotOptimize(model_eigenvalues(s, grid(8, 8.0), 0.0, 2, 1e-8));
}
BENCHMARK(BM_ModelEigenvalues)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
