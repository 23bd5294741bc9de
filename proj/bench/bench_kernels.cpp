#include "opuc/kernels.hpp"
#include "opuc/recursion.hpp"
#include "opuc/roots.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace opuc;
namespace k = opuc::kernels;

namespace {

std::vector<Complex> disk_points(int count, double r)
{
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> u(-r, r);
    std::vector<Complex> out;
    for (int i = 0; i < count; ++i) {
        const double re = u(gen);
        out.emplace_back(re, u(gen));
    }
    return out;
}

template <bool Parallel>
void BM_horner(benchmark::State& state)
{
    const ComplexPoly p = monic_pair(families::cosine_modulated(), static_cast<int>(state.range(0))).phi;
    const auto pts = disk_points(4096, 1.0);
    std::vector<Complex> out(pts.size());
    for (auto _ : state) {
        if constexpr (Parallel) {
            k::parallel::horner(p, pts, out);
        } else {
            k::serial::horner(p, pts, out);
        }
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
}

template <bool Parallel>
void BM_szego_values(benchmark::State& state)
{
    const auto alphas = families::cosine_modulated().alphas(static_cast<std::size_t>(state.range(0)));
    const auto pts = disk_points(1024, 1.0);
    for (auto _ : state) {
        auto g = Parallel ? k::parallel::szego_values(alphas, pts) : k::serial::szego_values(alphas, pts);
        benchmark::DoNotOptimize(g.phi.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
}

template <bool Parallel>
void BM_aberth(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const ComplexPoly p = monic_pair(families::single_geometric(), n).phi;
    const auto roots = disk_points(n, 0.7);
    const std::vector<std::uint8_t> active(roots.size(), 1);
    std::vector<Complex> out(roots.size());
    for (auto _ : state) {
        if constexpr (Parallel) {
            k::parallel::aberth_corrections(p, roots, active, out);
        } else {
            k::serial::aberth_corrections(p, roots, active, out);
        }
        benchmark::DoNotOptimize(out.data());
    }
}

template <bool Parallel>
void BM_outer_scan(benchmark::State& state)
{
    const auto fam = families::cosine_modulated();
    std::vector<Complex> pts;
    for (int i = 0; i < 2048; ++i) {
        pts.push_back(std::polar(0.51 + 0.0002 * i, 0.37 * i));
    }
    const std::vector<int> steps(pts.size(), static_cast<int>(state.range(0)));
    std::vector<Complex> out(pts.size());
    for (auto _ : state) {
        if constexpr (Parallel) {
            k::parallel::outer_limit_scan(fam, pts, steps, out);
        } else {
            k::serial::outer_limit_scan(fam, pts, steps, out);
        }
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
}

void BM_find_roots(benchmark::State& state)
{
    const ComplexPoly p = monic_pair(families::cosine_modulated(), static_cast<int>(state.range(0))).phi;
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_roots(p).roots.data());
    }
}

} // namespace

BENCHMARK(BM_horner<false>)->Arg(50)->Arg(200);
BENCHMARK(BM_horner<true>)->Arg(50)->Arg(200);
BENCHMARK(BM_szego_values<false>)->Arg(100)->Arg(400);
BENCHMARK(BM_szego_values<true>)->Arg(100)->Arg(400);
BENCHMARK(BM_aberth<false>)->Arg(100)->Arg(400);
BENCHMARK(BM_aberth<true>)->Arg(100)->Arg(400);
BENCHMARK(BM_outer_scan<false>)->Arg(200);
BENCHMARK(BM_outer_scan<true>)->Arg(200);
BENCHMARK(BM_find_roots)->Arg(50)->Arg(200);

BENCHMARK_MAIN();
