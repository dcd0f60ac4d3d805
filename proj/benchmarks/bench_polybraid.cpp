#include <benchmark/benchmark.h>

#include "polybraid/braid.hpp"
#include "polybraid/freegrp.hpp"
#include "polybraid/rng.hpp"
#include "polybraid/sl2z.hpp"
#include "polybraid/tracking.hpp"

namespace {

using namespace polybraid;
using polycore::Cx;

polycore::MonicPoly random_poly(int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Cx> c(static_cast<size_t>(n));
    for (auto& a : c) a = rng.disk(2.0);
    return polycore::MonicPoly(std::move(c));
}

void BM_AberthRoots(benchmark::State& state) {
    const auto p = random_poly(static_cast<int>(state.range(0)), 9);
    for (auto _ : state) benchmark::DoNotOptimize(polycore::roots(p));
}
BENCHMARK(BM_AberthRoots)->Arg(4)->Arg(6)->Arg(8);

void BM_Discriminant(benchmark::State& state) {
    const auto p = random_poly(static_cast<int>(state.range(0)), 10);
    for (auto _ : state) benchmark::DoNotOptimize(polycore::discriminant(p));
}
BENCHMARK(BM_Discriminant)->Arg(4)->Arg(8);

family::PolyFamily circle_family(int n, int m) {
    family::PolyFamily F;
    F.degree = n;
    F.graph.vertices = {"v0"};
    F.graph.basepoint = "v0";
    F.graph.edges.push_back({"e0", {"v0", "v0"}, m});
    std::vector<std::vector<Cx>> row;
    for (int j = 0; j <= m; ++j) {
        std::vector<Cx> c(static_cast<size_t>(n), Cx{0, 0});
        c[0] = -std::exp(Cx{0, 6.283185307179586 * j / m});
        row.push_back(std::move(c));
    }
    F.samples.push_back(std::move(row));
    return F;
}

void BM_TrackLoop(benchmark::State& state) {
    const auto F = circle_family(static_cast<int>(state.range(0)), 64 * static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(tracking::loop_braid(F, {{"e0", false}}));
}
BENCHMARK(BM_TrackLoop)->Arg(2)->Arg(4)->Arg(5);

void BM_ArtinCancel(benchmark::State& state) {
    Rng rng(13);
    std::vector<int> letters;
    for (int i = 0; i < state.range(0); ++i) {
        const int g = static_cast<int>(rng.integer(1, 4));
        letters.push_back(rng.next_double() < 0.5 ? g : -g);
    }
    const braid::BraidWord b(5, letters);
    const braid::BraidWord w = b * b.inverse();
    for (auto _ : state) benchmark::DoNotOptimize(braid::artin_is_trivial(w));
}
BENCHMARK(BM_ArtinCancel)->Arg(20)->Arg(40);

void BM_PslNormalForm(benchmark::State& state) {
    const braid::IntMatrix2 m = sl2z::kU * sl2z::kV * sl2z::kU * sl2z::kV * sl2z::kV;
    for (auto _ : state) benchmark::DoNotOptimize(sl2z::psl_normal_form(m));
}
BENCHMARK(BM_PslNormalForm);

void BM_SchreierKernel(benchmark::State& state) {
    // F_2 onto S_4.
    const std::vector<std::vector<int>> images{{1, 0, 2, 3}, {1, 2, 3, 0}};
    for (auto _ : state) {
        auto g = freegrp::schreier_kernel(images, 4);
        benchmark::DoNotOptimize(freegrp::free_basis_and_rank(g));
    }
}
BENCHMARK(BM_SchreierKernel);

} // namespace

BENCHMARK_MAIN();
