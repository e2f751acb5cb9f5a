// Copyright 2026 The mirrorqsd Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels against their OpenMP counterparts.

#include <numbers>
#include <utility>
#include <vector>

#include <benchmark/benchmark.h>

#include "mirrorqsd/kernels.hpp"
#include "mirrorqsd/strategies.hpp"

using namespace mirrorqsd;

namespace {

constexpr double kPi = std::numbers::pi;

kernels::SamplingTable med_table() {
    const double p = 0.3, theta = kPi / 12;
    const auto e = mirror_ensemble(p, theta);
    const auto povm = med_povm(p, theta).povm;
    std::vector<std::vector<double>> born;
    for (const auto &s : e.states) born.push_back(born_probabilities(s, povm));
    return {e.priors, born};
}

std::vector<double> axis(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = lo + (hi - lo) * static_cast<double>(i + 1) / static_cast<double>(n + 1);
    }
    return v;
}

std::vector<std::pair<double, double>> walk_points(std::size_t n) {
    std::vector<std::pair<double, double>> pts;
    for (double p : axis(0.0, 0.5, n)) {
        for (double t : axis(0.0, kPi / 2, n)) pts.emplace_back(p, t);
    }
    return pts;
}

template <auto Kernel> void BM_CountPhotons(benchmark::State &state) {
    const auto table = med_table();
    const auto photons = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Kernel(table, photons, kernels::PhotonKey{1, 0, 0}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel> void BM_BoundsGrid(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto ps = axis(0.0, 0.5, n);
    const auto thetas = axis(0.0, kPi / 2, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Kernel(ps, thetas, Strategy::Med));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

template <auto Kernel> void BM_WalkEquivalence(benchmark::State &state) {
    const auto pts = walk_points(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Kernel(pts, Strategy::Med, 20, 1));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pts.size()));
}

} // namespace

BENCHMARK(BM_CountPhotons<kernels::count_photons_serial>)
    ->Name("count_photons/serial")->Arg(100000)->Arg(1000000);
BENCHMARK(BM_CountPhotons<kernels::count_photons>)
    ->Name("count_photons/openmp")->Arg(100000)->Arg(1000000)->UseRealTime();

BENCHMARK(BM_BoundsGrid<kernels::bounds_grid_serial>)->Name("bounds_grid/serial")->Arg(100)->Arg(400);
BENCHMARK(BM_BoundsGrid<kernels::bounds_grid>)
    ->Name("bounds_grid/openmp")->Arg(100)->Arg(400)->UseRealTime();

BENCHMARK(BM_WalkEquivalence<kernels::walk_equivalence_serial>)
    ->Name("walk_equivalence/serial")->Arg(20);
BENCHMARK(BM_WalkEquivalence<kernels::walk_equivalence>)
    ->Name("walk_equivalence/openmp")->Arg(20)->UseRealTime();

BENCHMARK_MAIN();
