// Copyright 2026 The qcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "qcorr/frontier.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/states.hpp"
#include "qcorr/tomography.hpp"

namespace {

using namespace qcorr;

void BM_HermitianEig4(benchmark::State &state) {
    const ComplexMatrix m = random_state(11).matrix();
    for (auto _ : state) {
        benchmark::DoNotOptimize(hermitian_eig(m));
    }
}
BENCHMARK(BM_HermitianEig4);

void BM_VonNeumannEntropy(benchmark::State &state) {
    const DensityMatrix rho = random_state(12);
    for (auto _ : state) {
        benchmark::DoNotOptimize(vn_entropy(rho.matrix()));
    }
}
BENCHMARK(BM_VonNeumannEntropy);

void BM_DiscordOneSided(benchmark::State &state) {
    const DensityMatrix rho = random_state(13);
    for (auto _ : state) {
        benchmark::DoNotOptimize(discord(rho, Side::B));
    }
}
BENCHMARK(BM_DiscordOneSided)->Unit(benchmark::kMillisecond);

void BM_CorrelationReport(benchmark::State &state) {
    const DensityMatrix rho = random_state(14);
    for (auto _ : state) {
        benchmark::DoNotOptimize(correlation_report(rho));
    }
}
BENCHMARK(BM_CorrelationReport)->Unit(benchmark::kMillisecond);

void BM_SimulateCounts(benchmark::State &state) {
    const DensityMatrix rho = rho_up(0.1, 0.7);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_counts(rho, 10000, ++seed));
    }
}
BENCHMARK(BM_SimulateCounts);

void BM_MleReconstruct(benchmark::State &state) {
    const TomographyDataset data = simulate_counts(rho_up(0.1, 0.7), 10000, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mle_reconstruct(data));
    }
}
BENCHMARK(BM_MleReconstruct)->Unit(benchmark::kMillisecond);

void BM_MncmsEnvelopeSmall(benchmark::State &state) {
    EnvelopeConfig cfg;
    cfg.bin_count = 4;
    cfg.samples_per_bin = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mncms_envelope(cfg));
    }
}
BENCHMARK(BM_MncmsEnvelopeSmall)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
