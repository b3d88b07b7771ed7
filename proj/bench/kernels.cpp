// Copyright 2026 The LRCoin Authors.
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

// Serial reference vs OpenMP kernel for each parallel hot loop.

#include <benchmark/benchmark.h>

#include "lrcoin/bilinear.hpp"
#include "lrcoin/chain.hpp"
#include "lrcoin/genericgroup.hpp"
#include "lrcoin/leakage.hpp"
#include "lrcoin/lrsig.hpp"
#include "lrcoin/random.hpp"

namespace {

using namespace lrcoin;

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void BM_CollisionExperiment(benchmark::State& state) {
  for (auto _ : state) {
    auto r = genericgroup::collision_experiment(10007, 50, 1000, genericgroup::Strategy::random, 1, exec_of(state));
    benchmark::DoNotOptimize(r.colliding_trials);
  }
}
BENCHMARK(BM_CollisionExperiment)->ArgName("parallel")->Arg(0)->Arg(1)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_LeakageAttack(benchmark::State& state) {
  for (auto _ : state) {
    auto r = leakage::run_attack(leakage::Variant::split_refresh, 16, 20, 1, exec_of(state));
    benchmark::DoNotOptimize(r.successes);
  }
}
BENCHMARK(BM_LeakageAttack)->ArgName("parallel")->Arg(0)->Arg(1)->UseRealTime()->Unit(benchmark::kMillisecond);

// Signature batch over curve-signed transactions, the expensive part of
// chain validation.
void BM_VerifyBatch(benchmark::State& state) {
  const auto params = bilinear::BilinearParams::curve();
  ChaChaRng rng(9);
  lrsig::KeyPair kp = lrsig::keygen(params, rng);
  std::vector<chain::Transaction> txs;
  for (int i = 0; i < 32; ++i)
    txs.push_back(chain::sign_tx(chain::make_purchase("topic-" + std::to_string(i), 10), kp.pk, kp.sk, rng));
  std::vector<const chain::Transaction*> ptrs;
  for (const auto& tx : txs) ptrs.push_back(&tx);
  for (auto _ : state) {
    auto ok = chain::verify_batch(ptrs, exec_of(state));
    benchmark::DoNotOptimize(ok);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 32);
}
BENCHMARK(BM_VerifyBatch)->ArgName("parallel")->Arg(0)->Arg(1)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
