// benchmarks/bench_main.cc

// Copyright 2026  The a2w authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "a2w/attention.h"
#include "a2w/ctc.h"
#include "a2w/network.h"

namespace {

using namespace a2w;

Posteriorgram MakePosteriorgram(int t_len, int v, uint64_t seed) {
  Rng rng(seed);
  Posteriorgram post;
  post.blank_id = v - 1;
  post.probs.resize(t_len, v);
  for (int t = 0; t < t_len; ++t) {
    double sum = 0.0;
    for (int k = 0; k < v; ++k) {
      double e = std::exp(rng.NextUniform(-2, 2));
      post.probs(t, k) = e;
      sum += e;
    }
    post.probs.row(t) /= sum;
  }
  return post;
}

LabelSequence MakeLabels(int len, int v) {
  LabelSequence l;
  for (int i = 0; i < len; ++i) l.ids.push_back(i % (v - 1));
  return l;
}

void BM_CtcLoss(benchmark::State& state) {
  int t_len = static_cast<int>(state.range(0));
  Posteriorgram post = MakePosteriorgram(t_len, 40, 1);
  LabelSequence labels = MakeLabels(t_len / 4, 40);
  for (auto _ : state) {
    benchmark::DoNotOptimize(CtcLoss(post, labels).loss);
  }
}
BENCHMARK(BM_CtcLoss)->Arg(50)->Arg(100)->Arg(200);

void BM_GreedyDecode(benchmark::State& state) {
  Posteriorgram post = MakePosteriorgram(static_cast<int>(state.range(0)), 60, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(GreedyDecode(post).size());
  }
}
BENCHMARK(BM_GreedyDecode)->Arg(100)->Arg(400);

void BM_NetworkForward(benchmark::State& state) {
  Rng rng(3);
  NetworkParams params = NetworkParams::Create(16, 32, 60, 2, &rng);
  FeatureSequence feats;
  feats.utterance_id = "bench";
  feats.frames.resize(static_cast<int>(state.range(0)), 16);
  for (int t = 0; t < feats.frames.rows(); ++t)
    for (int d = 0; d < 16; ++d) feats.frames(t, d) = rng.NextUniform(-1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(NetworkForward(params, feats).post.probs(0, 0));
  }
}
BENCHMARK(BM_NetworkForward)->Arg(60)->Arg(120);

void BM_AttentionForward(benchmark::State& state) {
  AttentionConfig cfg;
  cfg.tau = static_cast<int>(state.range(0));
  cfg.gamma = cfg.window();
  cfg.mode = AttentionMode::kHybrid;
  AttentionParams params = AttentionParams::Zero(cfg, 64, 60);
  Rng rng(4);
  params.InitUniform(&rng, 0.05);
  Eigen::MatrixXd hidden(80, 64);
  for (int t = 0; t < 80; ++t)
    for (int d = 0; d < 64; ++d) hidden(t, d) = rng.NextUniform(-1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(AttentionForward(params, hidden).posteriors(0, 0));
  }
}
BENCHMARK(BM_AttentionForward)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
