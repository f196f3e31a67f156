// a2w/ctc.cc

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

#include "a2w/ctc.h"

#include <cmath>

#include "a2w/common.h"

namespace a2w {

void Posteriorgram::Validate() const {
  A2W_CHECK(probs.rows() >= 1, "posteriorgram must have at least one frame");
  A2W_CHECK(blank_id >= 0 && blank_id < num_units(),
            "blank id " << blank_id << " out of range for V=" << num_units());
  for (int t = 0; t < num_frames(); ++t) {
    double sum = 0.0;
    for (int v = 0; v < num_units(); ++v) {
      double p = probs(t, v);
      A2W_CHECK(p >= 0.0 && p <= 1.0,
                "posterior out of [0,1] at frame " << t << ", unit " << v);
      sum += p;
    }
    A2W_CHECK(std::abs(sum - 1.0) <= 1e-6,
              "posterior row " << t << " sums to " << sum);
  }
}

int MinFramesForLabels(const LabelSequence& labels) {
  int n = static_cast<int>(labels.ids.size());
  int repeats = 0;
  for (size_t i = 1; i < labels.ids.size(); ++i) {
    if (labels.ids[i] == labels.ids[i - 1]) ++repeats;
  }
  return n + repeats;
}

std::vector<int> CollapsePath(const std::vector<int>& path, int blank_id) {
  std::vector<int> out;
  int prev = -1;
  for (int id : path) {
    if (id != prev && id != blank_id) out.push_back(id);
    prev = id;
  }
  return out;
}

namespace {

void CheckLabels(const Posteriorgram& post, const LabelSequence& labels) {
  A2W_CHECK(!labels.ids.empty(), "empty label sequence");
  for (int id : labels.ids) {
    A2W_CHECK(id >= 0 && id < post.num_units(),
              "label id " << id << " out of range for V=" << post.num_units());
    A2W_CHECK(id != post.blank_id, "blank id in label sequence");
  }
}

}  // namespace

CtcLossResult CtcLoss(const Posteriorgram& post, const LabelSequence& labels) {
  post.Validate();
  CheckLabels(post, labels);
  const int T = post.num_frames();
  const int L = static_cast<int>(labels.ids.size());
  A2W_CHECK(T >= MinFramesForLabels(labels),
            "no valid alignment: " << L << " labels (min "
                << MinFramesForLabels(labels) << " frames) do not fit in "
                << T << " frames");

  // Blank-interleaved label sequence: blank at even positions.
  const int S = 2 * L + 1;
  std::vector<int> ext(static_cast<size_t>(S), post.blank_id);
  for (int i = 0; i < L; ++i) ext[static_cast<size_t>(2 * i + 1)] = labels.ids[static_cast<size_t>(i)];

  Eigen::MatrixXd logp(T, S);
  for (int t = 0; t < T; ++t)
    for (int s = 0; s < S; ++s)
      logp(t, s) = SafeLog(post.probs(t, ext[static_cast<size_t>(s)]));

  auto allows_skip = [&](int s) {
    // A diagonal skip into position s is legal when s is a label position
    // that differs from the label two positions back.
    return s >= 2 && ext[static_cast<size_t>(s)] != post.blank_id &&
           ext[static_cast<size_t>(s)] != ext[static_cast<size_t>(s - 2)];
  };

  // Forward: alpha(t, s) includes the emission at t.
  Eigen::MatrixXd alpha = Eigen::MatrixXd::Constant(T, S, kLogZero);
  alpha(0, 0) = logp(0, 0);
  if (S > 1) alpha(0, 1) = logp(0, 1);
  for (int t = 1; t < T; ++t) {
    for (int s = 0; s < S; ++s) {
      double a = alpha(t - 1, s);
      if (s >= 1) a = LogAdd(a, alpha(t - 1, s - 1));
      if (allows_skip(s)) a = LogAdd(a, alpha(t - 1, s - 2));
      alpha(t, s) = (a <= kLogZero) ? kLogZero : a + logp(t, s);
    }
  }

  double log_prob = LogAdd(alpha(T - 1, S - 1), S >= 2 ? alpha(T - 1, S - 2) : kLogZero);
  A2W_CHECK(log_prob > kLogZero / 2,
            "no valid alignment has nonzero probability");

  // Backward: beta(t, s) excludes the emission at t, so that
  // P(l|x) = sum_s exp(alpha(t,s) + beta(t,s)) at every t.
  Eigen::MatrixXd beta = Eigen::MatrixXd::Constant(T, S, kLogZero);
  beta(T - 1, S - 1) = 0.0;
  if (S >= 2) beta(T - 1, S - 2) = 0.0;
  for (int t = T - 2; t >= 0; --t) {
    for (int s = 0; s < S; ++s) {
      double b = kLogZero;
      if (beta(t + 1, s) > kLogZero) b = LogAdd(b, logp(t + 1, s) + beta(t + 1, s));
      if (s + 1 < S && beta(t + 1, s + 1) > kLogZero)
        b = LogAdd(b, logp(t + 1, s + 1) + beta(t + 1, s + 1));
      if (s + 2 < S && allows_skip(s + 2) && beta(t + 1, s + 2) > kLogZero)
        b = LogAdd(b, logp(t + 1, s + 2) + beta(t + 1, s + 2));
      beta(t, s) = b;
    }
  }

  // Gradient wrt logits: posterior minus lattice occupancy.
  CtcLossResult result;
  result.loss = -log_prob;
  result.grad_logits = post.probs;
  for (int t = 0; t < T; ++t) {
    std::vector<double> occ(static_cast<size_t>(post.num_units()), kLogZero);
    for (int s = 0; s < S; ++s) {
      if (alpha(t, s) <= kLogZero || beta(t, s) <= kLogZero) continue;
      size_t k = static_cast<size_t>(ext[static_cast<size_t>(s)]);
      occ[k] = LogAdd(occ[k], alpha(t, s) + beta(t, s));
    }
    for (int v = 0; v < post.num_units(); ++v) {
      double o = occ[static_cast<size_t>(v)];
      if (o > kLogZero) result.grad_logits(t, v) -= std::exp(o - log_prob);
    }
  }
  return result;
}

double BruteForceLoss(const Posteriorgram& post, const LabelSequence& labels) {
  post.Validate();
  CheckLabels(post, labels);
  const int T = post.num_frames();
  const int V = post.num_units();
  double instance_size = std::pow(static_cast<double>(V), T);
  A2W_CHECK(instance_size <= 1e7,
            "brute-force instance too large: V^T = " << instance_size);

  std::vector<int> path(static_cast<size_t>(T), 0);
  double total = 0.0;
  while (true) {
    if (CollapsePath(path, post.blank_id) == labels.ids) {
      double prob = 1.0;
      for (int t = 0; t < T; ++t) prob *= post.probs(t, path[static_cast<size_t>(t)]);
      total += prob;
    }
    // Odometer increment over the V^T paths.
    int pos = T - 1;
    while (pos >= 0) {
      if (++path[static_cast<size_t>(pos)] < V) break;
      path[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  A2W_CHECK(total > 0.0, "no valid alignment: no path collapses to the labels");
  return -std::log(total);
}

std::vector<SpikeSegment> GreedyDecode(const Posteriorgram& post) {
  post.Validate();
  const int T = post.num_frames();
  std::vector<SpikeSegment> segments;
  int run_id = -1, run_start = 0;
  auto flush = [&](int run_end) {
    if (run_id < 0 || run_id == post.blank_id) return;
    SpikeSegment seg;
    seg.unit_id = run_id;
    seg.start = run_start;
    seg.end = run_end;
    seg.peak = run_start;
    for (int t = run_start + 1; t <= run_end; ++t) {
      if (post.probs(t, run_id) > post.probs(seg.peak, run_id)) seg.peak = t;
    }
    segments.push_back(seg);
  };
  for (int t = 0; t < T; ++t) {
    int best = 0;
    post.probs.row(t).maxCoeff(&best);  // first maximum on ties
    if (best != run_id) {
      flush(t - 1);
      run_id = best;
      run_start = t;
    }
  }
  flush(T - 1);
  return segments;
}

std::vector<std::string> DecodeToWords(const Posteriorgram& post,
                                       const MixedVocab& vocab) {
  std::vector<SpikeSegment> segments = GreedyDecode(post);
  const UnitInventory& inv = vocab.inventory;
  if (vocab.scheme == VocabScheme::kWordOnly) {
    std::vector<std::string> words;
    for (const SpikeSegment& seg : segments) {
      if (seg.unit_id == inv.silence_id) continue;
      words.push_back(inv.StringOf(seg.unit_id));
    }
    return words;
  }
  std::vector<std::string> units;
  units.reserve(segments.size());
  for (const SpikeSegment& seg : segments) units.push_back(inv.StringOf(seg.unit_id));
  return CollapseUnits(units, vocab);
}

std::vector<std::pair<std::string, SpikeSegment>> DecodeWordTokens(
    const Posteriorgram& post, const MixedVocab& vocab) {
  A2W_CHECK(vocab.scheme == VocabScheme::kWordOnly,
            "word-token decode requires a word-only vocabulary");
  std::vector<std::pair<std::string, SpikeSegment>> tokens;
  for (const SpikeSegment& seg : GreedyDecode(post)) {
    if (seg.unit_id == vocab.inventory.silence_id) continue;
    tokens.emplace_back(vocab.inventory.StringOf(seg.unit_id), seg);
  }
  return tokens;
}

}  // namespace a2w
