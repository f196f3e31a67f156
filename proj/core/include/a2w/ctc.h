// a2w/ctc.h

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

#ifndef A2W_CTC_H_
#define A2W_CTC_H_

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

#include "a2w/vocab.h"

namespace a2w {

// Per-frame output distributions of a network: one row per frame, one column
// per unit, rows summing to one.
struct Posteriorgram {
  Eigen::MatrixXd probs;  // T x V
  int blank_id = -1;

  int num_frames() const { return static_cast<int>(probs.rows()); }
  int num_units() const { return static_cast<int>(probs.cols()); }

  // Checks T >= 1, blank id in range, entries in [0,1], rows sum to 1
  // within 1e-6.
  void Validate() const;
};

// A decoded token and the frame interval of its argmax run. The span is the
// whole run; the peak is the highest-posterior frame inside it.
struct SpikeSegment {
  int unit_id = -1;
  int start = 0;
  int end = 0;  // inclusive
  int peak = 0;

  int length() const { return end - start + 1; }
};

struct CtcLossResult {
  double loss = 0.0;                // -ln P(l|x), nats
  Eigen::MatrixXd grad_logits;      // T x V, d loss / d pre-softmax logits
};

// Fewest frames that admit a valid alignment: label length plus one blank
// between each pair of adjacent identical labels.
int MinFramesForLabels(const LabelSequence& labels);

// Removes consecutive repeats, then blanks.
std::vector<int> CollapsePath(const std::vector<int>& path, int blank_id);

// CTC loss over the blank-interleaved label lattice, computed in log space
// with the forward/backward recursions, plus the gradient with respect to
// the pre-softmax logits (posterior minus lattice occupancy). Throws when
// the labels are empty, contain the blank, or do not fit in T frames.
CtcLossResult CtcLoss(const Posteriorgram& post, const LabelSequence& labels);

// Exhaustive-enumeration reference for CtcLoss: sums the probability of
// every length-T path whose collapse equals the labels. Deliberately shares
// no code with the lattice recursion. Guarded to V^T <= 10^7.
double BruteForceLoss(const Posteriorgram& post, const LabelSequence& labels);

// Per-frame argmax, collapse of consecutive repeats, blanks dropped. Each
// surviving token carries its run span and peak frame.
std::vector<SpikeSegment> GreedyDecode(const Posteriorgram& post);

// Greedy decode followed by unit-to-word mapping: separator grouping for the
// mixed and letters-only schemes, identity for word-only (the OOV unit comes
// through as the literal token "OOV"; silence is dropped).
std::vector<std::string> DecodeToWords(const Posteriorgram& post,
                                       const MixedVocab& vocab);

// Word-only decode keeping the frame spans, for the hybrid OOV lookup.
std::vector<std::pair<std::string, SpikeSegment>> DecodeWordTokens(
    const Posteriorgram& post, const MixedVocab& vocab);

}  // namespace a2w

#endif  // A2W_CTC_H_
