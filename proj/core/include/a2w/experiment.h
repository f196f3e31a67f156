// a2w/experiment.h

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

#ifndef A2W_EXPERIMENT_H_
#define A2W_EXPERIMENT_H_

#include <string>
#include <vector>

#include "a2w/config.h"
#include "a2w/wer.h"

namespace a2w {

// Greedy decode of every manifest utterance under a model.
std::vector<UttText> DecodeManifest(const NetworkParams& params,
                                    const MixedVocab& vocab,
                                    const std::vector<ManifestEntry>& manifest);

// Word decode with letter-model OOV replacement. When debug_dump_path is
// non-empty a JSON-lines record per utterance is written there.
std::vector<UttText> HybridDecodeManifest(
    const NetworkParams& word_model, const MixedVocab& word_vocab,
    const NetworkParams& letter_model, const MixedVocab& letter_vocab,
    const std::vector<ManifestEntry>& manifest,
    const std::string& debug_dump_path = "");

struct ModelResult {
  std::string name;
  WerBreakdown wer;
  int oov_tokens_emitted = 0;
};

struct ExperimentResult {
  std::vector<ModelResult> rows;
  std::string table;       // rendered comparison table
  std::string output_dir;  // resolved artifact directory
};

// The full desk-scale pipeline: synthesize a corpus, build the word / letter
// / mixed vocabularies, train each model, decode the test set (greedy and
// hybrid), score everything and render a comparison table. All artifacts
// land under the resolved output directory; the run is bit-reproducible for
// a fixed config and seed.
ExperimentResult RunExperiment(const ExperimentConfig& config);

}  // namespace a2w

#endif  // A2W_EXPERIMENT_H_
