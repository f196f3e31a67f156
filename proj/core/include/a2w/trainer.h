// a2w/trainer.h

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

#ifndef A2W_TRAINER_H_
#define A2W_TRAINER_H_

#include <string>
#include <vector>

#include "a2w/io.h"
#include "a2w/network.h"

namespace a2w {

// SGD with global-norm gradient clipping. Batch gradients are sums over the
// batch's utterances, so duplicating an utterance doubles its gradient.
// Frozen layers are excluded from the update step entirely.

struct TrainHyper {
  double learning_rate = 0.1;
  int epochs = 50;
  int batch_size = 1;    // 0 = full batch, updated once per epoch
  double clip_norm = 5.0;
  uint64_t seed = 1;
  int checkpoint_every = 1;  // epochs between checkpoints; 0 disables
};

struct TrainingSet {
  std::vector<FeatureSequence> features;
  std::vector<LabelSequence> labels;

  size_t size() const { return features.size(); }
};

struct TrainStats {
  std::vector<double> epoch_loss;  // mean per used utterance
  int skipped_utterances = 0;      // labels that do not fit their frames
};

// Loads features and encodes transcripts under the vocabulary.
TrainingSet PrepareTrainingSet(const std::vector<ManifestEntry>& manifest,
                               const MixedVocab& vocab);

// Trains in place. When checkpoint_dir is non-empty, writes
// ckpt_epoch_NNNN.bin per checkpoint_every epochs, ckpt_final.bin at the
// end, and loss_curve.tsv. Aborts on a non-finite loss.
TrainStats Train(NetworkParams* params, const TrainingSet& data,
                 const TrainHyper& hyper, const std::string& checkpoint_dir = "",
                 uint64_t vocab_hash = 0);

}  // namespace a2w

#endif  // A2W_TRAINER_H_
