// a2w/trainer.cc

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

#include "a2w/trainer.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "a2w/checkpoint.h"
#include "a2w/common.h"

namespace a2w {

namespace {

// Adds -lr * grad to every trainable parameter; frozen layers are skipped
// rather than updated with zero.
void ApplyUpdate(NetworkParams* params, const NetworkParams& grad, double lr) {
  for (size_t i = 0; i < params->layers.size(); ++i) {
    if (params->layers[i].frozen) continue;
    params->layers[i].fwd.Add(grad.layers[i].fwd, -lr);
    params->layers[i].bwd.Add(grad.layers[i].bwd, -lr);
  }
  params->softmax.Add(grad.softmax, -lr);
  if (params->has_attention) params->attention.Add(grad.attention, -lr);
}

std::string CheckpointName(int epoch) {
  std::ostringstream os;
  os << "ckpt_epoch_" << std::setw(4) << std::setfill('0') << epoch << ".bin";
  return os.str();
}

}  // namespace

TrainingSet PrepareTrainingSet(const std::vector<ManifestEntry>& manifest,
                               const MixedVocab& vocab) {
  TrainingSet data;
  for (const ManifestEntry& e : manifest) {
    data.features.push_back(LoadFeatures(e.feature_path, e.utterance_id));
    data.labels.push_back(EncodeSentence(e.words, vocab));
  }
  return data;
}

TrainStats Train(NetworkParams* params, const TrainingSet& data,
                 const TrainHyper& hyper, const std::string& checkpoint_dir,
                 uint64_t vocab_hash) {
  A2W_CHECK(data.features.size() == data.labels.size(),
            "feature/label count mismatch");
  A2W_CHECK(hyper.epochs >= 0, "negative epoch count");

  // Utterances whose labels cannot be aligned within their frames are
  // excluded up front.
  std::vector<size_t> usable;
  TrainStats stats;
  for (size_t i = 0; i < data.size(); ++i) {
    const LabelSequence& l = data.labels[i];
    if (l.ids.empty() ||
        data.features[i].num_frames() < MinFramesForLabels(l)) {
      ++stats.skipped_utterances;
      continue;
    }
    usable.push_back(i);
  }
  if (stats.skipped_utterances > 0) {
    std::cerr << "trainer: skipped " << stats.skipped_utterances
              << " utterance(s) too short for their labels\n";
  }
  A2W_CHECK(!usable.empty(), "no trainable utterances");

  if (!checkpoint_dir.empty())
    std::filesystem::create_directories(checkpoint_dir);

  Rng rng(hyper.seed);
  const size_t batch =
      hyper.batch_size <= 0 ? usable.size()
                            : static_cast<size_t>(hyper.batch_size);

  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    std::vector<size_t> order = usable;
    if (hyper.batch_size > 0) {
      for (size_t i = order.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(rng.NextInt(static_cast<int>(i)));
        std::swap(order[i - 1], order[j]);
      }
    }

    double epoch_loss = 0.0;
    for (size_t begin = 0; begin < order.size(); begin += batch) {
      size_t end = std::min(begin + batch, order.size());
      NetworkParams grad = NetworkParams::ZeroLike(*params);
      double batch_loss = 0.0;
      for (size_t k = begin; k < end; ++k) {
        size_t i = order[k];
        NetworkTrace trace = NetworkForward(*params, data.features[i]);
        CtcLossResult loss = CtcLoss(trace.post, data.labels[i]);
        A2W_CHECK(std::isfinite(loss.loss),
                  "non-finite loss at epoch " << epoch << ", utterance '"
                      << data.features[i].utterance_id << "'");
        batch_loss += loss.loss;
        grad.Add(NetworkBackward(*params, trace, loss.grad_logits));
      }
      epoch_loss += batch_loss;

      if (hyper.learning_rate != 0.0) {
        if (hyper.clip_norm > 0.0) {
          double norm = std::sqrt(grad.SquaredNorm());
          if (norm > hyper.clip_norm) grad.Scale(hyper.clip_norm / norm);
        }
        ApplyUpdate(params, grad, hyper.learning_rate);
      }
    }
    stats.epoch_loss.push_back(epoch_loss / static_cast<double>(order.size()));

    if (!checkpoint_dir.empty() && hyper.checkpoint_every > 0 &&
        (epoch + 1) % hyper.checkpoint_every == 0) {
      SaveCheckpoint(*params, vocab_hash,
                     (std::filesystem::path(checkpoint_dir) /
                      CheckpointName(epoch + 1))
                         .string());
    }
  }

  if (!checkpoint_dir.empty()) {
    SaveCheckpoint(*params, vocab_hash,
                   (std::filesystem::path(checkpoint_dir) / "ckpt_final.bin")
                       .string());
    std::ofstream curve(
        (std::filesystem::path(checkpoint_dir) / "loss_curve.tsv").string());
    curve << "#epoch\tmean_loss\n" << std::setprecision(17);
    for (size_t e = 0; e < stats.epoch_loss.size(); ++e)
      curve << (e + 1) << '\t' << stats.epoch_loss[e] << '\n';
  }
  return stats;
}

}  // namespace a2w
