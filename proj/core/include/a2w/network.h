// a2w/network.h

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

#ifndef A2W_NETWORK_H_
#define A2W_NETWORK_H_

#include <string>
#include <vector>

#include "a2w/attention.h"
#include "a2w/ctc.h"
#include "a2w/lstm.h"
#include "a2w/vocab.h"

namespace a2w {

// Stacked bidirectional LSTM with a per-frame softmax output layer, or an
// attention head in place of the plain softmax. The unit with the last index
// is the blank, matching the vocabulary layout.

struct FeatureSequence {
  std::string utterance_id;
  Eigen::MatrixXd frames;  // T x D

  int num_frames() const { return static_cast<int>(frames.rows()); }
  int dim() const { return static_cast<int>(frames.cols()); }
  void Validate(int expected_dim) const;
};

// Concatenated forward/backward states of the top layer.
struct HiddenSequence {
  Eigen::MatrixXd values;  // T x 2H
};

struct SoftmaxParams {
  Eigen::MatrixXd w;  // V x 2H
  Eigen::VectorXd b;  // V

  static SoftmaxParams Zero(int input_dim, int output_dim);
  void InitUniform(Rng* rng, double scale);
  void SetZero();
  void Add(const SoftmaxParams& other, double weight = 1.0);
  double SquaredNorm() const;
  void Scale(double factor);
};

struct NetworkParams {
  int input_dim = 0;
  int hidden_dim = 0;  // per direction
  int output_dim = 0;
  std::vector<BiLstmLayerParams> layers;
  SoftmaxParams softmax;
  bool has_attention = false;
  AttentionParams attention;  // meaningful only when has_attention

  int num_layers() const { return static_cast<int>(layers.size()); }

  static NetworkParams Create(int input_dim, int hidden_dim, int output_dim,
                              int num_layers, Rng* rng, double init_scale = 0.05);
  // Attaches a freshly initialized attention head in place of the softmax
  // output path.
  void AttachAttention(const AttentionConfig& config, Rng* rng,
                       double init_scale = 0.05);

  void CheckFinite() const;

  // Gradient-accumulator interface (same shapes as the parameters).
  static NetworkParams ZeroLike(const NetworkParams& params);
  void SetZero();
  void Add(const NetworkParams& other, double weight = 1.0);
  double SquaredNorm() const;
  void Scale(double factor);
};

struct NetworkTrace {
  std::vector<BiLstmTrace> layer_traces;
  HiddenSequence top;
  AttentionTrace attention;  // when the head is attached
  Eigen::MatrixXd logits;    // T x V
  Posteriorgram post;
};

// Full forward pass; posteriors row per frame. Errors on dimension mismatch
// or non-finite features.
NetworkTrace NetworkForward(const NetworkParams& params,
                            const FeatureSequence& feats);

// Full-sequence backpropagation given d loss / d logits. Frozen layers get
// no parameter gradient, and the pass stops below the lowest layer that
// still needs one.
NetworkParams NetworkBackward(const NetworkParams& params,
                              const NetworkTrace& trace,
                              const Eigen::MatrixXd& grad_logits);

// Shared-hidden-layer derivation: copies the bottom L-1 layers marked
// frozen, adds one freshly initialized bidirectional layer and a softmax
// sized to the letter inventory. Requires L >= 2.
NetworkParams DeriveLetterModel(const NetworkParams& word_model,
                                const MixedVocab& letter_vocab, Rng* rng,
                                double init_scale = 0.05);

}  // namespace a2w

#endif  // A2W_NETWORK_H_
