// a2w/network.cc

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

#include "a2w/network.h"

#include <cmath>

namespace a2w {

void FeatureSequence::Validate(int expected_dim) const {
  A2W_CHECK(frames.rows() >= 1, "feature sequence '" << utterance_id << "' is empty");
  A2W_CHECK(frames.cols() == expected_dim,
            "feature dim " << frames.cols() << " != network input dim "
                           << expected_dim << " ('" << utterance_id << "')");
  A2W_CHECK(frames.allFinite(),
            "non-finite feature value in '" << utterance_id << "'");
}

SoftmaxParams SoftmaxParams::Zero(int input_dim, int output_dim) {
  SoftmaxParams p;
  p.w = Eigen::MatrixXd::Zero(output_dim, input_dim);
  p.b = Eigen::VectorXd::Zero(output_dim);
  return p;
}

void SoftmaxParams::InitUniform(Rng* rng, double scale) {
  for (int r = 0; r < w.rows(); ++r)
    for (int c = 0; c < w.cols(); ++c) w(r, c) = rng->NextUniform(-scale, scale);
  for (int r = 0; r < b.size(); ++r) b(r) = rng->NextUniform(-scale, scale);
}

void SoftmaxParams::SetZero() {
  w.setZero();
  b.setZero();
}

void SoftmaxParams::Add(const SoftmaxParams& other, double weight) {
  w += weight * other.w;
  b += weight * other.b;
}

double SoftmaxParams::SquaredNorm() const {
  return w.squaredNorm() + b.squaredNorm();
}

void SoftmaxParams::Scale(double factor) {
  w *= factor;
  b *= factor;
}

NetworkParams NetworkParams::Create(int input_dim, int hidden_dim,
                                    int output_dim, int num_layers, Rng* rng,
                                    double init_scale) {
  A2W_CHECK(num_layers >= 1, "network needs at least one layer");
  NetworkParams p;
  p.input_dim = input_dim;
  p.hidden_dim = hidden_dim;
  p.output_dim = output_dim;
  for (int i = 0; i < num_layers; ++i) {
    int in = i == 0 ? input_dim : 2 * hidden_dim;
    BiLstmLayerParams layer = BiLstmLayerParams::Zero(in, hidden_dim);
    if (rng != nullptr) layer.InitUniform(rng, init_scale);
    p.layers.push_back(std::move(layer));
  }
  p.softmax = SoftmaxParams::Zero(2 * hidden_dim, output_dim);
  if (rng != nullptr) p.softmax.InitUniform(rng, init_scale);
  return p;
}

void NetworkParams::AttachAttention(const AttentionConfig& config, Rng* rng,
                                    double init_scale) {
  has_attention = true;
  attention = AttentionParams::Zero(config, 2 * hidden_dim, output_dim);
  if (rng != nullptr) attention.InitUniform(rng, init_scale);
}

namespace {

void CheckMatrixFinite(const Eigen::MatrixXd& m, const char* name) {
  A2W_CHECK(m.allFinite(), "non-finite value in " << name);
}

}  // namespace

void NetworkParams::CheckFinite() const {
  for (size_t i = 0; i < layers.size(); ++i) {
    for (const LstmParams* dir : {&layers[i].fwd, &layers[i].bwd}) {
      CheckMatrixFinite(dir->w_x, "LSTM input weights");
      CheckMatrixFinite(dir->w_h, "LSTM recurrent weights");
      CheckMatrixFinite(dir->b, "LSTM bias");
    }
  }
  CheckMatrixFinite(softmax.w, "softmax weights");
  CheckMatrixFinite(softmax.b, "softmax bias");
  if (has_attention) {
    A2W_CHECK(std::isfinite(attention.SquaredNorm()),
              "non-finite value in attention parameters");
  }
}

NetworkParams NetworkParams::ZeroLike(const NetworkParams& params) {
  NetworkParams g;
  g.input_dim = params.input_dim;
  g.hidden_dim = params.hidden_dim;
  g.output_dim = params.output_dim;
  for (const auto& layer : params.layers) {
    BiLstmLayerParams zl = BiLstmLayerParams::Zero(layer.fwd.input_dim(),
                                                   layer.fwd.hidden_dim());
    zl.frozen = layer.frozen;
    g.layers.push_back(std::move(zl));
  }
  g.softmax = SoftmaxParams::Zero(static_cast<int>(params.softmax.w.cols()),
                                  static_cast<int>(params.softmax.w.rows()));
  g.has_attention = params.has_attention;
  if (params.has_attention) {
    g.attention = AttentionParams::Zero(params.attention.config,
                                        params.attention.hidden_dim,
                                        params.attention.num_units);
  }
  return g;
}

void NetworkParams::SetZero() {
  for (auto& layer : layers) {
    layer.fwd.SetZero();
    layer.bwd.SetZero();
  }
  softmax.SetZero();
  if (has_attention) attention.SetZero();
}

void NetworkParams::Add(const NetworkParams& other, double weight) {
  A2W_CHECK(layers.size() == other.layers.size(), "layer count mismatch in Add");
  for (size_t i = 0; i < layers.size(); ++i) {
    layers[i].fwd.Add(other.layers[i].fwd, weight);
    layers[i].bwd.Add(other.layers[i].bwd, weight);
  }
  softmax.Add(other.softmax, weight);
  if (has_attention) attention.Add(other.attention, weight);
}

double NetworkParams::SquaredNorm() const {
  double n = 0.0;
  for (const auto& layer : layers)
    n += layer.fwd.SquaredNorm() + layer.bwd.SquaredNorm();
  n += softmax.SquaredNorm();
  if (has_attention) n += attention.SquaredNorm();
  return n;
}

void NetworkParams::Scale(double factor) {
  for (auto& layer : layers) {
    layer.fwd.Scale(factor);
    layer.bwd.Scale(factor);
  }
  softmax.Scale(factor);
  if (has_attention) attention.Scale(factor);
}

NetworkTrace NetworkForward(const NetworkParams& params,
                            const FeatureSequence& feats) {
  feats.Validate(params.input_dim);
  NetworkTrace trace;
  const Eigen::MatrixXd* input = &feats.frames;
  for (const auto& layer : params.layers) {
    trace.layer_traces.push_back(BiLstmForward(layer, *input));
    input = &trace.layer_traces.back().output;
  }
  trace.top.values = *input;

  const int t_len = feats.num_frames();
  if (params.has_attention) {
    trace.attention = AttentionForward(params.attention, trace.top.values);
    trace.logits = trace.attention.logits;
    trace.post.probs = trace.attention.posteriors;
  } else {
    trace.logits.resize(t_len, params.output_dim);
    trace.post.probs.resize(t_len, params.output_dim);
    for (int t = 0; t < t_len; ++t) {
      Eigen::VectorXd z = params.softmax.w * trace.top.values.row(t).transpose() +
                          params.softmax.b;
      trace.logits.row(t) = z.transpose();
      trace.post.probs.row(t) = Softmax(z).transpose();
    }
  }
  trace.post.blank_id = params.output_dim - 1;
  return trace;
}

NetworkParams NetworkBackward(const NetworkParams& params,
                              const NetworkTrace& trace,
                              const Eigen::MatrixXd& grad_logits) {
  A2W_CHECK(!trace.layer_traces.empty(), "forward trace missing");
  A2W_CHECK(grad_logits.rows() == trace.top.values.rows() &&
                grad_logits.cols() == params.output_dim,
            "bad grad_logits shape");
  NetworkParams grad = NetworkParams::ZeroLike(params);

  Eigen::MatrixXd d_hidden;
  if (params.has_attention) {
    d_hidden = AttentionBackward(params.attention, trace.attention, grad_logits,
                                 &grad.attention);
  } else {
    grad.softmax.w = grad_logits.transpose() * trace.top.values;
    grad.softmax.b = grad_logits.colwise().sum().transpose();
    d_hidden = grad_logits * params.softmax.w;
  }

  // need_input_grad: some layer below still needs parameter gradients.
  for (int i = params.num_layers() - 1; i >= 0; --i) {
    const auto& layer = params.layers[static_cast<size_t>(i)];
    bool below_trainable = false;
    for (int j = 0; j < i; ++j)
      if (!params.layers[static_cast<size_t>(j)].frozen) below_trainable = true;

    if (layer.frozen) {
      if (!below_trainable) break;  // nothing under this layer trains
      BiLstmLayerParams scratch = BiLstmLayerParams::Zero(
          layer.fwd.input_dim(), layer.fwd.hidden_dim());
      d_hidden = BiLstmBackward(layer, trace.layer_traces[static_cast<size_t>(i)],
                                d_hidden, &scratch);
    } else {
      d_hidden = BiLstmBackward(layer, trace.layer_traces[static_cast<size_t>(i)],
                                d_hidden, &grad.layers[static_cast<size_t>(i)]);
    }
  }
  return grad;
}

NetworkParams DeriveLetterModel(const NetworkParams& word_model,
                                const MixedVocab& letter_vocab, Rng* rng,
                                double init_scale) {
  A2W_CHECK(word_model.num_layers() >= 2,
            "shared-layer derivation needs at least 2 layers, got "
                << word_model.num_layers());
  NetworkParams derived;
  derived.input_dim = word_model.input_dim;
  derived.hidden_dim = word_model.hidden_dim;
  derived.output_dim = letter_vocab.inventory.size();

  for (int i = 0; i < word_model.num_layers() - 1; ++i) {
    BiLstmLayerParams layer = word_model.layers[static_cast<size_t>(i)];
    layer.frozen = true;
    derived.layers.push_back(std::move(layer));
  }
  // New bidirectional top layer plus a softmax sized to the letter set.
  BiLstmLayerParams top =
      BiLstmLayerParams::Zero(2 * word_model.hidden_dim, word_model.hidden_dim);
  top.InitUniform(rng, init_scale);
  derived.layers.push_back(std::move(top));
  derived.softmax =
      SoftmaxParams::Zero(2 * word_model.hidden_dim, derived.output_dim);
  derived.softmax.InitUniform(rng, init_scale);
  return derived;
}

}  // namespace a2w
