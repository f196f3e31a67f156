// a2w/attention.h

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

#ifndef A2W_ATTENTION_H_
#define A2W_ATTENTION_H_

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "a2w/lstm.h"

namespace a2w {

// Attention over a +-tau window of hidden features, producing one context
// vector and one output distribution per input frame.
//
// The context is a time convolution c_u = sum_t W'[u-t] h_t over the window,
// optionally reweighted by attention: c_u = gamma * sum_t alpha[u,t] g_t with
// g_t = W'[u-t] h_t. Attention weights come from a one-hidden-layer scoring
// network over each window slot (content input: the previous output logits,
// or the implicit-LM state; location input: the previous weights convolved
// with a learned kernel). With vector attention the scalar head is replaced
// by an n-dim head with an element-wise logistic, and the weighted sum uses
// the Hadamard product.

enum class AttentionMode { kNone, kContent, kHybrid };

struct AttentionConfig {
  int tau = 4;
  double gamma = 9.0;  // window scale; kept equal to C unless overridden
  AttentionMode mode = AttentionMode::kHybrid;
  bool use_implicit_lm = false;
  bool vector_attention = false;
  int lm_dim = 16;

  int window() const { return 2 * tau + 1; }
};

// The C filtered signals g_t of one window, stored column-wise.
struct FilteredSignals {
  Eigen::MatrixXd g;  // n x C

  int dim() const { return static_cast<int>(g.rows()); }
  int slots() const { return static_cast<int>(g.cols()); }
};

// Recurrent inputs carried from output step u-1 to u.
struct AttentionState {
  Eigen::VectorXd prev_alpha;      // C (scalar attention)
  Eigen::MatrixXd prev_alpha_vec;  // n x C (vector attention)
  Eigen::VectorXd prev_logits;     // V
  Eigen::VectorXd prev_context;    // n
  Eigen::VectorXd lm_h, lm_c;      // implicit LM cell state

  // Neutral start-of-utterance state: uniform window weights, zero logits,
  // context and LM state.
  static AttentionState Initial(const AttentionConfig& config, int feature_dim,
                                int num_units);
};

struct AttentionParams {
  AttentionConfig config;
  int feature_dim = 0;   // n: dimension of g and of the context
  int hidden_dim = 0;    // input feature dimension (columns of each W')
  int score_hidden = 0;  // scoring-network hidden width
  int num_units = 0;     // V

  // Slot-ordered time-convolution filters: w_conv[j] applies to the j-th
  // window vector, i.e. to h at t = u - tau + j.
  std::vector<Eigen::MatrixXd> w_conv;  // C matrices, n x hidden_dim

  Eigen::MatrixXd u_g;        // score_hidden x n
  Eigen::MatrixXd u_z;        // score_hidden x content_dim()
  Eigen::VectorXd u_loc;      // score_hidden
  Eigen::VectorXd loc_kernel; // C, location convolution
  Eigen::VectorXd b_score;    // score_hidden
  Eigen::VectorXd v_score;    // score_hidden (scalar head)
  Eigen::MatrixXd v_head;     // n x score_hidden (vector head)
  LstmParams lm;              // implicit LM cell over [z ; c]
  Eigen::MatrixXd w_soft;     // V x n
  Eigen::VectorXd b_soft;     // V

  int content_dim() const {
    return config.use_implicit_lm ? config.lm_dim : num_units;
  }

  static AttentionParams Zero(const AttentionConfig& config, int hidden_dim,
                              int num_units);
  void InitUniform(Rng* rng, double scale);
  void SetZero();
  void Add(const AttentionParams& other, double weight = 1.0);
  double SquaredNorm() const;
  void Scale(double factor);
};

Eigen::VectorXd Softmax(const Eigen::VectorXd& logits);

// Filtered signals of one window plus their plain sum (the uniform-weight
// context). The window must supply exactly one vector per filter; boundary
// frames are the caller's zero vectors.
std::pair<FilteredSignals, Eigen::VectorXd> TimeConvolution(
    const std::vector<Eigen::VectorXd>& h_window,
    const std::vector<Eigen::MatrixXd>& w_conv);

// Scalar attention weights over the window (softmax over slots). In content
// mode the previous weights are ignored; in hybrid mode they enter through
// the location kernel. The content input is the previous logits, or the
// implicit-LM state when the flag is set.
Eigen::VectorXd Attend(const AttentionState& state, const FilteredSignals& g,
                       const AttentionParams& params);

// Per-component weights in [0,1]^n per slot (logistic head, no softmax).
Eigen::MatrixXd AttendVector(const AttentionState& state,
                             const FilteredSignals& g,
                             const AttentionParams& params);

// One implicit-LM step over [prev_logits ; prev_context]; returns the state
// with lm_h / lm_c advanced.
AttentionState ImplicitLmStep(const AttentionState& state,
                              const AttentionParams& params);

// c = gamma * sum_j alphas.col(j) ⊙ g_j (Hadamard weighting).
Eigen::VectorXd ComponentContext(const Eigen::MatrixXd& alphas,
                                 const FilteredSignals& g, double gamma);

// Affine map plus softmax; identical to the plain network output layer.
Eigen::VectorXd OutputProjection(const Eigen::VectorXd& context,
                                 const Eigen::MatrixXd& w_soft,
                                 const Eigen::VectorXd& b_soft);

// Whole-utterance attention pass. One output distribution per input frame;
// the recurrence over output steps is cached for backward.
struct AttentionStepTrace {
  Eigen::MatrixXd g;          // n x C
  Eigen::MatrixXd tanh_vals;  // score_hidden x C
  Eigen::VectorXd alpha;      // C (scalar mode)
  Eigen::MatrixXd alpha_vec;  // n x C (vector mode)
  Eigen::VectorXd loc_feat;   // C (hybrid mode)
  Eigen::VectorXd content_in;
  LstmCellCache lm_cache;
  bool has_lm_cache = false;
};

struct AttentionTrace {
  Eigen::MatrixXd hidden;      // T x hidden_dim (input copy)
  std::vector<AttentionStepTrace> steps;
  Eigen::MatrixXd contexts;    // T x n
  Eigen::MatrixXd logits;      // T x V
  Eigen::MatrixXd posteriors;  // T x V
};

AttentionTrace AttentionForward(const AttentionParams& params,
                                const Eigen::MatrixXd& hidden);

// Backpropagation through the attention recursion. grad_logits is d loss /
// d z_u (T x V). Parameter gradients accumulate into *grad; returns d loss /
// d hidden.
Eigen::MatrixXd AttentionBackward(const AttentionParams& params,
                                  const AttentionTrace& trace,
                                  const Eigen::MatrixXd& grad_logits,
                                  AttentionParams* grad);

}  // namespace a2w

#endif  // A2W_ATTENTION_H_
