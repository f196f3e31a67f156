// a2w/lstm.h

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

#ifndef A2W_LSTM_H_
#define A2W_LSTM_H_

#include <Eigen/Core>

#include "a2w/common.h"

namespace a2w {

// Plain LSTM cell (no peepholes), gate order i, f, g, o stacked along rows.
// The same struct doubles as the gradient holder.
struct LstmParams {
  Eigen::MatrixXd w_x;  // 4H x D
  Eigen::MatrixXd w_h;  // 4H x H
  Eigen::VectorXd b;    // 4H

  int input_dim() const { return static_cast<int>(w_x.cols()); }
  int hidden_dim() const { return static_cast<int>(w_h.cols()); }

  static LstmParams Zero(int input_dim, int hidden_dim);
  void InitUniform(Rng* rng, double scale);
  void SetZero();
  void Add(const LstmParams& other, double weight = 1.0);
  double SquaredNorm() const;
  void Scale(double factor);
};

// Everything the backward pass needs from one directional forward run.
// Time here is the iteration order; the bidirectional wrapper feeds the
// reversed sequence for the backward direction.
struct LstmTrace {
  Eigen::MatrixXd inputs;     // T x D
  Eigen::MatrixXd gates;      // T x 4H, post-nonlinearity
  Eigen::MatrixXd cells;      // T x H
  Eigen::MatrixXd cell_tanh;  // T x H
  Eigen::MatrixXd hidden;     // T x H

  int frames() const { return static_cast<int>(inputs.rows()); }
};

// Runs the cell over the sequence from a zero initial state.
LstmTrace LstmForward(const LstmParams& params, const Eigen::MatrixXd& inputs);

// Backpropagation through time. grad_hidden holds d loss / d h_t. Parameter
// gradients are accumulated into *grad (same shapes as params); the return
// value is d loss / d inputs.
Eigen::MatrixXd LstmBackward(const LstmParams& params, const LstmTrace& trace,
                             const Eigen::MatrixXd& grad_hidden,
                             LstmParams* grad);

// Single-step interface, used where the recurrence is over output positions
// rather than frames (the attention implicit LM).
struct LstmCellCache {
  Eigen::VectorXd x, h_prev, c_prev;
  Eigen::VectorXd gates;  // 4H, post-nonlinearity
  Eigen::VectorXd c, c_tanh, h;
};

LstmCellCache LstmCellStep(const LstmParams& params, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& h_prev,
                           const Eigen::VectorXd& c_prev);

// Backward of one cell step. grad_h/grad_c are d loss wrt this step's h and
// c outputs; outputs are the gradients wrt the step inputs.
struct LstmCellGrad {
  Eigen::VectorXd x, h_prev, c_prev;
};
LstmCellGrad LstmCellStepBackward(const LstmParams& params,
                                  const LstmCellCache& cache,
                                  const Eigen::VectorXd& grad_h,
                                  const Eigen::VectorXd& grad_c,
                                  LstmParams* grad);

// One bidirectional layer: two independent cells, outputs concatenated as
// [forward_t ; backward_t] per frame.
struct BiLstmLayerParams {
  LstmParams fwd, bwd;
  bool frozen = false;

  static BiLstmLayerParams Zero(int input_dim, int hidden_dim);
  void InitUniform(Rng* rng, double scale);
};

struct BiLstmTrace {
  LstmTrace fwd;  // natural time order
  LstmTrace bwd;  // reversed time order
  Eigen::MatrixXd output;  // T x 2H
};

BiLstmTrace BiLstmForward(const BiLstmLayerParams& params,
                          const Eigen::MatrixXd& inputs);
Eigen::MatrixXd BiLstmBackward(const BiLstmLayerParams& params,
                               const BiLstmTrace& trace,
                               const Eigen::MatrixXd& grad_output,
                               BiLstmLayerParams* grad);

}  // namespace a2w

#endif  // A2W_LSTM_H_
