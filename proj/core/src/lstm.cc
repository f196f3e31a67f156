// a2w/lstm.cc

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

#include "a2w/lstm.h"

#include <cmath>

namespace a2w {

namespace {

inline double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Applies the gate nonlinearities in place on a 4H pre-activation vector.
void ApplyGateNonlinearities(Eigen::Ref<Eigen::VectorXd> a, int h) {
  for (int k = 0; k < 2 * h; ++k) a(k) = Sigmoid(a(k));           // i, f
  for (int k = 2 * h; k < 3 * h; ++k) a(k) = std::tanh(a(k));     // g
  for (int k = 3 * h; k < 4 * h; ++k) a(k) = Sigmoid(a(k));       // o
}

// d loss / d pre-activation from d loss / d gate values.
Eigen::VectorXd GatePreActGrad(const Eigen::VectorXd& gates,
                               const Eigen::VectorXd& dgates, int h) {
  Eigen::VectorXd da(4 * h);
  for (int k = 0; k < 2 * h; ++k) da(k) = dgates(k) * gates(k) * (1.0 - gates(k));
  for (int k = 2 * h; k < 3 * h; ++k) da(k) = dgates(k) * (1.0 - gates(k) * gates(k));
  for (int k = 3 * h; k < 4 * h; ++k) da(k) = dgates(k) * gates(k) * (1.0 - gates(k));
  return da;
}

}  // namespace

LstmParams LstmParams::Zero(int input_dim, int hidden_dim) {
  LstmParams p;
  p.w_x = Eigen::MatrixXd::Zero(4 * hidden_dim, input_dim);
  p.w_h = Eigen::MatrixXd::Zero(4 * hidden_dim, hidden_dim);
  p.b = Eigen::VectorXd::Zero(4 * hidden_dim);
  return p;
}

void LstmParams::InitUniform(Rng* rng, double scale) {
  for (int r = 0; r < w_x.rows(); ++r)
    for (int c = 0; c < w_x.cols(); ++c) w_x(r, c) = rng->NextUniform(-scale, scale);
  for (int r = 0; r < w_h.rows(); ++r)
    for (int c = 0; c < w_h.cols(); ++c) w_h(r, c) = rng->NextUniform(-scale, scale);
  for (int r = 0; r < b.size(); ++r) b(r) = rng->NextUniform(-scale, scale);
}

void LstmParams::SetZero() {
  w_x.setZero();
  w_h.setZero();
  b.setZero();
}

void LstmParams::Add(const LstmParams& other, double weight) {
  w_x += weight * other.w_x;
  w_h += weight * other.w_h;
  b += weight * other.b;
}

double LstmParams::SquaredNorm() const {
  return w_x.squaredNorm() + w_h.squaredNorm() + b.squaredNorm();
}

void LstmParams::Scale(double factor) {
  w_x *= factor;
  w_h *= factor;
  b *= factor;
}

LstmTrace LstmForward(const LstmParams& params, const Eigen::MatrixXd& inputs) {
  const int t_len = static_cast<int>(inputs.rows());
  const int h = params.hidden_dim();
  A2W_CHECK(inputs.cols() == params.input_dim(),
            "LSTM input dim " << inputs.cols() << " != " << params.input_dim());

  LstmTrace trace;
  trace.inputs = inputs;
  trace.gates.resize(t_len, 4 * h);
  trace.cells.resize(t_len, h);
  trace.cell_tanh.resize(t_len, h);
  trace.hidden.resize(t_len, h);

  // Input projections for the whole sequence in one product.
  Eigen::MatrixXd pre = inputs * params.w_x.transpose();
  Eigen::VectorXd h_prev = Eigen::VectorXd::Zero(h);
  Eigen::VectorXd c_prev = Eigen::VectorXd::Zero(h);
  for (int t = 0; t < t_len; ++t) {
    Eigen::VectorXd a = pre.row(t).transpose() + params.w_h * h_prev + params.b;
    ApplyGateNonlinearities(a, h);
    Eigen::VectorXd c = a.segment(h, h).cwiseProduct(c_prev) +
                        a.head(h).cwiseProduct(a.segment(2 * h, h));
    Eigen::VectorXd ct = c.array().tanh();
    Eigen::VectorXd hidden = a.tail(h).cwiseProduct(ct);
    trace.gates.row(t) = a.transpose();
    trace.cells.row(t) = c.transpose();
    trace.cell_tanh.row(t) = ct.transpose();
    trace.hidden.row(t) = hidden.transpose();
    h_prev = hidden;
    c_prev = c;
  }
  return trace;
}

Eigen::MatrixXd LstmBackward(const LstmParams& params, const LstmTrace& trace,
                             const Eigen::MatrixXd& grad_hidden,
                             LstmParams* grad) {
  const int t_len = trace.frames();
  const int h = params.hidden_dim();
  A2W_CHECK(grad_hidden.rows() == t_len && grad_hidden.cols() == h,
            "bad grad_hidden shape in LSTM backward");

  Eigen::MatrixXd da_all(t_len, 4 * h);
  Eigen::VectorXd dh_carry = Eigen::VectorXd::Zero(h);
  Eigen::VectorXd dc_carry = Eigen::VectorXd::Zero(h);
  for (int t = t_len - 1; t >= 0; --t) {
    Eigen::VectorXd gates = trace.gates.row(t).transpose();
    Eigen::VectorXd ct = trace.cell_tanh.row(t).transpose();
    Eigen::VectorXd dh = grad_hidden.row(t).transpose() + dh_carry;

    Eigen::VectorXd dgates(4 * h);
    // o gate
    dgates.tail(h) = dh.cwiseProduct(ct);
    // cell
    Eigen::VectorXd dc = dh.cwiseProduct(gates.tail(h))
                             .cwiseProduct(Eigen::VectorXd::Ones(h) - ct.cwiseProduct(ct)) +
                         dc_carry;
    Eigen::VectorXd c_prev = t > 0 ? Eigen::VectorXd(trace.cells.row(t - 1).transpose())
                                   : Eigen::VectorXd(Eigen::VectorXd::Zero(h));
    dgates.head(h) = dc.cwiseProduct(gates.segment(2 * h, h));        // i
    dgates.segment(h, h) = dc.cwiseProduct(c_prev);                   // f
    dgates.segment(2 * h, h) = dc.cwiseProduct(gates.head(h));        // g
    dc_carry = dc.cwiseProduct(gates.segment(h, h));

    Eigen::VectorXd da = GatePreActGrad(gates, dgates, h);
    da_all.row(t) = da.transpose();
    dh_carry = params.w_h.transpose() * da;
  }

  // h_prev matrix: row t holds h_{t-1}; row 0 is the zero initial state.
  Eigen::MatrixXd h_prev_all = Eigen::MatrixXd::Zero(t_len, h);
  if (t_len > 1) h_prev_all.bottomRows(t_len - 1) = trace.hidden.topRows(t_len - 1);

  grad->w_x += da_all.transpose() * trace.inputs;
  grad->w_h += da_all.transpose() * h_prev_all;
  grad->b += da_all.colwise().sum().transpose();
  return da_all * params.w_x;
}

LstmCellCache LstmCellStep(const LstmParams& params, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& h_prev,
                           const Eigen::VectorXd& c_prev) {
  const int h = params.hidden_dim();
  LstmCellCache cache;
  cache.x = x;
  cache.h_prev = h_prev;
  cache.c_prev = c_prev;
  Eigen::VectorXd a = params.w_x * x + params.w_h * h_prev + params.b;
  ApplyGateNonlinearities(a, h);
  cache.gates = a;
  cache.c = a.segment(h, h).cwiseProduct(c_prev) +
            a.head(h).cwiseProduct(a.segment(2 * h, h));
  cache.c_tanh = cache.c.array().tanh();
  cache.h = a.tail(h).cwiseProduct(cache.c_tanh);
  return cache;
}

LstmCellGrad LstmCellStepBackward(const LstmParams& params,
                                  const LstmCellCache& cache,
                                  const Eigen::VectorXd& grad_h,
                                  const Eigen::VectorXd& grad_c,
                                  LstmParams* grad) {
  const int h = params.hidden_dim();
  const Eigen::VectorXd& gates = cache.gates;

  Eigen::VectorXd dgates(4 * h);
  dgates.tail(h) = grad_h.cwiseProduct(cache.c_tanh);
  Eigen::VectorXd dc =
      grad_h.cwiseProduct(gates.tail(h))
          .cwiseProduct(Eigen::VectorXd::Ones(h) -
                        cache.c_tanh.cwiseProduct(cache.c_tanh)) +
      grad_c;
  dgates.head(h) = dc.cwiseProduct(gates.segment(2 * h, h));
  dgates.segment(h, h) = dc.cwiseProduct(cache.c_prev);
  dgates.segment(2 * h, h) = dc.cwiseProduct(gates.head(h));

  Eigen::VectorXd da = GatePreActGrad(gates, dgates, h);
  grad->w_x += da * cache.x.transpose();
  grad->w_h += da * cache.h_prev.transpose();
  grad->b += da;

  LstmCellGrad out;
  out.x = params.w_x.transpose() * da;
  out.h_prev = params.w_h.transpose() * da;
  out.c_prev = dc.cwiseProduct(gates.segment(h, h));
  return out;
}

BiLstmLayerParams BiLstmLayerParams::Zero(int input_dim, int hidden_dim) {
  BiLstmLayerParams p;
  p.fwd = LstmParams::Zero(input_dim, hidden_dim);
  p.bwd = LstmParams::Zero(input_dim, hidden_dim);
  return p;
}

void BiLstmLayerParams::InitUniform(Rng* rng, double scale) {
  fwd.InitUniform(rng, scale);
  bwd.InitUniform(rng, scale);
}

BiLstmTrace BiLstmForward(const BiLstmLayerParams& params,
                          const Eigen::MatrixXd& inputs) {
  const int t_len = static_cast<int>(inputs.rows());
  const int h = params.fwd.hidden_dim();
  BiLstmTrace trace;
  trace.fwd = LstmForward(params.fwd, inputs);
  trace.bwd = LstmForward(params.bwd, inputs.colwise().reverse());
  trace.output.resize(t_len, 2 * h);
  trace.output.leftCols(h) = trace.fwd.hidden;
  trace.output.rightCols(h) = trace.bwd.hidden.colwise().reverse();
  return trace;
}

Eigen::MatrixXd BiLstmBackward(const BiLstmLayerParams& params,
                               const BiLstmTrace& trace,
                               const Eigen::MatrixXd& grad_output,
                               BiLstmLayerParams* grad) {
  const int h = params.fwd.hidden_dim();
  Eigen::MatrixXd d_fwd = grad_output.leftCols(h);
  Eigen::MatrixXd d_bwd = grad_output.rightCols(h).colwise().reverse();
  Eigen::MatrixXd dx = LstmBackward(params.fwd, trace.fwd, d_fwd, &grad->fwd);
  Eigen::MatrixXd dx_rev = LstmBackward(params.bwd, trace.bwd, d_bwd, &grad->bwd);
  dx += dx_rev.colwise().reverse();
  return dx;
}

}  // namespace a2w
