// a2w/attention.cc

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

#include "a2w/attention.h"

#include <cmath>

namespace a2w {

AttentionState AttentionState::Initial(const AttentionConfig& config,
                                       int feature_dim, int num_units) {
  AttentionState s;
  const int c = config.window();
  // Uniform window weights reproduce the plain-convolution view at the first
  // step; being constants, they receive no gradient.
  s.prev_alpha = Eigen::VectorXd::Constant(c, 1.0 / c);
  s.prev_alpha_vec = Eigen::MatrixXd::Constant(feature_dim, c, 1.0 / c);
  s.prev_logits = Eigen::VectorXd::Zero(num_units);
  s.prev_context = Eigen::VectorXd::Zero(feature_dim);
  s.lm_h = Eigen::VectorXd::Zero(config.lm_dim);
  s.lm_c = Eigen::VectorXd::Zero(config.lm_dim);
  return s;
}

AttentionParams AttentionParams::Zero(const AttentionConfig& config,
                                      int hidden_dim, int num_units) {
  A2W_CHECK(config.tau >= 0, "tau must be non-negative");
  A2W_CHECK(config.gamma > 0.0, "gamma must be positive");
  AttentionParams p;
  p.config = config;
  p.hidden_dim = hidden_dim;
  p.feature_dim = hidden_dim;
  p.score_hidden = hidden_dim;
  p.num_units = num_units;
  const int c = config.window();
  p.w_conv.assign(static_cast<size_t>(c),
                  Eigen::MatrixXd::Zero(p.feature_dim, hidden_dim));
  p.u_g = Eigen::MatrixXd::Zero(p.score_hidden, p.feature_dim);
  p.u_z = Eigen::MatrixXd::Zero(p.score_hidden, p.content_dim());
  p.u_loc = Eigen::VectorXd::Zero(p.score_hidden);
  p.loc_kernel = Eigen::VectorXd::Zero(c);
  p.b_score = Eigen::VectorXd::Zero(p.score_hidden);
  p.v_score = Eigen::VectorXd::Zero(p.score_hidden);
  p.v_head = Eigen::MatrixXd::Zero(p.feature_dim, p.score_hidden);
  p.lm = LstmParams::Zero(num_units + p.feature_dim, config.lm_dim);
  p.w_soft = Eigen::MatrixXd::Zero(num_units, p.feature_dim);
  p.b_soft = Eigen::VectorXd::Zero(num_units);
  return p;
}

namespace {

void FillUniform(Eigen::MatrixXd* m, Rng* rng, double scale) {
  for (int r = 0; r < m->rows(); ++r)
    for (int c = 0; c < m->cols(); ++c) (*m)(r, c) = rng->NextUniform(-scale, scale);
}

void FillUniform(Eigen::VectorXd* v, Rng* rng, double scale) {
  for (int r = 0; r < v->size(); ++r) (*v)(r) = rng->NextUniform(-scale, scale);
}

}  // namespace

void AttentionParams::InitUniform(Rng* rng, double scale) {
  for (auto& w : w_conv) FillUniform(&w, rng, scale);
  FillUniform(&u_g, rng, scale);
  FillUniform(&u_z, rng, scale);
  FillUniform(&u_loc, rng, scale);
  FillUniform(&loc_kernel, rng, scale);
  FillUniform(&b_score, rng, scale);
  FillUniform(&v_score, rng, scale);
  FillUniform(&v_head, rng, scale);
  lm.InitUniform(rng, scale);
  FillUniform(&w_soft, rng, scale);
  FillUniform(&b_soft, rng, scale);
}

void AttentionParams::SetZero() {
  for (auto& w : w_conv) w.setZero();
  u_g.setZero();
  u_z.setZero();
  u_loc.setZero();
  loc_kernel.setZero();
  b_score.setZero();
  v_score.setZero();
  v_head.setZero();
  lm.SetZero();
  w_soft.setZero();
  b_soft.setZero();
}

void AttentionParams::Add(const AttentionParams& other, double weight) {
  for (size_t j = 0; j < w_conv.size(); ++j) w_conv[j] += weight * other.w_conv[j];
  u_g += weight * other.u_g;
  u_z += weight * other.u_z;
  u_loc += weight * other.u_loc;
  loc_kernel += weight * other.loc_kernel;
  b_score += weight * other.b_score;
  v_score += weight * other.v_score;
  v_head += weight * other.v_head;
  lm.Add(other.lm, weight);
  w_soft += weight * other.w_soft;
  b_soft += weight * other.b_soft;
}

double AttentionParams::SquaredNorm() const {
  double n = 0.0;
  for (const auto& w : w_conv) n += w.squaredNorm();
  n += u_g.squaredNorm() + u_z.squaredNorm() + u_loc.squaredNorm() +
       loc_kernel.squaredNorm() + b_score.squaredNorm() + v_score.squaredNorm() +
       v_head.squaredNorm() + lm.SquaredNorm() + w_soft.squaredNorm() +
       b_soft.squaredNorm();
  return n;
}

void AttentionParams::Scale(double factor) {
  for (auto& w : w_conv) w *= factor;
  u_g *= factor;
  u_z *= factor;
  u_loc *= factor;
  loc_kernel *= factor;
  b_score *= factor;
  v_score *= factor;
  v_head *= factor;
  lm.Scale(factor);
  w_soft *= factor;
  b_soft *= factor;
}

Eigen::VectorXd Softmax(const Eigen::VectorXd& logits) {
  Eigen::VectorXd shifted = logits.array() - logits.maxCoeff();
  Eigen::VectorXd exps = shifted.array().exp();
  return exps / exps.sum();
}

std::pair<FilteredSignals, Eigen::VectorXd> TimeConvolution(
    const std::vector<Eigen::VectorXd>& h_window,
    const std::vector<Eigen::MatrixXd>& w_conv) {
  A2W_CHECK(h_window.size() == w_conv.size(),
            "window length " << h_window.size() << " != filter count "
                             << w_conv.size());
  A2W_CHECK(!w_conv.empty(), "empty filter set");
  const int n = static_cast<int>(w_conv[0].rows());
  FilteredSignals fs;
  fs.g.resize(n, static_cast<int>(h_window.size()));
  Eigen::VectorXd context = Eigen::VectorXd::Zero(n);
  for (size_t j = 0; j < h_window.size(); ++j) {
    A2W_CHECK(h_window[j].size() == w_conv[j].cols(),
              "window vector " << j << " has dim " << h_window[j].size()
                               << ", filter expects " << w_conv[j].cols());
    fs.g.col(static_cast<int>(j)) = w_conv[j] * h_window[j];
    context += fs.g.col(static_cast<int>(j));
  }
  return {fs, context};
}

namespace {

// Zero-padded convolution of the previous window weights with the location
// kernel: f_j = sum_d kernel(d) * prev(j + d - tau).
Eigen::VectorXd LocationFeatures(const Eigen::VectorXd& prev_alpha,
                                 const Eigen::VectorXd& kernel, int tau) {
  const int c = static_cast<int>(prev_alpha.size());
  Eigen::VectorXd f = Eigen::VectorXd::Zero(c);
  for (int j = 0; j < c; ++j) {
    for (int d = 0; d < kernel.size(); ++d) {
      int src = j + d - tau;
      if (src >= 0 && src < c) f(j) += kernel(d) * prev_alpha(src);
    }
  }
  return f;
}

// Scoring-network hidden activations for each slot. loc_feat may be null
// (content mode). tanh_vals is score_hidden x C.
Eigen::MatrixXd ScoreTanh(const AttentionParams& params,
                          const FilteredSignals& g,
                          const Eigen::VectorXd& content,
                          const Eigen::VectorXd* loc_feat) {
  A2W_CHECK(content.size() == params.u_z.cols(),
            "content input dim " << content.size() << " != "
                                 << params.u_z.cols());
  Eigen::MatrixXd pre = params.u_g * g.g;
  Eigen::VectorXd shared = params.u_z * content + params.b_score;
  pre.colwise() += shared;
  if (loc_feat != nullptr) pre += params.u_loc * loc_feat->transpose();
  return pre.array().tanh();
}

Eigen::VectorXd ContentInput(const AttentionState& state,
                             const AttentionParams& params) {
  return params.config.use_implicit_lm ? state.lm_h : state.prev_logits;
}

}  // namespace

Eigen::VectorXd Attend(const AttentionState& state, const FilteredSignals& g,
                       const AttentionParams& params) {
  const AttentionConfig& cfg = params.config;
  A2W_CHECK(cfg.mode == AttentionMode::kContent || cfg.mode == AttentionMode::kHybrid,
            "Attend requires content or hybrid mode");
  Eigen::VectorXd loc;
  const Eigen::VectorXd* loc_ptr = nullptr;
  if (cfg.mode == AttentionMode::kHybrid) {
    loc = LocationFeatures(state.prev_alpha, params.loc_kernel, cfg.tau);
    loc_ptr = &loc;
  }
  Eigen::MatrixXd tanh_vals = ScoreTanh(params, g, ContentInput(state, params), loc_ptr);
  Eigen::VectorXd scores = tanh_vals.transpose() * params.v_score;
  return Softmax(scores);
}

Eigen::MatrixXd AttendVector(const AttentionState& state,
                             const FilteredSignals& g,
                             const AttentionParams& params) {
  const AttentionConfig& cfg = params.config;
  A2W_CHECK(cfg.mode == AttentionMode::kContent || cfg.mode == AttentionMode::kHybrid,
            "AttendVector requires content or hybrid mode");
  Eigen::VectorXd loc;
  const Eigen::VectorXd* loc_ptr = nullptr;
  if (cfg.mode == AttentionMode::kHybrid) {
    // Per-component weights enter the location kernel through their mean.
    Eigen::VectorXd prev = state.prev_alpha_vec.colwise().mean().transpose();
    loc = LocationFeatures(prev, params.loc_kernel, cfg.tau);
    loc_ptr = &loc;
  }
  Eigen::MatrixXd tanh_vals = ScoreTanh(params, g, ContentInput(state, params), loc_ptr);
  Eigen::MatrixXd raw = params.v_head * tanh_vals;  // n x C
  return 1.0 / (1.0 + (-raw.array()).exp());
}

AttentionState ImplicitLmStep(const AttentionState& state,
                              const AttentionParams& params) {
  A2W_CHECK(params.config.use_implicit_lm, "implicit LM is disabled");
  Eigen::VectorXd x(state.prev_logits.size() + state.prev_context.size());
  x << state.prev_logits, state.prev_context;
  LstmCellCache cache = LstmCellStep(params.lm, x, state.lm_h, state.lm_c);
  AttentionState next = state;
  next.lm_h = cache.h;
  next.lm_c = cache.c;
  return next;
}

Eigen::VectorXd ComponentContext(const Eigen::MatrixXd& alphas,
                                 const FilteredSignals& g, double gamma) {
  A2W_CHECK(alphas.rows() == g.g.rows() && alphas.cols() == g.g.cols(),
            "component weights " << alphas.rows() << "x" << alphas.cols()
                                 << " do not match signals " << g.g.rows()
                                 << "x" << g.g.cols());
  Eigen::VectorXd c = Eigen::VectorXd::Zero(g.dim());
  for (int j = 0; j < g.slots(); ++j) {
    c += alphas.col(j).cwiseProduct(g.g.col(j));
  }
  return gamma * c;
}

Eigen::VectorXd OutputProjection(const Eigen::VectorXd& context,
                                 const Eigen::MatrixXd& w_soft,
                                 const Eigen::VectorXd& b_soft) {
  A2W_CHECK(context.size() == w_soft.cols(),
            "context dim " << context.size() << " != " << w_soft.cols());
  return Softmax(w_soft * context + b_soft);
}

AttentionTrace AttentionForward(const AttentionParams& params,
                                const Eigen::MatrixXd& hidden) {
  const AttentionConfig& cfg = params.config;
  const int t_len = static_cast<int>(hidden.rows());
  const int c_len = cfg.window();
  const int n = params.feature_dim;
  const int v = params.num_units;
  A2W_CHECK(hidden.cols() == params.hidden_dim,
            "hidden dim " << hidden.cols() << " != " << params.hidden_dim);

  AttentionTrace trace;
  trace.hidden = hidden;
  trace.steps.resize(static_cast<size_t>(t_len));
  trace.contexts.resize(t_len, n);
  trace.logits.resize(t_len, v);
  trace.posteriors.resize(t_len, v);

  AttentionState state = AttentionState::Initial(cfg, n, v);
  const Eigen::VectorXd zero_h = Eigen::VectorXd::Zero(params.hidden_dim);
  std::vector<Eigen::VectorXd> window(static_cast<size_t>(c_len));

  for (int u = 0; u < t_len; ++u) {
    AttentionStepTrace& step = trace.steps[static_cast<size_t>(u)];
    for (int j = 0; j < c_len; ++j) {
      int t = u - cfg.tau + j;
      window[static_cast<size_t>(j)] =
          (t >= 0 && t < t_len) ? Eigen::VectorXd(hidden.row(t).transpose()) : zero_h;
    }
    auto [fs, plain] = TimeConvolution(window, params.w_conv);
    step.g = fs.g;

    Eigen::VectorXd context;
    if (cfg.mode == AttentionMode::kNone) {
      context = plain;
    } else {
      if (cfg.use_implicit_lm && u > 0) {
        Eigen::VectorXd x(v + n);
        x << state.prev_logits, state.prev_context;
        step.lm_cache = LstmCellStep(params.lm, x, state.lm_h, state.lm_c);
        step.has_lm_cache = true;
        state.lm_h = step.lm_cache.h;
        state.lm_c = step.lm_cache.c;
      }
      step.content_in = ContentInput(state, params);

      const Eigen::VectorXd* loc_ptr = nullptr;
      if (cfg.mode == AttentionMode::kHybrid) {
        Eigen::VectorXd prev =
            cfg.vector_attention
                ? Eigen::VectorXd(state.prev_alpha_vec.colwise().mean().transpose())
                : state.prev_alpha;
        step.loc_feat = LocationFeatures(prev, params.loc_kernel, cfg.tau);
        loc_ptr = &step.loc_feat;
      }
      step.tanh_vals = ScoreTanh(params, fs, step.content_in, loc_ptr);

      if (cfg.vector_attention) {
        Eigen::MatrixXd raw = params.v_head * step.tanh_vals;
        step.alpha_vec = 1.0 / (1.0 + (-raw.array()).exp());
        context = ComponentContext(step.alpha_vec, fs, cfg.gamma);
        state.prev_alpha_vec = step.alpha_vec;
      } else {
        Eigen::VectorXd scores = step.tanh_vals.transpose() * params.v_score;
        step.alpha = Softmax(scores);
        // Per-slot coefficients gamma * alpha are applied before summation so
        // the uniform-weight case reduces to the plain sum exactly.
        context = Eigen::VectorXd::Zero(n);
        for (int j = 0; j < c_len; ++j) {
          context += (cfg.gamma * step.alpha(j)) * fs.g.col(j);
        }
        state.prev_alpha = step.alpha;
      }
    }

    Eigen::VectorXd z = params.w_soft * context + params.b_soft;
    trace.contexts.row(u) = context.transpose();
    trace.logits.row(u) = z.transpose();
    trace.posteriors.row(u) = Softmax(z).transpose();
    state.prev_logits = z;
    state.prev_context = context;
  }
  return trace;
}

Eigen::MatrixXd AttentionBackward(const AttentionParams& params,
                                  const AttentionTrace& trace,
                                  const Eigen::MatrixXd& grad_logits,
                                  AttentionParams* grad) {
  const AttentionConfig& cfg = params.config;
  const int t_len = static_cast<int>(trace.hidden.rows());
  const int c_len = cfg.window();
  const int n = params.feature_dim;
  const int v = params.num_units;
  A2W_CHECK(grad_logits.rows() == t_len && grad_logits.cols() == v,
            "bad grad_logits shape in attention backward");

  Eigen::MatrixXd d_hidden = Eigen::MatrixXd::Zero(t_len, params.hidden_dim);

  // Gradients carried from step u+1 into step u's outputs.
  Eigen::VectorXd dz_carry = Eigen::VectorXd::Zero(v);
  Eigen::VectorXd dc_carry = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd dalpha_carry = Eigen::VectorXd::Zero(c_len);
  Eigen::MatrixXd dalpha_vec_carry = Eigen::MatrixXd::Zero(n, c_len);
  Eigen::VectorXd dlm_h = Eigen::VectorXd::Zero(cfg.lm_dim);
  Eigen::VectorXd dlm_c = Eigen::VectorXd::Zero(cfg.lm_dim);

  for (int u = t_len - 1; u >= 0; --u) {
    const AttentionStepTrace& step = trace.steps[static_cast<size_t>(u)];
    Eigen::VectorXd dz = grad_logits.row(u).transpose() + dz_carry;
    dz_carry.setZero();

    Eigen::VectorXd context = trace.contexts.row(u).transpose();
    grad->w_soft += dz * context.transpose();
    grad->b_soft += dz;
    Eigen::VectorXd dc = params.w_soft.transpose() * dz + dc_carry;
    dc_carry.setZero();

    Eigen::MatrixXd dg = Eigen::MatrixXd::Zero(n, c_len);
    if (cfg.mode == AttentionMode::kNone) {
      dg.colwise() += dc;
    } else {
      Eigen::VectorXd dzc;
      if (cfg.vector_attention) {
        Eigen::MatrixXd dalpha_vec = dalpha_vec_carry;
        dalpha_vec_carry.setZero();
        for (int j = 0; j < c_len; ++j) {
          dalpha_vec.col(j) += cfg.gamma * dc.cwiseProduct(step.g.col(j));
          dg.col(j) += cfg.gamma * step.alpha_vec.col(j).cwiseProduct(dc);
        }
        // Logistic head.
        Eigen::MatrixXd draw =
            dalpha_vec.array() * step.alpha_vec.array() * (1.0 - step.alpha_vec.array());
        grad->v_head += draw * step.tanh_vals.transpose();
        Eigen::MatrixXd dtanh = params.v_head.transpose() * draw;
        Eigen::MatrixXd dpre =
            dtanh.array() * (1.0 - step.tanh_vals.array() * step.tanh_vals.array());
        grad->u_g += dpre * step.g.transpose();
        dg += params.u_g.transpose() * dpre;
        grad->u_z += dpre.rowwise().sum() * step.content_in.transpose();
        dzc = params.u_z.transpose() * dpre.rowwise().sum();
        grad->b_score += dpre.rowwise().sum();
        if (cfg.mode == AttentionMode::kHybrid) {
          Eigen::VectorXd df = dpre.transpose() * params.u_loc;
          grad->u_loc += dpre * step.loc_feat;
          Eigen::VectorXd prev =
              u > 0 ? Eigen::VectorXd(trace.steps[static_cast<size_t>(u - 1)]
                                          .alpha_vec.colwise()
                                          .mean()
                                          .transpose())
                    : Eigen::VectorXd(
                          Eigen::VectorXd::Constant(c_len, 1.0 / c_len));
          for (int j = 0; j < c_len; ++j) {
            for (int d = 0; d < c_len; ++d) {
              int src = j + d - cfg.tau;
              if (src < 0 || src >= c_len) continue;
              grad->loc_kernel(d) += df(j) * prev(src);
              if (u > 0) {
                // The mean over components spreads the gradient evenly.
                dalpha_vec_carry.col(src).array() +=
                    df(j) * params.loc_kernel(d) / n;
              }
            }
          }
        }
      } else {
        Eigen::VectorXd dalpha = dalpha_carry;
        dalpha_carry.setZero();
        for (int j = 0; j < c_len; ++j) {
          dalpha(j) += cfg.gamma * dc.dot(step.g.col(j));
          dg.col(j) += (cfg.gamma * step.alpha(j)) * dc;
        }
        // Softmax over slots.
        double inner = dalpha.dot(step.alpha);
        Eigen::VectorXd ds =
            (step.alpha.array() * (dalpha.array() - inner)).matrix();
        grad->v_score += step.tanh_vals * ds;
        Eigen::MatrixXd dtanh = params.v_score * ds.transpose();  // n_s x C
        Eigen::MatrixXd dpre =
            dtanh.array() * (1.0 - step.tanh_vals.array() * step.tanh_vals.array());
        grad->u_g += dpre * step.g.transpose();
        dg += params.u_g.transpose() * dpre;
        grad->u_z += dpre.rowwise().sum() * step.content_in.transpose();
        dzc = params.u_z.transpose() * dpre.rowwise().sum();
        grad->b_score += dpre.rowwise().sum();
        if (cfg.mode == AttentionMode::kHybrid) {
          Eigen::VectorXd df = dpre.transpose() * params.u_loc;
          grad->u_loc += dpre * step.loc_feat;
          Eigen::VectorXd prev = u > 0 ? trace.steps[static_cast<size_t>(u - 1)].alpha
                                       : Eigen::VectorXd(Eigen::VectorXd::Constant(
                                             c_len, 1.0 / c_len));
          for (int j = 0; j < c_len; ++j) {
            for (int d = 0; d < c_len; ++d) {
              int src = j + d - cfg.tau;
              if (src < 0 || src >= c_len) continue;
              grad->loc_kernel(d) += df(j) * prev(src);
              if (u > 0) dalpha_carry(src) += df(j) * params.loc_kernel(d);
            }
          }
        }
      }

      // Content input: either the implicit LM state or the previous logits.
      if (cfg.use_implicit_lm) {
        if (step.has_lm_cache) {
          Eigen::VectorXd gh = dzc + dlm_h;
          LstmCellGrad cg = LstmCellStepBackward(params.lm, step.lm_cache, gh,
                                                 dlm_c, &grad->lm);
          dz_carry += cg.x.head(v);
          dc_carry += cg.x.tail(n);
          dlm_h = cg.h_prev;
          dlm_c = cg.c_prev;
        }
        // u == 0: the content input is the constant initial state.
      } else if (u > 0) {
        dz_carry += dzc;
      }
    }

    // Filtered signals back to the filters and the hidden features.
    for (int j = 0; j < c_len; ++j) {
      int t = u - cfg.tau + j;
      if (t < 0 || t >= t_len) continue;
      grad->w_conv[static_cast<size_t>(j)] += dg.col(j) * trace.hidden.row(t);
      d_hidden.row(t) +=
          (params.w_conv[static_cast<size_t>(j)].transpose() * dg.col(j)).transpose();
    }
  }
  return d_hidden;
}

}  // namespace a2w
