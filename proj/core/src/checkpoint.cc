// a2w/checkpoint.cc

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

#include "a2w/checkpoint.h"

#include <fstream>

#include "a2w/common.h"

namespace a2w {

namespace {

constexpr char kMagic[8] = {'A', '2', 'W', 'C', 'K', 'P', 'T', '1'};

void WriteTensor(std::ostream& os, const Eigen::MatrixXd& m) {
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) WriteF32(os, static_cast<float>(m(r, c)));
}

void WriteTensor(std::ostream& os, const Eigen::VectorXd& v) {
  for (int r = 0; r < v.size(); ++r) WriteF32(os, static_cast<float>(v(r)));
}

void ReadTensor(std::istream& is, Eigen::MatrixXd* m) {
  for (int r = 0; r < m->rows(); ++r)
    for (int c = 0; c < m->cols(); ++c) (*m)(r, c) = ReadF32(is);
}

void ReadTensor(std::istream& is, Eigen::VectorXd* v) {
  for (int r = 0; r < v->size(); ++r) (*v)(r) = ReadF32(is);
}

void WriteLstm(std::ostream& os, const LstmParams& p) {
  WriteTensor(os, p.w_x);
  WriteTensor(os, p.w_h);
  WriteTensor(os, p.b);
}

void ReadLstm(std::istream& is, LstmParams* p) {
  ReadTensor(is, &p->w_x);
  ReadTensor(is, &p->w_h);
  ReadTensor(is, &p->b);
}

}  // namespace

void SaveCheckpoint(const NetworkParams& params, uint64_t vocab_hash,
                    const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  A2W_CHECK(os.good(), "cannot open '" << path << "' for writing");
  os.write(kMagic, 8);
  WriteU32(os, static_cast<uint32_t>(params.input_dim));
  WriteU32(os, static_cast<uint32_t>(params.hidden_dim));
  WriteU32(os, static_cast<uint32_t>(params.num_layers()));
  WriteU32(os, static_cast<uint32_t>(params.output_dim));
  WriteU64(os, vocab_hash);
  for (const auto& layer : params.layers) WriteU8(os, layer.frozen ? 1 : 0);
  for (const auto& layer : params.layers) {
    WriteLstm(os, layer.fwd);
    WriteLstm(os, layer.bwd);
  }
  WriteTensor(os, params.softmax.w);
  WriteTensor(os, params.softmax.b);

  WriteU8(os, params.has_attention ? 1 : 0);
  if (params.has_attention) {
    const AttentionParams& a = params.attention;
    const AttentionConfig& cfg = a.config;
    WriteU32(os, static_cast<uint32_t>(cfg.tau));
    WriteU64(os, static_cast<uint64_t>(0));  // reserved
    WriteF32(os, static_cast<float>(cfg.gamma));
    WriteU8(os, static_cast<uint8_t>(cfg.mode));
    WriteU8(os, cfg.use_implicit_lm ? 1 : 0);
    WriteU8(os, cfg.vector_attention ? 1 : 0);
    WriteU32(os, static_cast<uint32_t>(cfg.lm_dim));
    for (const auto& w : a.w_conv) WriteTensor(os, w);
    WriteTensor(os, a.u_g);
    WriteTensor(os, a.u_z);
    WriteTensor(os, a.u_loc);
    WriteTensor(os, a.loc_kernel);
    WriteTensor(os, a.b_score);
    WriteTensor(os, a.v_score);
    WriteTensor(os, a.v_head);
    WriteLstm(os, a.lm);
    WriteTensor(os, a.w_soft);
    WriteTensor(os, a.b_soft);
  }
  A2W_CHECK(os.good(), "failed writing checkpoint '" << path << "'");
}

NetworkParams LoadCheckpoint(const std::string& path,
                             uint64_t expected_vocab_hash,
                             uint64_t* stored_hash) {
  std::ifstream is(path, std::ios::binary);
  A2W_CHECK(is.good(), "cannot open checkpoint '" << path << "'");
  char magic[8];
  is.read(magic, 8);
  A2W_CHECK(is.gcount() == 8 && std::equal(magic, magic + 8, kMagic),
            "'" << path << "' is not a checkpoint file");
  int input_dim = static_cast<int>(ReadU32(is));
  int hidden_dim = static_cast<int>(ReadU32(is));
  int num_layers = static_cast<int>(ReadU32(is));
  int output_dim = static_cast<int>(ReadU32(is));
  uint64_t hash = ReadU64(is);
  if (stored_hash != nullptr) *stored_hash = hash;
  A2W_CHECK(expected_vocab_hash == 0 || hash == expected_vocab_hash,
            "checkpoint '" << path << "' was trained with a different vocabulary"
                           << " (hash mismatch)");

  NetworkParams params =
      NetworkParams::Create(input_dim, hidden_dim, output_dim, num_layers,
                            /*rng=*/nullptr);
  for (auto& layer : params.layers) layer.frozen = ReadU8(is) != 0;
  for (auto& layer : params.layers) {
    ReadLstm(is, &layer.fwd);
    ReadLstm(is, &layer.bwd);
  }
  ReadTensor(is, &params.softmax.w);
  ReadTensor(is, &params.softmax.b);

  if (ReadU8(is) != 0) {
    AttentionConfig cfg;
    cfg.tau = static_cast<int>(ReadU32(is));
    ReadU64(is);  // reserved
    cfg.gamma = ReadF32(is);
    cfg.mode = static_cast<AttentionMode>(ReadU8(is));
    cfg.use_implicit_lm = ReadU8(is) != 0;
    cfg.vector_attention = ReadU8(is) != 0;
    cfg.lm_dim = static_cast<int>(ReadU32(is));
    params.has_attention = true;
    params.attention = AttentionParams::Zero(cfg, 2 * hidden_dim, output_dim);
    AttentionParams& a = params.attention;
    for (auto& w : a.w_conv) ReadTensor(is, &w);
    ReadTensor(is, &a.u_g);
    ReadTensor(is, &a.u_z);
    ReadTensor(is, &a.u_loc);
    ReadTensor(is, &a.loc_kernel);
    ReadTensor(is, &a.b_score);
    ReadTensor(is, &a.v_score);
    ReadTensor(is, &a.v_head);
    ReadLstm(is, &a.lm);
    ReadTensor(is, &a.w_soft);
    ReadTensor(is, &a.b_soft);
  }
  A2W_CHECK(is.good(), "truncated checkpoint '" << path << "'");
  params.CheckFinite();
  return params;
}

}  // namespace a2w
