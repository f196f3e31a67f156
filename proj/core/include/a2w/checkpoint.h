// a2w/checkpoint.h

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

#ifndef A2W_CHECKPOINT_H_
#define A2W_CHECKPOINT_H_

#include <cstdint>
#include <string>

#include "a2w/network.h"

namespace a2w {

// Versioned little-endian binary checkpoint:
//   magic "A2WCKPT1"
//   u32 input_dim, hidden_dim, num_layers, output_dim; u64 vocab hash
//   u8 frozen flag per layer
//   f32 tensors in declared order: per layer fwd then bwd (w_x, w_h, b),
//   then softmax (w, b), row-major
//   u8 attention flag; when set, the attention config and tensors follow.
//
// Loading rejects non-finite values and, when expected_vocab_hash is
// non-zero, a vocabulary fingerprint mismatch.

void SaveCheckpoint(const NetworkParams& params, uint64_t vocab_hash,
                    const std::string& path);

NetworkParams LoadCheckpoint(const std::string& path,
                             uint64_t expected_vocab_hash,
                             uint64_t* stored_hash = nullptr);

}  // namespace a2w

#endif  // A2W_CHECKPOINT_H_
