// a2w/config.h

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

#ifndef A2W_CONFIG_H_
#define A2W_CONFIG_H_

#include <string>

#include "a2w/attention.h"
#include "a2w/synth.h"
#include "a2w/trainer.h"

namespace a2w {

// One experiment run: corpus, vocabulary thresholds, model sizes, optimizer
// settings. Parsed from key=value files; A2W_OUTPUT_DIR overrides the
// output directory.
struct ExperimentConfig {
  uint64_t seed = 7;
  std::string output_dir = "a2w-out";

  int min_count = 3;
  int letter_order = 3;  // mixed-scheme OOV remainders; also the hybrid letter set

  int hidden_dim = 32;
  int num_layers = 2;

  bool use_attention = false;
  AttentionConfig attention;

  TrainHyper hyper;
  SyntheticCorpusSpec corpus;

  bool run_letters = true;  // letter-only models (sizes 1..3)
  bool run_hybrid = true;   // shared-layer letter model + OOV lookup
};

// Desk-scale defaults: small nets, small corpus, tau=1 attention.
ExperimentConfig ToyPreset();

// Full-scale reference settings (frequency threshold 10, 6x512 networks,
// 240-dim stacked features, tau=4). Kept for provenance and configuration
// completeness; far too large for the bundled test corpus machinery.
ExperimentConfig FullScalePreset();

ExperimentConfig PresetByName(const std::string& name);

// Applies "key=value" lines ('#' comments allowed). Unknown keys are errors.
void ApplyConfigLine(ExperimentConfig* config, const std::string& line);
void LoadConfigFile(ExperimentConfig* config, const std::string& path);

// The A2W_OUTPUT_DIR environment variable wins over the configured value.
std::string ResolveOutputDir(const std::string& configured);

}  // namespace a2w

#endif  // A2W_CONFIG_H_
