// a2w/config.cc

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

#include "a2w/config.h"

#include <cstdlib>

#include "a2w/common.h"
#include "a2w/io.h"

namespace a2w {

ExperimentConfig ToyPreset() {
  ExperimentConfig c;
  c.seed = 7;
  c.min_count = 3;
  c.letter_order = 3;
  c.hidden_dim = 32;
  c.num_layers = 2;
  c.use_attention = false;
  c.attention.tau = 1;
  c.attention.gamma = 3.0;
  c.attention.mode = AttentionMode::kHybrid;
  c.attention.use_implicit_lm = false;
  c.attention.vector_attention = false;
  c.attention.lm_dim = 16;
  c.hyper.learning_rate = 0.08;
  c.hyper.epochs = 30;
  c.hyper.batch_size = 1;
  c.hyper.clip_norm = 5.0;
  c.hyper.checkpoint_every = 10;
  c.corpus = SyntheticCorpusSpec();
  c.corpus.min_count = c.min_count;
  c.corpus.frames_per_unit = 4;
  return c;
}

ExperimentConfig FullScalePreset() {
  ExperimentConfig c;
  c.min_count = 10;
  c.letter_order = 3;
  c.hidden_dim = 512;
  c.num_layers = 6;
  c.use_attention = true;
  c.attention.tau = 4;
  c.attention.gamma = 9.0;
  c.attention.mode = AttentionMode::kHybrid;
  c.attention.use_implicit_lm = false;  // off for large unit inventories
  c.attention.lm_dim = 64;
  c.hyper.learning_rate = 0.02;
  c.hyper.epochs = 20;
  c.corpus.feature_dim = 240;  // 3 stacked 80-dim frames
  c.corpus.min_count = c.min_count;
  return c;
}

ExperimentConfig PresetByName(const std::string& name) {
  if (name == "toy") return ToyPreset();
  if (name == "full") return FullScalePreset();
  A2W_ERR("unknown preset '" << name << "' (available: toy, full)");
}

namespace {

std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool ParseBool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  A2W_ERR("bad boolean value '" << v << "'");
}

}  // namespace

void ApplyConfigLine(ExperimentConfig* c, const std::string& raw) {
  std::string line = Trim(raw);
  if (line.empty() || line[0] == '#') return;
  auto eq = line.find('=');
  A2W_CHECK(eq != std::string::npos, "bad config line '" << raw << "'");
  std::string key = Trim(line.substr(0, eq));
  std::string value = Trim(line.substr(eq + 1));

  if (key == "seed") c->seed = std::stoull(value);
  else if (key == "output_dir") c->output_dir = value;
  else if (key == "min_count") { c->min_count = std::stoi(value); c->corpus.min_count = c->min_count; }
  else if (key == "letter_order") c->letter_order = std::stoi(value);
  else if (key == "hidden_dim") c->hidden_dim = std::stoi(value);
  else if (key == "num_layers") c->num_layers = std::stoi(value);
  else if (key == "use_attention") c->use_attention = ParseBool(value);
  else if (key == "attention_tau") {
    c->attention.tau = std::stoi(value);
    c->attention.gamma = c->attention.window();
  }
  else if (key == "attention_gamma") c->attention.gamma = std::stod(value);
  else if (key == "attention_mode") {
    if (value == "none") c->attention.mode = AttentionMode::kNone;
    else if (value == "content") c->attention.mode = AttentionMode::kContent;
    else if (value == "hybrid") c->attention.mode = AttentionMode::kHybrid;
    else A2W_ERR("bad attention mode '" << value << "'");
  }
  else if (key == "attention_implicit_lm") c->attention.use_implicit_lm = ParseBool(value);
  else if (key == "attention_vector") c->attention.vector_attention = ParseBool(value);
  else if (key == "attention_lm_dim") c->attention.lm_dim = std::stoi(value);
  else if (key == "learning_rate") c->hyper.learning_rate = std::stod(value);
  else if (key == "epochs") c->hyper.epochs = std::stoi(value);
  else if (key == "batch_size") c->hyper.batch_size = std::stoi(value);
  else if (key == "clip_norm") c->hyper.clip_norm = std::stod(value);
  else if (key == "checkpoint_every") c->hyper.checkpoint_every = std::stoi(value);
  else if (key == "lexicon_size") c->corpus.lexicon_size = std::stoi(value);
  else if (key == "oov_lexicon_size") c->corpus.oov_lexicon_size = std::stoi(value);
  else if (key == "oov_fraction") c->corpus.oov_fraction = std::stod(value);
  else if (key == "frames_per_unit") c->corpus.frames_per_unit = std::stoi(value);
  else if (key == "noise_level") c->corpus.noise_level = std::stod(value);
  else if (key == "train_utterances") c->corpus.train_utterances = std::stoi(value);
  else if (key == "test_utterances") c->corpus.test_utterances = std::stoi(value);
  else if (key == "min_words") c->corpus.min_words = std::stoi(value);
  else if (key == "max_words") c->corpus.max_words = std::stoi(value);
  else if (key == "min_word_len") c->corpus.min_word_len = std::stoi(value);
  else if (key == "max_word_len") c->corpus.max_word_len = std::stoi(value);
  else if (key == "alphabet_size") c->corpus.alphabet_size = std::stoi(value);
  else if (key == "feature_dim") c->corpus.feature_dim = std::stoi(value);
  else if (key == "boundary_frames") c->corpus.boundary_frames = std::stoi(value);
  else if (key == "template_scale") c->corpus.template_scale = std::stod(value);
  else if (key == "run_letters") c->run_letters = ParseBool(value);
  else if (key == "run_hybrid") c->run_hybrid = ParseBool(value);
  else A2W_ERR("unknown config key '" << key << "'");
}

void LoadConfigFile(ExperimentConfig* config, const std::string& path) {
  for (const std::string& line : LoadLines(path)) ApplyConfigLine(config, line);
}

std::string ResolveOutputDir(const std::string& configured) {
  const char* env = std::getenv("A2W_OUTPUT_DIR");
  return (env != nullptr && env[0] != '\0') ? std::string(env) : configured;
}

}  // namespace a2w
