// a2w/synth.h

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

#ifndef A2W_SYNTH_H_
#define A2W_SYNTH_H_

#include <string>
#include <vector>

#include "a2w/network.h"

namespace a2w {

// Synthetic letter-compositional corpus. Every letter owns a fixed random
// feature template; a word's frames are its letters' templates in order, so
// words never seen whole are still predictable from their spelling. A
// boundary template separates words.
//
// Rare words are planted min_count-1 times in the training text: below the
// frequency threshold (so they are decomposed or mapped to OOV by the
// vocabulary builders) yet present enough for their letter units to be
// trainable. The test set draws its OOV words from exactly this pool.
struct SyntheticCorpusSpec {
  int lexicon_size = 50;      // frequent-word pool
  int oov_lexicon_size = 8;   // rare pool (test-time OOV words)
  double oov_fraction = 0.10; // fraction of test utterances with one OOV word
  int frames_per_unit = 3;    // frames per letter
  double noise_level = 0.3;
  int train_utterances = 500;
  int test_utterances = 100;
  int min_words = 2, max_words = 5;
  int min_word_len = 2, max_word_len = 5;
  int alphabet_size = 12;  // first N letters of a-z
  int feature_dim = 16;
  int boundary_frames = 2;
  int min_count = 3;  // threshold the corpus is built against
  double template_scale = 1.0;
};

struct SyntheticUtterance {
  std::string utterance_id;
  std::vector<std::string> words;
  FeatureSequence feats;
};

struct SyntheticCorpus {
  SyntheticCorpusSpec spec;
  std::vector<std::string> lexicon;    // frequent pool
  std::vector<std::string> oov_words;  // rare pool
  std::vector<SyntheticUtterance> train, test;

  std::vector<std::string> TrainTranscripts() const;
};

// Deterministic for a given spec and seed. Errors when the spec is
// infeasible (e.g. OOV utterances requested with an empty rare pool, or not
// enough distinct words over the alphabet).
SyntheticCorpus SynthesizeCorpus(const SyntheticCorpusSpec& spec, uint64_t seed);

// Writes train/ and test/ feature files, the two manifests, the training
// transcripts and the spec (key=value) under dir.
void SaveCorpus(const SyntheticCorpus& corpus, const std::string& dir);

}  // namespace a2w

#endif  // A2W_SYNTH_H_
