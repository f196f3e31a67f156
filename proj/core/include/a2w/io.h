// a2w/io.h

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

#ifndef A2W_IO_H_
#define A2W_IO_H_

#include <string>
#include <vector>

#include "a2w/ctc.h"
#include "a2w/network.h"

namespace a2w {

// Per-utterance feature file: magic "A2WFEAT1", u32 T, u32 D, then T*D
// row-major little-endian f32.
void SaveFeatures(const FeatureSequence& feats, const std::string& path);
FeatureSequence LoadFeatures(const std::string& path,
                             const std::string& utterance_id = "");

// Posteriorgram file: magic "A2WPOST1", u32 T, u32 V, u32 blank_id, then
// T*V row-major little-endian f32.
void SavePosteriorgram(const Posteriorgram& post, const std::string& path);
Posteriorgram LoadPosteriorgram(const std::string& path);

// Manifest: one line per utterance, "id <TAB> feature path <TAB> transcript".
// Relative feature paths are resolved against the manifest's directory.
struct ManifestEntry {
  std::string utterance_id;
  std::string feature_path;
  std::vector<std::string> words;
};

void SaveManifest(const std::vector<ManifestEntry>& entries,
                  const std::string& path);
std::vector<ManifestEntry> LoadManifest(const std::string& path);

// Utterance-keyed text files ("id <TAB> word word ..."), used for reference
// transcripts and decoding hypotheses.
struct UttText {
  std::string utterance_id;
  std::vector<std::string> words;
};

void SaveUttText(const std::vector<UttText>& lines, const std::string& path);
std::vector<UttText> LoadUttText(const std::string& path);

// Plain transcript corpus: one utterance per line.
std::vector<std::string> LoadLines(const std::string& path);

}  // namespace a2w

#endif  // A2W_IO_H_
