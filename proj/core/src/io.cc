// a2w/io.cc

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

#include "a2w/io.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "a2w/common.h"

namespace a2w {

namespace {

constexpr char kFeatMagic[8] = {'A', '2', 'W', 'F', 'E', 'A', 'T', '1'};
constexpr char kPostMagic[8] = {'A', '2', 'W', 'P', 'O', 'S', 'T', '1'};

void CheckMagic(std::istream& is, const char* magic, const std::string& path,
                const char* what) {
  char buf[8];
  is.read(buf, 8);
  A2W_CHECK(is.gcount() == 8 && std::equal(buf, buf + 8, magic),
            "'" << path << "' is not a " << what << " file");
}

void WriteMatrixF32(std::ostream& os, const Eigen::MatrixXd& m) {
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) WriteF32(os, static_cast<float>(m(r, c)));
}

void ReadMatrixF32(std::istream& is, Eigen::MatrixXd* m) {
  for (int r = 0; r < m->rows(); ++r)
    for (int c = 0; c < m->cols(); ++c) (*m)(r, c) = ReadF32(is);
}

}  // namespace

void SaveFeatures(const FeatureSequence& feats, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  A2W_CHECK(os.good(), "cannot open '" << path << "' for writing");
  os.write(kFeatMagic, 8);
  WriteU32(os, static_cast<uint32_t>(feats.frames.rows()));
  WriteU32(os, static_cast<uint32_t>(feats.frames.cols()));
  WriteMatrixF32(os, feats.frames);
  A2W_CHECK(os.good(), "failed writing features to '" << path << "'");
}

FeatureSequence LoadFeatures(const std::string& path,
                             const std::string& utterance_id) {
  std::ifstream is(path, std::ios::binary);
  A2W_CHECK(is.good(), "cannot open feature file '" << path << "'");
  CheckMagic(is, kFeatMagic, path, "feature");
  int t = static_cast<int>(ReadU32(is));
  int d = static_cast<int>(ReadU32(is));
  FeatureSequence feats;
  feats.utterance_id = utterance_id;
  feats.frames.resize(t, d);
  ReadMatrixF32(is, &feats.frames);
  A2W_CHECK(is.good(), "truncated feature file '" << path << "'");
  return feats;
}

void SavePosteriorgram(const Posteriorgram& post, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  A2W_CHECK(os.good(), "cannot open '" << path << "' for writing");
  os.write(kPostMagic, 8);
  WriteU32(os, static_cast<uint32_t>(post.probs.rows()));
  WriteU32(os, static_cast<uint32_t>(post.probs.cols()));
  WriteU32(os, static_cast<uint32_t>(post.blank_id));
  WriteMatrixF32(os, post.probs);
  A2W_CHECK(os.good(), "failed writing posteriorgram to '" << path << "'");
}

Posteriorgram LoadPosteriorgram(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  A2W_CHECK(is.good(), "cannot open posteriorgram file '" << path << "'");
  CheckMagic(is, kPostMagic, path, "posteriorgram");
  int t = static_cast<int>(ReadU32(is));
  int v = static_cast<int>(ReadU32(is));
  Posteriorgram post;
  post.blank_id = static_cast<int>(ReadU32(is));
  post.probs.resize(t, v);
  ReadMatrixF32(is, &post.probs);
  A2W_CHECK(is.good(), "truncated posteriorgram file '" << path << "'");
  return post;
}

void SaveManifest(const std::vector<ManifestEntry>& entries,
                  const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  A2W_CHECK(os.good(), "cannot open '" << path << "' for writing");
  for (const auto& e : entries) {
    os << e.utterance_id << '\t' << e.feature_path << '\t' << JoinWords(e.words)
       << '\n';
  }
  A2W_CHECK(os.good(), "failed writing manifest to '" << path << "'");
}

std::vector<ManifestEntry> LoadManifest(const std::string& path) {
  std::ifstream is(path);
  A2W_CHECK(is.good(), "cannot open manifest '" << path << "'");
  std::filesystem::path base = std::filesystem::path(path).parent_path();
  std::vector<ManifestEntry> entries;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    ManifestEntry e;
    std::string transcript;
    A2W_CHECK(std::getline(ls, e.utterance_id, '\t') &&
                  std::getline(ls, e.feature_path, '\t') &&
                  std::getline(ls, transcript),
              "bad manifest line '" << line << "'");
    if (!e.feature_path.empty() &&
        !std::filesystem::path(e.feature_path).is_absolute()) {
      e.feature_path = (base / e.feature_path).string();
    }
    for (const std::string& w : SplitWords(transcript))
      e.words.push_back(Lowercase(w));
    entries.push_back(std::move(e));
  }
  return entries;
}

void SaveUttText(const std::vector<UttText>& lines, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  A2W_CHECK(os.good(), "cannot open '" << path << "' for writing");
  for (const auto& l : lines) {
    os << l.utterance_id << '\t' << JoinWords(l.words) << '\n';
  }
  A2W_CHECK(os.good(), "failed writing '" << path << "'");
}

std::vector<UttText> LoadUttText(const std::string& path) {
  std::ifstream is(path);
  A2W_CHECK(is.good(), "cannot open '" << path << "'");
  std::vector<UttText> lines;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    UttText ut;
    auto tab = line.find('\t');
    A2W_CHECK(tab != std::string::npos, "bad line '" << line << "' in " << path);
    ut.utterance_id = line.substr(0, tab);
    for (const std::string& w : SplitWords(line.substr(tab + 1)))
      ut.words.push_back(Lowercase(w));
    lines.push_back(std::move(ut));
  }
  return lines;
}

std::vector<std::string> LoadLines(const std::string& path) {
  std::ifstream is(path);
  A2W_CHECK(is.good(), "cannot open '" << path << "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  return lines;
}

}  // namespace a2w
