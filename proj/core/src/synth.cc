// a2w/synth.cc

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

#include "a2w/synth.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "a2w/common.h"
#include "a2w/io.h"

namespace a2w {

namespace {

void ValidateSpec(const SyntheticCorpusSpec& s) {
  A2W_CHECK(s.alphabet_size >= 2 && s.alphabet_size <= 26,
            "alphabet size must be in [2,26]");
  A2W_CHECK(s.lexicon_size >= s.max_words, "lexicon too small");
  A2W_CHECK(s.oov_fraction >= 0.0 && s.oov_fraction <= 1.0,
            "oov fraction must be in [0,1]");
  A2W_CHECK(s.oov_fraction == 0.0 || s.oov_lexicon_size > 0,
            "infeasible OOV constraint: oov utterances requested with an "
            "empty rare pool");
  A2W_CHECK(s.min_words >= 1 && s.max_words >= s.min_words, "bad word counts");
  A2W_CHECK(s.min_word_len >= 1 && s.max_word_len >= s.min_word_len,
            "bad word lengths");
  A2W_CHECK(s.frames_per_unit >= 1, "frames_per_unit must be >= 1");
  A2W_CHECK(s.feature_dim >= 1, "feature_dim must be >= 1");
  A2W_CHECK(s.train_utterances >= 1 && s.test_utterances >= 0,
            "bad utterance counts");
  A2W_CHECK(s.min_count >= 1, "min_count must be >= 1");
}

std::string RandomWord(const SyntheticCorpusSpec& s, Rng* rng) {
  int len = s.min_word_len + rng->NextInt(s.max_word_len - s.min_word_len + 1);
  std::string w;
  for (int i = 0; i < len; ++i)
    w += static_cast<char>('a' + rng->NextInt(s.alphabet_size));
  return w;
}

std::vector<std::string> DistinctWords(const SyntheticCorpusSpec& s, int count,
                                       std::set<std::string>* taken, Rng* rng) {
  std::vector<std::string> words;
  int attempts = 0;
  while (static_cast<int>(words.size()) < count) {
    A2W_CHECK(++attempts < 100000,
              "infeasible spec: cannot draw " << count
                  << " distinct words over a " << s.alphabet_size
                  << "-letter alphabet");
    std::string w = RandomWord(s, rng);
    if (taken->insert(w).second) words.push_back(w);
  }
  return words;
}

}  // namespace

std::vector<std::string> SyntheticCorpus::TrainTranscripts() const {
  std::vector<std::string> lines;
  lines.reserve(train.size());
  for (const auto& u : train) lines.push_back(JoinWords(u.words));
  return lines;
}

SyntheticCorpus SynthesizeCorpus(const SyntheticCorpusSpec& spec,
                                 uint64_t seed) {
  ValidateSpec(spec);
  Rng rng(seed);
  SyntheticCorpus corpus;
  corpus.spec = spec;

  std::set<std::string> taken;
  corpus.lexicon = DistinctWords(spec, spec.lexicon_size, &taken, &rng);
  corpus.oov_words = DistinctWords(spec, spec.oov_lexicon_size, &taken, &rng);

  // Letter templates; the extra row is the word-boundary marker.
  Eigen::MatrixXd templates(spec.alphabet_size + 1, spec.feature_dim);
  for (int r = 0; r < templates.rows(); ++r)
    for (int c = 0; c < templates.cols(); ++c)
      templates(r, c) = spec.template_scale * rng.NextGaussian();

  // Word sequences for the training set.
  std::vector<std::vector<std::string>> train_words(
      static_cast<size_t>(spec.train_utterances));
  for (auto& words : train_words) {
    int k = spec.min_words + rng.NextInt(spec.max_words - spec.min_words + 1);
    for (int i = 0; i < k; ++i)
      words.push_back(corpus.lexicon[static_cast<size_t>(
          rng.NextInt(spec.lexicon_size))]);
  }
  // Plant each rare word min_count-1 times, keeping it under the threshold.
  for (const std::string& rare : corpus.oov_words) {
    for (int rep = 0; rep < spec.min_count - 1; ++rep) {
      auto& words = train_words[static_cast<size_t>(
          rng.NextInt(spec.train_utterances))];
      words.insert(words.begin() + rng.NextInt(static_cast<int>(words.size()) + 1),
                   rare);
    }
  }
  // Top up lexicon words that fell short of the threshold by chance.
  std::map<std::string, int> counts;
  for (const auto& words : train_words)
    for (const auto& w : words) counts[w]++;
  for (const std::string& w : corpus.lexicon) {
    while (counts[w] < spec.min_count) {
      auto& words = train_words[static_cast<size_t>(
          rng.NextInt(spec.train_utterances))];
      words.insert(words.begin() + rng.NextInt(static_cast<int>(words.size()) + 1),
                   w);
      counts[w]++;
    }
  }

  // Word sequences for the test set; the first round(fraction * N)
  // utterances carry exactly one rare word each.
  std::vector<std::vector<std::string>> test_words(
      static_cast<size_t>(spec.test_utterances));
  int oov_utterances = static_cast<int>(
      spec.oov_fraction * spec.test_utterances + 0.5);
  for (int u = 0; u < spec.test_utterances; ++u) {
    auto& words = test_words[static_cast<size_t>(u)];
    int k = spec.min_words + rng.NextInt(spec.max_words - spec.min_words + 1);
    for (int i = 0; i < k; ++i)
      words.push_back(corpus.lexicon[static_cast<size_t>(
          rng.NextInt(spec.lexicon_size))]);
    if (u < oov_utterances) {
      const std::string& rare = corpus.oov_words[static_cast<size_t>(
          rng.NextInt(spec.oov_lexicon_size))];
      words[static_cast<size_t>(rng.NextInt(static_cast<int>(words.size())))] =
          rare;
    }
  }

  // Acoustics: boundary, then per word its letters, then boundary.
  auto render = [&](const std::vector<std::string>& words,
                    const std::string& id) {
    int t_len = spec.boundary_frames;
    for (const auto& w : words)
      t_len += static_cast<int>(w.size()) * spec.frames_per_unit +
               spec.boundary_frames;
    SyntheticUtterance utt;
    utt.utterance_id = id;
    utt.words = words;
    utt.feats.utterance_id = id;
    utt.feats.frames.resize(t_len, spec.feature_dim);
    int t = 0;
    auto emit = [&](int template_row, int frames) {
      for (int f = 0; f < frames; ++f) {
        for (int d = 0; d < spec.feature_dim; ++d) {
          utt.feats.frames(t, d) = templates(template_row, d) +
                                   spec.noise_level * rng.NextGaussian();
        }
        ++t;
      }
    };
    emit(spec.alphabet_size, spec.boundary_frames);
    for (const auto& w : words) {
      for (char ch : w) emit(ch - 'a', spec.frames_per_unit);
      emit(spec.alphabet_size, spec.boundary_frames);
    }
    return utt;
  };

  char id_buf[32];
  for (int u = 0; u < spec.train_utterances; ++u) {
    std::snprintf(id_buf, sizeof(id_buf), "train-%05d", u);
    corpus.train.push_back(render(train_words[static_cast<size_t>(u)], id_buf));
  }
  for (int u = 0; u < spec.test_utterances; ++u) {
    std::snprintf(id_buf, sizeof(id_buf), "test-%05d", u);
    corpus.test.push_back(render(test_words[static_cast<size_t>(u)], id_buf));
  }
  return corpus;
}

void SaveCorpus(const SyntheticCorpus& corpus, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(dir) / "train");
  fs::create_directories(fs::path(dir) / "test");

  auto save_split = [&](const std::vector<SyntheticUtterance>& utts,
                        const std::string& split) {
    std::vector<ManifestEntry> manifest;
    for (const auto& u : utts) {
      std::string rel = split + "/" + u.utterance_id + ".feat";
      SaveFeatures(u.feats, (fs::path(dir) / rel).string());
      manifest.push_back({u.utterance_id, rel, u.words});
    }
    SaveManifest(manifest, (fs::path(dir) / (split + "_manifest.tsv")).string());
  };
  save_split(corpus.train, "train");
  save_split(corpus.test, "test");

  std::ofstream transcripts((fs::path(dir) / "train_transcripts.txt").string());
  for (const auto& line : corpus.TrainTranscripts()) transcripts << line << '\n';

  const SyntheticCorpusSpec& s = corpus.spec;
  std::ofstream os((fs::path(dir) / "corpus_spec.txt").string());
  os << "lexicon_size=" << s.lexicon_size << '\n'
     << "oov_lexicon_size=" << s.oov_lexicon_size << '\n'
     << "oov_fraction=" << s.oov_fraction << '\n'
     << "frames_per_unit=" << s.frames_per_unit << '\n'
     << "noise_level=" << s.noise_level << '\n'
     << "train_utterances=" << s.train_utterances << '\n'
     << "test_utterances=" << s.test_utterances << '\n'
     << "min_words=" << s.min_words << '\n'
     << "max_words=" << s.max_words << '\n'
     << "min_word_len=" << s.min_word_len << '\n'
     << "max_word_len=" << s.max_word_len << '\n'
     << "alphabet_size=" << s.alphabet_size << '\n'
     << "feature_dim=" << s.feature_dim << '\n'
     << "boundary_frames=" << s.boundary_frames << '\n'
     << "min_count=" << s.min_count << '\n'
     << "template_scale=" << s.template_scale << '\n';
}

}  // namespace a2w
