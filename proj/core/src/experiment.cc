// a2w/experiment.cc

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

#include "a2w/experiment.h"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "a2w/checkpoint.h"
#include "a2w/common.h"
#include "a2w/hybrid.h"
#include "a2w/synth.h"

namespace a2w {

namespace fs = std::filesystem;

std::vector<UttText> DecodeManifest(const NetworkParams& params,
                                    const MixedVocab& vocab,
                                    const std::vector<ManifestEntry>& manifest) {
  std::vector<UttText> hyps;
  hyps.reserve(manifest.size());
  for (const ManifestEntry& e : manifest) {
    FeatureSequence feats = LoadFeatures(e.feature_path, e.utterance_id);
    NetworkTrace trace = NetworkForward(params, feats);
    hyps.push_back({e.utterance_id, DecodeToWords(trace.post, vocab)});
  }
  return hyps;
}

std::vector<UttText> HybridDecodeManifest(
    const NetworkParams& word_model, const MixedVocab& word_vocab,
    const NetworkParams& letter_model, const MixedVocab& letter_vocab,
    const std::vector<ManifestEntry>& manifest,
    const std::string& debug_dump_path) {
  std::ofstream dump;
  if (!debug_dump_path.empty()) {
    dump.open(debug_dump_path);
    A2W_CHECK(dump.good(), "cannot open '" << debug_dump_path << "'");
  }
  std::vector<UttText> hyps;
  hyps.reserve(manifest.size());
  for (const ManifestEntry& e : manifest) {
    FeatureSequence feats = LoadFeatures(e.feature_path, e.utterance_id);
    NetworkTrace word_trace = NetworkForward(word_model, feats);
    NetworkTrace letter_trace = NetworkForward(letter_model, feats);
    auto word_tokens = DecodeWordTokens(word_trace.post, word_vocab);
    auto letter_words =
        LetterWordsWithSpans(GreedyDecode(letter_trace.post), letter_vocab);
    std::vector<OovReplacement> decisions;
    std::vector<std::string> words =
        ReplaceOov(word_tokens, letter_words, &decisions);
    if (dump.is_open()) {
      dump << HybridDebugRecord(e.utterance_id, word_tokens, letter_words,
                                decisions)
           << '\n';
    }
    hyps.push_back({e.utterance_id, std::move(words)});
  }
  return hyps;
}

namespace {

int CountOovTokens(const std::vector<UttText>& hyps) {
  int n = 0;
  for (const auto& h : hyps)
    for (const auto& w : h.words)
      if (w == kOovUnit) ++n;
  return n;
}

std::string RenderTable(const std::vector<ModelResult>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(24) << "model" << std::right << std::setw(8)
     << "WER%" << std::setw(6) << "S" << std::setw(6) << "D" << std::setw(6)
     << "I" << std::setw(12) << "OOV-tokens" << '\n';
  os << std::string(62, '-') << '\n';
  os << std::fixed << std::setprecision(2);
  for (const auto& r : rows) {
    os << std::left << std::setw(24) << r.name << std::right << std::setw(8)
       << 100.0 * r.wer.wer << std::setw(6) << r.wer.substitutions
       << std::setw(6) << r.wer.deletions << std::setw(6) << r.wer.insertions
       << std::setw(12) << r.oov_tokens_emitted << '\n';
  }
  return os.str();
}

}  // namespace

ExperimentResult RunExperiment(const ExperimentConfig& config_in) {
  ExperimentConfig config = config_in;
  config.corpus.min_count = config.min_count;
  const std::string out = ResolveOutputDir(config.output_dir);
  fs::create_directories(out);

  // Corpus: synthesized, saved, then consumed from disk like any external
  // data set would be.
  SyntheticCorpus corpus = SynthesizeCorpus(config.corpus, config.seed);
  SaveCorpus(corpus, (fs::path(out) / "corpus").string());
  auto train_manifest =
      LoadManifest((fs::path(out) / "corpus" / "train_manifest.tsv").string());
  auto test_manifest =
      LoadManifest((fs::path(out) / "corpus" / "test_manifest.tsv").string());
  auto train_lines =
      LoadLines((fs::path(out) / "corpus" / "train_transcripts.txt").string());

  std::vector<UttText> refs;
  for (const auto& e : test_manifest) refs.push_back({e.utterance_id, e.words});
  SaveUttText(refs, (fs::path(out) / "test_ref.txt").string());

  ExperimentResult result;
  result.output_dir = out;

  struct TrainedModel {
    NetworkParams params;
    MixedVocab vocab;
  };
  std::map<std::string, TrainedModel> models;

  // OOV attribution always uses the word vocabulary's frequent set, so the
  // per-model reports are comparable.
  MixedVocab word_vocab = BuildVocabFromLines(train_lines, config.min_count, 1,
                                              VocabScheme::kWordOnly);
  auto score_and_record = [&](const std::string& name,
                              const std::vector<UttText>& hyps) {
    SaveUttText(hyps, (fs::path(out) / ("hyp_" + name + ".txt")).string());
    CorpusReport report = ScoreCorpus(refs, hyps, &word_vocab);
    std::ofstream rf((fs::path(out) / ("report_" + name + ".tsv")).string());
    rf << ReportToTsv(report);
    ModelResult row;
    row.name = name;
    row.wer = report.total;
    row.oov_tokens_emitted = CountOovTokens(hyps);
    result.rows.push_back(row);
  };

  auto train_model = [&](const std::string& name, const MixedVocab& vocab,
                         bool attention) {
    SaveVocab(vocab, (fs::path(out) / ("vocab_" + name + ".txt")).string());
    uint64_t model_seed = config.seed ^ Fnv1a64(name);
    Rng rng(model_seed);
    NetworkParams params = NetworkParams::Create(
        config.corpus.feature_dim, config.hidden_dim, vocab.inventory.size(),
        config.num_layers, &rng);
    if (attention) params.AttachAttention(config.attention, &rng);
    TrainHyper hyper = config.hyper;
    hyper.seed = model_seed + 1;
    TrainingSet data = PrepareTrainingSet(train_manifest, vocab);
    std::cerr << "experiment: training '" << name << "' (V="
              << vocab.inventory.size() << ")\n";
    Train(&params, data, hyper, (fs::path(out) / ("model_" + name)).string(),
          VocabHash(vocab));
    models[name] = {params, vocab};
  };

  // Word-only baseline.
  train_model("word", word_vocab, config.use_attention);
  score_and_record(
      "word", DecodeManifest(models["word"].params, word_vocab, test_manifest));

  // Letter-only models, unit sizes 1..3.
  if (config.run_letters) {
    for (int order = 1; order <= 3; ++order) {
      std::string name = "letter-" + std::to_string(order);
      MixedVocab vocab = BuildVocabFromLines(train_lines, config.min_count,
                                             order, VocabScheme::kLettersOnly);
      train_model(name, vocab, config.use_attention);
      score_and_record(
          name, DecodeManifest(models[name].params, vocab, test_manifest));
    }
  }

  // Shared-hidden-layer letter model consulted at OOV segments.
  if (config.run_hybrid) {
    MixedVocab letter_vocab =
        config.run_letters
            ? models["letter-" + std::to_string(config.letter_order)].vocab
            : BuildVocabFromLines(train_lines, config.min_count,
                                  config.letter_order,
                                  VocabScheme::kLettersOnly);
    std::string name = "hybrid-letter" + std::to_string(config.letter_order);
    SaveVocab(letter_vocab, (fs::path(out) / ("vocab_" + name + ".txt")).string());
    uint64_t model_seed = config.seed ^ Fnv1a64(name);
    Rng rng(model_seed);
    NetworkParams derived =
        DeriveLetterModel(models["word"].params, letter_vocab, &rng);
    TrainHyper hyper = config.hyper;
    hyper.seed = model_seed + 1;
    TrainingSet data = PrepareTrainingSet(train_manifest, letter_vocab);
    std::cerr << "experiment: training '" << name << "' (V="
              << letter_vocab.inventory.size() << ", shared bottom layers)\n";
    Train(&derived, data, hyper, (fs::path(out) / ("model_" + name)).string(),
          VocabHash(letter_vocab));
    auto hyps = HybridDecodeManifest(
        models["word"].params, models["word"].vocab, derived, letter_vocab,
        test_manifest, (fs::path(out) / "hybrid_debug.jsonl").string());
    score_and_record(name, hyps);
  }

  // Mixed-unit model: frequent words plus letter decompositions, no OOV node.
  {
    std::string name = "mixed-" + std::to_string(config.letter_order);
    MixedVocab vocab = BuildVocabFromLines(
        train_lines, config.min_count, config.letter_order, VocabScheme::kMixed);
    train_model(name, vocab, config.use_attention);
    score_and_record(
        name, DecodeManifest(models[name].params, vocab, test_manifest));
  }

  result.table = RenderTable(result.rows);
  {
    std::ofstream tf((fs::path(out) / "results.txt").string());
    tf << result.table;
    std::ofstream mf((fs::path(out) / "results.tsv").string());
    mf << "#model\twer\tS\tD\tI\toov_tokens\n" << std::setprecision(17);
    for (const auto& r : result.rows) {
      mf << r.name << '\t' << r.wer.wer << '\t' << r.wer.substitutions << '\t'
         << r.wer.deletions << '\t' << r.wer.insertions << '\t'
         << r.oov_tokens_emitted << '\n';
    }
  }
  return result;
}

}  // namespace a2w
