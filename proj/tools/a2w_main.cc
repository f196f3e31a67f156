// tools/a2w_main.cc

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

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "a2w/checkpoint.h"
#include "a2w/config.h"
#include "a2w/experiment.h"
#include "a2w/hybrid.h"
#include "a2w/io.h"
#include "a2w/synth.h"
#include "a2w/trainer.h"
#include "a2w/vocab.h"
#include "a2w/wer.h"

namespace {

namespace fs = std::filesystem;
using namespace a2w;

struct VocabArgs {
  std::string corpus;
  std::string output = "vocab.txt";
  std::string scheme = "mixed";
  int min_count = 10;
  int letter_order = 3;
};

int RunVocab(const VocabArgs& args) {
  std::ifstream is(args.corpus);
  if (!is.good()) {
    std::cerr << "cannot open corpus '" << args.corpus << "'\n";
    return 1;
  }
  MixedVocab vocab = BuildVocab(is, args.min_count, args.letter_order,
                                SchemeFromName(args.scheme));
  SaveVocab(vocab, args.output);
  std::cerr << "wrote " << vocab.inventory.size() << " units to "
            << args.output << "\n";
  return 0;
}

struct SynthArgs {
  std::string preset = "toy";
  std::string config_file;
  std::string out;
  uint64_t seed = 7;
};

int RunSynth(const SynthArgs& args) {
  ExperimentConfig config = PresetByName(args.preset);
  if (!args.config_file.empty()) LoadConfigFile(&config, args.config_file);
  config.corpus.min_count = config.min_count;
  std::string out = ResolveOutputDir(args.out);
  SyntheticCorpus corpus = SynthesizeCorpus(config.corpus, args.seed);
  SaveCorpus(corpus, out);
  std::cerr << "wrote " << corpus.train.size() << " train / "
            << corpus.test.size() << " test utterances to " << out << "\n";
  return 0;
}

struct TrainArgs {
  std::string vocab;
  std::string manifest;
  std::string out;
  std::string derive_from;        // word checkpoint to share layers with
  std::string derive_from_vocab;  // its vocabulary (hash check)
  uint64_t seed = 1;
  int hidden = 32;
  int layers = 2;
  double lr = 0.08;
  int epochs = 30;
  int batch_size = 1;
  double clip_norm = 5.0;
  int checkpoint_every = 10;
  bool attention = false;
  int attention_tau = 1;
};

int RunTrain(const TrainArgs& args) {
  MixedVocab vocab = LoadVocab(args.vocab);
  auto manifest = LoadManifest(args.manifest);
  TrainingSet data = PrepareTrainingSet(manifest, vocab);
  std::string out = ResolveOutputDir(args.out);

  Rng rng(args.seed);
  NetworkParams params;
  if (!args.derive_from.empty()) {
    MixedVocab word_vocab = LoadVocab(args.derive_from_vocab);
    NetworkParams word_model =
        LoadCheckpoint(args.derive_from, VocabHash(word_vocab));
    params = DeriveLetterModel(word_model, vocab, &rng);
  } else {
    int input_dim = data.features.empty() ? 0 : data.features[0].dim();
    params = NetworkParams::Create(input_dim, args.hidden,
                                   vocab.inventory.size(), args.layers, &rng);
    if (args.attention) {
      AttentionConfig cfg;
      cfg.tau = args.attention_tau;
      cfg.gamma = cfg.window();
      params.AttachAttention(cfg, &rng);
    }
  }

  TrainHyper hyper;
  hyper.learning_rate = args.lr;
  hyper.epochs = args.epochs;
  hyper.batch_size = args.batch_size;
  hyper.clip_norm = args.clip_norm;
  hyper.seed = args.seed;
  hyper.checkpoint_every = args.checkpoint_every;
  TrainStats stats = Train(&params, data, hyper, out, VocabHash(vocab));
  if (!stats.epoch_loss.empty()) {
    std::cerr << "final mean loss " << stats.epoch_loss.back() << " after "
              << stats.epoch_loss.size() << " epochs\n";
  }
  return 0;
}

struct DecodeArgs {
  std::string model;
  std::string vocab;
  std::string manifest;
  std::string post_file;  // decode a stored posteriorgram instead
  std::string out;
};

int RunDecode(const DecodeArgs& args) {
  MixedVocab vocab = LoadVocab(args.vocab);
  if (!args.post_file.empty()) {
    Posteriorgram post = LoadPosteriorgram(args.post_file);
    std::vector<UttText> hyp{{"post", DecodeToWords(post, vocab)}};
    if (args.out.empty()) {
      std::cout << JoinWords(hyp[0].words) << "\n";
    } else {
      SaveUttText(hyp, args.out);
    }
    return 0;
  }
  NetworkParams params = LoadCheckpoint(args.model, VocabHash(vocab));
  auto manifest = LoadManifest(args.manifest);
  auto hyps = DecodeManifest(params, vocab, manifest);
  SaveUttText(hyps, args.out);
  std::cerr << "decoded " << hyps.size() << " utterances to " << args.out
            << "\n";
  return 0;
}

struct HybridArgs {
  std::string word_model, word_vocab;
  std::string letter_model, letter_vocab;
  std::string manifest;
  std::string out;
  std::string debug_dump;
};

int RunHybridDecode(const HybridArgs& args) {
  MixedVocab wv = LoadVocab(args.word_vocab);
  MixedVocab lv = LoadVocab(args.letter_vocab);
  NetworkParams wm = LoadCheckpoint(args.word_model, VocabHash(wv));
  NetworkParams lm = LoadCheckpoint(args.letter_model, VocabHash(lv));
  auto manifest = LoadManifest(args.manifest);
  auto hyps = HybridDecodeManifest(wm, wv, lm, lv, manifest, args.debug_dump);
  SaveUttText(hyps, args.out);
  std::cerr << "decoded " << hyps.size() << " utterances to " << args.out
            << "\n";
  return 0;
}

struct ScoreArgs {
  std::string ref, hyp;
  std::string vocab;  // optional, enables OOV attribution
  std::string out;    // optional TSV path
};

int RunScore(const ScoreArgs& args) {
  auto refs = LoadUttText(args.ref);
  auto hyps = LoadUttText(args.hyp);
  MixedVocab vocab;
  const MixedVocab* vocab_ptr = nullptr;
  if (!args.vocab.empty()) {
    vocab = LoadVocab(args.vocab);
    vocab_ptr = &vocab;
  }
  CorpusReport report = ScoreCorpus(refs, hyps, vocab_ptr);
  std::string tsv = ReportToTsv(report);
  if (!args.out.empty()) {
    std::ofstream os(args.out);
    os << tsv;
  } else {
    std::cout << tsv;
  }
  std::cout << "WER " << 100.0 * report.total.wer << "% ("
            << report.total.substitutions << " sub, " << report.total.deletions
            << " del, " << report.total.insertions << " ins, "
            << report.total.reference_words << " ref words";
  if (vocab_ptr != nullptr)
    std::cout << ", " << report.total.oov_attributed_errors << " OOV-attributed";
  std::cout << ")\n";
  return 0;
}

struct ExperimentArgs {
  std::string preset = "toy";
  std::string config_file;
  std::string out;
  uint64_t seed = 0;
  bool has_seed = false;
};

int RunExperimentCmd(const ExperimentArgs& args) {
  ExperimentConfig config = PresetByName(args.preset);
  if (!args.config_file.empty()) LoadConfigFile(&config, args.config_file);
  if (args.has_seed) config.seed = args.seed;
  if (!args.out.empty()) config.output_dir = args.out;
  ExperimentResult result = RunExperiment(config);
  std::cout << result.table;
  std::cerr << "artifacts in " << result.output_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acoustic-to-word CTC toolkit"};
  app.require_subcommand(1);

  VocabArgs vocab_args;
  auto* vocab_cmd = app.add_subcommand("vocab", "build a unit vocabulary");
  vocab_cmd->add_option("corpus", vocab_args.corpus, "transcript corpus")->required();
  vocab_cmd->add_option("--min-count", vocab_args.min_count, "frequency threshold");
  vocab_cmd->add_option("--scheme", vocab_args.scheme, "word_only | letters_only | mixed");
  vocab_cmd->add_option("--letter-order", vocab_args.letter_order, "letter n-gram size");
  vocab_cmd->add_option("--output", vocab_args.output, "vocabulary file");

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic corpus");
  synth_cmd->add_option("--preset", synth_args.preset, "toy | full");
  synth_cmd->add_option("--config", synth_args.config_file, "key=value config file");
  synth_cmd->add_option("--out", synth_args.out, "output directory")->required();
  synth_cmd->add_option("--seed", synth_args.seed, "random seed");

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "train a CTC model");
  train_cmd->add_option("--vocab", train_args.vocab)->required();
  train_cmd->add_option("--manifest", train_args.manifest)->required();
  train_cmd->add_option("--out", train_args.out, "checkpoint directory")->required();
  train_cmd->add_option("--derive-from", train_args.derive_from,
                        "word checkpoint whose bottom layers are shared frozen");
  train_cmd->add_option("--derive-from-vocab", train_args.derive_from_vocab,
                        "vocabulary of the --derive-from checkpoint");
  train_cmd->add_option("--seed", train_args.seed);
  train_cmd->add_option("--hidden", train_args.hidden);
  train_cmd->add_option("--layers", train_args.layers);
  train_cmd->add_option("--lr", train_args.lr);
  train_cmd->add_option("--epochs", train_args.epochs);
  train_cmd->add_option("--batch-size", train_args.batch_size, "0 = full batch");
  train_cmd->add_option("--clip-norm", train_args.clip_norm);
  train_cmd->add_option("--checkpoint-every", train_args.checkpoint_every);
  train_cmd->add_flag("--attention", train_args.attention, "attach an attention head");
  train_cmd->add_option("--attention-tau", train_args.attention_tau);

  DecodeArgs decode_args;
  auto* decode_cmd = app.add_subcommand("decode", "greedy decode");
  decode_cmd->add_option("--model", decode_args.model);
  decode_cmd->add_option("--vocab", decode_args.vocab)->required();
  decode_cmd->add_option("--manifest", decode_args.manifest);
  decode_cmd->add_option("--post-file", decode_args.post_file,
                         "decode a stored posteriorgram");
  decode_cmd->add_option("--out", decode_args.out, "hypothesis file");

  HybridArgs hybrid_args;
  auto* hybrid_cmd = app.add_subcommand("hybrid-decode",
                                        "word decode with OOV replacement");
  hybrid_cmd->add_option("--word-model", hybrid_args.word_model)->required();
  hybrid_cmd->add_option("--word-vocab", hybrid_args.word_vocab)->required();
  hybrid_cmd->add_option("--letter-model", hybrid_args.letter_model)->required();
  hybrid_cmd->add_option("--letter-vocab", hybrid_args.letter_vocab)->required();
  hybrid_cmd->add_option("--manifest", hybrid_args.manifest)->required();
  hybrid_cmd->add_option("--out", hybrid_args.out)->required();
  hybrid_cmd->add_option("--debug-dump", hybrid_args.debug_dump,
                         "JSON-lines replacement log");

  ScoreArgs score_args;
  auto* score_cmd = app.add_subcommand("score", "word error rate report");
  score_cmd->add_option("--ref", score_args.ref)->required();
  score_cmd->add_option("--hyp", score_args.hyp)->required();
  score_cmd->add_option("--vocab", score_args.vocab, "for OOV attribution");
  score_cmd->add_option("--out", score_args.out, "report TSV path");

  ExperimentArgs exp_args;
  auto* exp_cmd = app.add_subcommand("experiment", "full comparison pipeline");
  exp_cmd->add_option("--preset", exp_args.preset, "toy | full");
  exp_cmd->add_option("--config", exp_args.config_file, "key=value config file");
  exp_cmd->add_option("--out", exp_args.out, "output directory");
  auto* seed_opt = exp_cmd->add_option("--seed", exp_args.seed, "random seed");

  CLI11_PARSE(app, argc, argv);
  exp_args.has_seed = seed_opt->count() > 0;

  try {
    if (vocab_cmd->parsed()) return RunVocab(vocab_args);
    if (synth_cmd->parsed()) return RunSynth(synth_args);
    if (train_cmd->parsed()) return RunTrain(train_args);
    if (decode_cmd->parsed()) return RunDecode(decode_args);
    if (hybrid_cmd->parsed()) return RunHybridDecode(hybrid_args);
    if (score_cmd->parsed()) return RunScore(score_args);
    if (exp_cmd->parsed()) return RunExperimentCmd(exp_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
