// a2w/wer.h

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

#ifndef A2W_WER_H_
#define A2W_WER_H_

#include <string>
#include <vector>

#include "a2w/io.h"
#include "a2w/vocab.h"

namespace a2w {

// Word error rate via Levenshtein alignment with unit costs. Traceback
// tie-breaking is deterministic: substitution over insertion over deletion.

enum class EditOp { kMatch, kSub, kDel, kIns };

struct AlignmentStep {
  EditOp op;
  int ref_index;  // -1 for insertions
  int hyp_index;  // -1 for deletions
};

struct WerBreakdown {
  int substitutions = 0;
  int deletions = 0;
  int insertions = 0;
  int reference_words = 0;
  double wer = 0.0;  // (S+D+I)/N
  int oov_attributed_errors = 0;
};

std::vector<AlignmentStep> AlignWords(const std::vector<std::string>& ref,
                                      const std::vector<std::string>& hyp);

// Errors on an empty reference.
WerBreakdown ComputeWer(const std::vector<std::string>& ref,
                        const std::vector<std::string>& hyp);

struct UtteranceScore {
  std::string utterance_id;
  std::vector<std::string> ref, hyp;
  WerBreakdown breakdown;
};

struct CorpusReport {
  WerBreakdown total;  // micro-averaged: error totals over word totals
  std::vector<UtteranceScore> utterances;
};

// Scores paired utterances. vocab, when given, attributes substitution and
// deletion errors whose reference word is outside frequent_words as OOV
// errors. Errors on list length mismatch or empty references.
CorpusReport ScoreCorpus(const std::vector<UttText>& refs,
                         const std::vector<UttText>& hyps,
                         const MixedVocab* vocab = nullptr);

// TSV: utterance id, ref, hyp, S, D, I, WER; final TOTAL row.
std::string ReportToTsv(const CorpusReport& report);

}  // namespace a2w

#endif  // A2W_WER_H_
