// a2w/hybrid.h

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

#ifndef A2W_HYBRID_H_
#define A2W_HYBRID_H_

#include <string>
#include <utility>
#include <vector>

#include "a2w/ctc.h"
#include "a2w/vocab.h"

namespace a2w {

// Test-time OOV repair: the word decode is the primary output; wherever it
// emits the OOV token, the letter decode's word with the largest frame
// overlap is substituted.

// A word recovered from letter-unit segments, spanning its first through
// last constituent segment.
struct LetterWordSpan {
  std::string word;
  int start = 0;
  int end = 0;  // inclusive
};

// Groups separator-delimited letter segments into words with covering spans.
// Consecutive separators (empty groups) are skipped.
std::vector<LetterWordSpan> LetterWordsWithSpans(
    const std::vector<SpikeSegment>& letter_segments, const MixedVocab& vocab);

// Frame overlap of two inclusive spans.
int SpanOverlap(int start_a, int end_a, int start_b, int end_b);

// Decision record for one OOV token, kept for the debug dump.
struct OovReplacement {
  int position = 0;  // index in the word-token list
  SpikeSegment oov_segment;
  std::string replacement;  // empty when the OOV token was kept
  int overlap = 0;
  bool tie = false;
  std::string reason;  // "replaced", "tie" or "zero_overlap"
  std::vector<std::pair<LetterWordSpan, int>> candidates;  // word, overlap
};

// Passes non-OOV tokens through unchanged; each OOV token is replaced by the
// letter word with the largest span intersection (ties: earlier word). With
// no overlapping letter word at all the OOV token is kept rather than
// grabbing a neighbour.
std::vector<std::string> ReplaceOov(
    const std::vector<std::pair<std::string, SpikeSegment>>& word_tokens,
    const std::vector<LetterWordSpan>& letter_words,
    std::vector<OovReplacement>* decisions = nullptr);

// One JSON-lines record (no trailing newline) with the word tokens, letter
// word spans and every replacement decision, for alignment-failure analysis.
std::string HybridDebugRecord(
    const std::string& utterance_id,
    const std::vector<std::pair<std::string, SpikeSegment>>& word_tokens,
    const std::vector<LetterWordSpan>& letter_words,
    const std::vector<OovReplacement>& decisions);

}  // namespace a2w

#endif  // A2W_HYBRID_H_
