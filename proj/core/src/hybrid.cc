// a2w/hybrid.cc

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

#include "a2w/hybrid.h"

#include <nlohmann/json.hpp>

#include "a2w/common.h"

namespace a2w {

std::vector<LetterWordSpan> LetterWordsWithSpans(
    const std::vector<SpikeSegment>& letter_segments, const MixedVocab& vocab) {
  const UnitInventory& inv = vocab.inventory;
  std::vector<LetterWordSpan> words;
  LetterWordSpan current;
  bool open = false;
  auto flush = [&]() {
    if (open && !current.word.empty()) words.push_back(current);
    current = LetterWordSpan();
    open = false;
  };
  for (const SpikeSegment& seg : letter_segments) {
    A2W_CHECK(seg.unit_id != inv.blank_id, "blank segment in letter decode");
    if (seg.unit_id == inv.separator_id) {
      flush();
      continue;
    }
    if (!open) {
      current.start = seg.start;
      open = true;
    }
    current.word += inv.StringOf(seg.unit_id);
    current.end = seg.end;
  }
  flush();
  return words;
}

int SpanOverlap(int start_a, int end_a, int start_b, int end_b) {
  int lo = std::max(start_a, start_b);
  int hi = std::min(end_a, end_b);
  return hi >= lo ? hi - lo + 1 : 0;
}

std::vector<std::string> ReplaceOov(
    const std::vector<std::pair<std::string, SpikeSegment>>& word_tokens,
    const std::vector<LetterWordSpan>& letter_words,
    std::vector<OovReplacement>* decisions) {
  std::vector<std::string> out;
  out.reserve(word_tokens.size());
  for (size_t i = 0; i < word_tokens.size(); ++i) {
    const auto& [word, seg] = word_tokens[i];
    if (word != kOovUnit) {
      out.push_back(word);
      continue;
    }
    OovReplacement dec;
    dec.position = static_cast<int>(i);
    dec.oov_segment = seg;
    int best = -1;
    int best_overlap = 0;
    for (size_t j = 0; j < letter_words.size(); ++j) {
      int ov = SpanOverlap(seg.start, seg.end, letter_words[j].start,
                           letter_words[j].end);
      dec.candidates.emplace_back(letter_words[j], ov);
      if (ov > best_overlap) {
        best = static_cast<int>(j);
        best_overlap = ov;
        dec.tie = false;
      } else if (ov > 0 && ov == best_overlap) {
        dec.tie = true;  // earlier word kept
      }
    }
    if (best >= 0) {
      dec.replacement = letter_words[static_cast<size_t>(best)].word;
      dec.overlap = best_overlap;
      dec.reason = dec.tie ? "tie" : "replaced";
      out.push_back(dec.replacement);
    } else {
      dec.reason = "zero_overlap";
      out.push_back(word);  // keep the OOV token verbatim
    }
    if (decisions != nullptr) decisions->push_back(std::move(dec));
  }
  return out;
}

std::string HybridDebugRecord(
    const std::string& utterance_id,
    const std::vector<std::pair<std::string, SpikeSegment>>& word_tokens,
    const std::vector<LetterWordSpan>& letter_words,
    const std::vector<OovReplacement>& decisions) {
  nlohmann::json rec;
  rec["utt"] = utterance_id;
  rec["word_tokens"] = nlohmann::json::array();
  for (const auto& [word, seg] : word_tokens) {
    rec["word_tokens"].push_back({{"word", word},
                                  {"start", seg.start},
                                  {"end", seg.end},
                                  {"peak", seg.peak}});
  }
  rec["letter_words"] = nlohmann::json::array();
  for (const auto& lw : letter_words) {
    rec["letter_words"].push_back(
        {{"word", lw.word}, {"start", lw.start}, {"end", lw.end}});
  }
  rec["replacements"] = nlohmann::json::array();
  for (const auto& dec : decisions) {
    nlohmann::json cands = nlohmann::json::array();
    for (const auto& [lw, ov] : dec.candidates) {
      cands.push_back({{"word", lw.word},
                       {"start", lw.start},
                       {"end", lw.end},
                       {"overlap", ov}});
    }
    rec["replacements"].push_back({{"position", dec.position},
                                   {"oov_start", dec.oov_segment.start},
                                   {"oov_end", dec.oov_segment.end},
                                   {"replacement", dec.replacement},
                                   {"overlap", dec.overlap},
                                   {"tie", dec.tie},
                                   {"reason", dec.reason},
                                   {"candidates", cands}});
  }
  return rec.dump();
}

}  // namespace a2w
