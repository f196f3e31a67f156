// a2w/wer.cc

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

#include "a2w/wer.h"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "a2w/common.h"

namespace a2w {

std::vector<AlignmentStep> AlignWords(const std::vector<std::string>& ref,
                                      const std::vector<std::string>& hyp) {
  const int n = static_cast<int>(ref.size());
  const int m = static_cast<int>(hyp.size());
  Eigen::MatrixXi dp(n + 1, m + 1);
  for (int i = 0; i <= n; ++i) dp(i, 0) = i;
  for (int j = 0; j <= m; ++j) dp(0, j) = j;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= m; ++j) {
      int diag = dp(i - 1, j - 1) + (ref[static_cast<size_t>(i - 1)] !=
                                             hyp[static_cast<size_t>(j - 1)]
                                         ? 1
                                         : 0);
      int ins = dp(i, j - 1) + 1;
      int del = dp(i - 1, j) + 1;
      dp(i, j) = std::min({diag, ins, del});
    }
  }

  // Traceback preferring substitution/match, then insertion, then deletion.
  std::vector<AlignmentStep> steps;
  int i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      bool same = ref[static_cast<size_t>(i - 1)] == hyp[static_cast<size_t>(j - 1)];
      if (dp(i, j) == dp(i - 1, j - 1) + (same ? 0 : 1)) {
        steps.push_back({same ? EditOp::kMatch : EditOp::kSub, i - 1, j - 1});
        --i;
        --j;
        continue;
      }
    }
    if (j > 0 && dp(i, j) == dp(i, j - 1) + 1) {
      steps.push_back({EditOp::kIns, -1, j - 1});
      --j;
      continue;
    }
    steps.push_back({EditOp::kDel, i - 1, -1});
    --i;
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

namespace {

WerBreakdown BreakdownFromSteps(const std::vector<AlignmentStep>& steps,
                                const std::vector<std::string>& ref,
                                const MixedVocab* vocab) {
  WerBreakdown b;
  b.reference_words = static_cast<int>(ref.size());
  for (const AlignmentStep& s : steps) {
    bool oov_ref = false;
    if (vocab != nullptr && s.ref_index >= 0)
      oov_ref = !vocab->IsFrequent(ref[static_cast<size_t>(s.ref_index)]);
    switch (s.op) {
      case EditOp::kMatch: break;
      case EditOp::kSub:
        ++b.substitutions;
        if (oov_ref) ++b.oov_attributed_errors;
        break;
      case EditOp::kDel:
        ++b.deletions;
        if (oov_ref) ++b.oov_attributed_errors;
        break;
      case EditOp::kIns: ++b.insertions; break;
    }
  }
  b.wer = static_cast<double>(b.substitutions + b.deletions + b.insertions) /
          b.reference_words;
  return b;
}

}  // namespace

WerBreakdown ComputeWer(const std::vector<std::string>& ref,
                        const std::vector<std::string>& hyp) {
  A2W_CHECK(!ref.empty(), "empty reference");
  return BreakdownFromSteps(AlignWords(ref, hyp), ref, nullptr);
}

CorpusReport ScoreCorpus(const std::vector<UttText>& refs,
                         const std::vector<UttText>& hyps,
                         const MixedVocab* vocab) {
  A2W_CHECK(refs.size() == hyps.size(),
            "reference and hypothesis lists differ in length: "
                << refs.size() << " vs " << hyps.size());
  CorpusReport report;
  int total_err = 0, total_words = 0, total_oov = 0;
  for (size_t k = 0; k < refs.size(); ++k) {
    A2W_CHECK(refs[k].utterance_id == hyps[k].utterance_id,
              "utterance id mismatch at row " << k << ": '"
                  << refs[k].utterance_id << "' vs '" << hyps[k].utterance_id
                  << "'");
    A2W_CHECK(!refs[k].words.empty(),
              "empty reference for utterance '" << refs[k].utterance_id << "'");
    UtteranceScore us;
    us.utterance_id = refs[k].utterance_id;
    us.ref = refs[k].words;
    us.hyp = hyps[k].words;
    us.breakdown = BreakdownFromSteps(AlignWords(us.ref, us.hyp), us.ref, vocab);
    total_err += us.breakdown.substitutions + us.breakdown.deletions +
                 us.breakdown.insertions;
    total_words += us.breakdown.reference_words;
    total_oov += us.breakdown.oov_attributed_errors;
    report.total.substitutions += us.breakdown.substitutions;
    report.total.deletions += us.breakdown.deletions;
    report.total.insertions += us.breakdown.insertions;
    report.utterances.push_back(std::move(us));
  }
  report.total.reference_words = total_words;
  report.total.oov_attributed_errors = total_oov;
  report.total.wer = static_cast<double>(total_err) / total_words;
  return report;
}

std::string ReportToTsv(const CorpusReport& report) {
  std::ostringstream os;
  os << "#utt\tref\thyp\tS\tD\tI\tWER\n";
  os << std::fixed << std::setprecision(4);
  for (const auto& us : report.utterances) {
    os << us.utterance_id << '\t' << JoinWords(us.ref) << '\t'
       << JoinWords(us.hyp) << '\t' << us.breakdown.substitutions << '\t'
       << us.breakdown.deletions << '\t' << us.breakdown.insertions << '\t'
       << us.breakdown.wer << '\n';
  }
  os << "TOTAL\t-\t-\t" << report.total.substitutions << '\t'
     << report.total.deletions << '\t' << report.total.insertions << '\t'
     << report.total.wer << '\n';
  return os.str();
}

}  // namespace a2w
