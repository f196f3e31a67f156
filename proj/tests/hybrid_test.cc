// tests/hybrid_test.cc

#include <doctest.h>

#include <nlohmann/json.hpp>

#include "a2w/hybrid.h"
#include "test_util.h"

using namespace a2w;

namespace {

SpikeSegment Seg(int id, int start, int end) {
  SpikeSegment s;
  s.unit_id = id;
  s.start = start;
  s.end = end;
  s.peak = start;
  return s;
}

MixedVocab LetterVocab() {
  return testutil::MakeVocab({"new york"}, 1, 1, VocabScheme::kLettersOnly);
}

}  // namespace

TEST_CASE("letter segments group into words at separators") {
  MixedVocab v = LetterVocab();
  const auto& inv = v.inventory;
  int sep = inv.separator_id;

  SUBCASE("single word with its covering span") {
    std::vector<SpikeSegment> segs = {Seg(sep, 0, 1), Seg(inv.IdOf("n"), 2, 3),
                                      Seg(inv.IdOf("e"), 4, 4),
                                      Seg(inv.IdOf("w"), 5, 6), Seg(sep, 7, 7)};
    auto words = LetterWordsWithSpans(segs, v);
    REQUIRE(words.size() == 1);
    CHECK(words[0].word == "new");
    CHECK(words[0].start == 2);
    CHECK(words[0].end == 6);
  }
  SUBCASE("no segments, no words") {
    CHECK(LetterWordsWithSpans({}, v).empty());
  }
  SUBCASE("two words in order") {
    std::vector<SpikeSegment> segs = {
        Seg(sep, 0, 0),  Seg(inv.IdOf("n"), 1, 2), Seg(inv.IdOf("o"), 3, 4),
        Seg(sep, 5, 5),  Seg(inv.IdOf("y"), 6, 7), Seg(inv.IdOf("e"), 8, 8),
        Seg(inv.IdOf("s"), 9, 10), Seg(sep, 11, 11)};
    auto words = LetterWordsWithSpans(segs, v);
    REQUIRE(words.size() == 2);
    CHECK(words[0].word == "no");
    CHECK(words[0].start == 1);
    CHECK(words[0].end == 4);
    CHECK(words[1].word == "yes");
    CHECK(words[1].start == 6);
    CHECK(words[1].end == 10);
  }
  SUBCASE("missing leading/trailing separators still group") {
    std::vector<SpikeSegment> segs = {Seg(inv.IdOf("h"), 0, 1),
                                      Seg(inv.IdOf("i"), 2, 2)};
    auto words = LetterWordsWithSpans(segs, v);
    REQUIRE(words.size() == 1);
    CHECK(words[0].word == "hi");
  }
}

TEST_CASE("span overlap is symmetric intersection length") {
  CHECK(SpanOverlap(10, 20, 8, 14) == 5);   // [10,14]
  CHECK(SpanOverlap(10, 20, 16, 30) == 5);  // [16,20]
  CHECK(SpanOverlap(0, 3, 4, 9) == 0);
  CHECK(SpanOverlap(2, 2, 2, 2) == 1);
  // Brute force over small spans.
  for (int a = 0; a < 6; ++a)
    for (int b = a; b < 6; ++b)
      for (int c = 0; c < 6; ++c)
        for (int d = c; d < 6; ++d) {
          int count = 0;
          for (int t = 0; t < 6; ++t)
            if (t >= a && t <= b && t >= c && t <= d) ++count;
          CHECK(SpanOverlap(a, b, c, d) == count);
        }
}

TEST_CASE("OOV tokens are replaced by the largest-overlap letter word") {
  std::vector<std::pair<std::string, SpikeSegment>> tokens = {
      {"have", Seg(0, 0, 4)}, {kOovUnit, Seg(1, 10, 20)}, {"you", Seg(2, 25, 30)}};

  SUBCASE("equal overlap breaks the tie toward the earlier word") {
    std::vector<LetterWordSpan> letters = {{"alpha", 8, 14}, {"beta", 16, 30}};
    std::vector<OovReplacement> decisions;
    auto words = ReplaceOov(tokens, letters, &decisions);
    CHECK(words == std::vector<std::string>{"have", "alpha", "you"});
    REQUIRE(decisions.size() == 1);
    CHECK(decisions[0].tie);
    CHECK(decisions[0].reason == "tie");
    CHECK(decisions[0].overlap == 5);
  }
  SUBCASE("clear winner") {
    std::vector<LetterWordSpan> letters = {{"alpha", 8, 12}, {"beta", 13, 21}};
    auto words = ReplaceOov(tokens, letters);
    CHECK(words[1] == "beta");
  }
  SUBCASE("zero overlap keeps the OOV token") {
    std::vector<LetterWordSpan> letters = {{"alpha", 40, 50}};
    std::vector<OovReplacement> decisions;
    auto words = ReplaceOov(tokens, letters, &decisions);
    CHECK(words[1] == kOovUnit);
    REQUIRE(decisions.size() == 1);
    CHECK(decisions[0].reason == "zero_overlap");
  }
  SUBCASE("no OOV: output equals the word decode") {
    std::vector<std::pair<std::string, SpikeSegment>> clean = {
        {"have", Seg(0, 0, 4)}, {"you", Seg(2, 5, 9)}};
    auto words = ReplaceOov(clean, {{"zzz", 0, 9}});
    CHECK(words == std::vector<std::string>{"have", "you"});
  }
}

TEST_CASE("replacement count and non-OOV tokens are preserved") {
  Rng rng(313);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<std::pair<std::string, SpikeSegment>> tokens;
    int t = 0;
    int n = 1 + rng.NextInt(6);
    for (int i = 0; i < n; ++i) {
      int len = 1 + rng.NextInt(5);
      std::string w = rng.NextInt(4) == 0
                          ? std::string(kOovUnit)
                          : std::string(1, static_cast<char>('a' + rng.NextInt(26)));
      tokens.push_back({w, Seg(0, t, t + len - 1)});
      t += len + rng.NextInt(3);
    }
    std::vector<LetterWordSpan> letters;
    int lt = rng.NextInt(4);
    for (int i = 0; i < 3; ++i) {
      int len = 1 + rng.NextInt(6);
      letters.push_back({"w" + std::to_string(i), lt, lt + len - 1});
      lt += len + 1 + rng.NextInt(3);
    }
    auto words = ReplaceOov(tokens, letters);
    REQUIRE(words.size() == tokens.size());
    for (size_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i].first != kOovUnit) CHECK(words[i] == tokens[i].first);
    }

    // Decisions are invariant under a uniform frame shift.
    auto shifted_tokens = tokens;
    for (auto& [w, seg] : shifted_tokens) {
      seg.start += 17;
      seg.end += 17;
      seg.peak += 17;
    }
    auto shifted_letters = letters;
    for (auto& lw : shifted_letters) {
      lw.start += 17;
      lw.end += 17;
    }
    CHECK(ReplaceOov(shifted_tokens, shifted_letters) == words);
  }
}

TEST_CASE("perfectly aligned spans give exact replacement") {
  // The motivating sentence: word decode emits OOV where the letter decode
  // spells the word with the same span.
  std::vector<std::pair<std::string, SpikeSegment>> tokens = {
      {"have", Seg(0, 0, 3)},
      {"you", Seg(1, 5, 8)},
      {"been", Seg(2, 10, 13)},
      {"to", Seg(3, 15, 17)},
      {kOovUnit, Seg(4, 20, 34)}};
  std::vector<LetterWordSpan> letters = {{"have", 0, 3},
                                         {"you", 5, 8},
                                         {"been", 10, 13},
                                         {"to", 15, 17},
                                         {"newyorkabc", 20, 34}};
  auto words = ReplaceOov(tokens, letters);
  CHECK(words == std::vector<std::string>{"have", "you", "been", "to",
                                          "newyorkabc"});
}

TEST_CASE("debug record is valid JSON with attribution fields") {
  std::vector<std::pair<std::string, SpikeSegment>> tokens = {
      {kOovUnit, Seg(1, 10, 20)}};
  std::vector<LetterWordSpan> letters = {{"alpha", 8, 14}, {"beta", 16, 30}};
  std::vector<OovReplacement> decisions;
  ReplaceOov(tokens, letters, &decisions);
  std::string line = HybridDebugRecord("utt-1", tokens, letters, decisions);
  nlohmann::json rec = nlohmann::json::parse(line);
  CHECK(rec["utt"] == "utt-1");
  REQUIRE(rec["replacements"].size() == 1);
  CHECK(rec["replacements"][0]["reason"] == "tie");
  CHECK(rec["replacements"][0]["overlap"] == 5);
  CHECK(rec["replacements"][0]["candidates"].size() == 2);
  CHECK(rec["word_tokens"].size() == 1);
  CHECK(rec["letter_words"].size() == 2);
}
