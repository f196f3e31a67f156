// a2w/vocab.h

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

#ifndef A2W_VOCAB_H_
#define A2W_VOCAB_H_

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace a2w {

// Output-unit inventories and word <-> unit-sequence conversion.
//
// Three vocabulary schemes are supported:
//   kWordOnly    frequent words + OOV + silence + blank. Infrequent words
//                map onto the single OOV unit.
//   kLettersOnly every word decomposed into letter n-grams; "$" marks word
//                boundaries so unit output can be collapsed back to words.
//   kMixed       frequent words kept whole, infrequent words decomposed into
//                frequent-word and letter-n-gram pieces, "$" between words.
//                There is no OOV unit in this scheme.
//
// All conversion functions are pure; a built vocabulary is immutable and safe
// to share across threads.

enum class VocabScheme { kWordOnly, kLettersOnly, kMixed };

enum class UnitKind {
  kWord,
  kLetter1,
  kLetter2,
  kLetter3,
  kSeparator,
  kBlank,
  kSilence,
  kOov,
};

// Unit strings reserved for the non-lexical units. Corpus text is lowercased
// on ingestion, so the bracketed/uppercase spellings cannot collide with it.
inline constexpr const char* kSeparatorUnit = "$";
inline constexpr const char* kBlankUnit = "<blank>";
inline constexpr const char* kSilenceUnit = "<sil>";
inline constexpr const char* kOovUnit = "OOV";

// The letter alphabet: a-z, apostrophe and asterisk (28 symbols). Words fed
// to the letters-only and mixed schemes must be spelled over this alphabet.
bool IsAlphabetChar(char c);
const std::string& LetterAlphabet();

const char* SchemeName(VocabScheme scheme);
VocabScheme SchemeFromName(const std::string& name);
const char* UnitKindName(UnitKind kind);
UnitKind UnitKindFromName(const std::string& name);

// Ordered unit list with contiguous ids. The blank unit is always present
// and always has the last id.
struct UnitInventory {
  std::vector<std::string> units;
  std::vector<UnitKind> kinds;
  std::unordered_map<std::string, int> index;

  int blank_id = -1;      // always units.size() - 1
  int separator_id = -1;  // -1 when the scheme has no separator
  int oov_id = -1;        // -1 unless scheme == kWordOnly
  int silence_id = -1;    // -1 unless scheme == kWordOnly

  int size() const { return static_cast<int>(units.size()); }
  // Returns the unit id or -1.
  int IdOf(const std::string& unit) const;
  const std::string& StringOf(int id) const;
};

struct MixedVocab {
  UnitInventory inventory;
  std::set<std::string> frequent_words;
  int min_count = 1;
  int letter_order = 1;  // n-gram size used for OOV remainders
  VocabScheme scheme = VocabScheme::kMixed;

  size_t max_frequent_word_len = 0;  // cached for longest-prefix matching

  bool IsFrequent(const std::string& word) const {
    return frequent_words.count(word) > 0;
  }
};

// Encoded training target. Never contains the blank id; in separator schemes
// it starts and ends with the separator id (empty input encodes to empty).
struct LabelSequence {
  std::vector<int> ids;
  std::vector<std::string> source_words;
};

// Builds a vocabulary from transcripts (one utterance per line, words
// separated by spaces, lowercased on ingestion).
//
// Frequent words are those occurring at least min_count times. Letter units
// are all n-gram chunks that appear when decomposing the corpus vocabulary
// (whole words for kLettersOnly, infrequent words for kMixed), plus every
// single letter of the alphabet as an unconditional fallback, so any word
// over the alphabet stays encodable.
//
// Errors: empty corpus; letter_order outside {1,2,3}; for the letter and
// mixed schemes, a corpus word spelled outside the letter alphabet.
MixedVocab BuildVocab(std::istream& corpus, int min_count, int letter_order,
                      VocabScheme scheme);
MixedVocab BuildVocabFromLines(const std::vector<std::string>& lines,
                               int min_count, int letter_order,
                               VocabScheme scheme);

// Greedy left-to-right chunking of a word into n-letter pieces; a shorter
// remainder lands at the end. Concatenating the output restores the word.
std::vector<std::string> DecomposeWordLetters(const std::string& word, int n);

// Decomposition of an infrequent word into frequent-word and letter-n-gram
// pieces: at each position the longest frequent word that is a prefix of the
// rest is consumed; otherwise one n-letter chunk is taken and matching
// resumes after it. Always succeeds (letters are the fallback).
std::vector<std::string> DecomposeOov(const std::string& word,
                                      const MixedVocab& vocab);

// Encodes a word sequence into unit ids under the vocabulary's scheme.
//   kWordOnly:    one id per word; infrequent words map to the OOV id.
//   kLettersOnly: "$ w1-chunks $ w2-chunks $ ... $".
//   kMixed:       "$ w1-units $ w2-units $ ... $" with frequent words kept
//                 whole and infrequent words passed through DecomposeOov.
// A chunk missing from the inventory falls back to its single letters, which
// are always present. Errors on a word spelled outside the letter alphabet
// (separator schemes only), naming the word.
LabelSequence EncodeSentence(const std::vector<std::string>& words,
                             const MixedVocab& vocab);

// Inverse of EncodeSentence for the separator schemes: splits on "$" and
// concatenates each group into one word. Input with no separators at all is
// treated as a single group. Must not contain the blank unit.
std::vector<std::string> CollapseUnits(const std::vector<std::string>& units,
                                       const MixedVocab& vocab);

// Versioned text format, bit-exact round trip:
//   a2w-vocab-v1 <TAB> scheme <TAB> min_count <TAB> letter_order
//   <id> <TAB> <kind> <TAB> <unit string>     (one line per unit)
std::string SerializeVocab(const MixedVocab& vocab);
void SaveVocab(const MixedVocab& vocab, const std::string& path);
MixedVocab ParseVocab(const std::string& text);
MixedVocab LoadVocab(const std::string& path);

// FNV-1a fingerprint of the serialized vocabulary; embedded in checkpoints.
uint64_t VocabHash(const MixedVocab& vocab);

}  // namespace a2w

#endif  // A2W_VOCAB_H_
