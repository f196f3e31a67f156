// a2w/vocab.cc

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

#include "a2w/vocab.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "a2w/common.h"

namespace a2w {

bool IsAlphabetChar(char c) {
  return (c >= 'a' && c <= 'z') || c == '\'' || c == '*';
}

const std::string& LetterAlphabet() {
  static const std::string alphabet = "abcdefghijklmnopqrstuvwxyz'*";
  return alphabet;
}

const char* SchemeName(VocabScheme scheme) {
  switch (scheme) {
    case VocabScheme::kWordOnly: return "word_only";
    case VocabScheme::kLettersOnly: return "letters_only";
    case VocabScheme::kMixed: return "mixed";
  }
  return "?";
}

VocabScheme SchemeFromName(const std::string& name) {
  if (name == "word_only") return VocabScheme::kWordOnly;
  if (name == "letters_only" || name == "letters") return VocabScheme::kLettersOnly;
  if (name == "mixed") return VocabScheme::kMixed;
  A2W_ERR("unknown vocabulary scheme '" << name << "'");
}

const char* UnitKindName(UnitKind kind) {
  switch (kind) {
    case UnitKind::kWord: return "word";
    case UnitKind::kLetter1: return "letter1";
    case UnitKind::kLetter2: return "letter2";
    case UnitKind::kLetter3: return "letter3";
    case UnitKind::kSeparator: return "separator";
    case UnitKind::kBlank: return "blank";
    case UnitKind::kSilence: return "silence";
    case UnitKind::kOov: return "oov";
  }
  return "?";
}

UnitKind UnitKindFromName(const std::string& name) {
  if (name == "word") return UnitKind::kWord;
  if (name == "letter1") return UnitKind::kLetter1;
  if (name == "letter2") return UnitKind::kLetter2;
  if (name == "letter3") return UnitKind::kLetter3;
  if (name == "separator") return UnitKind::kSeparator;
  if (name == "blank") return UnitKind::kBlank;
  if (name == "silence") return UnitKind::kSilence;
  if (name == "oov") return UnitKind::kOov;
  A2W_ERR("unknown unit kind '" << name << "'");
}

int UnitInventory::IdOf(const std::string& unit) const {
  auto it = index.find(unit);
  return it == index.end() ? -1 : it->second;
}

const std::string& UnitInventory::StringOf(int id) const {
  A2W_CHECK(id >= 0 && id < size(), "unit id " << id << " out of range");
  return units[static_cast<size_t>(id)];
}

namespace {

UnitKind LetterKindForLength(size_t len) {
  switch (len) {
    case 1: return UnitKind::kLetter1;
    case 2: return UnitKind::kLetter2;
    case 3: return UnitKind::kLetter3;
    default: A2W_ERR("letter unit of unsupported length " << len);
  }
}

bool IsAlphabetWord(const std::string& word) {
  return std::all_of(word.begin(), word.end(), IsAlphabetChar);
}

void AppendUnit(UnitInventory* inv, const std::string& unit, UnitKind kind) {
  A2W_CHECK(inv->index.find(unit) == inv->index.end(),
            "duplicate unit '" << unit << "'");
  inv->index[unit] = inv->size();
  inv->units.push_back(unit);
  inv->kinds.push_back(kind);
}

// Longest frequent word that is a prefix of word[pos:]; empty if none. Two
// distinct frequent words cannot match with equal length at the same
// position (they would be the same string), so the longest match is unique.
std::string LongestFrequentPrefix(const std::string& word, size_t pos,
                                  const std::set<std::string>& frequent,
                                  size_t max_len) {
  size_t limit = std::min(max_len, word.size() - pos);
  for (size_t len = limit; len >= 1; --len) {
    std::string cand = word.substr(pos, len);
    if (frequent.count(cand)) return cand;
  }
  return std::string();
}

std::vector<std::string> DecomposeOovImpl(const std::string& word,
                                          const std::set<std::string>& frequent,
                                          size_t max_frequent_len,
                                          int letter_order) {
  std::vector<std::string> out;
  size_t pos = 0;
  size_t n = static_cast<size_t>(letter_order);
  while (pos < word.size()) {
    std::string match = LongestFrequentPrefix(word, pos, frequent, max_frequent_len);
    if (!match.empty()) {
      out.push_back(match);
      pos += match.size();
    } else {
      std::string chunk = word.substr(pos, n);
      out.push_back(chunk);
      pos += chunk.size();
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> DecomposeWordLetters(const std::string& word, int n) {
  A2W_CHECK(!word.empty(), "cannot decompose an empty word");
  A2W_CHECK(n >= 1 && n <= 3, "letter order must be 1, 2 or 3, got " << n);
  std::vector<std::string> out;
  for (size_t pos = 0; pos < word.size(); pos += static_cast<size_t>(n)) {
    out.push_back(word.substr(pos, static_cast<size_t>(n)));
  }
  return out;
}

std::vector<std::string> DecomposeOov(const std::string& word,
                                      const MixedVocab& vocab) {
  A2W_CHECK(!word.empty(), "cannot decompose an empty word");
  return DecomposeOovImpl(word, vocab.frequent_words,
                          vocab.max_frequent_word_len, vocab.letter_order);
}

MixedVocab BuildVocabFromLines(const std::vector<std::string>& lines,
                               int min_count, int letter_order,
                               VocabScheme scheme) {
  A2W_CHECK(min_count >= 1, "min_count must be >= 1, got " << min_count);
  A2W_CHECK(letter_order >= 1 && letter_order <= 3,
            "letter order must be 1, 2 or 3, got " << letter_order);

  // std::map keeps word iteration deterministic.
  std::map<std::string, int> counts;
  for (const std::string& line : lines) {
    for (const std::string& raw : SplitWords(line)) {
      counts[Lowercase(raw)]++;
    }
  }
  A2W_CHECK(!counts.empty(), "corpus contains no words");

  MixedVocab vocab;
  vocab.min_count = min_count;
  vocab.letter_order = letter_order;
  vocab.scheme = scheme;
  // The letters-only scheme decomposes every word, so it carries no
  // frequent-word set (keeps the vocabulary file the single source of truth).
  if (scheme != VocabScheme::kLettersOnly) {
    for (const auto& [word, count] : counts) {
      if (count >= min_count) {
        vocab.frequent_words.insert(word);
        vocab.max_frequent_word_len =
            std::max(vocab.max_frequent_word_len, word.size());
      }
    }
  }

  bool needs_letters = scheme != VocabScheme::kWordOnly;
  std::set<std::string> letter_units;
  if (needs_letters) {
    for (const auto& [word, count] : counts) {
      A2W_CHECK(IsAlphabetWord(word),
                "word '" << word << "' is not spelled over the letter alphabet");
      if (scheme == VocabScheme::kLettersOnly) {
        for (const std::string& chunk : DecomposeWordLetters(word, letter_order))
          letter_units.insert(chunk);
      } else if (count < min_count) {
        for (const std::string& chunk :
             DecomposeOovImpl(word, vocab.frequent_words,
                              vocab.max_frequent_word_len, letter_order)) {
          if (!vocab.frequent_words.count(chunk)) letter_units.insert(chunk);
        }
      }
    }
    // Single letters are always available so unseen words stay encodable.
    for (char c : LetterAlphabet()) letter_units.insert(std::string(1, c));
  }

  UnitInventory& inv = vocab.inventory;
  if (scheme != VocabScheme::kLettersOnly) {
    for (const std::string& word : vocab.frequent_words)
      AppendUnit(&inv, word, UnitKind::kWord);
  }
  if (needs_letters) {
    // Shorter units first, then lexicographic. A chunk that coincides with a
    // frequent single-letter word already has an id; the string names the
    // unit, so it is not added twice.
    std::vector<std::string> ordered(letter_units.begin(), letter_units.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const std::string& a, const std::string& b) {
                       return a.size() < b.size();
                     });
    for (const std::string& unit : ordered) {
      if (inv.index.find(unit) != inv.index.end()) continue;
      AppendUnit(&inv, unit, LetterKindForLength(unit.size()));
    }
    inv.separator_id = inv.size();
    AppendUnit(&inv, kSeparatorUnit, UnitKind::kSeparator);
  }
  if (scheme == VocabScheme::kWordOnly) {
    inv.oov_id = inv.size();
    AppendUnit(&inv, kOovUnit, UnitKind::kOov);
    inv.silence_id = inv.size();
    AppendUnit(&inv, kSilenceUnit, UnitKind::kSilence);
  }
  inv.blank_id = inv.size();
  AppendUnit(&inv, kBlankUnit, UnitKind::kBlank);
  return vocab;
}

MixedVocab BuildVocab(std::istream& corpus, int min_count, int letter_order,
                      VocabScheme scheme) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(corpus, line)) lines.push_back(line);
  return BuildVocabFromLines(lines, min_count, letter_order, scheme);
}

namespace {

// Appends the ids for one unit string, falling back to single letters when
// the chunk itself is not in the inventory.
void AppendUnitIds(const std::string& unit, const UnitInventory& inv,
                   std::vector<int>* ids) {
  int id = inv.IdOf(unit);
  if (id >= 0) {
    ids->push_back(id);
    return;
  }
  for (char c : unit) {
    int letter_id = inv.IdOf(std::string(1, c));
    A2W_CHECK(letter_id >= 0, "letter '" << c << "' missing from inventory");
    ids->push_back(letter_id);
  }
}

}  // namespace

LabelSequence EncodeSentence(const std::vector<std::string>& words,
                             const MixedVocab& vocab) {
  LabelSequence seq;
  for (const std::string& raw : words) seq.source_words.push_back(Lowercase(raw));

  const UnitInventory& inv = vocab.inventory;
  if (vocab.scheme == VocabScheme::kWordOnly) {
    for (const std::string& word : seq.source_words) {
      seq.ids.push_back(vocab.IsFrequent(word) ? inv.IdOf(word) : inv.oov_id);
    }
    return seq;
  }

  if (seq.source_words.empty()) return seq;  // no lone separator
  seq.ids.push_back(inv.separator_id);
  for (const std::string& word : seq.source_words) {
    A2W_CHECK(!word.empty(), "empty word in sentence");
    A2W_CHECK(IsAlphabetWord(word),
              "word '" << word << "' is not spelled over the letter alphabet");
    std::vector<std::string> units;
    if (vocab.scheme == VocabScheme::kLettersOnly) {
      units = DecomposeWordLetters(word, vocab.letter_order);
    } else if (vocab.IsFrequent(word)) {
      units.push_back(word);
    } else {
      units = DecomposeOov(word, vocab);
    }
    for (const std::string& unit : units) AppendUnitIds(unit, inv, &seq.ids);
    seq.ids.push_back(inv.separator_id);
  }
  return seq;
}

std::vector<std::string> CollapseUnits(const std::vector<std::string>& units,
                                       const MixedVocab& vocab) {
  (void)vocab;
  std::vector<std::string> words;
  std::string current;
  bool in_group = false;
  for (const std::string& unit : units) {
    A2W_CHECK(unit != kBlankUnit, "blank unit in collapse input");
    if (unit == kSeparatorUnit) {
      if (in_group && !current.empty()) words.push_back(current);
      current.clear();
      in_group = true;
      continue;
    }
    current += unit;
    in_group = true;
  }
  if (!current.empty()) words.push_back(current);
  return words;
}

std::string SerializeVocab(const MixedVocab& vocab) {
  std::ostringstream os;
  os << "a2w-vocab-v1\t" << SchemeName(vocab.scheme) << '\t' << vocab.min_count
     << '\t' << vocab.letter_order << '\n';
  const UnitInventory& inv = vocab.inventory;
  for (int id = 0; id < inv.size(); ++id) {
    os << id << '\t' << UnitKindName(inv.kinds[static_cast<size_t>(id)]) << '\t'
       << inv.units[static_cast<size_t>(id)] << '\n';
  }
  return os.str();
}

void SaveVocab(const MixedVocab& vocab, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  A2W_CHECK(os.good(), "cannot open '" << path << "' for writing");
  os << SerializeVocab(vocab);
  A2W_CHECK(os.good(), "failed writing vocabulary to '" << path << "'");
}

MixedVocab ParseVocab(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  A2W_CHECK(static_cast<bool>(std::getline(is, header)), "empty vocabulary file");
  std::istringstream hs(header);
  std::string magic, scheme_name;
  int min_count = 0, letter_order = 0;
  std::getline(hs, magic, '\t');
  A2W_CHECK(magic == "a2w-vocab-v1", "bad vocabulary header '" << header << "'");
  std::getline(hs, scheme_name, '\t');
  hs >> min_count;
  hs.ignore(1);
  hs >> letter_order;
  A2W_CHECK(!hs.fail(), "bad vocabulary header '" << header << "'");

  MixedVocab vocab;
  vocab.scheme = SchemeFromName(scheme_name);
  vocab.min_count = min_count;
  vocab.letter_order = letter_order;

  UnitInventory& inv = vocab.inventory;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string id_str, kind_str, unit;
    A2W_CHECK(std::getline(ls, id_str, '\t') && std::getline(ls, kind_str, '\t') &&
                  std::getline(ls, unit),
              "bad vocabulary line '" << line << "'");
    int id = std::stoi(id_str);
    A2W_CHECK(id == inv.size(), "non-contiguous unit id " << id);
    UnitKind kind = UnitKindFromName(kind_str);
    AppendUnit(&inv, unit, kind);
    switch (kind) {
      case UnitKind::kWord:
        vocab.frequent_words.insert(unit);
        vocab.max_frequent_word_len =
            std::max(vocab.max_frequent_word_len, unit.size());
        break;
      case UnitKind::kSeparator: inv.separator_id = id; break;
      case UnitKind::kBlank:
        A2W_CHECK(inv.blank_id < 0, "multiple blank units");
        inv.blank_id = id;
        break;
      case UnitKind::kSilence: inv.silence_id = id; break;
      case UnitKind::kOov: inv.oov_id = id; break;
      default: break;
    }
  }
  A2W_CHECK(inv.blank_id == inv.size() - 1, "blank unit must have the last id");
  A2W_CHECK((inv.separator_id >= 0) == (vocab.scheme != VocabScheme::kWordOnly),
            "separator presence inconsistent with scheme");
  A2W_CHECK((inv.oov_id >= 0) == (vocab.scheme == VocabScheme::kWordOnly),
            "OOV unit presence inconsistent with scheme");
  return vocab;
}

MixedVocab LoadVocab(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  A2W_CHECK(is.good(), "cannot open vocabulary file '" << path << "'");
  std::ostringstream buf;
  buf << is.rdbuf();
  return ParseVocab(buf.str());
}

uint64_t VocabHash(const MixedVocab& vocab) {
  return Fnv1a64(SerializeVocab(vocab));
}

}  // namespace a2w
