// Copyright 2026 The SCPOS Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCPOS_LEXICON_H_
#define SCPOS_LEXICON_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scpos/labels.h"

namespace scpos {

struct LexiconEntry {
  std::string surface;  // NFC, non-empty
  PosCategory pos_category = PosCategory::kNoun;
  WordPolarity polarity = WordPolarity::kNeutral;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

// Returns an error message if the entry violates the category/polarity
// domain: nouns are positive|neutral|negative, verbs and adjectives are
// positive|negative only.
std::optional<std::string> ValidateEntry(const LexiconEntry& entry);

enum class ConflictPolicy { kPreferVa, kPreferN, kError };

std::string_view ToString(ConflictPolicy p);
std::optional<ConflictPolicy> ParseConflictPolicy(std::string_view s);

// On-disk layouts. kCanonical is the UTF-8 TSV surface/pos/polarity. The
// other two adapt the published Japanese polarity dictionaries:
//   kTohokuNoun: surface<TAB>p|e|n[<TAB>...]      (nouns, 3 classes)
//   kTohokuVerbAdj: ポジ（...）|ネガ（...）<TAB>surface with spaces between
//                   morphemes                    (verbs/adjectives, 2 classes)
enum class LexiconFormat { kCanonical, kTohokuNoun, kTohokuVerbAdj };

std::string_view ToString(LexiconFormat f);
std::optional<LexiconFormat> ParseLexiconFormat(std::string_view s);

struct Rejection {
  size_t line_no = 0;  // 1-based
  std::string raw;
  std::string reason;
};

// Serializes as {"line_no","raw","reason"}.
std::string RejectionToJson(const Rejection& r);

// Immutable surface -> entry map.
class PolarityLexicon {
 public:
  PolarityLexicon() = default;

  // Throws ValidationError on an invalid entry or duplicate surface.
  static PolarityLexicon FromEntries(std::vector<LexiconEntry> entries,
                                     std::vector<std::string> source_ids = {});

  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const LexiconEntry* Find(std::string_view surface) const;

  // Entries ordered by surface bytes.
  const std::map<std::string, LexiconEntry, std::less<>>& entries() const {
    return entries_;
  }
  const std::vector<std::string>& source_ids() const { return source_ids_; }

  // The subset whose categories a schema draws on.
  PolarityLexicon RestrictTo(SchemaId schema) const;

  // Canonical TSV, one entry per line in surface order.
  std::string ToTsv() const;

 private:
  std::map<std::string, LexiconEntry, std::less<>> entries_;
  std::vector<std::string> source_ids_;
};

struct LoadResult {
  PolarityLexicon lexicon;
  std::vector<Rejection> rejections;
};

// Every line is either an entry or a rejection (blank lines, wrong column
// count, unknown tags, domain violations and repeated surfaces are all
// rejected). Throws IoError if unreadable, ValidationError if no line is
// valid.
LoadResult LoadLexicon(const std::filesystem::path& path,
                       LexiconFormat format = LexiconFormat::kCanonical);

// Same, over in-memory contents; source_id names where they came from.
LoadResult ParseLexicon(std::string_view contents, LexiconFormat format,
                        std::string source_id);

void WriteLexicon(const PolarityLexicon& lexicon,
                  const std::filesystem::path& path);

struct Collision {
  std::string surface;
  LexiconEntry from_a;
  LexiconEntry from_b;
  LexiconEntry kept;
};

struct MergeResult {
  PolarityLexicon lexicon;
  std::vector<Collision> collisions;
};

// Union of surfaces. A surface present in both is a collision: kPreferVa
// keeps the verb/adjective entry, kPreferN keeps the noun entry, and when
// both sides share a category class the entry from `a` is kept. kError
// throws ValidationError naming the colliding surfaces.
MergeResult Merge(const PolarityLexicon& a, const PolarityLexicon& b,
                  ConflictPolicy policy = ConflictPolicy::kPreferVa);

}  // namespace scpos

#endif  // SCPOS_LEXICON_H_
