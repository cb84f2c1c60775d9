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

#ifndef SCPOS_MATCHER_H_
#define SCPOS_MATCHER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scpos/lexicon.h"
#include "scpos/record.h"

namespace scpos {

// A dictionary hit. Offsets count code points; end is exclusive.
struct MatchSpan {
  size_t start = 0;
  size_t end = 0;
  std::string surface;
  LexiconEntry entry;

  friend bool operator==(const MatchSpan&, const MatchSpan&) = default;
};

// Aho-Corasick automaton over code points, answering leftmost-longest
// non-overlapping queries. Immutable once built.
class MatchAutomaton {
 public:
  // Throws ValidationError on an empty lexicon. Patterns are inserted in
  // surface order, so the node layout depends only on the surface set.
  static MatchAutomaton Build(const PolarityLexicon& lexicon);

  size_t pattern_count() const { return patterns_.size(); }

  // Recognized surfaces in byte order.
  std::vector<std::string> Patterns() const;

  bool HasCategory(PosCategory c) const {
    return (category_mask_ >> static_cast<int>(c)) & 1u;
  }

  // Scans left to right; at each position takes the longest surface
  // starting there, emits it and resumes after its end. Positions without
  // a hit advance by one. `text` should already be NFC.
  std::vector<MatchSpan> Match(std::string_view text) const;
  std::vector<MatchSpan> Match(std::u32string_view text) const;

 private:
  struct Node {
    std::vector<std::pair<char32_t, int32_t>> children;  // sorted by label
    int32_t fail = 0;
    int32_t pattern = -1;    // pattern ending exactly here
    int32_t dict_link = -1;  // nearest proper suffix node that ends a pattern
    uint32_t depth = 0;
  };

  int32_t Child(int32_t node, char32_t c) const;

  struct Pattern {
    std::string surface;
    LexiconEntry entry;
    size_t length = 0;  // code points
  };

  std::vector<Node> nodes_;
  std::vector<Pattern> patterns_;
  unsigned category_mask_ = 0;
};

inline MatchAutomaton BuildAutomaton(const PolarityLexicon& lexicon) {
  return MatchAutomaton::Build(lexicon);
}

inline std::vector<MatchSpan> MatchText(const MatchAutomaton& automaton,
                                        std::string_view text) {
  return automaton.Match(text);
}

// Rule-based annotation of one text: NFC-normalizes it, matches it and
// maps every hit to a (polarity, surface) pair in text order. Throws
// ValidationError for schema SRW, for lexicon entries whose category the
// schema does not cover, and for empty text.
ScposRecord Annotate(std::string_view text, TextLabel text_label,
                     const MatchAutomaton& automaton, SchemaId schema,
                     std::string id = {});

// Convenience overload that builds a single-use automaton.
ScposRecord Annotate(std::string_view text, TextLabel text_label,
                     const PolarityLexicon& lexicon, SchemaId schema,
                     std::string id = {});

// Throws ValidationError unless every lexicon category is allowed by the
// rule-based schema.
void CheckLexiconForSchema(const PolarityLexicon& lexicon, SchemaId schema);

}  // namespace scpos

#endif  // SCPOS_MATCHER_H_
