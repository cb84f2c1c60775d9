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

#include "scpos/matcher.h"

#include <algorithm>
#include <queue>

#include "scpos/error.h"
#include "scpos/unicode.h"

namespace scpos {

int32_t MatchAutomaton::Child(int32_t node, char32_t c) const {
  const auto& children = nodes_[node].children;
  auto it = std::lower_bound(
      children.begin(), children.end(), c,
      [](const std::pair<char32_t, int32_t>& e, char32_t v) {
        return e.first < v;
      });
  return it != children.end() && it->first == c ? it->second : -1;
}

MatchAutomaton MatchAutomaton::Build(const PolarityLexicon& lexicon) {
  if (lexicon.empty()) {
    throw ValidationError("cannot build a match automaton from an empty lexicon");
  }
  MatchAutomaton ac;
  ac.nodes_.emplace_back();
  ac.patterns_.reserve(lexicon.size());

  for (const auto& [surface, entry] : lexicon.entries()) {
    const int32_t index = static_cast<int32_t>(ac.patterns_.size());
    const std::u32string code_points = Utf8ToUtf32(surface);
    ac.patterns_.push_back({surface, entry, code_points.size()});
    ac.category_mask_ |= 1u << static_cast<int>(entry.pos_category);

    int32_t node = 0;
    for (char32_t c : code_points) {
      int32_t next = ac.Child(node, c);
      if (next < 0) {
        next = static_cast<int32_t>(ac.nodes_.size());
        Node child;
        child.depth = ac.nodes_[node].depth + 1;
        ac.nodes_.push_back(std::move(child));
        auto& children = ac.nodes_[node].children;
        auto pos = std::lower_bound(
            children.begin(), children.end(), c,
            [](const std::pair<char32_t, int32_t>& e, char32_t v) {
              return e.first < v;
            });
        children.insert(pos, {c, next});
      }
      node = next;
    }
    ac.nodes_[node].pattern = index;
  }

  // Breadth-first failure and dictionary links.
  std::queue<int32_t> queue;
  for (const auto& [c, child] : ac.nodes_[0].children) {
    ac.nodes_[child].fail = 0;
    queue.push(child);
  }
  while (!queue.empty()) {
    int32_t node = queue.front();
    queue.pop();
    for (const auto& [c, child] : ac.nodes_[node].children) {
      int32_t f = ac.nodes_[node].fail;
      int32_t target = ac.Child(f, c);
      while (target < 0 && f != 0) {
        f = ac.nodes_[f].fail;
        target = ac.Child(f, c);
      }
      if (target < 0 || target == child) target = 0;
      Node& n = ac.nodes_[child];
      n.fail = target;
      n.dict_link = ac.nodes_[target].pattern >= 0
                        ? target
                        : ac.nodes_[target].dict_link;
      queue.push(child);
    }
  }
  return ac;
}

std::vector<std::string> MatchAutomaton::Patterns() const {
  std::vector<std::string> out;
  out.reserve(patterns_.size());
  for (const Pattern& p : patterns_) out.push_back(p.surface);
  return out;
}

std::vector<MatchSpan> MatchAutomaton::Match(std::string_view text) const {
  return Match(Utf8ToUtf32(text));
}

std::vector<MatchSpan> MatchAutomaton::Match(std::u32string_view text) const {
  // longest[s] = index of the longest pattern starting at s, or -1.
  std::vector<int32_t> longest(text.size(), -1);
  int32_t state = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    const char32_t c = text[i];
    int32_t next = Child(state, c);
    while (next < 0 && state != 0) {
      state = nodes_[state].fail;
      next = Child(state, c);
    }
    state = next < 0 ? 0 : next;
    for (int32_t t = nodes_[state].pattern >= 0 ? state : nodes_[state].dict_link;
         t >= 0; t = nodes_[t].dict_link) {
      // Occurrences sharing a start are reported in increasing end order,
      // so the last write is the longest.
      longest[i + 1 - nodes_[t].depth] = nodes_[t].pattern;
    }
  }

  std::vector<MatchSpan> spans;
  size_t pos = 0;
  while (pos < text.size()) {
    const int32_t p = longest[pos];
    if (p < 0) {
      ++pos;
      continue;
    }
    const Pattern& pattern = patterns_[p];
    const size_t len = pattern.length;
    spans.push_back({pos, pos + len, pattern.surface, pattern.entry});
    pos += len;
  }
  return spans;
}

void CheckLexiconForSchema(const PolarityLexicon& lexicon, SchemaId schema) {
  if (schema == SchemaId::kSrw) {
    throw ValidationError(
        "SRW records are annotated by hand or by a model, not by dictionary "
        "matching");
  }
  for (const auto& [surface, entry] : lexicon.entries()) {
    if (!SchemaAllowsCategory(schema, entry.pos_category)) {
      throw ValidationError("lexicon entry '" + surface + "' is a " +
                            std::string(ToString(entry.pos_category)) +
                            ", which schema " +
                            std::string(ToString(schema)) + " does not cover");
    }
  }
}

ScposRecord Annotate(std::string_view text, TextLabel text_label,
                     const MatchAutomaton& automaton, SchemaId schema,
                     std::string id) {
  if (schema == SchemaId::kSrw) {
    throw ValidationError(
        "SRW records are annotated by hand or by a model, not by dictionary "
        "matching");
  }
  for (PosCategory c :
       {PosCategory::kNoun, PosCategory::kVerb, PosCategory::kAdjective}) {
    if (automaton.HasCategory(c) && !SchemaAllowsCategory(schema, c)) {
      throw ValidationError("lexicon contains " + std::string(ToString(c)) +
                            " entries, which schema " +
                            std::string(ToString(schema)) + " does not cover");
    }
  }
  ScposRecord record;
  record.text = NormalizeNfc(text);
  if (record.text.empty()) throw ValidationError("cannot annotate empty text");
  record.text_label = text_label;
  record.schema = schema;
  record.id = id.empty() ? ContentId(record.text, schema) : std::move(id);
  for (MatchSpan& span : automaton.Match(record.text)) {
    record.pairs.push_back({span.entry.polarity, std::move(span.surface)});
  }
  return record;
}

ScposRecord Annotate(std::string_view text, TextLabel text_label,
                     const PolarityLexicon& lexicon, SchemaId schema,
                     std::string id) {
  CheckLexiconForSchema(lexicon, schema);
  return Annotate(text, text_label, MatchAutomaton::Build(lexicon), schema,
                  std::move(id));
}

}  // namespace scpos
