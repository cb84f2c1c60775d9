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

#include "scpos/lexicon.h"

#include <fstream>
#include <sstream>
#include <variant>

#include "json.hpp"
#include "scpos/error.h"
#include "scpos/unicode.h"

namespace scpos {
namespace {

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> cols;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(start));
      break;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cols;
}

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

bool IsVerbOrAdjective(PosCategory c) { return c != PosCategory::kNoun; }

// Parses one line into an entry; returns a reason on failure.
std::variant<LexiconEntry, std::string> ParseLine(std::string_view line,
                                                  LexiconFormat format) {
  if (TrimAscii(line).empty()) return std::string("empty line");
  std::vector<std::string_view> cols = SplitTabs(line);
  LexiconEntry entry;
  switch (format) {
    case LexiconFormat::kCanonical: {
      if (cols.size() != 3) {
        return "expected 3 tab-separated columns, got " +
               std::to_string(cols.size());
      }
      auto pos = ParsePosCategory(TrimAscii(cols[1]));
      if (!pos) return "unknown pos category '" + std::string(cols[1]) + "'";
      auto polarity = ParseWordPolarity(TrimAscii(cols[2]));
      if (!polarity) {
        return "unknown polarity '" + std::string(cols[2]) + "'";
      }
      entry.surface = std::string(TrimAscii(cols[0]));
      entry.pos_category = *pos;
      entry.polarity = *polarity;
      break;
    }
    case LexiconFormat::kTohokuNoun: {
      if (cols.size() < 2) {
        return "expected at least 2 tab-separated columns, got " +
               std::to_string(cols.size());
      }
      std::string_view tag = TrimAscii(cols[1]);
      if (tag == "p") {
        entry.polarity = WordPolarity::kPositive;
      } else if (tag == "n") {
        entry.polarity = WordPolarity::kNegative;
      } else if (tag == "e") {
        entry.polarity = WordPolarity::kNeutral;
      } else {
        return "unknown polarity tag '" + std::string(tag) + "'";
      }
      entry.surface = std::string(TrimAscii(cols[0]));
      entry.pos_category = PosCategory::kNoun;
      break;
    }
    case LexiconFormat::kTohokuVerbAdj: {
      if (cols.size() != 2) {
        return "expected 2 tab-separated columns, got " +
               std::to_string(cols.size());
      }
      std::string_view tag = TrimAscii(cols[0]);
      if (StartsWith(tag, "ポジ")) {
        entry.polarity = WordPolarity::kPositive;
      } else if (StartsWith(tag, "ネガ")) {
        entry.polarity = WordPolarity::kNegative;
      } else {
        return "unknown polarity tag '" + std::string(tag) + "'";
      }
      // Morphemes are space separated in the source; running text is not.
      for (char c : TrimAscii(cols[1])) {
        if (c != ' ') entry.surface.push_back(c);
      }
      // Dictionary-form verbs end in an u-row kana; predicates ending in
      // い/だ/な are treated as adjectives.
      entry.pos_category = EndsWith(entry.surface, "い") ||
                                   EndsWith(entry.surface, "だ") ||
                                   EndsWith(entry.surface, "な")
                               ? PosCategory::kAdjective
                               : PosCategory::kVerb;
      break;
    }
  }
  entry.surface = NormalizeNfc(entry.surface);
  if (entry.surface.empty()) return std::string("empty surface");
  if (auto err = ValidateEntry(entry)) return *err;
  return entry;
}

}  // namespace

std::optional<std::string> ValidateEntry(const LexiconEntry& entry) {
  if (entry.surface.empty()) return "empty surface";
  if (IsVerbOrAdjective(entry.pos_category) &&
      entry.polarity != WordPolarity::kPositive &&
      entry.polarity != WordPolarity::kNegative) {
    return std::string(ToString(entry.pos_category)) +
           " entries must be positive or negative, got " +
           std::string(ToString(entry.polarity));
  }
  if (entry.pos_category == PosCategory::kNoun &&
      !SchemaAllows(SchemaId::kN, entry.polarity)) {
    return "noun entries must be positive, neutral or negative, got " +
           std::string(ToString(entry.polarity));
  }
  return std::nullopt;
}

std::string_view ToString(ConflictPolicy p) {
  switch (p) {
    case ConflictPolicy::kPreferVa: return "prefer_va";
    case ConflictPolicy::kPreferN: return "prefer_n";
    case ConflictPolicy::kError: return "error";
  }
  return "";
}

std::optional<ConflictPolicy> ParseConflictPolicy(std::string_view s) {
  if (s == "prefer_va") return ConflictPolicy::kPreferVa;
  if (s == "prefer_n") return ConflictPolicy::kPreferN;
  if (s == "error") return ConflictPolicy::kError;
  return std::nullopt;
}

std::string_view ToString(LexiconFormat f) {
  switch (f) {
    case LexiconFormat::kCanonical: return "canonical";
    case LexiconFormat::kTohokuNoun: return "tohoku_noun";
    case LexiconFormat::kTohokuVerbAdj: return "tohoku_va";
  }
  return "";
}

std::optional<LexiconFormat> ParseLexiconFormat(std::string_view s) {
  if (s == "canonical") return LexiconFormat::kCanonical;
  if (s == "tohoku_noun") return LexiconFormat::kTohokuNoun;
  if (s == "tohoku_va") return LexiconFormat::kTohokuVerbAdj;
  return std::nullopt;
}

std::string RejectionToJson(const Rejection& r) {
  nlohmann::ordered_json j;
  j["line_no"] = r.line_no;
  j["raw"] = r.raw;
  j["reason"] = r.reason;
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

PolarityLexicon PolarityLexicon::FromEntries(
    std::vector<LexiconEntry> entries, std::vector<std::string> source_ids) {
  PolarityLexicon lex;
  lex.source_ids_ = std::move(source_ids);
  for (LexiconEntry& e : entries) {
    e.surface = NormalizeNfc(e.surface);
    if (auto err = ValidateEntry(e)) {
      throw ValidationError("invalid lexicon entry '" + e.surface +
                            "': " + *err);
    }
    if (lex.entries_.contains(e.surface)) {
      throw ValidationError("duplicate lexicon surface '" + e.surface + "'");
    }
    std::string key = e.surface;
    lex.entries_.emplace(std::move(key), std::move(e));
  }
  return lex;
}

const LexiconEntry* PolarityLexicon::Find(std::string_view surface) const {
  auto it = entries_.find(surface);
  return it == entries_.end() ? nullptr : &it->second;
}

PolarityLexicon PolarityLexicon::RestrictTo(SchemaId schema) const {
  PolarityLexicon out;
  out.source_ids_ = source_ids_;
  for (const auto& [surface, entry] : entries_) {
    if (SchemaAllowsCategory(schema, entry.pos_category)) {
      out.entries_.emplace(surface, entry);
    }
  }
  return out;
}

std::string PolarityLexicon::ToTsv() const {
  std::string out;
  for (const auto& [surface, entry] : entries_) {
    out += surface;
    out += '\t';
    out += ToString(entry.pos_category);
    out += '\t';
    out += ToString(entry.polarity);
    out += '\n';
  }
  return out;
}

LoadResult ParseLexicon(std::string_view contents, LexiconFormat format,
                        std::string source_id) {
  LoadResult result;
  std::vector<LexiconEntry> entries;
  std::map<std::string, size_t, std::less<>> seen;
  size_t line_no = 0;
  size_t start = 0;
  while (start < contents.size()) {
    size_t nl = contents.find('\n', start);
    std::string_view line = nl == std::string_view::npos
                                ? contents.substr(start)
                                : contents.substr(start, nl - start);
    start = nl == std::string_view::npos ? contents.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto parsed = ParseLine(line, format);
    if (auto* reason = std::get_if<std::string>(&parsed)) {
      result.rejections.push_back({line_no, std::string(line), *reason});
      continue;
    }
    LexiconEntry entry = std::get<LexiconEntry>(std::move(parsed));
    auto [it, inserted] = seen.emplace(entry.surface, line_no);
    if (!inserted) {
      result.rejections.push_back(
          {line_no, std::string(line),
           "duplicate surface (first seen on line " +
               std::to_string(it->second) + ")"});
      continue;
    }
    entries.push_back(std::move(entry));
  }
  if (entries.empty()) {
    throw ValidationError("lexicon '" + source_id + "' has zero valid entries");
  }
  result.lexicon =
      PolarityLexicon::FromEntries(std::move(entries), {std::move(source_id)});
  return result;
}

LoadResult LoadLexicon(const std::filesystem::path& path,
                       LexiconFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read lexicon file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading lexicon file: " + path.string());
  return ParseLexicon(buffer.str(), format, path.string());
}

void WriteLexicon(const PolarityLexicon& lexicon,
                  const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write lexicon file: " + path.string());
  out << lexicon.ToTsv();
  if (!out) throw IoError("error writing lexicon file: " + path.string());
}

MergeResult Merge(const PolarityLexicon& a, const PolarityLexicon& b,
                  ConflictPolicy policy) {
  MergeResult result;
  std::vector<LexiconEntry> merged;
  merged.reserve(a.size() + b.size());
  for (const auto& [surface, entry_a] : a.entries()) {
    const LexiconEntry* entry_b = b.Find(surface);
    if (entry_b == nullptr) {
      merged.push_back(entry_a);
      continue;
    }
    const LexiconEntry* kept = &entry_a;
    bool a_va = IsVerbOrAdjective(entry_a.pos_category);
    bool b_va = IsVerbOrAdjective(entry_b->pos_category);
    if (policy == ConflictPolicy::kPreferVa && !a_va && b_va) kept = entry_b;
    if (policy == ConflictPolicy::kPreferN && a_va && !b_va) kept = entry_b;
    result.collisions.push_back({surface, entry_a, *entry_b, *kept});
    merged.push_back(*kept);
  }
  for (const auto& [surface, entry_b] : b.entries()) {
    if (a.Find(surface) == nullptr) merged.push_back(entry_b);
  }
  if (policy == ConflictPolicy::kError && !result.collisions.empty()) {
    std::string names;
    for (const Collision& c : result.collisions) {
      if (!names.empty()) names += ", ";
      names += c.surface;
    }
    throw ValidationError("lexicon merge collision on: " + names);
  }
  std::vector<std::string> sources = a.source_ids();
  sources.insert(sources.end(), b.source_ids().begin(), b.source_ids().end());
  result.lexicon =
      PolarityLexicon::FromEntries(std::move(merged), std::move(sources));
  return result;
}

}  // namespace scpos
