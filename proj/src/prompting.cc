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

#include "scpos/prompting.h"

#include <algorithm>

#include "json.hpp"
#include "scpos/corpus.h"
#include "scpos/error.h"
#include "scpos/format_codec.h"
#include "scpos/random.h"
#include "scpos/unicode.h"

namespace scpos {

std::string_view DefaultWordClass(SchemaId schema) {
  switch (schema) {
    case SchemaId::kSrw: return "word";
    case SchemaId::kNva: return "noun, verb, and adjective";
    case SchemaId::kN: return "noun";
    case SchemaId::kVa: return "verb and adjective";
  }
  return "word";
}

std::string_view ToString(PromptShape s) {
  switch (s) {
    case PromptShape::kIclIl: return "icl_il";
    case PromptShape::kIlOnly: return "il_only";
    case PromptShape::kIclOnly: return "icl_only";
  }
  return "";
}

std::optional<PromptShape> ParsePromptShape(std::string_view s) {
  if (s == "icl_il") return PromptShape::kIclIl;
  if (s == "il_only") return PromptShape::kIlOnly;
  if (s == "icl_only") return PromptShape::kIclOnly;
  return std::nullopt;
}

PromptShape PromptTemplate::shape() const {
  if (!icl_record) return PromptShape::kIlOnly;
  return include_instruction ? PromptShape::kIclIl : PromptShape::kIclOnly;
}

std::string PromptTemplate::ResolvedInstruction() const {
  auto it = word_class.find(schema);
  const std::string phrase =
      it != word_class.end() ? it->second : std::string(DefaultWordClass(schema));
  std::string out;
  for (size_t i = 0; i < instruction.size(); ++i) {
    std::string sentence = instruction[i];
    for (size_t pos = sentence.find(kWordClassPlaceholder);
         pos != std::string::npos;
         pos = sentence.find(kWordClassPlaceholder, pos + phrase.size())) {
      sentence.replace(pos, kWordClassPlaceholder.size(), phrase);
    }
    if (i > 0) out += '\n';
    out += sentence;
  }
  return out;
}

PromptTemplate PromptTemplate::ForSchema(SchemaId other) const {
  PromptTemplate copy = *this;
  copy.schema = other;
  copy.icl_record.reset();
  return copy;
}

PromptTemplate DefaultTemplate(SchemaId schema) {
  PromptTemplate t;
  t.schema = schema;
  t.instruction = {
      "The sequence above is an example of the task.",
      "Classify whether the overall sentiment polarity of the following text "
      "is <positive> or <negative>.",
      "Then list every {word_class} in the text that is related to its "
      "sentiment polarity, each with its polarity label."};
  return t;
}

PromptTemplate ParseTemplate(std::string_view json_text,
                             const std::vector<ScposRecord>& pool) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed template JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("template is not a JSON object");
  PromptTemplate t;
  auto schema = j.find("schema");
  if (schema == j.end() || !schema->is_string()) {
    throw ValidationError("template field 'schema' missing or not a string");
  }
  auto schema_id = ParseSchemaId(schema->get<std::string>());
  if (!schema_id) {
    throw ValidationError("template has unknown schema '" +
                          schema->get<std::string>() + "'");
  }
  t.schema = *schema_id;

  auto instruction = j.find("instruction");
  if (instruction == j.end() || !instruction->is_array() ||
      instruction->size() != 3) {
    throw ValidationError(
        "template field 'instruction' must be an array of exactly 3 strings");
  }
  for (size_t i = 0; i < 3; ++i) {
    if (!(*instruction)[i].is_string()) {
      throw ValidationError("template instruction sentence " +
                            std::to_string(i + 1) + " is not a string");
    }
    t.instruction[i] = (*instruction)[i].get<std::string>();
  }

  if (auto wc = j.find("word_class"); wc != j.end() && !wc->is_null()) {
    if (!wc->is_object()) {
      throw ValidationError("template field 'word_class' is not an object");
    }
    for (const auto& [key, value] : wc->items()) {
      auto s = ParseSchemaId(key);
      if (!s || !value.is_string()) {
        throw ValidationError("template word_class entry '" + key +
                              "' is invalid");
      }
      t.word_class[*s] = value.get<std::string>();
    }
  }

  if (auto icl = j.find("icl_record_id"); icl != j.end() && !icl->is_null()) {
    if (!icl->is_string()) {
      throw ValidationError("template field 'icl_record_id' is not a string");
    }
    const std::string id = icl->get<std::string>();
    auto it = std::find_if(pool.begin(), pool.end(),
                           [&](const ScposRecord& r) { return r.id == id; });
    if (it == pool.end()) {
      throw ValidationError("template icl_record_id '" + id +
                            "' not found in the demonstration pool");
    }
    t.icl_record = *it;
  }
  if (auto inc = j.find("include_instruction");
      inc != j.end() && inc->is_boolean()) {
    t.include_instruction = inc->get<bool>();
  }
  return t;
}

PromptTemplate LoadTemplate(const std::filesystem::path& path,
                            const std::vector<ScposRecord>& pool) {
  return ParseTemplate(ReadFileToString(path), pool);
}

std::string BuildPrompt(const PromptTemplate& tmpl, const ScposRecord& record,
                        TaskMode mode) {
  if (record.schema != tmpl.schema) {
    throw ValidationError("record '" + record.id + "' has schema " +
                          std::string(ToString(record.schema)) +
                          " but the template targets " +
                          std::string(ToString(tmpl.schema)));
  }
  std::string prompt;
  if (tmpl.icl_record) {
    if (tmpl.icl_record->schema != tmpl.schema) {
      throw ValidationError("demonstration record '" + tmpl.icl_record->id +
                            "' has schema " +
                            std::string(ToString(tmpl.icl_record->schema)));
    }
    prompt += EncodeInput(*tmpl.icl_record, mode);
    prompt += '\n';
    prompt += EncodeTarget(*tmpl.icl_record, mode);
    prompt += "\n\n";
  }
  if (tmpl.include_instruction) {
    prompt += tmpl.ResolvedInstruction();
    prompt += "\n\n";
  }
  prompt += EncodeInput(record, mode);
  return prompt;
}

LengthBand MediumLengthBand(const std::vector<ScposRecord>& pool) {
  if (pool.empty()) return {};
  std::vector<size_t> lengths;
  lengths.reserve(pool.size());
  for (const ScposRecord& r : pool) lengths.push_back(CodePointLength(r.text));
  std::sort(lengths.begin(), lengths.end());
  // Nearest-rank percentile: the ceil(n * num / den)-th smallest, 1-based.
  auto rank = [&](size_t num, size_t den) {
    size_t k = (lengths.size() * num + den - 1) / den;
    k = std::clamp<size_t>(k, 1, lengths.size());
    return lengths[k - 1];
  };
  return {rank(1, 4), rank(3, 4)};
}

ScposRecord SelectIclSample(const std::vector<ScposRecord>& pool,
                            const std::set<std::string>& excluded_ids,
                            LengthBand band, uint64_t seed) {
  std::vector<const ScposRecord*> candidates;
  for (const ScposRecord& r : pool) {
    if (excluded_ids.contains(r.id)) continue;
    size_t len = CodePointLength(r.text);
    if (len < band.min_chars || len > band.max_chars) continue;
    candidates.push_back(&r);
  }
  if (candidates.empty()) {
    throw ValidationError(
        "no demonstration candidates: every pool record is excluded or "
        "outside the length band [" +
        std::to_string(band.min_chars) + ", " +
        std::to_string(band.max_chars) + "]");
  }
  DeterministicRng rng(seed);
  return *candidates[rng.Below(candidates.size())];
}

}  // namespace scpos
