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

#ifndef SCPOS_PROMPTING_H_
#define SCPOS_PROMPTING_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "scpos/record.h"

namespace scpos {

// Placeholder in the third instruction sentence, replaced by the schema's
// word-class phrase.
inline constexpr std::string_view kWordClassPlaceholder = "{word_class}";

// Default English word-class phrases: SRW "word", NVA "noun, verb, and
// adjective", N "noun", VA "verb and adjective".
std::string_view DefaultWordClass(SchemaId schema);

// Three prompt layouts: demonstration + instruction, instruction only
// (0-shot), demonstration only.
enum class PromptShape { kIclIl, kIlOnly, kIclOnly };

std::string_view ToString(PromptShape s);
std::optional<PromptShape> ParsePromptShape(std::string_view s);

struct PromptTemplate {
  SchemaId schema = SchemaId::kSrw;
  std::array<std::string, 3> instruction;
  // Word-class phrase overrides per schema (e.g. for Japanese templates).
  std::map<SchemaId, std::string> word_class;
  // Demonstration record; when absent the prompt is instruction-only.
  std::optional<ScposRecord> icl_record;
  bool include_instruction = true;

  PromptShape shape() const;

  // The three sentences with the placeholder resolved, joined by '\n'.
  std::string ResolvedInstruction() const;

  // Template with the same sentences retargeted to another schema; the
  // demonstration is dropped.
  PromptTemplate ForSchema(SchemaId other) const;
};

// English defaults.
PromptTemplate DefaultTemplate(SchemaId schema);

// Template JSON: {"instruction": [s1, s2, s3], "schema": "SRW",
// "icl_record_id": "..." | null, "word_class": {"SRW": "...", ...}}
// icl_record_id is resolved against `pool`; throws ValidationError when it
// is set and not found, or when the JSON is malformed. IoError if
// unreadable.
PromptTemplate LoadTemplate(const std::filesystem::path& path,
                            const std::vector<ScposRecord>& pool = {});
PromptTemplate ParseTemplate(std::string_view json_text,
                             const std::vector<ScposRecord>& pool = {});

// Sections separated by a blank line:
//   [EncodeInput(icl) '\n' EncodeTarget(icl)]   -- if a demonstration is set
//   [resolved instruction]                      -- if include_instruction
//   EncodeInput(record)
// Throws ValidationError when the record schema (or the demonstration's)
// differs from the template's.
std::string BuildPrompt(const PromptTemplate& tmpl, const ScposRecord& record,
                        TaskMode mode = TaskMode::kScpos);

struct LengthBand {
  size_t min_chars = 0;
  size_t max_chars = SIZE_MAX;
};

// [25th, 75th] percentile (nearest rank) of pool text lengths in code
// points.
LengthBand MediumLengthBand(const std::vector<ScposRecord>& pool);

// Uniform choice among pool records whose length lies in the band and whose
// id is not excluded. Throws ValidationError if none qualify.
ScposRecord SelectIclSample(const std::vector<ScposRecord>& pool,
                            const std::set<std::string>& excluded_ids,
                            LengthBand band, uint64_t seed);

}  // namespace scpos

#endif  // SCPOS_PROMPTING_H_
