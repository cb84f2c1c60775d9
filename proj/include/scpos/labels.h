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

#ifndef SCPOS_LABELS_H_
#define SCPOS_LABELS_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace scpos {

// Word-level polarity labels. Xpositive/Xnegative mark words whose
// intrinsic polarity is flipped by a preceding negation.
enum class WordPolarity { kPositive, kXnegative, kNeutral, kXpositive, kNegative };

enum class TextLabel { kPositive, kNegative };

// SRW is the human/LLM-annotated sentiment-related-word schema; NVA, N and
// VA are produced by dictionary matching.
enum class SchemaId { kSrw, kNva, kN, kVa };

enum class PosCategory { kNoun, kVerb, kAdjective };

// Which sub-tasks a serialized sequence carries.
enum class TaskMode { kScpos, kScOnly, kPosOnly };

std::string_view ToString(WordPolarity p);
std::string_view ToString(TextLabel l);
std::string_view ToString(SchemaId s);
std::string_view ToString(PosCategory c);
std::string_view ToString(TaskMode m);

// Case-sensitive parsers; nullopt on unknown names.
std::optional<WordPolarity> ParseWordPolarity(std::string_view s);
std::optional<TextLabel> ParseTextLabel(std::string_view s);
std::optional<SchemaId> ParseSchemaId(std::string_view s);
std::optional<PosCategory> ParsePosCategory(std::string_view s);
std::optional<TaskMode> ParseTaskMode(std::string_view s);

// Word-label candidates of a schema in canonical order:
//   SRW: positive, Xnegative, neutral, Xpositive, negative
//   NVA, N: positive, neutral, negative
//   VA: positive, negative
std::span<const WordPolarity> SchemaLabels(SchemaId schema);

bool SchemaAllows(SchemaId schema, WordPolarity p);

// POS categories whose dictionary entries a rule-based schema draws on.
// SRW has no dictionary and allows all.
bool SchemaAllowsCategory(SchemaId schema, PosCategory c);

inline constexpr TextLabel kTextLabels[] = {TextLabel::kPositive,
                                            TextLabel::kNegative};
inline constexpr SchemaId kAllSchemas[] = {SchemaId::kSrw, SchemaId::kNva,
                                           SchemaId::kN, SchemaId::kVa};
inline constexpr TaskMode kAllModes[] = {TaskMode::kScpos, TaskMode::kScOnly,
                                         TaskMode::kPosOnly};

}  // namespace scpos

#endif  // SCPOS_LABELS_H_
