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

#include "scpos/labels.h"

#include <array>

namespace scpos {
namespace {

constexpr std::array kSrwLabels = {
    WordPolarity::kPositive, WordPolarity::kXnegative, WordPolarity::kNeutral,
    WordPolarity::kXpositive, WordPolarity::kNegative};
constexpr std::array kNounLabels = {WordPolarity::kPositive,
                                    WordPolarity::kNeutral,
                                    WordPolarity::kNegative};
constexpr std::array kVaLabels = {WordPolarity::kPositive,
                                  WordPolarity::kNegative};

template <typename Enum, size_t N>
std::optional<Enum> Lookup(std::string_view s,
                           const std::array<Enum, N>& values) {
  for (Enum v : values) {
    if (ToString(v) == s) return v;
  }
  return std::nullopt;
}

}  // namespace

std::string_view ToString(WordPolarity p) {
  switch (p) {
    case WordPolarity::kPositive: return "positive";
    case WordPolarity::kXnegative: return "Xnegative";
    case WordPolarity::kNeutral: return "neutral";
    case WordPolarity::kXpositive: return "Xpositive";
    case WordPolarity::kNegative: return "negative";
  }
  return "";
}

std::string_view ToString(TextLabel l) {
  return l == TextLabel::kPositive ? "positive" : "negative";
}

std::string_view ToString(SchemaId s) {
  switch (s) {
    case SchemaId::kSrw: return "SRW";
    case SchemaId::kNva: return "NVA";
    case SchemaId::kN: return "N";
    case SchemaId::kVa: return "VA";
  }
  return "";
}

std::string_view ToString(PosCategory c) {
  switch (c) {
    case PosCategory::kNoun: return "noun";
    case PosCategory::kVerb: return "verb";
    case PosCategory::kAdjective: return "adjective";
  }
  return "";
}

std::string_view ToString(TaskMode m) {
  switch (m) {
    case TaskMode::kScpos: return "SCPOS";
    case TaskMode::kScOnly: return "SC_ONLY";
    case TaskMode::kPosOnly: return "POS_ONLY";
  }
  return "";
}

std::optional<WordPolarity> ParseWordPolarity(std::string_view s) {
  return Lookup(s, kSrwLabels);
}

std::optional<TextLabel> ParseTextLabel(std::string_view s) {
  return Lookup(s, std::array{TextLabel::kPositive, TextLabel::kNegative});
}

std::optional<SchemaId> ParseSchemaId(std::string_view s) {
  return Lookup(s, std::array{SchemaId::kSrw, SchemaId::kNva, SchemaId::kN,
                              SchemaId::kVa});
}

std::optional<PosCategory> ParsePosCategory(std::string_view s) {
  return Lookup(s, std::array{PosCategory::kNoun, PosCategory::kVerb,
                              PosCategory::kAdjective});
}

std::optional<TaskMode> ParseTaskMode(std::string_view s) {
  return Lookup(s, std::array{TaskMode::kScpos, TaskMode::kScOnly,
                              TaskMode::kPosOnly});
}

std::span<const WordPolarity> SchemaLabels(SchemaId schema) {
  switch (schema) {
    case SchemaId::kSrw: return kSrwLabels;
    case SchemaId::kNva:
    case SchemaId::kN: return kNounLabels;
    case SchemaId::kVa: return kVaLabels;
  }
  return {};
}

bool SchemaAllows(SchemaId schema, WordPolarity p) {
  for (WordPolarity allowed : SchemaLabels(schema)) {
    if (allowed == p) return true;
  }
  return false;
}

bool SchemaAllowsCategory(SchemaId schema, PosCategory c) {
  switch (schema) {
    case SchemaId::kSrw:
    case SchemaId::kNva: return true;
    case SchemaId::kN: return c == PosCategory::kNoun;
    case SchemaId::kVa: return c != PosCategory::kNoun;
  }
  return false;
}

}  // namespace scpos
