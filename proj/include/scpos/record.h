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

#ifndef SCPOS_RECORD_H_
#define SCPOS_RECORD_H_

#include <optional>
#include <string>
#include <vector>

#include "scpos/labels.h"

namespace scpos {

// One (word-polarity label, word span) unit. In SRW the span may be a
// multi-word phrase.
struct PwPair {
  WordPolarity polarity = WordPolarity::kPositive;
  std::string span;

  friend bool operator==(const PwPair&, const PwPair&) = default;
  friend auto operator<=>(const PwPair&, const PwPair&) = default;
};

struct ScposRecord {
  std::string id;
  std::string text;
  TextLabel text_label = TextLabel::kPositive;
  std::vector<PwPair> pairs;  // occurrence order
  SchemaId schema = SchemaId::kNva;

  friend bool operator==(const ScposRecord&, const ScposRecord&) = default;
};

// Returns the first violated invariant, if any: non-empty text, non-empty
// spans, every pair polarity inside the schema label set.
std::optional<std::string> ValidateRecord(const ScposRecord& record);

// Stable content id of (text, schema): 16 hex chars of SHA-256.
std::string ContentId(const std::string& text, SchemaId schema);

}  // namespace scpos

#endif  // SCPOS_RECORD_H_
