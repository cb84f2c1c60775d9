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

#ifndef SCPOS_FORMAT_CODEC_H_
#define SCPOS_FORMAT_CODEC_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scpos/record.h"

namespace scpos {

// Serialized sequences.
//
// Input (SCPOS mode), lines joined by a single '\n':
//   {text}
//   <positive><negative>
//   {text}
//   POS<l1><l2>...<lk>          -- the schema's word labels
// SC_ONLY keeps the first two lines. POS_ONLY drops the second line.
//
// Target grammar:
//   target   = scpos | sc_only | pos_only
//   scpos    = "<" text_label ">" "POS" { pair }
//   sc_only  = "<" text_label ">"
//   pos_only = "POS" { pair }
//   pair     = polarity ":" span ";"
// Spans may not contain ':' or ';'. There is no escaping.

struct SerializedSequence {
  std::string input_seq;
  std::string target_seq;
};

std::string EncodeInput(const ScposRecord& record,
                        TaskMode mode = TaskMode::kScpos);

// Throws ValidationError if a span contains ':' or ';', or is empty.
std::string EncodeTarget(const ScposRecord& record,
                         TaskMode mode = TaskMode::kScpos);

SerializedSequence Encode(const ScposRecord& record,
                          TaskMode mode = TaskMode::kScpos);

struct ParsedOutput {
  std::optional<TextLabel> text_label;
  std::vector<PwPair> pairs;  // generated order
  std::vector<std::string> parse_warnings;
};

// Parses arbitrary model text; never throws.
//  - label: the first "<...>" group, trimmed, if it names a text label.
//    Missing or unknown labels leave text_label empty with a warning.
//  - pairs: everything after the first "POS" following a valid label group
//    (or the first "POS" anywhere otherwise), split on ';', each fragment
//    split at its first ':' and trimmed. Fragments without ':', with an
//    empty span, or with a polarity outside the schema are dropped with a
//    warning. Text after the last ';' is ignored with a warning.
// SC_ONLY skips pair extraction; POS_ONLY skips label extraction.
ParsedOutput DecodeOutput(std::string_view generated, SchemaId schema,
                          TaskMode mode = TaskMode::kScpos);

}  // namespace scpos

#endif  // SCPOS_FORMAT_CODEC_H_
