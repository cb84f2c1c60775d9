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

#include "scpos/record.h"

#include "scpos/hash.h"

namespace scpos {

std::optional<std::string> ValidateRecord(const ScposRecord& record) {
  if (record.text.empty()) return "empty text";
  for (size_t i = 0; i < record.pairs.size(); ++i) {
    const PwPair& pair = record.pairs[i];
    if (pair.span.empty()) {
      return "pair " + std::to_string(i) + " has an empty span";
    }
    if (!SchemaAllows(record.schema, pair.polarity)) {
      return "pair " + std::to_string(i) + " polarity '" +
             std::string(ToString(pair.polarity)) +
             "' is not in the label set of schema " +
             std::string(ToString(record.schema));
    }
  }
  return std::nullopt;
}

std::string ContentId(const std::string& text, SchemaId schema) {
  std::string material(ToString(schema));
  material.push_back('\x1f');
  material += text;
  return Sha256Hex(material).substr(0, 16);
}

}  // namespace scpos
