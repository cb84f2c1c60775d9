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

#include "scpos/format_codec.h"

#include "scpos/error.h"
#include "scpos/unicode.h"

namespace scpos {
namespace {

constexpr std::string_view kPosMarker = "POS";

void AppendBracketed(std::string& out, std::string_view label) {
  out += '<';
  out += label;
  out += '>';
}

std::string TextLabelCandidates() {
  std::string out;
  for (TextLabel l : kTextLabels) AppendBracketed(out, ToString(l));
  return out;
}

std::string Snippet(std::string_view s) {
  constexpr size_t kMax = 40;
  if (s.size() <= kMax) return std::string(s);
  size_t cut = kMax;
  while (cut > 0 && (static_cast<unsigned char>(s[cut]) & 0xC0) == 0x80) --cut;
  return std::string(s.substr(0, cut)) + "...";
}

void AppendPairs(std::string& out, const ScposRecord& record) {
  for (size_t i = 0; i < record.pairs.size(); ++i) {
    const PwPair& pair = record.pairs[i];
    if (TrimAscii(pair.span).empty()) {
      throw ValidationError("record '" + record.id + "' pair " +
                            std::to_string(i) + " has an empty span");
    }
    if (pair.span.find_first_of(":;") != std::string::npos) {
      throw ValidationError("record '" + record.id + "' pair " +
                            std::to_string(i) + " span '" + pair.span +
                            "' contains a reserved delimiter (':' or ';')");
    }
    out += ToString(pair.polarity);
    out += ':';
    out += pair.span;
    out += ';';
  }
}

}  // namespace

std::string EncodeInput(const ScposRecord& record, TaskMode mode) {
  std::string out = record.text;
  if (mode != TaskMode::kPosOnly) {
    out += '\n';
    out += TextLabelCandidates();
  }
  if (mode != TaskMode::kScOnly) {
    out += '\n';
    out += record.text;
    out += '\n';
    out += kPosMarker;
    for (WordPolarity p : SchemaLabels(record.schema)) {
      AppendBracketed(out, ToString(p));
    }
  }
  return out;
}

std::string EncodeTarget(const ScposRecord& record, TaskMode mode) {
  std::string out;
  if (mode != TaskMode::kPosOnly) {
    AppendBracketed(out, ToString(record.text_label));
  }
  if (mode != TaskMode::kScOnly) {
    out += kPosMarker;
    AppendPairs(out, record);
  }
  return out;
}

SerializedSequence Encode(const ScposRecord& record, TaskMode mode) {
  return {EncodeInput(record, mode), EncodeTarget(record, mode)};
}

ParsedOutput DecodeOutput(std::string_view generated, SchemaId schema,
                          TaskMode mode) {
  ParsedOutput out;
  size_t pairs_from = 0;

  if (mode != TaskMode::kPosOnly) {
    size_t open = generated.find('<');
    size_t close = open == std::string_view::npos
                       ? std::string_view::npos
                       : generated.find('>', open + 1);
    if (open == std::string_view::npos) {
      out.parse_warnings.push_back("no <label> group found");
    } else if (close == std::string_view::npos) {
      out.parse_warnings.push_back("unterminated <label> group");
    } else {
      // Innermost group: the last '<' before the first closing '>'.
      open = generated.rfind('<', close);
      std::string_view inner =
          TrimAscii(generated.substr(open + 1, close - open - 1));
      if (auto label = ParseTextLabel(inner)) {
        out.text_label = *label;
        pairs_from = close + 1;
      } else {
        out.parse_warnings.push_back("unknown text label <" + Snippet(inner) +
                                     ">");
      }
    }
  }
  if (mode == TaskMode::kScOnly) return out;

  size_t marker = generated.find(kPosMarker, pairs_from);
  if (marker == std::string_view::npos) {
    out.parse_warnings.push_back("no POS marker found");
    return out;
  }
  std::string_view rest = generated.substr(marker + kPosMarker.size());
  size_t start = 0;
  while (true) {
    size_t semi = rest.find(';', start);
    if (semi == std::string_view::npos) {
      std::string_view tail = TrimAscii(rest.substr(start));
      if (!tail.empty()) {
        out.parse_warnings.push_back("ignored text after last ';': " +
                                     Snippet(tail));
      }
      break;
    }
    std::string_view fragment = TrimAscii(rest.substr(start, semi - start));
    start = semi + 1;
    if (fragment.empty()) {
      out.parse_warnings.push_back("empty pair fragment");
      continue;
    }
    size_t colon = fragment.find(':');
    if (colon == std::string_view::npos) {
      out.parse_warnings.push_back("pair without ':': " + Snippet(fragment));
      continue;
    }
    std::string_view polarity_text = TrimAscii(fragment.substr(0, colon));
    std::string_view span = TrimAscii(fragment.substr(colon + 1));
    auto polarity = ParseWordPolarity(polarity_text);
    if (!polarity || !SchemaAllows(schema, *polarity)) {
      out.parse_warnings.push_back("polarity not valid for schema " +
                                   std::string(ToString(schema)) + ": " +
                                   Snippet(polarity_text));
      continue;
    }
    if (span.empty()) {
      out.parse_warnings.push_back("pair with empty span");
      continue;
    }
    out.pairs.push_back({*polarity, std::string(span)});
  }
  return out;
}

}  // namespace scpos
