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

#include "scpos/corpus.h"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "scpos/error.h"
#include "scpos/random.h"

namespace scpos {
namespace {

using nlohmann::json;

const json& Field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) {
    throw ValidationError(std::string("missing field '") + name + "'");
  }
  return *it;
}

std::string StringField(const json& j, const char* name) {
  const json& v = Field(j, name);
  if (!v.is_string()) {
    throw ValidationError(std::string("field '") + name + "' is not a string");
  }
  return v.get<std::string>();
}

std::vector<ScposRecord> SamplePool(const std::vector<ScposRecord>& pool,
                                    size_t count, SchemaId schema,
                                    uint64_t seed, std::string_view name) {
  if (pool.empty()) {
    throw ValidationError("train corpus pool " + std::string(name) +
                          " is empty");
  }
  for (const ScposRecord& r : pool) {
    if (r.schema != schema) {
      throw ValidationError("train corpus pool " + std::string(name) +
                            " contains record '" + r.id + "' of schema " +
                            std::string(ToString(r.schema)));
    }
  }
  if (count > pool.size()) {
    throw ValidationError("requested " + std::to_string(count) + " " +
                          std::string(name) + " records but the pool has " +
                          std::to_string(pool.size()));
  }
  return SampleEvalSet(pool, count, seed);
}

}  // namespace

nlohmann::ordered_json RecordToJson(const ScposRecord& record) {
  nlohmann::ordered_json j;
  j["id"] = record.id;
  j["text"] = record.text;
  j["label"] = ToString(record.text_label);
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (const PwPair& p : record.pairs) {
    nlohmann::ordered_json pj;
    pj["polarity"] = ToString(p.polarity);
    pj["span"] = p.span;
    pairs.push_back(std::move(pj));
  }
  j["pairs"] = std::move(pairs);
  j["schema"] = ToString(record.schema);
  return j;
}

ScposRecord RecordFromJson(const json& j) {
  if (!j.is_object()) throw ValidationError("record is not a JSON object");
  ScposRecord r;
  r.text = StringField(j, "text");
  std::string label = StringField(j, "label");
  auto text_label = ParseTextLabel(label);
  if (!text_label) throw ValidationError("unknown text label '" + label + "'");
  r.text_label = *text_label;
  std::string schema = StringField(j, "schema");
  auto schema_id = ParseSchemaId(schema);
  if (!schema_id) throw ValidationError("unknown schema '" + schema + "'");
  r.schema = *schema_id;
  const json& pairs = Field(j, "pairs");
  if (!pairs.is_array()) throw ValidationError("field 'pairs' is not an array");
  for (const json& pj : pairs) {
    if (!pj.is_object()) throw ValidationError("pair is not a JSON object");
    std::string polarity = StringField(pj, "polarity");
    auto p = ParseWordPolarity(polarity);
    if (!p) throw ValidationError("unknown polarity '" + polarity + "'");
    r.pairs.push_back({*p, StringField(pj, "span")});
  }
  auto id = j.find("id");
  if (id != j.end() && !id->is_null()) {
    if (!id->is_string()) throw ValidationError("field 'id' is not a string");
    r.id = id->get<std::string>();
  }
  if (r.id.empty()) r.id = ContentId(r.text, r.schema);
  if (auto err = ValidateRecord(r)) throw ValidationError(*err);
  return r;
}

std::string RecordToJsonLine(const ScposRecord& record) {
  return RecordToJson(record).dump(-1, ' ', false,
                                   json::error_handler_t::replace);
}

CorpusReadResult ParseCorpus(std::string_view contents) {
  CorpusReadResult result;
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
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    try {
      result.records.push_back(RecordFromJson(json::parse(line)));
    } catch (const json::exception& e) {
      result.rejections.push_back(
          {line_no, std::string(line), std::string("malformed JSON: ") + e.what()});
    } catch (const ValidationError& e) {
      result.rejections.push_back({line_no, std::string(line), e.what()});
    }
  }
  return result;
}

std::string ReadFileToString(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading file: " + path.string());
  return buffer.str();
}

void WriteStringToFile(const std::filesystem::path& path,
                       std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write file: " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("error writing file: " + path.string());
}

CorpusReadResult ReadCorpusLenient(const std::filesystem::path& path) {
  return ParseCorpus(ReadFileToString(path));
}

std::vector<ScposRecord> ReadCorpus(const std::filesystem::path& path) {
  CorpusReadResult result = ReadCorpusLenient(path);
  if (!result.rejections.empty()) {
    std::string msg = path.string() + ": " +
                      std::to_string(result.rejections.size()) +
                      " invalid record line(s)";
    for (const Rejection& r : result.rejections) {
      msg += "\n  line " + std::to_string(r.line_no) + ": " + r.reason;
    }
    throw ValidationError(msg);
  }
  return std::move(result.records);
}

void WriteCorpus(const std::vector<ScposRecord>& records,
                 const std::filesystem::path& path) {
  std::string out;
  for (const ScposRecord& r : records) {
    out += RecordToJsonLine(r);
    out += '\n';
  }
  WriteStringToFile(path, out);
}

std::vector<ScposRecord> SampleEvalSet(const std::vector<ScposRecord>& records,
                                       size_t n, uint64_t seed) {
  if (n > records.size()) {
    throw ValidationError("cannot sample " + std::to_string(n) +
                          " records from a pool of " +
                          std::to_string(records.size()));
  }
  std::vector<size_t> index(records.size());
  for (size_t i = 0; i < index.size(); ++i) index[i] = i;
  DeterministicRng rng(seed);
  // Partial Fisher-Yates: the first n slots are a uniform n-permutation.
  for (size_t i = 0; i < n; ++i) {
    size_t j = i + static_cast<size_t>(rng.Below(index.size() - i));
    std::swap(index[i], index[j]);
  }
  std::vector<ScposRecord> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) out.push_back(records[index[i]]);
  return out;
}

std::vector<ScposRecord> BuildTrainCorpus(const std::vector<ScposRecord>& srw,
                                          const std::vector<ScposRecord>& n,
                                          const std::vector<ScposRecord>& va,
                                          const std::vector<ScposRecord>& nva,
                                          const CorpusManifest& manifest) {
  if (manifest.srw_weight < 1) {
    throw ValidationError("SRW weight factor must be at least 1");
  }
  // Independent streams per pool so changing one count leaves the others'
  // samples untouched.
  DeterministicRng seeds(manifest.seed);
  const uint64_t srw_seed = seeds.Next();
  const uint64_t n_seed = seeds.Next();
  const uint64_t va_seed = seeds.Next();
  const uint64_t nva_seed = seeds.Next();
  const uint64_t shuffle_seed = seeds.Next();

  auto srw_part = SamplePool(srw, manifest.srw_count, SchemaId::kSrw, srw_seed, "SRW");
  auto n_part = SamplePool(n, manifest.n_count, SchemaId::kN, n_seed, "N");
  auto va_part = SamplePool(va, manifest.va_count, SchemaId::kVa, va_seed, "VA");
  auto nva_part = SamplePool(nva, manifest.nva_count, SchemaId::kNva, nva_seed, "NVA");

  std::vector<ScposRecord> out;
  out.reserve(manifest.srw_weight * srw_part.size() + n_part.size() +
              va_part.size() + nva_part.size());
  for (uint32_t w = 0; w < manifest.srw_weight; ++w) {
    out.insert(out.end(), srw_part.begin(), srw_part.end());
  }
  for (auto* part : {&n_part, &va_part, &nva_part}) {
    out.insert(out.end(), part->begin(), part->end());
  }
  DeterministicRng shuffle(shuffle_seed);
  shuffle.Shuffle(out);
  return out;
}

std::vector<std::pair<WordPolarity, size_t>> LabelHistogram(
    const std::vector<ScposRecord>& records, SchemaId schema) {
  std::vector<std::pair<WordPolarity, size_t>> histogram;
  for (WordPolarity p : SchemaLabels(schema)) histogram.emplace_back(p, 0);
  for (const ScposRecord& r : records) {
    if (r.schema != schema) continue;
    for (const PwPair& pair : r.pairs) {
      for (auto& [label, count] : histogram) {
        if (label == pair.polarity) ++count;
      }
    }
  }
  return histogram;
}

}  // namespace scpos
