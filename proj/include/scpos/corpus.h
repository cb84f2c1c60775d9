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

#ifndef SCPOS_CORPUS_H_
#define SCPOS_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "scpos/lexicon.h"
#include "scpos/record.h"

namespace scpos {

// JSONL record layout, one object per line:
//   {"id","text","label","pairs":[{"polarity","span"}],"schema"}
// "id" may be omitted on input; the content id of (text, schema) is used.
nlohmann::ordered_json RecordToJson(const ScposRecord& record);

// Throws ValidationError on missing fields, unknown labels or any
// schema-invalid pair.
ScposRecord RecordFromJson(const nlohmann::json& j);

std::string RecordToJsonLine(const ScposRecord& record);

struct CorpusReadResult {
  std::vector<ScposRecord> records;
  std::vector<Rejection> rejections;
};

// Parses JSONL contents. Blank lines are skipped; every other bad line is
// collected as a rejection with its 1-based line number.
CorpusReadResult ParseCorpus(std::string_view contents);

// Reads a JSONL corpus. Throws IoError if unreadable and ValidationError
// listing every rejected line if any line is malformed or schema-invalid.
std::vector<ScposRecord> ReadCorpus(const std::filesystem::path& path);

// As ReadCorpus but returns rejections instead of throwing on them.
CorpusReadResult ReadCorpusLenient(const std::filesystem::path& path);

void WriteCorpus(const std::vector<ScposRecord>& records,
                 const std::filesystem::path& path);

std::string ReadFileToString(const std::filesystem::path& path);
void WriteStringToFile(const std::filesystem::path& path,
                       std::string_view contents);

struct CorpusManifest {
  size_t srw_count = 1000;
  size_t n_count = 500;
  size_t va_count = 500;
  size_t nva_count = 500;
  uint32_t srw_weight = 2;  // >= 1
  uint64_t seed = 0;
};

// Draws manifest-sized samples from each pool (seeded, without
// replacement), repeats the SRW sample srw_weight times, concatenates and
// shuffles. Output length = weight*|SRW| + |N| + |VA| + |NVA|. Throws
// ValidationError when a pool is empty, smaller than its count, holds
// records of another schema, or the weight is zero.
std::vector<ScposRecord> BuildTrainCorpus(const std::vector<ScposRecord>& srw,
                                          const std::vector<ScposRecord>& n,
                                          const std::vector<ScposRecord>& va,
                                          const std::vector<ScposRecord>& nva,
                                          const CorpusManifest& manifest);

// Uniform sample of n records without replacement, in sampled order.
// Throws ValidationError if n exceeds the pool.
std::vector<ScposRecord> SampleEvalSet(const std::vector<ScposRecord>& records,
                                       size_t n, uint64_t seed);

// Pair counts per label of a schema, in canonical label order. Pairs of
// other schemas are ignored.
std::vector<std::pair<WordPolarity, size_t>> LabelHistogram(
    const std::vector<ScposRecord>& records, SchemaId schema);

}  // namespace scpos

#endif  // SCPOS_CORPUS_H_
