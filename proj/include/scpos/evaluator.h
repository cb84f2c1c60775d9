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

#ifndef SCPOS_EVALUATOR_H_
#define SCPOS_EVALUATOR_H_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "scpos/inference_client.h"
#include "scpos/record.h"

namespace scpos {

struct SampleScore {
  std::string id;
  int run = 0;
  bool sc_correct = false;
  size_t pos_matched = 0;
  size_t pos_total = 0;   // gold pair count
  double pos_ratio = 1.0; // 1 when pos_total == 0, except failed generations
  bool scpos_correct = false;
  bool generation_failed = false;
  size_t parse_warnings = 0;
};

struct ScoreOptions {
  // ACC_SCPOS normally ignores spurious generated pairs; strict requires
  // the generated pair multiset to equal the gold one.
  bool strict = false;
};

// Decodes `generated` for gold's schema and scores it. Text labels match
// exactly; pairs match as a multiset of (polarity, trimmed span). SC_ONLY
// leaves the pair side vacuous (ratio 1, total 0); POS_ONLY makes
// sc_correct vacuously true.
SampleScore ScoreSample(const ScposRecord& gold, std::string_view generated,
                        TaskMode mode = TaskMode::kScpos,
                        ScoreOptions options = {});

// A generation that never produced text: zero on every component.
SampleScore FailedSample(const ScposRecord& gold);

enum class Aggregation { kMicro, kMacro };

std::string_view ToString(Aggregation a);
std::optional<Aggregation> ParseAggregation(std::string_view s);

struct Accuracies {
  double acc_sc = 0;
  double acc_pos = 0;
  double acc_scpos = 0;
};

// acc_sc and acc_scpos are sample fractions. acc_pos is
//   micro: sum(matched) / sum(total) over samples with total > 0
//          (1 if no sample has gold pairs),
//   macro: mean of pos_ratio.
// Throws ValidationError on an empty list.
Accuracies Aggregate(std::span<const SampleScore> scores,
                     Aggregation aggregation = Aggregation::kMicro);

struct EvalReport {
  Accuracies mean;  // arithmetic mean over runs
  Aggregation aggregation = Aggregation::kMicro;
  TaskMode mode = TaskMode::kScpos;
  SchemaId schema = SchemaId::kSrw;
  size_t runs = 0;
  std::vector<Accuracies> per_run;
  std::vector<SampleScore> per_sample;  // run-major
  size_t failed_generations = 0;
  // mean acc_pos under the other aggregation, for side-by-side reporting
  double acc_pos_other = 0;
};

struct EvalOptions {
  size_t runs = 3;
  TaskMode mode = TaskMode::kScpos;
  Aggregation aggregation = Aggregation::kMicro;
  ScoreOptions scoring;
  size_t concurrency = 1;  // worker threads issuing generations
};

// Source of completions keyed by (sample index, run); used for replay.
class CompletionSource {
 public:
  virtual ~CompletionSource() = default;
  // nullopt marks a failed generation.
  virtual std::optional<std::string> Completion(size_t sample, int run) = 0;
};

// Replay of stored completions, JSON lines {"id", "run", "completion"}.
// An entry without "run" applies to every run; a null or missing
// completion is a failed generation. Throws ValidationError on malformed
// lines or ids absent from the gold set, IoError if unreadable.
class ReplayCompletions : public CompletionSource {
 public:
  static ReplayCompletions Load(const std::filesystem::path& path,
                                const std::vector<ScposRecord>& gold);
  static ReplayCompletions Parse(std::string_view contents,
                                 const std::vector<ScposRecord>& gold);

  std::optional<std::string> Completion(size_t sample, int run) override;

 private:
  std::vector<std::string> ids_;  // gold order
  std::map<std::pair<std::string, int>, std::string> by_run_;
  std::map<std::string, std::string> any_run_;
};

// generate -> decode -> score for every sample and run. Generator errors
// are recorded as failed samples. prompts[i] belongs to gold[i]. Throws
// ValidationError when runs == 0, sizes differ, or gold is empty.
EvalReport RunEvaluation(const std::vector<ScposRecord>& gold,
                         const std::vector<std::string>& prompts,
                         TextGenerator& generator,
                         const GenerationParams& params,
                         const EvalOptions& options);

EvalReport RunEvaluation(const std::vector<ScposRecord>& gold,
                         CompletionSource& source, const EvalOptions& options);

// Assembles a report from already computed per-run per-sample scores.
EvalReport AssembleReport(std::vector<std::vector<SampleScore>> per_run_scores,
                          const EvalOptions& options, SchemaId schema);

nlohmann::ordered_json ReportToJson(const EvalReport& report);

struct TableRow {
  std::string name;  // model / mode
  SchemaId schema = SchemaId::kSrw;
  TaskMode mode = TaskMode::kScpos;
  Accuracies acc;
};

// Plain-text table: one line per row name, three columns (ACC_SC, ACC_POS,
// ACC_SCPOS) per schema, values as percentages with two decimals, "-" for
// metrics that the row's mode does not produce or schemas it lacks.
std::string FormatTable(const std::vector<TableRow>& rows);

}  // namespace scpos

#endif  // SCPOS_EVALUATOR_H_
