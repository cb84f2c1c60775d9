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

#include "scpos/evaluator.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "scpos/error.h"
#include "scpos/format_codec.h"
#include "scpos/unicode.h"

namespace scpos {
namespace {

using nlohmann::ordered_json;

std::map<PwPair, size_t> Multiset(const std::vector<PwPair>& pairs) {
  std::map<PwPair, size_t> counts;
  for (const PwPair& p : pairs) {
    ++counts[{p.polarity, std::string(TrimAscii(p.span))}];
  }
  return counts;
}

SampleScore ScoreAgainst(const ScposRecord& gold, const ParsedOutput& parsed,
                         TaskMode mode, ScoreOptions options) {
  SampleScore s;
  s.id = gold.id;
  s.parse_warnings = parsed.parse_warnings.size();
  s.sc_correct = mode == TaskMode::kPosOnly ||
                 (parsed.text_label && *parsed.text_label == gold.text_label);
  if (mode == TaskMode::kScOnly) {
    s.pos_ratio = 1.0;
    s.scpos_correct = s.sc_correct;
    return s;
  }
  const std::map<PwPair, size_t> gold_counts = Multiset(gold.pairs);
  const std::map<PwPair, size_t> generated_counts = Multiset(parsed.pairs);
  s.pos_total = gold.pairs.size();
  for (const auto& [pair, count] : gold_counts) {
    auto it = generated_counts.find(pair);
    if (it != generated_counts.end()) s.pos_matched += std::min(count, it->second);
  }
  s.pos_ratio = s.pos_total == 0
                    ? 1.0
                    : static_cast<double>(s.pos_matched) /
                          static_cast<double>(s.pos_total);
  s.scpos_correct = s.sc_correct && s.pos_matched == s.pos_total;
  if (options.strict) {
    s.scpos_correct = s.scpos_correct && gold_counts == generated_counts;
  }
  return s;
}

Accuracies MeanOf(const std::vector<Accuracies>& runs) {
  Accuracies mean;
  for (const Accuracies& a : runs) {
    mean.acc_sc += a.acc_sc;
    mean.acc_pos += a.acc_pos;
    mean.acc_scpos += a.acc_scpos;
  }
  const double n = static_cast<double>(runs.size());
  mean.acc_sc /= n;
  mean.acc_pos /= n;
  mean.acc_scpos /= n;
  return mean;
}

void CheckOptions(const std::vector<ScposRecord>& gold,
                  const EvalOptions& options) {
  if (options.runs == 0) throw ValidationError("runs must be >= 1");
  if (gold.empty()) throw ValidationError("gold set is empty");
}

}  // namespace

SampleScore ScoreSample(const ScposRecord& gold, std::string_view generated,
                        TaskMode mode, ScoreOptions options) {
  return ScoreAgainst(gold, DecodeOutput(generated, gold.schema, mode), mode,
                      options);
}

SampleScore FailedSample(const ScposRecord& gold) {
  SampleScore s;
  s.id = gold.id;
  s.generation_failed = true;
  s.sc_correct = false;
  s.pos_matched = 0;
  s.pos_total = gold.pairs.size();
  s.pos_ratio = 0.0;
  s.scpos_correct = false;
  return s;
}

std::string_view ToString(Aggregation a) {
  return a == Aggregation::kMicro ? "micro" : "macro";
}

std::optional<Aggregation> ParseAggregation(std::string_view s) {
  if (s == "micro") return Aggregation::kMicro;
  if (s == "macro") return Aggregation::kMacro;
  return std::nullopt;
}

Accuracies Aggregate(std::span<const SampleScore> scores,
                     Aggregation aggregation) {
  if (scores.empty()) throw ValidationError("cannot aggregate zero scores");
  size_t sc = 0, scpos = 0, matched = 0, total = 0;
  double ratio_sum = 0;
  for (const SampleScore& s : scores) {
    sc += s.sc_correct;
    scpos += s.scpos_correct;
    if (s.pos_total > 0) {
      matched += s.pos_matched;
      total += s.pos_total;
    }
    ratio_sum += s.pos_ratio;
  }
  const double n = static_cast<double>(scores.size());
  Accuracies a;
  a.acc_sc = static_cast<double>(sc) / n;
  a.acc_scpos = static_cast<double>(scpos) / n;
  if (aggregation == Aggregation::kMicro) {
    a.acc_pos = total == 0 ? 1.0
                           : static_cast<double>(matched) /
                                 static_cast<double>(total);
  } else {
    a.acc_pos = ratio_sum / n;
  }
  return a;
}

EvalReport AssembleReport(std::vector<std::vector<SampleScore>> per_run_scores,
                          const EvalOptions& options, SchemaId schema) {
  if (per_run_scores.empty()) throw ValidationError("no runs to report");
  EvalReport report;
  report.aggregation = options.aggregation;
  report.mode = options.mode;
  report.schema = schema;
  report.runs = per_run_scores.size();
  const Aggregation other = options.aggregation == Aggregation::kMicro
                                ? Aggregation::kMacro
                                : Aggregation::kMicro;
  std::vector<Accuracies> other_runs;
  for (std::vector<SampleScore>& scores : per_run_scores) {
    report.per_run.push_back(Aggregate(scores, options.aggregation));
    other_runs.push_back(Aggregate(scores, other));
    for (SampleScore& s : scores) {
      report.failed_generations += s.generation_failed;
      report.per_sample.push_back(std::move(s));
    }
  }
  report.mean = MeanOf(report.per_run);
  report.acc_pos_other = MeanOf(other_runs).acc_pos;
  return report;
}

EvalReport RunEvaluation(const std::vector<ScposRecord>& gold,
                         const std::vector<std::string>& prompts,
                         TextGenerator& generator,
                         const GenerationParams& params,
                         const EvalOptions& options) {
  CheckOptions(gold, options);
  if (prompts.size() != gold.size()) {
    throw ValidationError("got " + std::to_string(prompts.size()) +
                          " prompts for " + std::to_string(gold.size()) +
                          " gold records");
  }
  const size_t n = gold.size();
  std::vector<std::vector<SampleScore>> scores(
      options.runs, std::vector<SampleScore>(n));
  std::atomic<size_t> next{0};
  const size_t tasks = n * options.runs;
  auto worker = [&] {
    for (size_t k = next++; k < tasks; k = next++) {
      const int run = static_cast<int>(k / n);
      const size_t i = k % n;
      SampleScore s;
      try {
        InferenceResult r = generator.Generate(prompts[i], params, run);
        s = ScoreSample(gold[i], r.completion, options.mode, options.scoring);
      } catch (const Error&) {
        s = FailedSample(gold[i]);
      }
      s.run = run;
      scores[run][i] = std::move(s);
    }
  };
  const size_t threads = std::clamp<size_t>(options.concurrency, 1, tasks);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return AssembleReport(std::move(scores), options, gold.front().schema);
}

EvalReport RunEvaluation(const std::vector<ScposRecord>& gold,
                         CompletionSource& source, const EvalOptions& options) {
  CheckOptions(gold, options);
  std::vector<std::vector<SampleScore>> scores(options.runs);
  for (size_t run = 0; run < options.runs; ++run) {
    for (size_t i = 0; i < gold.size(); ++i) {
      std::optional<std::string> completion =
          source.Completion(i, static_cast<int>(run));
      SampleScore s = completion ? ScoreSample(gold[i], *completion,
                                               options.mode, options.scoring)
                                 : FailedSample(gold[i]);
      s.run = static_cast<int>(run);
      scores[run].push_back(std::move(s));
    }
  }
  return AssembleReport(std::move(scores), options, gold.front().schema);
}

ReplayCompletions ReplayCompletions::Parse(std::string_view contents,
                                           const std::vector<ScposRecord>& gold) {
  ReplayCompletions replay;
  std::set<std::string> known;
  for (const ScposRecord& r : gold) {
    replay.ids_.push_back(r.id);
    known.insert(r.id);
  }
  size_t line_no = 0;
  size_t start = 0;
  while (start < contents.size()) {
    size_t nl = contents.find('\n', start);
    std::string_view line = nl == std::string_view::npos
                                ? contents.substr(start)
                                : contents.substr(start, nl - start);
    start = nl == std::string_view::npos ? contents.size() : nl + 1;
    ++line_no;
    if (TrimAscii(line).empty()) continue;
    const std::string where = "replay line " + std::to_string(line_no);
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw ValidationError(where + ": malformed JSON");
    }
    if (!j.contains("id") || !j["id"].is_string()) {
      throw ValidationError(where + ": missing string field 'id'");
    }
    const std::string id = j["id"].get<std::string>();
    if (!known.contains(id)) {
      throw ValidationError(where + ": id '" + id + "' is not in the gold set");
    }
    if (!j.contains("completion") || j["completion"].is_null()) continue;
    if (!j["completion"].is_string()) {
      throw ValidationError(where + ": 'completion' is not a string");
    }
    std::string completion = j["completion"].get<std::string>();
    if (j.contains("run") && !j["run"].is_null()) {
      if (!j["run"].is_number_integer()) {
        throw ValidationError(where + ": 'run' is not an integer");
      }
      replay.by_run_[{id, j["run"].get<int>()}] = std::move(completion);
    } else {
      replay.any_run_[id] = std::move(completion);
    }
  }
  return replay;
}

ReplayCompletions ReplayCompletions::Load(const std::filesystem::path& path,
                                          const std::vector<ScposRecord>& gold) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read replay file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str(), gold);
}

std::optional<std::string> ReplayCompletions::Completion(size_t sample,
                                                         int run) {
  if (sample >= ids_.size()) return std::nullopt;
  const std::string& id = ids_[sample];
  if (auto it = by_run_.find({id, run}); it != by_run_.end()) return it->second;
  if (auto it = any_run_.find(id); it != any_run_.end()) return it->second;
  return std::nullopt;
}

ordered_json ReportToJson(const EvalReport& report) {
  auto acc_json = [](const Accuracies& a) {
    ordered_json j;
    j["acc_sc"] = a.acc_sc;
    j["acc_pos"] = a.acc_pos;
    j["acc_scpos"] = a.acc_scpos;
    return j;
  };
  ordered_json j = acc_json(report.mean);
  j["aggregation"] = ToString(report.aggregation);
  j["acc_pos_" + std::string(ToString(report.aggregation == Aggregation::kMicro
                                          ? Aggregation::kMacro
                                          : Aggregation::kMicro))] =
      report.acc_pos_other;
  j["mode"] = ToString(report.mode);
  j["schema"] = ToString(report.schema);
  j["runs"] = report.runs;
  j["failed_generations"] = report.failed_generations;
  ordered_json per_run = ordered_json::array();
  for (const Accuracies& a : report.per_run) per_run.push_back(acc_json(a));
  j["per_run"] = std::move(per_run);
  ordered_json per_sample = ordered_json::array();
  for (const SampleScore& s : report.per_sample) {
    ordered_json sj;
    sj["id"] = s.id;
    sj["run"] = s.run;
    sj["sc_correct"] = s.sc_correct;
    sj["pos_matched"] = s.pos_matched;
    sj["pos_total"] = s.pos_total;
    sj["pos_ratio"] = s.pos_ratio;
    sj["scpos_correct"] = s.scpos_correct;
    sj["generation_failed"] = s.generation_failed;
    sj["parse_warnings"] = s.parse_warnings;
    per_sample.push_back(std::move(sj));
  }
  j["per_sample"] = std::move(per_sample);
  return j;
}

std::string FormatTable(const std::vector<TableRow>& rows) {
  std::vector<SchemaId> schemas;
  for (SchemaId s : kAllSchemas) {
    if (std::any_of(rows.begin(), rows.end(),
                    [&](const TableRow& r) { return r.schema == s; })) {
      schemas.push_back(s);
    }
  }
  std::vector<std::string> names;
  for (const TableRow& r : rows) {
    if (std::find(names.begin(), names.end(), r.name) == names.end()) {
      names.push_back(r.name);
    }
  }
  size_t name_width = 5;
  for (const std::string& n : names) name_width = std::max(name_width, n.size());
  name_width += 2;

  constexpr int kCell = 11;
  auto pad = [](std::string s, size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
  };
  auto cell = [&](const std::string& s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%*s", kCell, s.c_str());
    return std::string(buf);
  };
  auto percent = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v * 100.0);
    return std::string(buf);
  };

  std::string out = pad("", name_width);
  for (SchemaId s : schemas) out += pad(cell(std::string(ToString(s))), 3 * kCell);
  out += '\n';
  out += pad("Model", name_width);
  for (size_t i = 0; i < schemas.size(); ++i) {
    out += cell("ACC_SC") + cell("ACC_POS") + cell("ACC_SCPOS");
  }
  out += '\n';
  for (const std::string& name : names) {
    std::string line = pad(name, name_width);
    for (SchemaId s : schemas) {
      auto it = std::find_if(rows.begin(), rows.end(), [&](const TableRow& r) {
        return r.name == name && r.schema == s;
      });
      if (it == rows.end()) {
        line += cell("-") + cell("-") + cell("-");
        continue;
      }
      const bool has_sc = it->mode != TaskMode::kPosOnly;
      const bool has_pos = it->mode != TaskMode::kScOnly;
      const bool has_joint = it->mode == TaskMode::kScpos;
      line += cell(has_sc ? percent(it->acc.acc_sc) : "-");
      line += cell(has_pos ? percent(it->acc.acc_pos) : "-");
      line += cell(has_joint ? percent(it->acc.acc_scpos) : "-");
    }
    out += line;
    out += '\n';
  }
  // Strip trailing padding.
  std::string trimmed;
  size_t start = 0;
  while (start < out.size()) {
    size_t nl = out.find('\n', start);
    std::string line = out.substr(start, nl - start);
    line.erase(line.find_last_not_of(' ') + 1);
    trimmed += line;
    trimmed += '\n';
    start = nl + 1;
  }
  return trimmed;
}

}  // namespace scpos
