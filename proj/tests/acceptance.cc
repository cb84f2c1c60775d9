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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "matcher_checks.h"
#include "scpos/corpus.h"
#include "scpos/error.h"
#include "scpos/evaluator.h"
#include "scpos/format_codec.h"
#include "scpos/inference_client.h"
#include "scpos/matcher.h"
#include "stub_server.h"
#include "testing.h"

namespace scpos {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;
};

Verdict Fail(std::string why) { return {false, std::move(why)}; }

template <typename... T>
std::string Fmt(const char* format, T... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Verdict CodecRoundTrip() {
  std::mt19937_64 rng(2026);
  std::vector<ScposRecord> records;
  for (int i = 0; i < 10000; ++i) records.push_back(testing::RandomRecord(rng));
  const auto start = Clock::now();
  size_t failures = 0;
  for (const ScposRecord& r : records) {
    ParsedOutput p = DecodeOutput(EncodeTarget(r, TaskMode::kScpos), r.schema, TaskMode::kScpos);
    if (p.text_label != r.text_label || p.pairs != r.pairs) ++failures;
  }
  const double s = Seconds(start);
  std::string detail = Fmt("10000 records, %zu failures, %.3f s", failures, s);
  if (failures != 0 || s >= 5.0) return Fail(detail);
  return {true, detail};
}

Verdict ParserTotality() {
  std::mt19937_64 rng(7);
  const std::string alphabet = "<>POS:;positvenga XN\n\t";
  const auto start = Clock::now();
  size_t aborts = 0, invalid = 0;
  for (int i = 0; i < 100000; ++i) {
    std::string s;
    const size_t len = rng() % 96;
    for (size_t k = 0; k < len; ++k) {
      s += rng() % 2 ? static_cast<char>(rng() % 256) : alphabet[rng() % alphabet.size()];
    }
    const SchemaId schema = kAllSchemas[i % std::size(kAllSchemas)];
    const TaskMode mode = kAllModes[(i / 4) % std::size(kAllModes)];
    try {
      ParsedOutput p = DecodeOutput(s, schema, mode);
      for (const PwPair& pair : p.pairs) {
        if (!SchemaAllows(schema, pair.polarity) || pair.span.empty()) ++invalid;
      }
    } catch (...) {
      ++aborts;
    }
  }
  const double s = Seconds(start);
  std::string detail =
      Fmt("100000 strings, %zu aborts, %zu invalid pairs, %.3f s", aborts, invalid, s);
  if (aborts || invalid || s >= 10.0) return Fail(detail);
  return {true, detail};
}

Verdict MatcherOracle() {
  testing::CheckTally exhaustive = testing::ExhaustiveCheck(12, 3, 3);
  testing::CheckTally random = testing::RandomCheck(10000, 99);
  std::string detail = Fmt("exhaustive %zu cases / %zu mismatches, random %zu / %zu",
                           exhaustive.cases, exhaustive.mismatches, random.cases,
                           random.mismatches);
  if (exhaustive.mismatches || random.mismatches || random.cases != 10000) return Fail(detail);
  return {true, detail};
}

Verdict MetricOracle() {
  const auto gold = ReadCorpus(testing::Fixture("replay/gold.jsonl"));
  const auto sheet =
      nlohmann::json::parse(ReadFileToString(testing::Fixture("replay/expected.json")));
  double worst = 0;
  auto track = [&](double got, const nlohmann::json& want) {
    worst = std::max(worst, std::abs(got - want.get<double>()));
  };
  for (Aggregation agg : {Aggregation::kMicro, Aggregation::kMacro}) {
    const char* pos_key = agg == Aggregation::kMicro ? "acc_pos_micro" : "acc_pos_macro";
    ReplayCompletions replay =
        ReplayCompletions::Load(testing::Fixture("replay/completions.jsonl"), gold);
    EvalOptions options;
    options.runs = 3;
    options.aggregation = agg;
    EvalReport report = RunEvaluation(gold, replay, options);
    track(report.mean.acc_sc, sheet["mean"]["acc_sc"]);
    track(report.mean.acc_pos, sheet["mean"][pos_key]);
    track(report.mean.acc_scpos, sheet["mean"]["acc_scpos"]);
    for (size_t run = 0; run < 3; ++run) {
      track(report.per_run[run].acc_sc, sheet["per_run"][run]["acc_sc"]);
      track(report.per_run[run].acc_pos, sheet["per_run"][run][pos_key]);
      track(report.per_run[run].acc_scpos, sheet["per_run"][run]["acc_scpos"]);
    }
  }
  std::string detail = Fmt("%zu samples x 3 runs, micro and macro, max error %.3g",
                           gold.size(), worst);
  if (gold.size() != 50 || worst > 1e-9) return Fail(detail);
  return {true, detail};
}

Verdict SchemaLaws() {
  const size_t sizes[] = {SchemaLabels(SchemaId::kSrw).size(), SchemaLabels(SchemaId::kNva).size(),
                          SchemaLabels(SchemaId::kN).size(), SchemaLabels(SchemaId::kVa).size()};
  if (sizes[0] != 5 || sizes[1] != 3 || sizes[2] != 3 || sizes[3] != 2) {
    return Fail(Fmt("label set sizes %zu/%zu/%zu/%zu", sizes[0], sizes[1], sizes[2], sizes[3]));
  }
  const char* negatives[] = {"bad_va_neutral", "bad_va_xpositive", "bad_n_xnegative",
                             "bad_nva_xpositive", "bad_srw_unknown", "bad_schema",
                             "bad_text_label", "bad_json"};
  size_t rejected = 0;
  for (const char* name : negatives) {
    const auto path = testing::Fixture(std::string("corpus/") + name + ".jsonl");
    bool threw = false;
    try {
      ReadCorpus(path);
    } catch (const ValidationError&) {
      threw = true;
    }
    CorpusReadResult lenient = ReadCorpusLenient(path);
    if (threw && lenient.records.size() == 1 && lenient.rejections.size() == 1 &&
        lenient.rejections[0].line_no == 2) {
      ++rejected;
    }
  }
  const size_t valid = ReadCorpus(testing::Fixture("corpus/valid_mixed.jsonl")).size();
  std::string detail =
      Fmt("sizes 5/3/3/2, %zu/%zu negative fixtures rejected, valid fixture %zu records",
          rejected, std::size(negatives), valid);
  if (rejected != std::size(negatives) || valid != 5) return Fail(detail);
  return {true, detail};
}

Verdict CorpusArithmetic() {
  auto srw = testing::MakePool(SchemaId::kSrw, 1200, "s");
  auto n = testing::MakePool(SchemaId::kN, 700, "n");
  auto va = testing::MakePool(SchemaId::kVa, 700, "v");
  auto nva = testing::MakePool(SchemaId::kNva, 700, "a");
  CorpusManifest m;
  m.seed = 31;
  auto first = BuildTrainCorpus(srw, n, va, nva, m);
  auto second = BuildTrainCorpus(srw, n, va, nva, m);
  std::set<std::string> ids;
  for (const ScposRecord& r : first) ids.insert(r.id);
  bool same = first.size() == second.size();
  for (size_t i = 0; same && i < first.size(); ++i) same = first[i].id == second[i].id;
  std::string detail = Fmt("%zu lines, %zu distinct ids, %s", first.size(), ids.size(),
                           same ? "identical rerun" : "rerun differs");
  if (first.size() != 3500 || ids.size() != 2500 || !same) return Fail(detail);
  return {true, detail};
}

Verdict Profiles() {
  GenerationParams u = Profile("usa7b");
  GenerationParams s = Profile("short_output");
  const bool ok = u.max_new_tokens == 2000 && u.repetition_penalty == 1.3 &&
                  u.temperature == 1.0 && u.top_p == 0.7 && u.top_k == 40 &&
                  s.max_new_tokens == 400;
  std::string detail = Fmt("usa7b (%d, %.1f, %.1f, %.1f, %d), short_output %d", u.max_new_tokens,
                           u.repetition_penalty, u.temperature, u.top_p, u.top_k,
                           s.max_new_tokens);
  if (!ok) return Fail(detail);
  return {true, detail};
}

Verdict EndToEndStub() {
  std::mt19937_64 rng(11);
  std::vector<ScposRecord> all;
  std::map<SchemaId, std::vector<ScposRecord>> by_schema;
  for (SchemaId schema : kAllSchemas) {
    for (int i = 0; i < 12; ++i) {
      ScposRecord r = testing::RandomRecord(rng, schema);
      r.id = std::string(ToString(schema)) + "-" + std::to_string(i);
      r.text += " " + r.id;  // distinct prompts, so the stub can tell records apart
      by_schema[schema].push_back(r);
      all.push_back(r);
    }
  }
  testing::StubServer server(testing::OracleModel(all));
  testing::TempDir dir;
  const auto start = Clock::now();
  size_t perfect = 0, combos = 0;
  std::string failures;
  for (SchemaId schema : kAllSchemas) {
    const std::string gold = (dir.path() / (std::string(ToString(schema)) + ".jsonl")).string();
    WriteCorpus(by_schema[schema], gold);
    for (TaskMode mode : kAllModes) {
      ++combos;
      const std::string report_path =
          (dir.path() / (std::string(ToString(schema)) + std::string(ToString(mode)) + ".json")).string();
      std::ostringstream out, err;
      const int code = cli::Run(
          {"eval", "--gold", gold, "--mode", std::string(ToString(mode)), "--runs", "3",
           "--endpoint", server.ChatUrl(), "--cache-dir", (dir.path() / "cache").string(),
           "--retries", "0", "--concurrency", "4", "--out-json", report_path},
          out, err);
      if (code != 0) {
        failures += Fmt(" %s/%s exit %d", std::string(ToString(schema)).c_str(),
                        std::string(ToString(mode)).c_str(), code);
        continue;
      }
      auto j = nlohmann::json::parse(ReadFileToString(report_path));
      if (j["acc_sc"] == 1.0 && j["acc_pos"] == 1.0 && j["acc_scpos"] == 1.0 &&
          j["runs"] == 3) {
        ++perfect;
      } else {
        failures += Fmt(" %s/%s (%g, %g, %g)", std::string(ToString(schema)).c_str(),
                        std::string(ToString(mode)).c_str(), j["acc_sc"].get<double>(),
                        j["acc_pos"].get<double>(), j["acc_scpos"].get<double>());
      }
    }
  }
  const double s = Seconds(start);
  std::string detail = Fmt("%zu/%zu schema-mode runs at (1, 1, 1), %d requests, %.2f s",
                           perfect, combos, server.requests(), s) +
                       failures;
  if (perfect != combos || s >= 60.0) return Fail(detail);
  return {true, detail};
}

std::string Utf8(char32_t c) {
  std::string s;
  if (c < 0x80) {
    s += static_cast<char>(c);
  } else if (c < 0x800) {
    s += static_cast<char>(0xC0 | (c >> 6));
    s += static_cast<char>(0x80 | (c & 0x3F));
  } else {
    s += static_cast<char>(0xE0 | (c >> 12));
    s += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
    s += static_cast<char>(0x80 | (c & 0x3F));
  }
  return s;
}

Verdict Throughput() {
  std::mt19937_64 rng(187528);
  // 120 kanji plus 40 hiragana; lexicon surfaces are 2-4 kanji.
  std::vector<std::string> kanji, kana;
  for (char32_t c = 0x4E00; c < 0x4E00 + 120; ++c) kanji.push_back(Utf8(c));
  for (char32_t c = 0x3042; c < 0x3042 + 40; ++c) kana.push_back(Utf8(c));
  std::set<std::string> surfaces;
  while (surfaces.size() < 18000) {
    std::string s;
    for (size_t k = 0, len = 2 + rng() % 3; k < len; ++k) s += kanji[rng() % kanji.size()];
    surfaces.insert(s);
  }
  std::vector<LexiconEntry> entries;
  const WordPolarity polarities[] = {WordPolarity::kPositive, WordPolarity::kNeutral,
                                     WordPolarity::kNegative};
  for (const std::string& s : surfaces) {
    entries.push_back({s, PosCategory::kNoun, polarities[rng() % 3]});
  }
  const PolarityLexicon lexicon = PolarityLexicon::FromEntries(entries);

  const size_t kDocs = 187528;
  double matching = 0;
  size_t chars = 0, pairs = 0;
  const auto build_start = Clock::now();
  const MatchAutomaton automaton = MatchAutomaton::Build(lexicon);
  matching += Seconds(build_start);
  std::string doc;
  for (size_t d = 0; d < kDocs; ++d) {
    doc.clear();
    const size_t len = 250 + rng() % 101;  // mean 300
    for (size_t k = 0; k < len; ++k) {
      doc += rng() % 3 ? kanji[rng() % kanji.size()] : kana[rng() % kana.size()];
    }
    chars += len;
    const auto start = Clock::now();
    ScposRecord r = Annotate(doc, TextLabel::kPositive, automaton, SchemaId::kN);
    matching += Seconds(start);
    pairs += r.pairs.size();
  }
  std::string detail =
      Fmt("%zu docs, mean %.1f chars, %zu entries, %zu pairs, %.1f s single-threaded", kDocs,
          static_cast<double>(chars) / kDocs, lexicon.size(), pairs, matching);
  if (lexicon.size() != 18000 || matching >= 300.0) return Fail(detail);
  return {true, detail};
}

}  // namespace
}  // namespace scpos

int main() {
  using scpos::Verdict;
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"codec round-trip", scpos::CodecRoundTrip},
      {"parser totality", scpos::ParserTotality},
      {"matcher oracle", scpos::MatcherOracle},
      {"metric oracle", scpos::MetricOracle},
      {"schema laws", scpos::SchemaLaws},
      {"corpus arithmetic", scpos::CorpusArithmetic},
      {"generation profiles", scpos::Profiles},
      {"end-to-end stub run", scpos::EndToEndStub},
      {"throughput", scpos::Throughput},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
