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

#include "cli.h"

#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"
#include "scpos/corpus.h"
#include "testing.h"

namespace scpos {
namespace {

using testing::Fixture;
using testing::TempDir;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string F(const std::string& name) { return Fixture(name).string(); }

TEST(Cli, VersionAndHelp) {
  Outcome v = Cli({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find(SCPOS_VERSION), std::string::npos);
  EXPECT_EQ(Cli({"--help"}).code, 0);
  EXPECT_EQ(Cli({"eval", "--help"}).code, 0);
}

TEST(Cli, ParseErrorsExitOne) {
  EXPECT_EQ(Cli({"no-such-command"}).code, 1);
  EXPECT_EQ(Cli({"eval"}).code, 1);  // --gold is required
  EXPECT_EQ(Cli({"lexicon", "validate", F("lexicon/n5.tsv"), "--bogus"}).code, 1);
}

TEST(Cli, LexiconValidate) {
  Outcome ok = Cli({"lexicon", "validate", F("lexicon/n5.tsv")});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_NE(ok.out.find("entries=5\trejected=0"), std::string::npos) << ok.out;

  Outcome bad = Cli({"lexicon", "validate", F("lexicon/hundred_one_bad.tsv")});
  EXPECT_EQ(bad.code, 0);
  EXPECT_NE(bad.out.find("rejected=1"), std::string::npos);
  EXPECT_NE(bad.err.find("37"), std::string::npos) << bad.err;
  EXPECT_EQ(Cli({"lexicon", "validate", "--strict", F("lexicon/hundred_one_bad.tsv")}).code, 1);

  Outcome tohoku = Cli({"lexicon", "validate", "--format", "tohoku_noun",
                        F("lexicon/tohoku_noun.txt")});
  EXPECT_EQ(tohoku.code, 0);
  EXPECT_NE(tohoku.out.find("entries=3\trejected=1"), std::string::npos) << tohoku.out;

  Outcome missing = Cli({"lexicon", "validate", "/nonexistent/lex.tsv"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("/nonexistent/lex.tsv"), std::string::npos);
}

TEST(Cli, LexiconMerge) {
  Outcome merged = Cli({"lexicon", "merge", F("lexicon/n5.tsv"), F("lexicon/va5.tsv")});
  EXPECT_EQ(merged.code, 0) << merged.err;
  EXPECT_NE(merged.out.find("merged\tentries=9\tcollisions=1"), std::string::npos)
      << merged.out;
  EXPECT_NE(merged.out.find("collision\t心配"), std::string::npos);

  Outcome strict = Cli({"lexicon", "merge", "--policy", "error", F("lexicon/n5.tsv"),
                        F("lexicon/va5.tsv")});
  EXPECT_NE(strict.code, 0);
  EXPECT_NE(strict.err.find("心配"), std::string::npos) << strict.err;

  EXPECT_EQ(Cli({"lexicon", "merge", F("lexicon/n5.tsv")}).code, 1);
}

TEST(Cli, LexiconConvertRoundTrips) {
  TempDir dir;
  const std::string out = (dir.path() / "va.tsv").string();
  Outcome c = Cli({"lexicon", "convert", "--format", "tohoku_va", F("lexicon/tohoku_va.txt"),
                   "--out", out});
  EXPECT_EQ(c.code, 0) << c.err;
  Outcome v = Cli({"lexicon", "validate", out});
  EXPECT_NE(v.out.find("entries=4\trejected=0"), std::string::npos) << v.out;
}

TEST(Cli, BuildNounCorpus) {
  TempDir dir;
  const std::string out = (dir.path() / "n.jsonl").string();
  Outcome b = Cli({"build", "--schema", "N", "--source", F("source/docs10.jsonl"), "--lexicon",
                   F("lexicon/n5.tsv"), "--out", out});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(b.out, "records\t10\npairs\t17\npositive\t6\nneutral\t4\nnegative\t7\n");

  std::vector<ScposRecord> records = ReadCorpus(out);
  ASSERT_EQ(records.size(), 10u);
  const size_t expected_pairs[] = {2, 3, 1, 0, 1, 3, 0, 3, 1, 3};
  for (size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(records[i].pairs.size(), expected_pairs[i]) << records[i].id;
    EXPECT_EQ(records[i].schema, SchemaId::kN);
  }
  EXPECT_EQ(records[1].id, "d02");
  std::vector<PwPair> d02 = {{WordPolarity::kPositive, "笑顔"},
                             {WordPolarity::kNeutral, "映画"},
                             {WordPolarity::kNegative, "失敗"}};
  EXPECT_EQ(records[1].pairs, d02);

  // Thread count does not change the bytes written.
  const std::string again = (dir.path() / "n2.jsonl").string();
  ASSERT_EQ(Cli({"build", "--schema", "N", "--source", F("source/docs10.jsonl"), "--lexicon",
                 F("lexicon/n5.tsv"), "--out", again, "--threads", "7"})
                .code,
            0);
  EXPECT_EQ(ReadFileToString(out), ReadFileToString(again));
}

TEST(Cli, BuildVaHasNoNeutralBucket) {
  TempDir dir;
  const std::string out = (dir.path() / "va.jsonl").string();
  Outcome b = Cli({"build", "--schema", "VA", "--source", F("source/docs10.jsonl"),
                   "--lexicon", F("lexicon/va5.tsv"), "--out", out});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(b.out.find("neutral"), std::string::npos) << b.out;
  EXPECT_NE(b.out.find("positive\t"), std::string::npos);
  EXPECT_NE(b.out.find("negative\t"), std::string::npos);
}

TEST(Cli, BuildRejections) {
  TempDir dir;
  const std::string out = (dir.path() / "x.jsonl").string();
  EXPECT_EQ(Cli({"build", "--schema", "SRW", "--source", F("source/docs10.jsonl"), "--lexicon",
                 F("lexicon/n5.tsv"), "--out", out})
                .code,
            1);
  EXPECT_EQ(Cli({"build", "--schema", "N", "--source", F("source/docs10.jsonl"), "--lexicon",
                 F("lexicon/n5.tsv"), "--out", out, "--sample", "3"})
                .code,
            1);
  Outcome missing = Cli({"build", "--schema", "N", "--source", "/nonexistent/src.jsonl",
                         "--lexicon", F("lexicon/n5.tsv"), "--out", out});
  EXPECT_EQ(missing.code, 2);
}

TEST(Cli, EncodeWritesSequences) {
  TempDir dir;
  const std::string out = (dir.path() / "enc.jsonl").string();
  Outcome e = Cli({"encode", "--corpus", F("replay/gold.jsonl"), "--mode", "SC_ONLY",
                   "--out", out});
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_EQ(e.out, "encoded\t50\n");
  std::istringstream lines(ReadFileToString(out));
  std::string line;
  size_t n = 0;
  while (std::getline(lines, line)) {
    auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("id") && j.contains("input") && j.contains("target"));
    EXPECT_EQ(j["target"].get<std::string>().find("POS"), std::string::npos);
    ++n;
  }
  EXPECT_EQ(n, 50u);
}

TEST(Cli, EvalReplayReproducesTable) {
  TempDir dir;
  const std::string json_out = (dir.path() / "report.json").string();
  const std::string table_out = (dir.path() / "table.txt").string();
  Outcome e = Cli({"eval", "--gold", F("replay/gold.jsonl"), "--replay",
                   F("replay/completions.jsonl"), "--runs", "3", "--name", "fixture",
                   "--out-json", json_out, "--out-table", table_out});
  ASSERT_EQ(e.code, 0) << e.err;
  const std::string expected = ReadFileToString(Fixture("replay/expected_table.txt"));
  EXPECT_EQ(e.out, expected);
  EXPECT_EQ(ReadFileToString(table_out), expected);
  EXPECT_NE(e.err.find("failed"), std::string::npos);

  auto report = nlohmann::json::parse(ReadFileToString(json_out));
  EXPECT_EQ(report["version"], SCPOS_VERSION);
  EXPECT_EQ(report["name"], "fixture");
  EXPECT_EQ(report["runs"], 3);
  EXPECT_TRUE(report["config"].is_object());
  EXPECT_EQ(report["source"].get<std::string>().rfind("replay:", 0), 0u);
  auto sheet = nlohmann::json::parse(ReadFileToString(Fixture("replay/expected.json")));
  EXPECT_NEAR(report["acc_pos"].get<double>(), sheet["mean"]["acc_pos_micro"].get<double>(),
              1e-9);
  EXPECT_NEAR(report["acc_pos_macro"].get<double>(),
              sheet["mean"]["acc_pos_macro"].get<double>(), 1e-9);

  // The table command rebuilds the same table from the report.
  Outcome t = Cli({"table", json_out});
  EXPECT_EQ(t.code, 0) << t.err;
  EXPECT_EQ(t.out, expected);
}

TEST(Cli, EvalMissingGoldNamesPath) {
  Outcome e = Cli({"eval", "--gold", "/nonexistent/gold.jsonl", "--replay",
                   F("replay/completions.jsonl")});
  EXPECT_EQ(e.code, 2);
  EXPECT_NE(e.err.find("/nonexistent/gold.jsonl"), std::string::npos) << e.err;
}

TEST(Cli, EvalWithoutEndpointIsValidationError) {
  Outcome e = Cli({"eval", "--gold", F("replay/gold.jsonl"), "--runs", "1", "--endpoint", ""});
  EXPECT_EQ(e.code, 1) << e.err;
}

TEST(Cli, EvalUnreachableEndpointExitsThree) {
  TempDir dir;
  Outcome e = Cli({"eval", "--gold", F("replay/gold.jsonl"), "--runs", "1",
                   "--endpoint", "http://127.0.0.1:1/v1/chat/completions", "--retries", "0",
                   "--timeout-ms", "500", "--cache-dir", (dir.path() / "cache").string(),
                   "--sample", "2", "--seed", "1"});
  EXPECT_EQ(e.code, 3) << e.err;
}

TEST(Cli, ConfigFileWithOverride) {
  TempDir dir;
  const std::string config = (dir.path() / "config.json").string();
  WriteStringToFile(config, R"({"eval": {"name": "from-config", "aggregate": "macro",
                                           "runs": 3}})");
  const std::string json_out = (dir.path() / "r.json").string();
  Outcome e = Cli({"--config", config, "eval", "--gold", F("replay/gold.jsonl"), "--replay",
                   F("replay/completions.jsonl"), "--out-json", json_out});
  ASSERT_EQ(e.code, 0) << e.err;
  auto report = nlohmann::json::parse(ReadFileToString(json_out));
  EXPECT_EQ(report["name"], "from-config");
  EXPECT_EQ(report["aggregation"], "macro");

  Outcome o = Cli({"--config", config, "eval", "--gold", F("replay/gold.jsonl"), "--replay",
                   F("replay/completions.jsonl"), "--out-json", json_out, "--name", "cli"});
  ASSERT_EQ(o.code, 0) << o.err;
  report = nlohmann::json::parse(ReadFileToString(json_out));
  EXPECT_EQ(report["name"], "cli");
  EXPECT_EQ(report["aggregation"], "macro");
}

TEST(Cli, SampleAndTrainCorpusNeedSeed) {
  TempDir dir;
  const std::string out = (dir.path() / "s.jsonl").string();
  EXPECT_NE(Cli({"sample", "--corpus", F("replay/gold.jsonl"), "--n", "5", "--out", out}).code,
            0);
  Outcome s = Cli({"sample", "--corpus", F("replay/gold.jsonl"), "--n", "5", "--seed", "3",
                   "--out", out});
  ASSERT_EQ(s.code, 0) << s.err;
  const std::string first = ReadFileToString(out);
  ASSERT_EQ(Cli({"sample", "--corpus", F("replay/gold.jsonl"), "--n", "5", "--seed", "3",
                 "--out", out})
                .code,
            0);
  EXPECT_EQ(ReadFileToString(out), first);
  EXPECT_EQ(ReadCorpus(out).size(), 5u);
}

}  // namespace
}  // namespace scpos
