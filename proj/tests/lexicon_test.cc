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

#include "scpos/lexicon.h"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "json.hpp"
#include "scpos/error.h"
#include "testing.h"

namespace scpos {
namespace {

using testing::Fixture;
using testing::TempDir;

LexiconEntry E(std::string surface, PosCategory pos, WordPolarity pol) {
  return {std::move(surface), pos, pol};
}

TEST(LexiconLoad, CanonicalTwoEntries) {
  LoadResult r = LoadLexicon(Fixture("lexicon/canonical.tsv"));
  EXPECT_EQ(r.lexicon.size(), 2u);
  EXPECT_TRUE(r.rejections.empty());
  const LexiconEntry* good = r.lexicon.Find("良い");
  ASSERT_NE(good, nullptr);
  EXPECT_EQ(good->pos_category, PosCategory::kAdjective);
  EXPECT_EQ(good->polarity, WordPolarity::kPositive);
  const LexiconEntry* dull = r.lexicon.Find("退屈");
  ASSERT_NE(dull, nullptr);
  EXPECT_EQ(dull->polarity, WordPolarity::kNegative);
}

TEST(LexiconLoad, EmptyFileHasZeroValidEntries) {
  try {
    LoadLexicon(Fixture("lexicon/empty.tsv"));
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("zero valid entries"), std::string::npos);
  }
}

TEST(LexiconLoad, MissingFileIsIoError) {
  EXPECT_THROW(LoadLexicon(Fixture("lexicon/does_not_exist.tsv")), IoError);
}

TEST(LexiconLoad, OneMalformedAmongHundred) {
  LoadResult r = LoadLexicon(Fixture("lexicon/hundred_one_bad.tsv"));
  EXPECT_EQ(r.lexicon.size(), 99u);
  ASSERT_EQ(r.rejections.size(), 1u);
  EXPECT_EQ(r.rejections[0].line_no, 37u);
  EXPECT_EQ(r.rejections[0].raw, "壊れた行\tnoun");
  auto j = nlohmann::json::parse(RejectionToJson(r.rejections[0]));
  EXPECT_EQ(j["line_no"], 37);
  EXPECT_EQ(j["raw"], "壊れた行\tnoun");
  EXPECT_TRUE(j["reason"].is_string());
}

TEST(LexiconLoad, VerbNeutralIsRejected) {
  EXPECT_THROW(LoadLexicon(Fixture("lexicon/verb_neutral.tsv")), ValidationError);
  LoadResult r = ParseLexicon("良い\tverb\tneutral\n退屈\tadjective\tneutral\n"
                              "映画\tnoun\tneutral\n",
                              LexiconFormat::kCanonical, "inline");
  EXPECT_EQ(r.lexicon.size(), 1u);
  EXPECT_EQ(r.rejections.size(), 2u);
}

TEST(LexiconLoad, RejectsExtendedLabelsAndBadColumns) {
  LoadResult r = ParseLexicon(
      "a\tnoun\tXpositive\n"   // outside the dictionary domain
      "b\tnoun\tpositive\tx\n" // four columns
      "c\tadverb\tpositive\n"  // unknown category
      "\n"                     // blank
      "d\tnoun\tpositive\n"
      "d\tnoun\tnegative\n",   // duplicate surface
      LexiconFormat::kCanonical, "inline");
  EXPECT_EQ(r.lexicon.size(), 1u);
  ASSERT_EQ(r.rejections.size(), 5u);
  std::vector<size_t> lines;
  for (const Rejection& x : r.rejections) lines.push_back(x.line_no);
  EXPECT_EQ(lines, (std::vector<size_t>{1, 2, 3, 4, 6}));
}

TEST(LexiconLoad, CountEqualsLinesMinusRejections) {
  std::mt19937_64 rng(7);
  const char* pos[] = {"noun", "verb", "adjective", "bogus"};
  const char* pol[] = {"positive", "neutral", "negative", "Xnegative", "?"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string contents;
    size_t lines = 1 + rng() % 30;
    for (size_t i = 0; i < lines; ++i) {
      contents += "w" + std::to_string(rng() % 25) + "\t" + pos[rng() % 4] +
                  "\t" + pol[rng() % 5];
      if (rng() % 10 == 0) contents += "\textra";
      contents += "\n";
    }
    try {
      LoadResult r = ParseLexicon(contents, LexiconFormat::kCanonical, "rand");
      EXPECT_EQ(r.lexicon.size() + r.rejections.size(), lines);
    } catch (const ValidationError&) {
      // zero valid lines: every line must be rejectable, fine
    }
  }
}

TEST(LexiconLoad, CrlfAndNfc) {
  // "か" + combining dakuten normalizes to "が".
  LoadResult r = ParseLexicon("\u304B\u3099んばる\tverb\tpositive\r\n",
                              LexiconFormat::kCanonical, "inline");
  ASSERT_EQ(r.lexicon.size(), 1u);
  EXPECT_NE(r.lexicon.Find("\u304Cんばる"), nullptr);
}

TEST(LexiconLoad, TohokuNounAdapter) {
  LoadResult r =
      LoadLexicon(Fixture("lexicon/tohoku_noun.txt"), LexiconFormat::kTohokuNoun);
  EXPECT_EQ(r.lexicon.size(), 3u);
  ASSERT_EQ(r.rejections.size(), 1u);
  EXPECT_EQ(r.rejections[0].line_no, 4u);
  EXPECT_EQ(r.lexicon.Find("笑顔")->polarity, WordPolarity::kPositive);
  EXPECT_EQ(r.lexicon.Find("映画")->polarity, WordPolarity::kNeutral);
  EXPECT_EQ(r.lexicon.Find("失敗")->polarity, WordPolarity::kNegative);
  for (const auto& [s, e] : r.lexicon.entries()) {
    EXPECT_EQ(e.pos_category, PosCategory::kNoun);
  }
}

TEST(LexiconLoad, TohokuVerbAdjAdapter) {
  LoadResult r =
      LoadLexicon(Fixture("lexicon/tohoku_va.txt"), LexiconFormat::kTohokuVerbAdj);
  EXPECT_EQ(r.lexicon.size(), 4u);
  ASSERT_EQ(r.rejections.size(), 1u);
  EXPECT_EQ(r.rejections[0].line_no, 5u);
  const LexiconEntry* dull = r.lexicon.Find("退屈だ");
  ASSERT_NE(dull, nullptr);
  EXPECT_EQ(dull->polarity, WordPolarity::kNegative);
  EXPECT_EQ(dull->pos_category, PosCategory::kAdjective);
  EXPECT_EQ(r.lexicon.Find("壊れる")->pos_category, PosCategory::kVerb);
  EXPECT_EQ(r.lexicon.Find("楽しい")->pos_category, PosCategory::kAdjective);
}

TEST(LexiconRoundTrip, LoadSerializeLoadIsIdentity) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<LexiconEntry> entries;
    std::set<std::string> used;
    size_t n = 1 + rng() % 40;
    for (size_t i = 0; i < n; ++i) {
      std::string s = "語" + std::to_string(rng() % 1000);
      if (!used.insert(s).second) continue;
      PosCategory c = static_cast<PosCategory>(rng() % 3);
      WordPolarity p = c == PosCategory::kNoun
                           ? std::array{WordPolarity::kPositive,
                                        WordPolarity::kNeutral,
                                        WordPolarity::kNegative}[rng() % 3]
                           : (rng() % 2 ? WordPolarity::kPositive
                                        : WordPolarity::kNegative);
      entries.push_back(E(s, c, p));
    }
    PolarityLexicon lex = PolarityLexicon::FromEntries(entries);
    TempDir dir;
    WriteLexicon(lex, dir / "lex.tsv");
    LoadResult again = LoadLexicon(dir / "lex.tsv");
    EXPECT_TRUE(again.rejections.empty());
    EXPECT_EQ(again.lexicon.entries(), lex.entries());
  }
}

TEST(LexiconMerge, DisjointUnion) {
  auto a = PolarityLexicon::FromEntries(
      {E("a", PosCategory::kNoun, WordPolarity::kPositive),
       E("b", PosCategory::kNoun, WordPolarity::kNeutral),
       E("c", PosCategory::kNoun, WordPolarity::kNegative)});
  auto b = PolarityLexicon::FromEntries(
      {E("d", PosCategory::kVerb, WordPolarity::kPositive),
       E("e", PosCategory::kVerb, WordPolarity::kNegative),
       E("f", PosCategory::kAdjective, WordPolarity::kPositive),
       E("g", PosCategory::kAdjective, WordPolarity::kNegative)});
  MergeResult m = Merge(a, b);
  EXPECT_EQ(m.lexicon.size(), 7u);
  EXPECT_TRUE(m.collisions.empty());
}

TEST(LexiconMerge, PreferVaKeepsVerb) {
  auto n = PolarityLexicon::FromEntries(
      {E("心配", PosCategory::kNoun, WordPolarity::kNegative)});
  auto va = PolarityLexicon::FromEntries(
      {E("心配", PosCategory::kVerb, WordPolarity::kNegative)});
  for (auto [a, b] : {std::pair{&n, &va}, std::pair{&va, &n}}) {
    MergeResult m = Merge(*a, *b, ConflictPolicy::kPreferVa);
    ASSERT_EQ(m.lexicon.size(), 1u);
    EXPECT_EQ(m.lexicon.Find("心配")->pos_category, PosCategory::kVerb);
    ASSERT_EQ(m.collisions.size(), 1u);
    EXPECT_EQ(m.collisions[0].surface, "心配");
    MergeResult m2 = Merge(*a, *b, ConflictPolicy::kPreferN);
    EXPECT_EQ(m2.lexicon.Find("心配")->pos_category, PosCategory::kNoun);
  }
}

TEST(LexiconMerge, ErrorPolicyNamesSurface) {
  LoadResult n = LoadLexicon(Fixture("lexicon/n5.tsv"));
  LoadResult va = LoadLexicon(Fixture("lexicon/va5.tsv"));
  try {
    Merge(n.lexicon, va.lexicon, ConflictPolicy::kError);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("心配"), std::string::npos);
  }
}

TEST(LexiconMerge, FixtureSizesFiveAndFive) {
  LoadResult n = LoadLexicon(Fixture("lexicon/n5.tsv"));
  LoadResult va = LoadLexicon(Fixture("lexicon/va5.tsv"));
  MergeResult m = Merge(n.lexicon, va.lexicon);
  EXPECT_EQ(m.lexicon.size(), 9u);
  EXPECT_EQ(m.collisions.size(), 1u);
}

TEST(LexiconMerge, SizeIdentityOnRandomLexicons) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    auto random_lexicon = [&](bool nouns) {
      std::map<std::string, LexiconEntry> m;
      size_t n = 1 + rng() % 20;
      for (size_t i = 0; i < n; ++i) {
        std::string s = "s" + std::to_string(rng() % 30);
        m[s] = nouns || rng() % 3 == 0
                   ? E(s, PosCategory::kNoun, WordPolarity::kNeutral)
                   : E(s, PosCategory::kVerb, WordPolarity::kPositive);
      }
      std::vector<LexiconEntry> v;
      for (auto& [k, e] : m) v.push_back(e);
      return PolarityLexicon::FromEntries(v);
    };
    PolarityLexicon a = random_lexicon(trial % 2 == 0);
    PolarityLexicon b = random_lexicon(false);
    for (ConflictPolicy p : {ConflictPolicy::kPreferVa, ConflictPolicy::kPreferN}) {
      MergeResult m = Merge(a, b, p);
      EXPECT_EQ(m.lexicon.size(), a.size() + b.size() - m.collisions.size());
      for (const Collision& c : m.collisions) {
        EXPECT_EQ(*m.lexicon.Find(c.surface), c.kept);
      }
    }
  }
}

TEST(LexiconRestrict, SchemaCategories) {
  LoadResult n = LoadLexicon(Fixture("lexicon/n5.tsv"));
  LoadResult va = LoadLexicon(Fixture("lexicon/va5.tsv"));
  MergeResult m = Merge(n.lexicon, va.lexicon);
  PolarityLexicon only_n = m.lexicon.RestrictTo(SchemaId::kN);
  PolarityLexicon only_va = m.lexicon.RestrictTo(SchemaId::kVa);
  EXPECT_EQ(only_n.size() + only_va.size(), m.lexicon.size());
  for (const auto& [s, e] : only_n.entries()) {
    EXPECT_EQ(e.pos_category, PosCategory::kNoun);
  }
  for (const auto& [s, e] : only_va.entries()) {
    EXPECT_NE(e.pos_category, PosCategory::kNoun);
  }
  EXPECT_EQ(m.lexicon.RestrictTo(SchemaId::kNva).size(), m.lexicon.size());
}

TEST(LexiconEntries, FromEntriesRejects) {
  EXPECT_THROW(PolarityLexicon::FromEntries(
                   {E("", PosCategory::kNoun, WordPolarity::kPositive)}),
               ValidationError);
  EXPECT_THROW(PolarityLexicon::FromEntries(
                   {E("x", PosCategory::kAdjective, WordPolarity::kNeutral)}),
               ValidationError);
  EXPECT_THROW(PolarityLexicon::FromEntries(
                   {E("x", PosCategory::kNoun, WordPolarity::kPositive),
                    E("x", PosCategory::kNoun, WordPolarity::kNegative)}),
               ValidationError);
}

TEST(LexiconEntries, PolicyNames) {
  for (ConflictPolicy p :
       {ConflictPolicy::kPreferVa, ConflictPolicy::kPreferN, ConflictPolicy::kError}) {
    EXPECT_EQ(ParseConflictPolicy(ToString(p)), p);
  }
  EXPECT_FALSE(ParseConflictPolicy("prefer_both"));
}

}  // namespace
}  // namespace scpos
