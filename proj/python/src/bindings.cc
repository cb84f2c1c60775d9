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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "scpos/corpus.h"
#include "scpos/error.h"
#include "scpos/evaluator.h"
#include "scpos/format_codec.h"
#include "scpos/inference_client.h"
#include "scpos/lexicon.h"
#include "scpos/matcher.h"
#include "scpos/prompting.h"

namespace py = pybind11;

namespace scpos {
namespace {

template <typename T>
T Parse(std::optional<T> parsed, const char* what, const std::string& value) {
  if (!parsed) throw ValidationError(std::string("unknown ") + what + " '" + value + "'");
  return *parsed;
}

SchemaId Schema(const std::string& s) { return Parse(ParseSchemaId(s), "schema", s); }
TaskMode Mode(const std::string& s) { return Parse(ParseTaskMode(s), "mode", s); }

using PairTuple = std::tuple<std::string, std::string>;

std::vector<PairTuple> PairsToPy(const std::vector<PwPair>& pairs) {
  std::vector<PairTuple> out;
  for (const PwPair& p : pairs) out.emplace_back(std::string(ToString(p.polarity)), p.span);
  return out;
}

std::vector<PwPair> PairsFromPy(const std::vector<PairTuple>& pairs) {
  std::vector<PwPair> out;
  for (const auto& [polarity, span] : pairs) {
    out.push_back({Parse(ParseWordPolarity(polarity), "polarity", polarity), span});
  }
  return out;
}

py::dict ScoreToPy(const SampleScore& s) {
  py::dict d;
  d["id"] = s.id;
  d["run"] = s.run;
  d["sc_correct"] = s.sc_correct;
  d["pos_matched"] = s.pos_matched;
  d["pos_total"] = s.pos_total;
  d["pos_ratio"] = s.pos_ratio;
  d["scpos_correct"] = s.scpos_correct;
  d["generation_failed"] = s.generation_failed;
  d["parse_warnings"] = s.parse_warnings;
  return d;
}

SampleScore ScoreFromPy(const py::dict& d) {
  SampleScore s;
  s.sc_correct = d["sc_correct"].cast<bool>();
  s.pos_matched = d["pos_matched"].cast<size_t>();
  s.pos_total = d["pos_total"].cast<size_t>();
  s.pos_ratio = d["pos_ratio"].cast<double>();
  s.scpos_correct = d["scpos_correct"].cast<bool>();
  if (d.contains("generation_failed")) s.generation_failed = d["generation_failed"].cast<bool>();
  return s;
}

py::tuple LoadResultToPy(LoadResult r) {
  std::vector<std::tuple<size_t, std::string, std::string>> rejections;
  for (const Rejection& x : r.rejections) rejections.emplace_back(x.line_no, x.raw, x.reason);
  return py::make_tuple(std::move(r.lexicon), rejections);
}

}  // namespace
}  // namespace scpos

PYBIND11_MODULE(_core, m) {
  using namespace scpos;
  m.doc() = "SCPOS corpus construction and evaluation toolkit";
  m.attr("__version__") = SCPOS_VERSION;

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<EndpointError>(m, "EndpointError", PyExc_RuntimeError);

  py::class_<ScposRecord>(m, "Record")
      .def(py::init([](std::string text, std::string label,
                       std::vector<PairTuple> pairs, std::string schema, std::string id) {
             ScposRecord r;
             r.text = std::move(text);
             r.text_label = Parse(ParseTextLabel(label), "text label", label);
             r.pairs = PairsFromPy(pairs);
             r.schema = Schema(schema);
             r.id = id.empty() ? ContentId(r.text, r.schema) : std::move(id);
             if (auto err = ValidateRecord(r)) throw ValidationError(*err);
             return r;
           }),
           py::arg("text"), py::arg("label"), py::arg("pairs"), py::arg("schema"),
           py::arg("id") = "")
      .def_readonly("id", &ScposRecord::id)
      .def_readonly("text", &ScposRecord::text)
      .def_property_readonly("label",
                             [](const ScposRecord& r) { return std::string(ToString(r.text_label)); })
      .def_property_readonly("pairs", [](const ScposRecord& r) { return PairsToPy(r.pairs); })
      .def_property_readonly("schema",
                             [](const ScposRecord& r) { return std::string(ToString(r.schema)); })
      .def("to_json", [](const ScposRecord& r) { return RecordToJsonLine(r); })
      .def_static("from_json",
                  [](const std::string& line) {
                    return RecordFromJson(nlohmann::json::parse(line));
                  })
      .def("__eq__", [](const ScposRecord& a, const ScposRecord& b) { return a == b; })
      .def("__repr__", [](const ScposRecord& r) { return "Record(" + RecordToJsonLine(r) + ")"; });

  m.def("read_corpus", &ReadCorpus, py::arg("path"));
  m.def("write_corpus", &WriteCorpus, py::arg("records"), py::arg("path"));

  py::class_<PolarityLexicon>(m, "Lexicon")
      .def("__len__", &PolarityLexicon::size)
      .def("lookup",
           [](const PolarityLexicon& lex,
              const std::string& surface) -> std::optional<std::tuple<std::string, std::string>> {
             const LexiconEntry* e = lex.Find(surface);
             if (!e) return std::nullopt;
             return std::make_tuple(std::string(ToString(e->pos_category)),
                                    std::string(ToString(e->polarity)));
           })
      .def("to_tsv", &PolarityLexicon::ToTsv)
      .def("restrict_to",
           [](const PolarityLexicon& lex, const std::string& schema) {
             return lex.RestrictTo(Schema(schema));
           });

  m.def(
      "load_lexicon",
      [](const std::filesystem::path& path, const std::string& format) {
        return LoadResultToPy(
            LoadLexicon(path, Parse(ParseLexiconFormat(format), "lexicon format", format)));
      },
      py::arg("path"), py::arg("format") = "canonical",
      "Returns (lexicon, [(line_no, raw, reason), ...]).");
  m.def(
      "parse_lexicon",
      [](const std::string& contents, const std::string& format, const std::string& source) {
        return LoadResultToPy(ParseLexicon(
            contents, Parse(ParseLexiconFormat(format), "lexicon format", format), source));
      },
      py::arg("contents"), py::arg("format") = "canonical", py::arg("source_id") = "<memory>");
  m.def(
      "merge_lexicons",
      [](const PolarityLexicon& a, const PolarityLexicon& b, const std::string& policy) {
        MergeResult r =
            Merge(a, b, Parse(ParseConflictPolicy(policy), "conflict policy", policy));
        std::vector<std::string> collisions;
        for (const Collision& c : r.collisions) collisions.push_back(c.surface);
        return py::make_tuple(std::move(r.lexicon), collisions);
      },
      py::arg("a"), py::arg("b"), py::arg("policy") = "prefer_va",
      "Returns (merged lexicon, colliding surfaces).");

  py::class_<MatchAutomaton>(m, "Matcher")
      .def(py::init([](const PolarityLexicon& lex) { return MatchAutomaton::Build(lex); }))
      .def("__len__", &MatchAutomaton::pattern_count)
      .def(
          "match",
          [](const MatchAutomaton& a, const std::string& text) {
            std::vector<std::tuple<size_t, size_t, std::string, std::string>> out;
            for (const MatchSpan& s : a.Match(std::string_view(text))) {
              out.emplace_back(s.start, s.end, s.surface, std::string(ToString(s.entry.polarity)));
            }
            return out;
          },
          py::arg("text"), "Leftmost-longest hits as (start, end, surface, polarity).");

  m.def(
      "annotate",
      [](const std::string& text, const std::string& label, const MatchAutomaton& matcher,
         const std::string& schema, const std::string& id) {
        return Annotate(text, Parse(ParseTextLabel(label), "text label", label), matcher,
                        Schema(schema), id);
      },
      py::arg("text"), py::arg("label"), py::arg("matcher"), py::arg("schema"),
      py::arg("id") = "");

  m.def(
      "encode",
      [](const ScposRecord& r, const std::string& mode) {
        SerializedSequence s = Encode(r, Mode(mode));
        return py::make_tuple(s.input_seq, s.target_seq);
      },
      py::arg("record"), py::arg("mode") = "SCPOS", "Returns (input, target).");
  m.def(
      "decode",
      [](const std::string& generated, const std::string& schema, const std::string& mode) {
        ParsedOutput p = DecodeOutput(generated, Schema(schema), Mode(mode));
        py::dict d;
        d["label"] = p.text_label ? py::cast(std::string(ToString(*p.text_label))) : py::none();
        d["pairs"] = PairsToPy(p.pairs);
        d["warnings"] = p.parse_warnings;
        return d;
      },
      py::arg("generated"), py::arg("schema"), py::arg("mode") = "SCPOS");

  m.def(
      "build_prompt",
      [](const ScposRecord& r, const std::string& mode,
         const std::optional<std::filesystem::path>& template_path,
         const std::vector<ScposRecord>& pool) {
        PromptTemplate t = template_path ? LoadTemplate(*template_path, pool)
                                         : DefaultTemplate(r.schema);
        return BuildPrompt(t, r, Mode(mode));
      },
      py::arg("record"), py::arg("mode") = "SCPOS", py::arg("template_path") = py::none(),
      py::arg("pool") = std::vector<ScposRecord>{});

  m.def(
      "score_sample",
      [](const ScposRecord& gold, const std::string& generated, const std::string& mode,
         bool strict) {
        return ScoreToPy(ScoreSample(gold, generated, Mode(mode), {.strict = strict}));
      },
      py::arg("gold"), py::arg("generated"), py::arg("mode") = "SCPOS",
      py::arg("strict") = false);
  m.def(
      "failed_sample", [](const ScposRecord& gold) { return ScoreToPy(FailedSample(gold)); },
      py::arg("gold"));
  m.def(
      "aggregate",
      [](const std::vector<py::dict>& scores, const std::string& aggregation) {
        std::vector<SampleScore> s;
        for (const py::dict& d : scores) s.push_back(ScoreFromPy(d));
        Accuracies a = Aggregate(
            s, Parse(ParseAggregation(aggregation), "aggregation", aggregation));
        py::dict d;
        d["acc_sc"] = a.acc_sc;
        d["acc_pos"] = a.acc_pos;
        d["acc_scpos"] = a.acc_scpos;
        return d;
      },
      py::arg("scores"), py::arg("aggregation") = "micro");

  m.def(
      "profile",
      [](const std::string& name) {
        GenerationParams p = Profile(name);
        py::dict d;
        d["max_new_tokens"] = p.max_new_tokens;
        d["repetition_penalty"] = p.repetition_penalty;
        d["temperature"] = p.temperature;
        d["top_p"] = p.top_p;
        d["top_k"] = p.top_k;
        return d;
      },
      py::arg("name"));
}
