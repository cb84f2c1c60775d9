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

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "scpos/corpus.h"
#include "scpos/error.h"
#include "scpos/evaluator.h"
#include "scpos/format_codec.h"
#include "scpos/inference_client.h"
#include "scpos/lexicon.h"
#include "scpos/matcher.h"
#include "scpos/prompting.h"
#include "scpos/random.h"
#include "scpos/unicode.h"

namespace scpos::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

// JSON config files for CLI11: nested objects name subcommands, leaves are
// option values. Options given on the command line win.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool,
                        std::string) const override {
    return Snapshot(app, default_also).dump(2);
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j = json::parse(input, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
      throw CLI::ConversionError("config file is not a JSON object");
    }
    std::vector<CLI::ConfigItem> items;
    Flatten(j, {}, items);
    return items;
  }

  static ordered_json Snapshot(const CLI::App* app, bool default_also) {
    ordered_json j = ordered_json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (!opt->get_configurable() || opt->get_lnames().empty()) continue;
      if (opt->count() == 0 && !default_also) continue;
      const std::string& name = opt->get_lnames().front();
      if (name == "help" || name == "config" || name == "version") continue;
      const std::vector<std::string>& results = opt->results();
      if (results.empty()) {
        if (!default_also || opt->get_default_str().empty()) continue;
        j[name] = opt->get_default_str();
      } else if (results.size() == 1) {
        j[name] = results.front();
      } else {
        j[name] = results;
      }
    }
    for (const CLI::App* sub : app->get_subcommands()) {
      j[sub->get_name()] = Snapshot(sub, default_also);
    }
    return j;
  }

 private:
  static void Flatten(const json& j, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        std::vector<std::string> nested = parents;
        nested.push_back(key);
        Flatten(value, nested, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      auto scalar = [](const json& v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
      };
      if (value.is_array()) {
        for (const json& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }
};

template <typename T>
T ParseOrThrow(std::optional<T> parsed, const std::string& what,
               const std::string& value) {
  if (!parsed) throw ValidationError("unknown " + what + " '" + value + "'");
  return *parsed;
}

void WriteLines(std::ostream& os, const std::vector<Rejection>& rejections) {
  for (const Rejection& r : rejections) os << RejectionToJson(r) << '\n';
}

// ---------------------------------------------------------------------------
// lexicon

struct LexiconArgs {
  std::vector<std::string> paths;
  std::vector<std::string> formats;
  std::string policy = "prefer_va";
  std::string out;
  std::string rejections;
  bool strict = false;
};

LexiconFormat FormatFor(const LexiconArgs& args, size_t i) {
  if (args.formats.empty()) return LexiconFormat::kCanonical;
  const std::string& name =
      args.formats.size() == 1 ? args.formats.front() : args.formats.at(i);
  return ParseOrThrow(ParseLexiconFormat(name), "lexicon format", name);
}

void CheckFormatCount(const LexiconArgs& args) {
  if (args.formats.size() > 1 && args.formats.size() != args.paths.size()) {
    throw ValidationError("give one --format for all lexicons or one per lexicon");
  }
}

struct LoadedLexicons {
  PolarityLexicon lexicon;
  std::vector<Rejection> rejections;
  std::vector<Collision> collisions;
};

LoadedLexicons LoadAndMerge(const LexiconArgs& args, std::ostream& err) {
  CheckFormatCount(args);
  const ConflictPolicy policy =
      ParseOrThrow(ParseConflictPolicy(args.policy), "conflict policy", args.policy);
  LoadedLexicons loaded;
  for (size_t i = 0; i < args.paths.size(); ++i) {
    LoadResult r = LoadLexicon(args.paths[i], FormatFor(args, i));
    if (!r.rejections.empty()) {
      err << args.paths[i] << ": " << r.rejections.size() << " rejected line(s)\n";
    }
    loaded.rejections.insert(loaded.rejections.end(), r.rejections.begin(),
                             r.rejections.end());
    if (i == 0) {
      loaded.lexicon = std::move(r.lexicon);
      continue;
    }
    MergeResult m = Merge(loaded.lexicon, r.lexicon, policy);
    loaded.lexicon = std::move(m.lexicon);
    loaded.collisions.insert(loaded.collisions.end(), m.collisions.begin(),
                             m.collisions.end());
  }
  return loaded;
}

int CmdLexiconValidate(const LexiconArgs& args, std::ostream& out,
                       std::ostream& err) {
  CheckFormatCount(args);
  size_t rejected = 0;
  std::ofstream rejections_file;
  if (!args.rejections.empty()) {
    rejections_file.open(args.rejections, std::ios::binary | std::ios::trunc);
    if (!rejections_file) throw IoError("cannot write " + args.rejections);
  }
  for (size_t i = 0; i < args.paths.size(); ++i) {
    LoadResult r = LoadLexicon(args.paths[i], FormatFor(args, i));
    out << args.paths[i] << "\tentries=" << r.lexicon.size()
        << "\trejected=" << r.rejections.size() << '\n';
    WriteLines(args.rejections.empty() ? err : rejections_file, r.rejections);
    rejected += r.rejections.size();
  }
  return args.strict && rejected > 0 ? kExitValidation : kExitOk;
}

int CmdLexiconMerge(const LexiconArgs& args, std::ostream& out,
                    std::ostream& err) {
  if (args.paths.size() < 2) {
    throw ValidationError("lexicon merge needs at least two lexicons");
  }
  LoadedLexicons loaded;
  try {
    loaded = LoadAndMerge(args, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  for (const Collision& c : loaded.collisions) {
    out << "collision\t" << c.surface << "\tkept="
        << ToString(c.kept.pos_category) << '/' << ToString(c.kept.polarity)
        << '\n';
  }
  out << "merged\tentries=" << loaded.lexicon.size()
      << "\tcollisions=" << loaded.collisions.size() << '\n';
  if (!args.out.empty()) WriteLexicon(loaded.lexicon, args.out);
  return args.strict && !loaded.rejections.empty() ? kExitValidation : kExitOk;
}

int CmdLexiconConvert(const LexiconArgs& args, std::ostream& out,
                      std::ostream& err) {
  if (args.paths.size() != 1) {
    throw ValidationError("lexicon convert takes exactly one lexicon");
  }
  if (args.out.empty()) throw ValidationError("lexicon convert needs --out");
  LoadResult r = LoadLexicon(args.paths[0], FormatFor(args, 0));
  WriteLines(err, r.rejections);
  WriteLexicon(r.lexicon, args.out);
  out << args.out << "\tentries=" << r.lexicon.size()
      << "\trejected=" << r.rejections.size() << '\n';
  return args.strict && !r.rejections.empty() ? kExitValidation : kExitOk;
}

// ---------------------------------------------------------------------------
// build

struct BuildArgs {
  std::string schema;
  std::string source;
  LexiconArgs lexicons;
  std::string out;
  bool restrict_lexicon = false;
  std::optional<size_t> sample;
  std::optional<uint64_t> seed;
  size_t threads = 1;
};

struct SourceText {
  std::string id;
  std::string text;
  TextLabel label;
};

// Source rows: {"text"|"sentence", "label", ["id"|"review_id"]}.
std::vector<SourceText> ReadSource(const std::string& path) {
  const std::string contents = ReadFileToString(path);
  std::vector<SourceText> rows;
  size_t line_no = 0, start = 0;
  while (start < contents.size()) {
    size_t nl = contents.find('\n', start);
    std::string_view line = std::string_view(contents).substr(
        start, nl == std::string::npos ? std::string::npos : nl - start);
    start = nl == std::string::npos ? contents.size() : nl + 1;
    ++line_no;
    if (TrimAscii(line).empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw ValidationError(where + ": malformed JSON");
    }
    SourceText row;
    const char* text_key = j.contains("text") ? "text" : "sentence";
    if (!j.contains(text_key) || !j[text_key].is_string()) {
      throw ValidationError(where + ": missing 'text' or 'sentence'");
    }
    row.text = j[text_key].get<std::string>();
    if (!j.contains("label") || !j["label"].is_string()) {
      throw ValidationError(where + ": missing string 'label'");
    }
    row.label = ParseOrThrow(ParseTextLabel(j["label"].get<std::string>()),
                             "text label at " + where,
                             j["label"].get<std::string>());
    for (const char* key : {"id", "review_id"}) {
      if (j.contains(key) && j[key].is_string()) {
        row.id = j[key].get<std::string>();
        break;
      }
      if (j.contains(key) && j[key].is_number_integer()) {
        row.id = std::to_string(j[key].get<long long>());
        break;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

int CmdBuild(const BuildArgs& args, std::ostream& out, std::ostream& err) {
  const SchemaId schema =
      ParseOrThrow(ParseSchemaId(args.schema), "schema", args.schema);
  if (schema == SchemaId::kSrw) {
    throw ValidationError(
        "SRW corpora are annotated by hand or by a model; build supports "
        "NVA, N and VA");
  }
  if (args.sample && !args.seed) {
    throw ValidationError("--sample requires --seed");
  }
  LoadedLexicons loaded = LoadAndMerge(args.lexicons, err);
  PolarityLexicon lexicon = args.restrict_lexicon
                                ? loaded.lexicon.RestrictTo(schema)
                                : std::move(loaded.lexicon);
  CheckLexiconForSchema(lexicon, schema);
  const MatchAutomaton automaton = MatchAutomaton::Build(lexicon);

  std::vector<SourceText> rows = ReadSource(args.source);
  if (args.sample) {
    if (*args.sample > rows.size()) {
      throw ValidationError("cannot sample " + std::to_string(*args.sample) +
                            " texts from " + std::to_string(rows.size()));
    }
    std::vector<size_t> index(rows.size());
    for (size_t i = 0; i < index.size(); ++i) index[i] = i;
    DeterministicRng rng(*args.seed);
    for (size_t i = 0; i < *args.sample; ++i) {
      std::swap(index[i], index[i + rng.Below(index.size() - i)]);
    }
    std::vector<SourceText> sampled;
    for (size_t i = 0; i < *args.sample; ++i) sampled.push_back(rows[index[i]]);
    rows = std::move(sampled);
  }

  std::vector<ScposRecord> records(rows.size());
  const size_t threads = std::clamp<size_t>(args.threads, 1, 64);
  {
    std::vector<std::jthread> pool;
    for (size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (size_t i = t; i < rows.size(); i += threads) {
          records[i] = Annotate(rows[i].text, rows[i].label, automaton, schema,
                                rows[i].id);
        }
      });
    }
  }
  WriteCorpus(records, args.out);

  size_t pair_count = 0;
  for (const ScposRecord& r : records) pair_count += r.pairs.size();
  out << "records\t" << records.size() << '\n';
  out << "pairs\t" << pair_count << '\n';
  for (const auto& [label, count] : LabelHistogram(records, schema)) {
    out << ToString(label) << '\t' << count << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// train-corpus, sample, encode, prompt, select-icl

struct TrainArgs {
  std::string srw, n, va, nva, out;
  CorpusManifest manifest;
  std::optional<uint64_t> seed;
};

int CmdTrainCorpus(TrainArgs args, std::ostream& out) {
  if (!args.seed) throw ValidationError("train-corpus requires --seed");
  args.manifest.seed = *args.seed;
  std::vector<ScposRecord> corpus =
      BuildTrainCorpus(ReadCorpus(args.srw), ReadCorpus(args.n),
                       ReadCorpus(args.va), ReadCorpus(args.nva), args.manifest);
  WriteCorpus(corpus, args.out);
  std::set<std::string> ids;
  for (const ScposRecord& r : corpus) ids.insert(r.id);
  out << "lines\t" << corpus.size() << '\n';
  out << "distinct\t" << ids.size() << '\n';
  return kExitOk;
}

struct SampleArgs {
  std::string corpus, out;
  size_t n = 1000;
  std::optional<uint64_t> seed;
};

int CmdSample(const SampleArgs& args, std::ostream& out) {
  if (!args.seed) throw ValidationError("sample requires --seed");
  std::vector<ScposRecord> sampled =
      SampleEvalSet(ReadCorpus(args.corpus), args.n, *args.seed);
  WriteCorpus(sampled, args.out);
  out << "records\t" << sampled.size() << '\n';
  return kExitOk;
}

struct EncodeArgs {
  std::string corpus, out;
  std::string mode = "SCPOS";
};

int CmdEncode(const EncodeArgs& args, std::ostream& out) {
  const TaskMode mode = ParseOrThrow(ParseTaskMode(args.mode), "mode", args.mode);
  std::string lines;
  size_t count = 0;
  for (const ScposRecord& r : ReadCorpus(args.corpus)) {
    SerializedSequence seq = Encode(r, mode);
    ordered_json j;
    j["id"] = r.id;
    j["input"] = seq.input_seq;
    j["target"] = seq.target_seq;
    lines += j.dump(-1, ' ', false, json::error_handler_t::replace);
    lines += '\n';
    ++count;
  }
  WriteStringToFile(args.out, lines);
  out << "encoded\t" << count << '\n';
  return kExitOk;
}

struct PromptArgs {
  std::string template_path;
  std::string icl_pool;
  std::string shape;
  bool icl_auto = false;
  std::optional<uint64_t> seed;
  std::optional<size_t> min_chars, max_chars;
  std::string exclude;
};

// Resolves the template for a gold set: file or built-in default, the
// demonstration (by id, or auto-selected), and the requested shape.
PromptTemplate ResolveTemplate(const PromptArgs& args,
                               const std::vector<ScposRecord>& gold,
                               SchemaId schema) {
  std::vector<ScposRecord> pool;
  if (!args.icl_pool.empty()) pool = ReadCorpus(args.icl_pool);
  PromptTemplate tmpl = args.template_path.empty()
                            ? DefaultTemplate(schema)
                            : LoadTemplate(args.template_path, pool);
  if (args.icl_auto) {
    if (!args.seed) throw ValidationError("--icl-auto requires --seed");
    if (pool.empty()) throw ValidationError("--icl-auto requires --icl-pool");
    std::set<std::string> excluded;
    for (const ScposRecord& r : gold) excluded.insert(r.id);
    if (!args.exclude.empty()) {
      for (const ScposRecord& r : ReadCorpus(args.exclude)) excluded.insert(r.id);
    }
    std::vector<ScposRecord> same_schema;
    for (const ScposRecord& r : pool) {
      if (r.schema == schema) same_schema.push_back(r);
    }
    LengthBand band = MediumLengthBand(same_schema);
    if (args.min_chars) band.min_chars = *args.min_chars;
    if (args.max_chars) band.max_chars = *args.max_chars;
    tmpl.icl_record = SelectIclSample(same_schema, excluded, band, *args.seed);
  }
  if (!args.shape.empty()) {
    const PromptShape shape =
        ParseOrThrow(ParsePromptShape(args.shape), "prompt shape", args.shape);
    if (shape == PromptShape::kIlOnly) {
      tmpl.icl_record.reset();
      tmpl.include_instruction = true;
    } else {
      if (!tmpl.icl_record) {
        throw ValidationError("prompt shape " + args.shape +
                              " needs a demonstration record");
      }
      tmpl.include_instruction = shape == PromptShape::kIclIl;
    }
  }
  if (tmpl.icl_record) {
    for (const ScposRecord& r : gold) {
      if (r.id == tmpl.icl_record->id) {
        throw ValidationError("demonstration record '" + r.id +
                              "' is part of the evaluation set");
      }
    }
  }
  return tmpl;
}

SchemaId UniformSchema(const std::vector<ScposRecord>& records,
                       const std::string& path) {
  if (records.empty()) throw ValidationError(path + " holds no records");
  const SchemaId schema = records.front().schema;
  for (const ScposRecord& r : records) {
    if (r.schema != schema) {
      throw ValidationError(path + " mixes schemas " +
                            std::string(ToString(schema)) + " and " +
                            std::string(ToString(r.schema)) +
                            "; evaluate one schema per run");
    }
  }
  return schema;
}

struct PromptCmdArgs {
  std::string corpus, out;
  std::string mode = "SCPOS";
  PromptArgs prompt;
};

int CmdPrompt(const PromptCmdArgs& args, std::ostream& out) {
  const TaskMode mode = ParseOrThrow(ParseTaskMode(args.mode), "mode", args.mode);
  std::vector<ScposRecord> records = ReadCorpus(args.corpus);
  const SchemaId schema = UniformSchema(records, args.corpus);
  const PromptTemplate tmpl = ResolveTemplate(args.prompt, records, schema);
  std::string lines;
  for (const ScposRecord& r : records) {
    ordered_json j;
    j["id"] = r.id;
    j["prompt"] = BuildPrompt(tmpl, r, mode);
    lines += j.dump(-1, ' ', false, json::error_handler_t::replace);
    lines += '\n';
  }
  WriteStringToFile(args.out, lines);
  out << "prompts\t" << records.size() << "\tshape=" << ToString(tmpl.shape())
      << '\n';
  return kExitOk;
}

struct SelectIclArgs {
  std::string pool, exclude;
  std::optional<uint64_t> seed;
  std::optional<size_t> min_chars, max_chars;
};

int CmdSelectIcl(const SelectIclArgs& args, std::ostream& out) {
  if (!args.seed) throw ValidationError("select-icl requires --seed");
  std::vector<ScposRecord> pool = ReadCorpus(args.pool);
  std::set<std::string> excluded;
  if (!args.exclude.empty()) {
    for (const ScposRecord& r : ReadCorpus(args.exclude)) excluded.insert(r.id);
  }
  LengthBand band = MediumLengthBand(pool);
  if (args.min_chars) band.min_chars = *args.min_chars;
  if (args.max_chars) band.max_chars = *args.max_chars;
  out << RecordToJsonLine(SelectIclSample(pool, excluded, band, *args.seed))
      << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// generate, eval, table

struct EndpointArgs {
  std::string endpoint;
  std::string model = "default";
  std::string adapter = "openai_chat";
  std::string cache_dir;
  std::string profile = "usa7b";
  std::optional<int> max_new_tokens;
  int retries = 4;
  int backoff_ms = 500;
  int timeout_ms = 120000;
  size_t max_in_flight = 4;
  int min_interval_ms = 0;
  bool no_extended_sampling = false;
};

EndpointConfig MakeEndpoint(const EndpointArgs& args) {
  EndpointConfig config = EndpointConfig::FromEnvironment();
  if (!args.endpoint.empty()) config.url = args.endpoint;
  config.model_id = args.model;
  config.adapter =
      ParseOrThrow(ParseWireAdapter(args.adapter), "wire adapter", args.adapter);
  config.extended_sampling = !args.no_extended_sampling;
  config.max_retries = args.retries;
  config.initial_backoff = std::chrono::milliseconds(args.backoff_ms);
  config.timeout = std::chrono::milliseconds(args.timeout_ms);
  config.max_in_flight = args.max_in_flight;
  config.min_interval = std::chrono::milliseconds(args.min_interval_ms);
  return config;
}

std::optional<fs::path> CacheDir(const EndpointArgs& args) {
  if (!args.cache_dir.empty()) return fs::path(args.cache_dir);
  if (const char* env = std::getenv("SCPOS_CACHE_DIR"); env && *env) {
    return fs::path(env);
  }
  return std::nullopt;
}

GenerationParams MakeParams(const EndpointArgs& args) {
  GenerationParams params = Profile(args.profile);
  if (args.max_new_tokens) params.max_new_tokens = *args.max_new_tokens;
  if (auto e = params.Validate()) throw ValidationError(*e);
  return params;
}

struct GenerateArgs {
  std::string prompt_file;
  EndpointArgs endpoint;
};

int CmdGenerate(const GenerateArgs& args, std::ostream& out) {
  EndpointConfig config = MakeEndpoint(args.endpoint);
  if (config.url.empty()) {
    throw ValidationError("no endpoint: pass --endpoint or set SCPOS_ENDPOINT");
  }
  InferenceClient client(config, CacheDir(args.endpoint));
  InferenceResult r =
      client.Generate(ReadFileToString(args.prompt_file), MakeParams(args.endpoint));
  out << r.completion << '\n';
  return kExitOk;
}

struct EvalArgs {
  std::string gold;
  std::string mode = "SCPOS";
  size_t runs = 3;
  std::string replay;
  std::string aggregate = "micro";
  std::string out_json;
  std::string out_table;
  std::string name;
  bool strict = false;
  size_t concurrency = 1;
  std::optional<size_t> sample;
  std::optional<uint64_t> seed;
  PromptArgs prompt;
  EndpointArgs endpoint;
};

int CmdEval(const EvalArgs& args, const CLI::App& root, std::ostream& out,
            std::ostream& err) {
  const TaskMode mode = ParseOrThrow(ParseTaskMode(args.mode), "mode", args.mode);
  const Aggregation aggregation = ParseOrThrow(
      ParseAggregation(args.aggregate), "aggregation", args.aggregate);
  if (args.sample && !args.seed) throw ValidationError("--sample requires --seed");

  std::vector<ScposRecord> gold = ReadCorpus(args.gold);
  const SchemaId schema = UniformSchema(gold, args.gold);
  if (args.sample) gold = SampleEvalSet(gold, *args.sample, *args.seed);

  EvalOptions options;
  options.runs = args.runs;
  options.mode = mode;
  options.aggregation = aggregation;
  options.scoring.strict = args.strict;
  options.concurrency = args.concurrency;

  EvalReport report;
  std::string source;
  const bool replay_file = !args.replay.empty() && !fs::is_directory(args.replay);
  if (replay_file) {
    if (!fs::exists(args.replay)) {
      throw IoError("cannot read replay file: " + args.replay);
    }
    ReplayCompletions replay = ReplayCompletions::Load(args.replay, gold);
    report = RunEvaluation(gold, replay, options);
    source = "replay:" + args.replay;
  } else {
    const PromptTemplate tmpl = ResolveTemplate(args.prompt, gold, schema);
    std::vector<std::string> prompts;
    prompts.reserve(gold.size());
    for (const ScposRecord& r : gold) prompts.push_back(BuildPrompt(tmpl, r, mode));
    EndpointConfig config = MakeEndpoint(args.endpoint);
    const bool offline = !args.replay.empty();
    std::optional<fs::path> cache =
        offline ? std::optional<fs::path>(args.replay) : CacheDir(args.endpoint);
    if (!offline && config.url.empty()) {
      throw ValidationError(
          "no endpoint: pass --endpoint, set SCPOS_ENDPOINT, or use --replay");
    }
    InferenceClient client(config, cache, offline);
    report = RunEvaluation(gold, prompts, client, MakeParams(args.endpoint),
                           options);
    source = offline ? "cache-replay:" + args.replay : "endpoint:" + config.url;
    if (!offline && report.failed_generations == report.per_sample.size()) {
      err << "error: every generation failed against " << config.url << '\n';
      return kExitEndpoint;
    }
  }

  const std::string name =
      args.name.empty() ? args.endpoint.model + " " + args.mode : args.name;
  ordered_json j;
  j["name"] = name;
  j["version"] = SCPOS_VERSION;
  j["source"] = source;
  j["config"] = JsonConfig::Snapshot(&root, false);
  const ordered_json metrics = ReportToJson(report);
  for (const auto& [key, value] : metrics.items()) j[key] = value;

  const std::string table = FormatTable({{name, schema, mode, report.mean}});
  if (!args.out_json.empty()) WriteStringToFile(args.out_json, j.dump(2) + "\n");
  if (!args.out_table.empty()) WriteStringToFile(args.out_table, table);
  out << table;
  if (report.failed_generations > 0) {
    err << "warning: " << report.failed_generations
        << " generation(s) failed and scored zero\n";
  }
  return kExitOk;
}

struct TableArgs {
  std::vector<std::string> reports;
  std::string out;
};

int CmdTable(const TableArgs& args, std::ostream& out) {
  std::vector<TableRow> rows;
  for (const std::string& path : args.reports) {
    json j = json::parse(ReadFileToString(path), nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw ValidationError(path + ": not a JSON report");
    }
    try {
      TableRow row;
      row.name = j.at("name").get<std::string>();
      row.schema = ParseOrThrow(ParseSchemaId(j.at("schema").get<std::string>()),
                                "schema", j.at("schema").get<std::string>());
      row.mode = ParseOrThrow(ParseTaskMode(j.at("mode").get<std::string>()),
                              "mode", j.at("mode").get<std::string>());
      row.acc = {j.at("acc_sc").get<double>(), j.at("acc_pos").get<double>(),
                 j.at("acc_scpos").get<double>()};
      rows.push_back(std::move(row));
    } catch (const json::exception& e) {
      throw ValidationError(path + ": " + e.what());
    }
  }
  const std::string table = FormatTable(rows);
  if (!args.out.empty()) WriteStringToFile(args.out, table);
  out << table;
  return kExitOk;
}

void AddLexiconOptions(CLI::App* cmd, LexiconArgs& args, bool positional) {
  if (positional) {
    cmd->add_option("lexicons", args.paths, "Lexicon files")->required();
  } else {
    cmd->add_option("--lexicon", args.paths, "Lexicon file (repeatable)")
        ->required()
        ->allow_extra_args(false);
  }
  cmd->add_option("--format", args.formats,
                  "canonical | tohoku_noun | tohoku_va (one, or one per lexicon)")
      ->allow_extra_args(false);
  cmd->add_option("--policy", args.policy,
                  "Surface collision policy: prefer_va | prefer_n | error")
      ->capture_default_str();
}

void AddPromptOptions(CLI::App* cmd, PromptArgs& args) {
  cmd->add_option("--template", args.template_path, "Prompt template JSON");
  cmd->add_option("--icl-pool", args.icl_pool,
                  "Corpus resolving the template's icl_record_id / auto selection");
  cmd->add_flag("--icl-auto", args.icl_auto,
                "Pick a medium-length demonstration from --icl-pool");
  cmd->add_option("--exclude", args.exclude,
                  "Corpus of ids the demonstration must avoid");
  cmd->add_option("--min-chars", args.min_chars);
  cmd->add_option("--max-chars", args.max_chars);
  cmd->add_option("--shape", args.shape, "icl_il | il_only | icl_only");
}

void AddEndpointOptions(CLI::App* cmd, EndpointArgs& args) {
  cmd->add_option("--endpoint", args.endpoint,
                  "Generation endpoint URL (default $SCPOS_ENDPOINT)");
  cmd->add_option("--model", args.model, "Model id sent to the endpoint")
      ->capture_default_str();
  cmd->add_option("--adapter", args.adapter, "openai_chat | raw")
      ->capture_default_str();
  cmd->add_option("--cache-dir", args.cache_dir,
                  "Response cache directory (default $SCPOS_CACHE_DIR)");
  cmd->add_option("--profile", args.profile, "usa7b | short_output")
      ->capture_default_str();
  cmd->add_option("--max-new-tokens", args.max_new_tokens);
  cmd->add_option("--retries", args.retries)->capture_default_str();
  cmd->add_option("--backoff-ms", args.backoff_ms)->capture_default_str();
  cmd->add_option("--timeout-ms", args.timeout_ms)->capture_default_str();
  cmd->add_option("--max-in-flight", args.max_in_flight)->capture_default_str();
  cmd->add_option("--min-interval-ms", args.min_interval_ms)->capture_default_str();
  cmd->add_flag("--no-extended-sampling", args.no_extended_sampling,
                "Omit top_k and repetition_penalty from chat requests");
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"SCPOS corpus construction and evaluation toolkit", "scpos"};
  app.set_version_flag("--version", std::string(SCPOS_VERSION));
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON config file; command-line flags win");
  app.fallthrough();
  app.require_subcommand(1);

  LexiconArgs lexicon_args;
  CLI::App* lexicon = app.add_subcommand("lexicon", "Polarity lexicon tools");
  lexicon->require_subcommand(1);
  CLI::App* validate = lexicon->add_subcommand("validate", "Load and report rejections");
  AddLexiconOptions(validate, lexicon_args, true);
  validate->add_option("--rejections", lexicon_args.rejections,
                       "Write rejection JSON lines here instead of stderr");
  validate->add_flag("--strict", lexicon_args.strict, "Exit 1 on any rejection");
  CLI::App* merge = lexicon->add_subcommand("merge", "Merge lexicons");
  AddLexiconOptions(merge, lexicon_args, true);
  merge->add_option("--out", lexicon_args.out, "Merged canonical TSV");
  merge->add_flag("--strict", lexicon_args.strict, "Exit 1 on any rejection");
  CLI::App* convert =
      lexicon->add_subcommand("convert", "Convert a dictionary to canonical TSV");
  AddLexiconOptions(convert, lexicon_args, true);
  convert->add_option("--out", lexicon_args.out)->required();
  convert->add_flag("--strict", lexicon_args.strict, "Exit 1 on any rejection");

  BuildArgs build_args;
  CLI::App* build = app.add_subcommand("build", "Annotate source texts by dictionary matching");
  build->add_option("--schema", build_args.schema, "NVA | N | VA")->required();
  build->add_option("--source", build_args.source,
                    "Source JSONL {text|sentence, label, [id]}")
      ->required();
  AddLexiconOptions(build, build_args.lexicons, false);
  build->add_option("--out", build_args.out, "Output corpus JSONL")->required();
  build->add_flag("--restrict", build_args.restrict_lexicon,
                  "Drop lexicon entries whose category the schema excludes");
  build->add_option("--sample", build_args.sample, "Annotate a seeded sample of N texts");
  build->add_option("--seed", build_args.seed);
  build->add_option("--threads", build_args.threads)->capture_default_str();

  TrainArgs train_args;
  CLI::App* train = app.add_subcommand("train-corpus", "Assemble the weighted training corpus");
  train->add_option("--srw", train_args.srw)->required();
  train->add_option("--n", train_args.n)->required();
  train->add_option("--va", train_args.va)->required();
  train->add_option("--nva", train_args.nva)->required();
  train->add_option("--out", train_args.out)->required();
  train->add_option("--srw-count", train_args.manifest.srw_count)->capture_default_str();
  train->add_option("--n-count", train_args.manifest.n_count)->capture_default_str();
  train->add_option("--va-count", train_args.manifest.va_count)->capture_default_str();
  train->add_option("--nva-count", train_args.manifest.nva_count)->capture_default_str();
  train->add_option("--weight", train_args.manifest.srw_weight, "SRW repetition factor")
      ->capture_default_str();
  train->add_option("--seed", train_args.seed);

  SampleArgs sample_args;
  CLI::App* sample = app.add_subcommand("sample", "Seeded evaluation sample");
  sample->add_option("--corpus", sample_args.corpus)->required();
  sample->add_option("--n", sample_args.n)->capture_default_str();
  sample->add_option("--seed", sample_args.seed);
  sample->add_option("--out", sample_args.out)->required();

  EncodeArgs encode_args;
  CLI::App* encode = app.add_subcommand("encode", "Serialize records to input/target sequences");
  encode->add_option("--corpus", encode_args.corpus)->required();
  encode->add_option("--mode", encode_args.mode, "SCPOS | SC_ONLY | POS_ONLY")
      ->capture_default_str();
  encode->add_option("--out", encode_args.out)->required();

  PromptCmdArgs prompt_args;
  CLI::App* prompt = app.add_subcommand("prompt", "Assemble model prompts");
  prompt->add_option("--corpus", prompt_args.corpus)->required();
  prompt->add_option("--mode", prompt_args.mode)->capture_default_str();
  prompt->add_option("--out", prompt_args.out)->required();
  prompt->add_option("--seed", prompt_args.prompt.seed);
  AddPromptOptions(prompt, prompt_args.prompt);

  SelectIclArgs select_args;
  CLI::App* select = app.add_subcommand("select-icl", "Pick a demonstration record");
  select->add_option("--pool", select_args.pool)->required();
  select->add_option("--exclude", select_args.exclude);
  select->add_option("--seed", select_args.seed);
  select->add_option("--min-chars", select_args.min_chars);
  select->add_option("--max-chars", select_args.max_chars);

  GenerateArgs generate_args;
  CLI::App* generate = app.add_subcommand("generate", "Send one prompt file to the endpoint");
  generate->add_option("--prompt-file", generate_args.prompt_file)->required();
  AddEndpointOptions(generate, generate_args.endpoint);

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "Generate, parse and score a gold set");
  eval->add_option("--gold", eval_args.gold, "Gold corpus JSONL")->required();
  eval->add_option("--mode", eval_args.mode, "SCPOS | SC_ONLY | POS_ONLY")
      ->capture_default_str();
  eval->add_option("--runs", eval_args.runs)->capture_default_str();
  eval->add_option("--replay", eval_args.replay,
                   "Completions JSONL, or a response cache directory");
  eval->add_option("--aggregate", eval_args.aggregate, "micro | macro")
      ->capture_default_str();
  eval->add_option("--out-json", eval_args.out_json);
  eval->add_option("--out-table", eval_args.out_table);
  eval->add_option("--name", eval_args.name, "Row label in the table");
  eval->add_flag("--strict", eval_args.strict,
                 "ACC_SCPOS requires exact pair multiset equality");
  eval->add_option("--concurrency", eval_args.concurrency)->capture_default_str();
  eval->add_option("--sample", eval_args.sample);
  eval->add_option("--seed", eval_args.seed);
  AddPromptOptions(eval, eval_args.prompt);
  AddEndpointOptions(eval, eval_args.endpoint);

  TableArgs table_args;
  CLI::App* table = app.add_subcommand("table", "Combine JSON reports into one table");
  table->add_option("reports", table_args.reports)->required();
  table->add_option("--out", table_args.out);

  std::vector<const char*> argv{"scpos"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }
  // eval uses one --seed for sampling and demonstration selection.
  eval_args.prompt.seed = eval_args.seed;

  try {
    if (validate->parsed()) return CmdLexiconValidate(lexicon_args, out, err);
    if (merge->parsed()) return CmdLexiconMerge(lexicon_args, out, err);
    if (convert->parsed()) return CmdLexiconConvert(lexicon_args, out, err);
    if (build->parsed()) return CmdBuild(build_args, out, err);
    if (train->parsed()) return CmdTrainCorpus(train_args, out);
    if (sample->parsed()) return CmdSample(sample_args, out);
    if (encode->parsed()) return CmdEncode(encode_args, out);
    if (prompt->parsed()) return CmdPrompt(prompt_args, out);
    if (select->parsed()) return CmdSelectIcl(select_args, out);
    if (generate->parsed()) return CmdGenerate(generate_args, out);
    if (eval->parsed()) return CmdEval(eval_args, app, out, err);
    if (table->parsed()) return CmdTable(table_args, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(e.category());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace scpos::cli
