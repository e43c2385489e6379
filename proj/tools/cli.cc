// Copyright 2026 The ecebias Authors.
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

// Command-line front end: audit, baseline, eval, lexicon, debias, synth.
//
// Every run writes its report (stdout or --out) and one run record: a JSON
// document holding the resolved configuration, the seed and SHA-256 digests
// of every input and output. The record goes to --record, else to
// <out>.run.json when --out is set, else to stderr.

#include "cli.h"

#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ecebias/baseline.h"
#include "ecebias/corpus.h"
#include "ecebias/debias.h"
#include "ecebias/digest.h"
#include "ecebias/error.h"
#include "ecebias/io.h"
#include "ecebias/lexicon.h"
#include "ecebias/metrics.h"
#include "ecebias/report.h"
#include "ecebias/stats.h"
#include "ecebias/synth.h"

namespace ecebias {
namespace cli {

namespace {

struct GlobalOptions {
  uint64_t seed = 0;
  std::string format = "table";
  std::string out;
  std::string record;
};

class RunRecord {
 public:
  RunRecord(std::string subcommand, const GlobalOptions &global)
      : global_(global) {
    doc_["subcommand"] = std::move(subcommand);
    doc_["toolkit_version"] = ECEBIAS_VERSION;
    doc_["seed"] = global.seed;
    doc_["config"] = Json::object();
    doc_["inputs"] = Json::array();
    doc_["outputs"] = Json::array();
  }

  Json &config() { return doc_["config"]; }

  std::string ReadInput(const std::string &path) {
    std::string data = ReadFile(path);
    doc_["inputs"].push_back({{"path", path}, {"sha256", Sha256Hex(data)}});
    return data;
  }

  void AddOutput(const std::string &name, const std::string &data) {
    doc_["outputs"].push_back({{"path", name}, {"sha256", Sha256Hex(data)}});
  }

  // Writes `data` to `path` atomically, or to `out` when path is empty.
  void Emit(const std::string &path, const std::string &data,
            std::ostream &out) {
    if (path.empty()) {
      out << data;
      AddOutput("<stdout>", data);
    } else {
      WriteFileAtomic(path, data);
      AddOutput(path, data);
    }
  }

  void Finish(std::ostream &err) const {
    const std::string text = doc_.dump(2) + "\n";
    if (!global_.record.empty()) {
      WriteFileAtomic(global_.record, text);
    } else if (!global_.out.empty()) {
      WriteFileAtomic(global_.out + ".run.json", text);
    } else {
      err << text;
    }
  }

 private:
  const GlobalOptions &global_;
  Json doc_;
};

bool WantJson(const GlobalOptions &global) { return global.format == "json"; }

std::string JsonText(const Json &doc) { return doc.dump(2) + "\n"; }

Corpus LoadCorpus(RunRecord &record, const std::string &path,
                  std::ostream &err) {
  std::vector<std::string> warnings;
  Corpus corpus =
      ParseCorpusString(record.ReadInput(path), path, &warnings);
  for (const std::string &w : warnings) err << "warning: " << path << ": " << w << "\n";
  return corpus;
}

// "table2", "preset:NAME" or "file:PATH".
PositionDistribution ResolveDistribution(RunRecord &record,
                                         const std::string &spec) {
  if (spec == "table2") return PresetTarget("original");
  if (spec.rfind("preset:", 0) == 0) return PresetTarget(spec.substr(7));
  if (spec.rfind("file:", 0) == 0) {
    return ParseDistribution(record.ReadInput(spec.substr(5)));
  }
  throw Error("unknown distribution \"" + spec +
              "\" (expected table2, preset:NAME or file:PATH)");
}

CueLexicon ResolveLexicon(RunRecord &record, const std::string &path) {
  if (path.empty()) return DefaultLexicon();
  return ParseLexicon(record.ReadInput(path));
}

// ---- audit ----------------------------------------------------------------

struct AuditOptions {
  std::string corpus;
};

void RunAudit(const AuditOptions &opt, const GlobalOptions &global,
              std::ostream &out, std::ostream &err) {
  RunRecord record("audit", global);
  record.config()["corpus"] = opt.corpus;
  record.config()["format"] = global.format;
  const AuditReport report = Audit(LoadCorpus(record, opt.corpus, err));
  record.Emit(global.out,
              WantJson(global) ? JsonText(AuditToJson(report))
                               : AuditTable(report),
              out);
  record.Finish(err);
}

// ---- baseline -------------------------------------------------------------

struct BaselineOptions {
  std::string corpus;
  int trials = 25;
  double test_fraction = 0.1;
  std::string prior = "train";
  std::string pool = "macro";
  std::string predictor = "sample";
  std::string tie_break = "negative";
};

void RunBaseline(const BaselineOptions &opt, const GlobalOptions &global,
                 std::ostream &out, std::ostream &err) {
  RunRecord record("baseline", global);
  Json &config = record.config();
  config["corpus"] = opt.corpus;
  config["trials"] = opt.trials;
  config["test_fraction"] = opt.test_fraction;
  config["prior"] = opt.prior;
  config["pool"] = opt.pool;
  config["predictor"] = opt.predictor;
  config["tie_break"] = opt.tie_break;
  config["format"] = global.format;

  const Corpus corpus = LoadCorpus(record, opt.corpus, err);
  TrialConfig trial;
  trial.trials = opt.trials;
  trial.test_fraction = opt.test_fraction;
  trial.seed = global.seed;
  if (opt.prior == "train") {
    trial.prior_origin = PriorOrigin::kTrain;
  } else if (opt.prior == "corpus") {
    trial.prior_origin = PriorOrigin::kCorpus;
  } else {
    trial.prior_origin = PriorOrigin::kSupplied;
    trial.supplied_prior = ResolveDistribution(record, opt.prior);
  }
  trial.predictor =
      opt.predictor == "majority" ? Predictor::kMajority : Predictor::kSample;
  trial.tie_break =
      opt.tie_break == "positive" ? TieBreak::kPositive : TieBreak::kNegative;
  const Pool pool = ParsePool(opt.pool);

  const TrialAggregate aggregate = RunTrials(corpus, trial);

  // Closed-form expectation on the whole corpus, for a fixed prior.
  std::optional<EvalScores> expected;
  if (trial.prior_origin != PriorOrigin::kTrain &&
      trial.predictor == Predictor::kSample) {
    const PriorModel prior{trial.prior_origin == PriorOrigin::kSupplied
                               ? *trial.supplied_prior
                               : ComputePositionDistribution(corpus),
                           trial.prior_origin};
    expected = ExpectedScores(corpus, prior);
  }

  std::string text;
  if (WantJson(global)) {
    Json doc = AggregateToJson(aggregate, pool);
    doc["prior_origin"] = PriorOriginName(trial.prior_origin);
    doc["predictor"] = opt.predictor;
    doc["out_of_range_handling"] = "renormalize-over-valid-positions";
    if (expected) doc["expected_scores"] = ScoresToJson(*expected);
    text = JsonText(doc);
  } else {
    std::ostringstream s;
    s << "Predictor: " << opt.predictor
      << "  prior: " << PriorOriginName(trial.prior_origin)
      << "  out-of-range draws: renormalized over valid positions\n\n";
    s << AggregateTable(aggregate, pool);
    if (expected) {
      s << "\nExpected over whole corpus\n" << ScoresTable(*expected);
    }
    text = s.str();
  }
  record.Emit(global.out, text, out);
  record.Finish(err);
}

// ---- eval -----------------------------------------------------------------

struct EvalOptions {
  std::string gold;
  std::string predictions;
};

void RunEval(const EvalOptions &opt, const GlobalOptions &global,
             std::ostream &out, std::ostream &err) {
  RunRecord record("eval", global);
  record.config()["gold"] = opt.gold;
  record.config()["predictions"] = opt.predictions;
  record.config()["format"] = global.format;
  const Corpus gold = LoadCorpus(record, opt.gold, err);
  const Predictions predictions =
      ParsePredictionsString(record.ReadInput(opt.predictions));
  const EvalScores scores = Score(predictions, gold);
  record.Emit(global.out,
              WantJson(global) ? JsonText(ScoresToJson(scores))
                               : ScoresTable(scores),
              out);
  record.Finish(err);
}

// ---- lexicon --------------------------------------------------------------

struct LexiconOptions {
  std::string corpus;
  std::string lexicon;
  std::string match_mode;
  std::string matches;
  bool dump_default = false;
};

void RunLexicon(const LexiconOptions &opt, const GlobalOptions &global,
                std::ostream &out, std::ostream &err) {
  RunRecord record("lexicon", global);
  Json &config = record.config();
  config["corpus"] = opt.corpus;
  config["lexicon"] = opt.lexicon.empty() ? "<default>" : opt.lexicon;
  config["match_mode"] = opt.match_mode;
  config["matches"] = opt.matches;
  config["format"] = global.format;
  if (opt.dump_default) {
    config["dump_default"] = true;
    record.Emit(global.out, LexiconToJson(DefaultLexicon()), out);
    record.Finish(err);
    return;
  }
  if (opt.corpus.empty()) throw Error("--corpus is required");

  CueLexicon lexicon = ResolveLexicon(record, opt.lexicon);
  if (!opt.match_mode.empty()) {
    lexicon.match_mode = ParseMatchMode(opt.match_mode);
  }
  const Corpus corpus = LoadCorpus(record, opt.corpus, err);
  const CoverageReport report = ComputeCoverage(corpus, lexicon);

  if (!opt.matches.empty()) {
    std::string lines;
    for (const Instance &instance : corpus.instances) {
      for (const CueMatch &m : MatchInstance(instance, lexicon)) {
        Json j;
        j["id"] = m.instance_id;
        j["group"] = m.group_id;
        j["anchor"] = m.anchor.value;
        j["cue"] = m.cue;
        j["clause_index"] = m.clause_index;
        j["cause_index"] = m.cause_index;
        j["primary"] = m.primary;
        lines += j.dump() + "\n";
      }
    }
    WriteFileAtomic(opt.matches, lines);
    record.AddOutput(opt.matches, lines);
  }
  record.Emit(global.out,
              WantJson(global) ? JsonText(CoverageToJson(report))
                               : CoverageTable(report),
              out);
  record.Finish(err);
}

// ---- debias ---------------------------------------------------------------

struct DebiasOptions {
  std::string corpus;
  std::string preset;
  std::string target;
  std::optional<int> only;
  double tolerance = 0.02;
  std::string manifest;
};

void RunDebias(const DebiasOptions &opt, const GlobalOptions &global,
               std::ostream &out, std::ostream &err) {
  RunRecord record("debias", global);
  Json &config = record.config();
  config["corpus"] = opt.corpus;
  config["preset"] = opt.preset;
  config["target"] = opt.target;
  config["only"] = opt.only ? Json(*opt.only) : Json(nullptr);
  config["tolerance"] = opt.tolerance;
  config["manifest"] = opt.manifest;
  config["format"] = global.format;
  if (global.out.empty()) throw Error("--out is required for debias");
  const int selectors = !opt.preset.empty() + !opt.target.empty() +
                        opt.only.has_value();
  if (selectors != 1) {
    throw Error("exactly one of --preset, --target or --only is required");
  }

  const Corpus corpus = LoadCorpus(record, opt.corpus, err);
  Corpus result;
  Json manifest;
  if (opt.only) {
    const RelativePosition p(*opt.only);
    result = FilterSinglePosition(corpus, p);
    manifest["source_size"] = corpus.size();
    manifest["position"] = p.value;
    manifest["kept_size"] = result.size();
    Json ids = Json::array();
    for (const Instance &i : result.instances) ids.push_back(i.id);
    manifest["kept_ids"] = std::move(ids);
  } else {
    ResamplePlan plan;
    plan.target = !opt.preset.empty()
                      ? PresetTarget(opt.preset)
                      : ParseDistribution(record.ReadInput(opt.target));
    plan.seed = global.seed;
    plan.tolerance = opt.tolerance;
    ResampleResult rebalanced = Rebalance(corpus, plan);
    result = std::move(rebalanced.corpus);
    manifest = ManifestToJson(rebalanced.manifest);
  }

  const std::string corpus_text = SerializeCorpus(result);
  WriteFileAtomic(global.out, corpus_text);
  record.AddOutput(global.out, corpus_text);
  if (!opt.manifest.empty()) {
    const std::string text = JsonText(manifest);
    WriteFileAtomic(opt.manifest, text);
    record.AddOutput(opt.manifest, text);
  }

  std::string summary;
  if (result.empty()) {
    summary = WantJson(global) ? JsonText({{"kept_size", 0}})
                               : "Kept 0 of " + std::to_string(corpus.size()) +
                                     " instances\n";
  } else {
    const AuditReport audit = Audit(result);
    summary = WantJson(global) ? JsonText(AuditToJson(audit))
                               : "Kept " + std::to_string(result.size()) +
                                     " of " + std::to_string(corpus.size()) +
                                     " instances\n\n" + AuditTable(audit);
  }
  out << summary;
  record.AddOutput("<stdout>", summary);
  record.Finish(err);
}

// ---- synth ----------------------------------------------------------------

struct SynthOptions {
  size_t n = 2105;
  std::string target = "table2";
  std::string doc_len = "4..12";
  bool stretch = false;
  std::string placement = "uniform";
  std::string multi_cause = "2:" + std::to_string(56.0 / 2105.0) + ",3:" +
                            std::to_string(3.0 / 2105.0);
  std::vector<std::string> inject;
  bool sampled = false;
  std::string lexicon;
};

std::map<int, double> ParseDocLength(const std::string &spec) {
  const size_t dots = spec.find("..");
  try {
    if (dots == std::string::npos) {
      const int length = std::stoi(spec);
      return SynthConfig::UniformDocLength(length, length);
    }
    const int lo = std::stoi(spec.substr(0, dots));
    const int hi = std::stoi(spec.substr(dots + 2));
    if (lo > hi) throw Error("");
    return SynthConfig::UniformDocLength(lo, hi);
  } catch (const std::exception &) {
    throw Error("bad --doc-len \"" + spec + "\" (expected LO..HI or N)");
  }
}

std::vector<std::string> SplitOn(const std::string &s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

std::map<int, double> ParseMultiCause(const std::string &spec) {
  std::map<int, double> out;
  if (spec == "none" || spec.empty()) return out;
  for (const std::string &item : SplitOn(spec, ',')) {
    const auto kv = SplitOn(item, ':');
    try {
      if (kv.size() != 2) throw Error("");
      out[std::stoi(kv[0])] = std::stod(kv[1]);
    } catch (const std::exception &) {
      throw Error("bad --multi-cause item \"" + item +
                  "\" (expected K:FRACTION)");
    }
  }
  return out;
}

CueInjection ParseInjection(const std::string &spec) {
  const auto parts = SplitOn(spec, ':');
  try {
    if (parts.size() != 3) throw Error("");
    CueInjection inj;
    inj.anchor = RelativePosition(std::stoi(parts[0]));
    inj.group_id = parts[1];
    inj.rate = std::stod(parts[2]);
    return inj;
  } catch (const std::exception &) {
    throw Error("bad --inject \"" + spec + "\" (expected ANCHOR:GROUP:RATE)");
  }
}

void RunSynth(const SynthOptions &opt, const GlobalOptions &global,
              std::ostream &out, std::ostream &err) {
  RunRecord record("synth", global);
  Json &config = record.config();
  config["n"] = opt.n;
  config["target"] = opt.target;
  config["doc_len"] = opt.doc_len;
  config["stretch"] = opt.stretch;
  config["placement"] = opt.placement;
  config["multi_cause"] = opt.multi_cause;
  config["inject"] = opt.inject;
  config["exact_counts"] = !opt.sampled;
  config["lexicon"] = opt.lexicon.empty() ? "<default>" : opt.lexicon;

  SynthConfig sc;
  sc.n_instances = opt.n;
  sc.position_target = ResolveDistribution(record, opt.target);
  sc.doc_length = ParseDocLength(opt.doc_len);
  sc.stretch_documents = opt.stretch;
  if (opt.placement == "uniform") {
    sc.placement = EmotionPlacement::kFeasibleUniform;
  } else if (opt.placement.rfind("tail:", 0) == 0) {
    sc.placement = EmotionPlacement::kTail;
    try {
      sc.tail_window = std::stoi(opt.placement.substr(5));
    } catch (const std::exception &) {
      throw Error("bad --placement \"" + opt.placement + "\"");
    }
  } else {
    throw Error("bad --placement \"" + opt.placement +
                "\" (expected uniform or tail:K)");
  }
  sc.multi_cause = ParseMultiCause(opt.multi_cause);
  for (const std::string &spec : opt.inject) {
    sc.cue_injection.push_back(ParseInjection(spec));
  }
  sc.exact_counts = !opt.sampled;
  const CueLexicon lexicon = ResolveLexicon(record, opt.lexicon);

  const Corpus corpus = Generate(sc, global.seed, lexicon);
  record.Emit(global.out, SerializeCorpus(corpus), out);
  record.Finish(err);
}

}  // namespace

int Dispatch(const std::vector<std::string> &args, std::ostream &out,
             std::ostream &err) {
  CLI::App app{"Position-bias audit toolkit for clause-level emotion cause "
               "corpora"};
  app.name("ecebias");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Seed for every random draw");
  app.add_option("--format", global.format, "Report format")
      ->check(CLI::IsMember({"json", "table"}));
  app.add_option("--out", global.out, "Output file (default: stdout)");
  app.add_option("--record", global.record,
                 "Run record path (default: <out>.run.json or stderr)");

  std::function<void()> run;

  AuditOptions audit;
  auto *audit_cmd = app.add_subcommand("audit", "Corpus position profile");
  audit_cmd->add_option("--corpus", audit.corpus, "Corpus (JSONL)")
      ->required();
  audit_cmd->callback([&] {
    run = [&] { RunAudit(audit, global, out, err); };
  });

  BaselineOptions baseline;
  auto *baseline_cmd =
      app.add_subcommand("baseline", "Position-only baseline over trials");
  baseline_cmd->add_option("--corpus", baseline.corpus)->required();
  baseline_cmd->add_option("--trials", baseline.trials)
      ->check(CLI::PositiveNumber);
  baseline_cmd->add_option("--test-fraction", baseline.test_fraction);
  baseline_cmd->add_option(
      "--prior", baseline.prior,
      "train, corpus, table2, preset:NAME or file:PATH");
  baseline_cmd->add_option("--pool", baseline.pool)
      ->check(CLI::IsMember({"macro", "micro"}));
  baseline_cmd->add_option("--predictor", baseline.predictor)
      ->check(CLI::IsMember({"sample", "majority"}));
  baseline_cmd->add_option("--tie-break", baseline.tie_break)
      ->check(CLI::IsMember({"negative", "positive"}));
  baseline_cmd->callback([&] {
    run = [&] { RunBaseline(baseline, global, out, err); };
  });

  EvalOptions eval;
  auto *eval_cmd =
      app.add_subcommand("eval", "Score a predictions file against gold");
  eval_cmd->add_option("--gold", eval.gold)->required();
  eval_cmd->add_option("--predictions", eval.predictions)->required();
  eval_cmd->callback([&] { run = [&] { RunEval(eval, global, out, err); }; });

  LexiconOptions lexicon;
  auto *lexicon_cmd =
      app.add_subcommand("lexicon", "Cue-word coverage at -1 and 0");
  lexicon_cmd->add_option("--corpus", lexicon.corpus);
  lexicon_cmd->add_option("--lexicon", lexicon.lexicon,
                          "Lexicon file (default: shipped lexicon)");
  lexicon_cmd->add_option("--match-mode", lexicon.match_mode)
      ->check(CLI::IsMember({"token", "substring"}));
  lexicon_cmd->add_option("--matches", lexicon.matches,
                          "Write every cue match as JSONL");
  lexicon_cmd->add_flag("--dump-default", lexicon.dump_default,
                        "Print the shipped lexicon");
  lexicon_cmd->callback([&] {
    run = [&] { RunLexicon(lexicon, global, out, err); };
  });

  DebiasOptions debias;
  auto *debias_cmd =
      app.add_subcommand("debias", "Stratified downsampling to a target");
  debias_cmd->add_option("--corpus", debias.corpus)->required();
  debias_cmd->add_option("--preset", debias.preset)
      ->check(CLI::IsMember(PresetNames()));
  debias_cmd->add_option("--target", debias.target, "Distribution JSON");
  debias_cmd->add_option("--only", debias.only,
                         "Keep instances whose causes all sit here");
  debias_cmd->add_option("--tolerance", debias.tolerance);
  debias_cmd->add_option("--manifest", debias.manifest);
  debias_cmd->callback([&] {
    run = [&] { RunDebias(debias, global, out, err); };
  });

  SynthOptions synth;
  auto *synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth_cmd->add_option("--n", synth.n)->check(CLI::PositiveNumber);
  synth_cmd->add_option("--target", synth.target,
                        "table2, preset:NAME or file:PATH");
  synth_cmd->add_option("--doc-len", synth.doc_len, "LO..HI or N");
  synth_cmd->add_flag("--stretch", synth.stretch,
                      "Lengthen documents whose causes do not fit");
  synth_cmd->add_option("--placement", synth.placement, "uniform or tail:K");
  synth_cmd->add_option("--multi-cause", synth.multi_cause,
                        "K:FRACTION,... or none");
  synth_cmd->add_option("--inject", synth.inject, "ANCHOR:GROUP:RATE")
      ->allow_extra_args(false);
  synth_cmd->add_flag("--sampled", synth.sampled,
                      "Draw positions i.i.d. instead of exact quotas");
  synth_cmd->add_option("--lexicon", synth.lexicon);
  synth_cmd->callback([&] { run = [&] { RunSynth(synth, global, out, err); }; });

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("ecebias");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char *> argv;
  for (std::string &a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    run();
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace cli
}  // namespace ecebias
