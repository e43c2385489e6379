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

// Acceptance suite. Prints one PASS, FAIL or SKIP line per criterion and
// exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "ecebias/baseline.h"
#include "ecebias/corpus.h"
#include "ecebias/debias.h"
#include "ecebias/error.h"
#include "ecebias/io.h"
#include "ecebias/lexicon.h"
#include "ecebias/metrics.h"
#include "ecebias/stats.h"
#include "ecebias/synth.h"

namespace ecebias {
namespace {

namespace fs = std::filesystem;

RelativePosition P(int v) { return RelativePosition(v); }

// Published position percentages of the original benchmark.
const std::map<int, double> kTableTwo = {
    {-10, 0.04}, {-9, 0.04}, {-7, 0.13}, {-6, 0.32}, {-5, 0.32}, {-4, 0.59},
    {-3, 1.70},  {-2, 8.12}, {-1, 54.45}, {0, 23.58}, {1, 7.47},  {2, 2.21},
    {3, 0.50},   {4, 0.18},  {5, 0.09},  {7, 0.04},  {8, 0.09},  {12, 0.04}};
const std::map<int, size_t> kHistogram = {{1, 2046}, {2, 56}, {3, 3}};

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> notes;

  void Require(bool ok, const std::string &what) {
    pass = pass && ok;
    notes.push_back(std::string(ok ? "ok    " : "miss  ") + what);
  }
};

std::string Fixed(double x, int digits = 4) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, x);
  return buffer;
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since)
      .count();
}

SynthConfig CloneConfig() {
  SynthConfig config;
  config.position_target = PresetTarget("original");
  config.stretch_documents = true;
  return config;
}

const Corpus &Clone() {
  static const Corpus clone = Generate(CloneConfig(), 1);
  return clone;
}

PriorModel Supplied(const PositionDistribution &d) {
  return {d, PriorOrigin::kSupplied};
}

double CloneExpectedF1() {
  return ExpectedScores(Clone(), Supplied(PresetTarget("original"))).f1;
}

Outcome CloneFidelity() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const AuditReport report = Audit(Generate(CloneConfig(), 1));
  const double elapsed = Seconds(start);
  double worst = 0;
  for (const auto &[p, percent] : kTableTwo) {
    worst = std::max(worst,
                     std::abs(100 * report.distribution.Mass(P(p)) - percent));
  }
  bool extra = false;
  for (RelativePosition p : report.distribution.support()) {
    extra = extra || kTableTwo.count(p.value) == 0;
  }
  o.Require(worst <= 0.03 && !extra,
            "every position within 0.03 pp (worst " + Fixed(worst, 3) + " pp)");
  o.Require(report.cause_histogram == kHistogram,
            "cause histogram {1: 2046, 2: 56, 3: 3}");
  o.Require(elapsed < 2.0, "runtime " + Fixed(elapsed, 3) + " s < 2 s");
  o.detail = "max deviation " + Fixed(worst, 3) + " pp, " + Fixed(elapsed, 2) + " s";
  return o;
}

Outcome OracleAgreement() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const double oracle = CloneExpectedF1();
  TrialConfig config;
  config.seed = 1;
  config.prior_origin = PriorOrigin::kSupplied;
  config.supplied_prior = PresetTarget("original");
  const double trials = RunTrials(Clone(), config).mean_f1;
  config.trials = 1000;
  config.seed = 2;
  const double monte_carlo = RunTrials(Clone(), config).mean_f1;
  const double elapsed = Seconds(start);
  o.Require(std::abs(trials - oracle) <= 0.03,
            "25-trial mean F1 " + Fixed(trials) + " vs oracle " + Fixed(oracle));
  o.Require(std::abs(monte_carlo - oracle) <= 0.01,
            "1000-repetition mean F1 " + Fixed(monte_carlo) + " vs oracle " +
                Fixed(oracle));
  o.Require(elapsed < 30.0, "runtime " + Fixed(elapsed, 2) + " s < 30 s");
  o.detail = "oracle " + Fixed(oracle) + ", 25 trials " + Fixed(trials) +
             ", 1000 trials " + Fixed(monte_carlo);
  return o;
}

Outcome RenormalizationEffect() {
  Outcome o;
  const PriorModel prior = Supplied(PresetTarget("original"));
  const EvalScores renorm = ExpectedScores(Clone(), prior);
  const EvalScores raw = ExpectedScoresUnnormalized(Clone(), prior);
  o.Require(renorm.f1 >= raw.f1, "renormalized F1 " + Fixed(renorm.f1) +
                                     " >= unnormalized F1 " + Fixed(raw.f1));

  // Without renormalization a hit at p has probability pi(p), so expected
  // recall is the dot product of the prior with the clone's own profile.
  const PositionDistribution own = ComputePositionDistribution(Clone());
  double dot = 0;
  for (const auto &[p, m] : prior.distribution.masses()) dot += m * own.Mass(p);
  double self = 0;
  for (const auto &[p, percent] : kTableTwo) self += percent * percent / 1e4;
  o.Require(std::abs(raw.recall - dot) <= 1e-6,
            "unnormalized recall " + Fixed(raw.recall, 6) + " equals dot product " +
                Fixed(dot, 6));
  o.Require(std::abs(self - 0.365) <= 0.005,
            "published self-product " + Fixed(self) + " ~ 0.365");

  SynthConfig short_docs = CloneConfig();
  short_docs.doc_length = SynthConfig::UniformDocLength(4, 6);
  short_docs.placement = EmotionPlacement::kTail;
  short_docs.tail_window = 2;
  const double short_f1 = ExpectedScores(Generate(short_docs, 1), prior).f1;
  o.Require(short_f1 > 0.50,
            "short documents (4-6 clauses, emotion in last two) F1 " +
                Fixed(short_f1) + " > 0.50");
  o.detail = "renormalized " + Fixed(renorm.f1) + ", unnormalized " +
             Fixed(raw.f1) + ", short documents " + Fixed(short_f1);
  return o;
}

Outcome BalancedRebalance() {
  Outcome o;
  ResamplePlan plan;
  plan.target = PresetTarget("balanced");
  plan.seed = 1;
  plan.tolerance = 0.015;
  ResampleResult result;
  try {
    result = Rebalance(Clone(), plan);
  } catch (const Error &e) {
    o.Require(false, std::string("rebalance failed: ") + e.what());
    o.detail = "rebalance failed";
    return o;
  }
  const size_t n = result.corpus.size();
  o.Require(n >= 700 && n <= 860, "size " + std::to_string(n) + " in [700, 860]");
  const PositionDistribution achieved = ComputePositionDistribution(result.corpus);
  double worst = 0;
  for (const auto &[p, m] : plan.target.masses()) {
    if (m >= 0.01) worst = std::max(worst, std::abs(achieved.Mass(p) - m));
  }
  o.Require(worst <= 0.015, "worst deviation " + Fixed(100 * worst, 3) +
                                " pp <= 1.5 pp at targets >= 1%");
  const double f1 = ExpectedScores(result.corpus, Supplied(plan.target)).f1;
  const double clone_f1 = CloneExpectedF1();
  o.Require(f1 < 0.30, "expected Random F1 " + Fixed(f1) + " < 0.30");
  o.Require(clone_f1 - f1 >= 0.15, "drop from clone " + Fixed(clone_f1 - f1) +
                                       " >= 0.15");
  o.detail = std::to_string(n) + " instances, worst " + Fixed(100 * worst, 2) +
             " pp, F1 " + Fixed(f1);
  return o;
}

Outcome SeriesMonotonicity() {
  Outcome o;
  double previous = 2;
  std::string series;
  for (const std::string &name : PresetNames()) {
    ResamplePlan plan;
    plan.target = PresetTarget(name);
    plan.seed = 1;
    double f1 = 0;
    try {
      f1 = ExpectedScores(Rebalance(Clone(), plan).corpus, Supplied(plan.target)).f1;
    } catch (const Error &e) {
      o.Require(false, name + ": " + e.what());
      continue;
    }
    o.Require(f1 < previous, name + " F1 " + Fixed(f1));
    previous = f1;
    series += (series.empty() ? "" : " > ") + Fixed(f1, 3);
  }
  o.detail = series;
  return o;
}

// Every gold and prediction pair over documents of at most three clauses,
// two instances per corpus, checked against counts taken by hand.
Outcome MetricsIdentities() {
  Outcome o;
  struct Shape {
    int length;
    int emotion;
    std::vector<int> causes;
    std::set<int> predicted;
  };
  std::vector<Shape> shapes;
  for (int length = 1; length <= 3; ++length) {
    for (int emotion = 0; emotion < length; ++emotion) {
      for (int cause_mask = 1; cause_mask < (1 << length); ++cause_mask) {
        for (int pred_mask = 0; pred_mask < (1 << length); ++pred_mask) {
          Shape s{length, emotion, {}, {}};
          for (int c = 0; c < length; ++c) {
            if (cause_mask >> c & 1) s.causes.push_back(c);
            if (pred_mask >> c & 1) s.predicted.insert(c);
          }
          shapes.push_back(std::move(s));
        }
      }
    }
  }
  size_t cases = 0;
  size_t unequal = 0;
  size_t failures = 0;
  for (const Shape &a : shapes) {
    for (const Shape &b : shapes) {
      Corpus gold;
      Predictions predictions;
      size_t proposed = 0;
      size_t annotated = 0;
      size_t correct = 0;
      int k = 0;
      for (const Shape *s : {&a, &b}) {
        const std::string id = "i" + std::to_string(k++);
        std::vector<std::string> texts(static_cast<size_t>(s->length), "t");
        gold.instances.push_back(MakeInstance(id, texts, s->emotion, "", s->causes));
        predictions[id] = s->predicted;
        proposed += s->predicted.size();
        annotated += s->causes.size();
        for (int c : s->predicted) {
          correct += std::count(s->causes.begin(), s->causes.end(), c);
        }
      }
      const EvalScores got = Score(predictions, gold);
      const double p = proposed ? double(correct) / proposed : 0;
      const double r = double(correct) / annotated;
      const double f = p + r > 0 ? 2 * p * r / (p + r) : 0;
      const bool ok = got.proposed == proposed && got.annotated == annotated &&
                      got.correct == correct && std::abs(got.precision - p) < 1e-12 &&
                      std::abs(got.recall - r) < 1e-12 && std::abs(got.f1 - f) < 1e-12;
      failures += ok ? 0 : 1;
      unequal += proposed != annotated ? 1 : 0;
      ++cases;
    }
  }
  o.Require(failures == 0, std::to_string(failures) + " mismatches in " +
                               std::to_string(cases) + " fixtures");
  o.Require(unequal > 0, std::to_string(unequal) +
                             " fixtures with proposed != annotated");
  o.detail = std::to_string(cases) + " fixtures, " + std::to_string(failures) +
             " mismatches";
  return o;
}

Outcome LexiconCoverage() {
  Outcome o;
  const std::vector<std::string> ids = {"I", "II", "III", "IV", "V"};
  const std::map<int, std::vector<double>> rates = {
      {-1, {9.92, 7.20, 12.80, 5.93, 15.34}},
      {0, {27.98, 9.20, 29.55, 6.65, 13.31}}};
  const std::map<int, double> unions = {{-1, 51.19}, {0, 86.69}};
  std::string detail;
  for (const auto &[anchor, row] : rates) {
    SynthConfig config = CloneConfig();
    for (size_t g = 0; g < ids.size(); ++g) {
      config.cue_injection.push_back({P(anchor), ids[g], row[g] / 100});
    }
    const CoverageReport report =
        ComputeCoverage(Generate(config, 1), DefaultLexicon());
    for (const AnchorCoverage &ac : report.anchors) {
      if (ac.anchor != P(anchor)) continue;
      for (size_t g = 0; g < ids.size(); ++g) {
        const double got = 100 * ac.groups[g].fraction;
        o.Require(std::abs(got - row[g]) <= 0.5,
                  "anchor " + ToString(P(anchor)) + " group " + ids[g] + " " +
                      Fixed(got, 2) + "% vs " + Fixed(row[g], 2) + "%");
      }
      const double got = 100 * ac.union_fraction;
      o.Require(std::abs(got - unions.at(anchor)) <= 0.5,
                "anchor " + ToString(P(anchor)) + " union " + Fixed(got, 2) +
                    "% vs " + Fixed(unions.at(anchor), 2) + "%");
      detail += (detail.empty() ? "" : ", ") + ToString(P(anchor)) +
                " union " + Fixed(got, 2) + "%";
    }
  }
  o.detail = detail;
  return o;
}

struct Captured {
  int status;
  std::string out;
  std::string err;
};

Captured Invoke(const std::vector<std::string> &args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli::Dispatch(args, out, err);
  return {status, out.str(), err.str()};
}

Outcome Determinism() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "ecebias_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string corpus = (dir / "clone.jsonl").string();
  const std::string predictions = (dir / "pred.jsonl").string();
  WriteFileAtomic(corpus, SerializeCorpus(Clone()));
  WriteFileAtomic(predictions,
                  "{\"id\": \"syn-0001\", \"predicted_indices\": [0, 1]}\n");

  // Each command writes its main output to run-N/out.* so the runs can be
  // compared file by file, run records included.
  const std::vector<std::vector<std::string>> commands = {
      {"audit", "--corpus", corpus},
      {"baseline", "--corpus", corpus},
      {"baseline", "--corpus", corpus, "--prior", "table2", "--pool", "micro"},
      {"eval", "--gold", corpus, "--predictions", predictions},
      {"lexicon", "--corpus", corpus},
      {"debias", "--corpus", corpus, "--preset", "balanced"},
      {"synth", "--stretch", "--inject", "-1:II:0.072"},
  };
  size_t compared = 0;
  for (size_t c = 0; c < commands.size(); ++c) {
    std::vector<std::string> bytes;
    for (int run = 0; run < 2; ++run) {
      const fs::path run_dir = dir / ("cmd" + std::to_string(c) + "-" +
                                      std::to_string(run));
      fs::create_directories(run_dir);
      const std::string out = (run_dir / "out").string();
      std::vector<std::string> args = {"--seed", "7", "--format", "json",
                                       "--out", out};
      args.insert(args.end(), commands[c].begin(), commands[c].end());
      if (commands[c][0] == "debias") {
        args.push_back("--manifest");
        args.push_back((run_dir / "manifest.json").string());
      }
      const Captured r = Invoke(args);
      std::string all = std::to_string(r.status) + "\n" + r.out + r.err;
      for (const char *name : {"out", "out.run.json", "manifest.json"}) {
        if (fs::exists(run_dir / name)) {
          std::string text = ReadFile((run_dir / name).string());
          // Paths differ between the two runs by construction.
          for (size_t at; (at = text.find(run_dir.string())) != std::string::npos;) {
            text.replace(at, run_dir.string().size(), "<run>");
          }
          for (size_t at; (at = all.find(run_dir.string())) != std::string::npos;) {
            all.replace(at, run_dir.string().size(), "<run>");
          }
          all += "\n--" + std::string(name) + "--\n" + text;
        }
      }
      if (r.status != 0) {
        o.Require(false, commands[c][0] + " exited " + std::to_string(r.status) +
                             ": " + r.err);
      }
      bytes.push_back(all);
    }
    o.Require(bytes[0] == bytes[1], commands[c][0] + " identical across runs");
    ++compared;
  }
  fs::remove_all(dir);
  o.detail = std::to_string(compared) + " commands compared byte for byte";
  return o;
}

// Runs against a user-supplied copy of the original benchmark.
Outcome Benchmark(const std::string &path) {
  Outcome o;
  const Corpus corpus = ReadCorpusFile(path);
  const AuditReport report = Audit(corpus);
  o.Require(report.cause_histogram == kHistogram,
            "cause histogram {1: 2046, 2: 56, 3: 3}");
  double worst = 0;
  for (const auto &[p, percent] : kTableTwo) {
    worst = std::max(worst,
                     std::abs(100 * report.distribution.Mass(P(p)) - percent));
  }
  o.Require(worst <= 0.01, "position percentages within rounding (worst " +
                               Fixed(worst, 3) + " pp)");
  TrialConfig config;
  config.seed = 1;
  config.prior_origin = PriorOrigin::kCorpus;
  const double f1 = RunTrials(corpus, config).mean_f1;
  o.Require(std::abs(f1 - 0.5434) <= 0.04, "Random F1 " + Fixed(f1) + " ~ 0.5434");
  ResamplePlan plan;
  plan.target = PresetTarget("balanced");
  plan.seed = 1;
  try {
    const Corpus balanced = Rebalance(corpus, plan).corpus;
    const double n = static_cast<double>(balanced.size());
    o.Require(std::abs(n - 779) <= 40,
              "balanced size " + std::to_string(balanced.size()) + " ~ 779");
    const double balanced_f1 = RunTrials(balanced, config).mean_f1;
    o.Require(std::abs(balanced_f1 - 0.2404) <= 0.04,
              "balanced Random F1 " + Fixed(balanced_f1) + " ~ 0.2404");
    o.detail = "F1 " + Fixed(f1) + ", balanced " + std::to_string(balanced.size()) +
               " instances, F1 " + Fixed(balanced_f1);
  } catch (const Error &e) {
    o.Require(false, std::string("rebalance failed: ") + e.what());
    o.detail = "F1 " + Fixed(f1) + ", rebalance failed";
  }
  return o;
}

int Main() {
  struct Criterion {
    const char *id;
    const char *name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"A1", "clone fidelity", CloneFidelity},
      {"A2", "oracle agreement", OracleAgreement},
      {"A3", "renormalization effect", RenormalizationEffect},
      {"A4", "balanced rebalance", BalancedRebalance},
      {"A5", "series monotonicity", SeriesMonotonicity},
      {"A6", "metrics identities", MetricsIdentities},
      {"A7", "lexicon coverage", LexiconCoverage},
      {"A8", "determinism", Determinism},
  };
  int failed = 0;
  auto print = [&](const char *id, const char *name, const Outcome &o) {
    std::printf("%s %s  %s: %s\n", id, o.pass ? "PASS" : "FAIL", name,
                o.detail.c_str());
    for (const std::string &note : o.notes) std::printf("     %s\n", note.c_str());
    failed += o.pass ? 0 : 1;
  };
  for (const Criterion &c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    print(c.id, c.name, o);
  }
  const char *benchmark = std::getenv("ECEBIAS_BENCHMARK");
  if (benchmark == nullptr || *benchmark == '\0') {
    std::printf("B1 SKIP  benchmark reproduction: set ECEBIAS_BENCHMARK to a "
                "copy of the original corpus (JSONL)\n");
  } else {
    Outcome o;
    try {
      o = Benchmark(benchmark);
    } catch (const std::exception &e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    print("B1", "benchmark reproduction", o);
  }
  std::printf("%d criterion(s) failed\n", failed);
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace ecebias

int main() { return ecebias::Main(); }
