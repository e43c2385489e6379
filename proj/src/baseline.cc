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

#include "ecebias/baseline.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <thread>
#include <vector>

#include "ecebias/error.h"

namespace ecebias {

std::string PriorOriginName(PriorOrigin origin) {
  switch (origin) {
    case PriorOrigin::kSupplied:
      return "supplied";
    case PriorOrigin::kTrain:
      return "estimated-from-train";
    case PriorOrigin::kCorpus:
      return "estimated-from-corpus";
  }
  return "unknown";
}

void ValidateTrialConfig(const TrialConfig &config) {
  if (config.trials < 1) throw BaselineError("trials must be >= 1");
  if (!(config.test_fraction > 0 && config.test_fraction < 1)) {
    throw BaselineError("test fraction must lie strictly between 0 and 1");
  }
  if (config.prior_origin == PriorOrigin::kSupplied &&
      (!config.supplied_prior || config.supplied_prior->empty())) {
    throw BaselineError("supplied prior origin requires a prior");
  }
}

PositionDistribution Renormalize(const PositionDistribution &prior,
                                 std::span<const RelativePosition> valid) {
  if (valid.empty()) throw BaselineError("empty valid position set");
  std::map<RelativePosition, double> restricted;
  double total = 0;
  for (RelativePosition p : valid) {
    const double m = prior.Mass(p);
    restricted[p] = m;
    total += m;
  }
  if (total <= 0) {
    for (auto &[p, m] : restricted) m = 1.0;
  }
  return PositionDistribution::FromWeights(restricted);
}

int SamplePrediction(const Instance &instance, const PriorModel &prior,
                     Rng &rng) {
  const PositionDistribution d =
      Renormalize(prior.distribution, ValidPositions(instance));
  std::vector<RelativePosition> positions;
  std::vector<double> weights;
  for (const auto &[p, m] : d.masses()) {
    positions.push_back(p);
    weights.push_back(m);
  }
  return instance.emotion_index + positions[rng.Weighted(weights)].value;
}

int MajorityPrediction(const Instance &instance, const PriorModel &prior,
                       TieBreak tie_break) {
  const PositionDistribution d =
      Renormalize(prior.distribution, ValidPositions(instance));
  // masses() iterates in ascending position order, so a strict comparison
  // keeps the most negative of tied positions and >= keeps the most positive.
  RelativePosition best;
  double best_mass = -1;
  for (const auto &[p, m] : d.masses()) {
    const bool better = tie_break == TieBreak::kNegative ? m > best_mass
                                                         : m >= best_mass;
    if (better) {
      best = p;
      best_mass = m;
    }
  }
  return instance.emotion_index + best.value;
}

EvalScores ExpectedScores(const Corpus &corpus, const PriorModel &prior) {
  if (corpus.empty()) throw BaselineError("empty corpus");
  double correct = 0;
  double annotated = 0;
  for (const Instance &instance : corpus.instances) {
    const PositionDistribution d =
        Renormalize(prior.distribution, ValidPositions(instance));
    for (RelativePosition p : CausePositions(instance)) correct += d.Mass(p);
    annotated += static_cast<double>(instance.cause_indices.size());
  }
  return ScoresFromCounts(static_cast<double>(corpus.size()), annotated,
                          correct);
}

EvalScores ExpectedScoresUnnormalized(const Corpus &corpus,
                                      const PriorModel &prior) {
  if (corpus.empty()) throw BaselineError("empty corpus");
  double correct = 0;
  double annotated = 0;
  for (const Instance &instance : corpus.instances) {
    for (RelativePosition p : CausePositions(instance)) {
      correct += prior.distribution.Mass(p);
    }
    annotated += static_cast<double>(instance.cause_indices.size());
  }
  return ScoresFromCounts(static_cast<double>(corpus.size()), annotated,
                          correct);
}

PriorModel FitPrior(const Corpus &train, const Corpus &whole,
                    const TrialConfig &config) {
  switch (config.prior_origin) {
    case PriorOrigin::kSupplied:
      return {*config.supplied_prior, PriorOrigin::kSupplied};
    case PriorOrigin::kTrain:
      return {ComputePositionDistribution(train), PriorOrigin::kTrain};
    case PriorOrigin::kCorpus:
      return {ComputePositionDistribution(whole), PriorOrigin::kCorpus};
  }
  throw BaselineError("unknown prior origin");
}

Split SplitCorpus(const Corpus &corpus, double test_fraction, Rng &rng) {
  const size_t n = corpus.size();
  const auto test_size = static_cast<size_t>(
      std::llround(static_cast<double>(n) * test_fraction));
  if (test_size == 0 || test_size >= n) {
    throw BaselineError("corpus of " + std::to_string(n) +
                        " instances is too small for a " +
                        std::to_string(test_fraction) + " test split");
  }
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  rng.Shuffle(std::span<size_t>(order));
  std::vector<bool> in_test(n, false);
  for (size_t i = 0; i < test_size; ++i) in_test[order[i]] = true;

  Split split;
  split.train.source_label = corpus.source_label + " [train]";
  split.test.source_label = corpus.source_label + " [test]";
  split.test.instances.reserve(test_size);
  split.train.instances.reserve(n - test_size);
  for (size_t i = 0; i < n; ++i) {
    (in_test[i] ? split.test : split.train)
        .instances.push_back(corpus.instances[i]);
  }
  return split;
}

EvalScores RunTrial(const Corpus &corpus, const TrialConfig &config,
                    int trial) {
  Rng rng(MixSeed(config.seed, static_cast<uint64_t>(trial)));
  const Split split = SplitCorpus(corpus, config.test_fraction, rng);
  const PriorModel prior = FitPrior(split.train, corpus, config);
  Predictions predictions;
  for (const Instance &instance : split.test.instances) {
    const int index = config.predictor == Predictor::kSample
                          ? SamplePrediction(instance, prior, rng)
                          : MajorityPrediction(instance, prior,
                                               config.tie_break);
    predictions[instance.id] = {index};
  }
  return Score(predictions, split.test);
}

TrialAggregate RunTrials(const Corpus &corpus, const TrialConfig &config) {
  ValidateTrialConfig(config);
  if (corpus.empty()) throw BaselineError("empty corpus");
  // A fixed pool of workers; each result lands in its trial's slot, so the
  // aggregate does not depend on scheduling.
  const size_t trials = static_cast<size_t>(config.trials);
  std::vector<EvalScores> scores(trials);
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t t = next++; t < trials; t = next++) {
      scores[t] = RunTrial(corpus, config, static_cast<int>(t));
    }
  };
  const size_t workers = std::min<size_t>(
      trials, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> pending;
  pending.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    pending.push_back(std::async(std::launch::async, work));
  }
  for (auto &f : pending) f.get();
  return Aggregate(scores);
}

}  // namespace ecebias
