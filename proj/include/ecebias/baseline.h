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

#ifndef ECEBIAS_BASELINE_H_
#define ECEBIAS_BASELINE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "ecebias/corpus.h"
#include "ecebias/metrics.h"
#include "ecebias/rng.h"
#include "ecebias/stats.h"

namespace ecebias {

// Position-only predictors. Nothing in this module reads clause text.

enum class PriorOrigin { kSupplied, kTrain, kCorpus };

std::string PriorOriginName(PriorOrigin origin);

struct PriorModel {
  PositionDistribution distribution;
  PriorOrigin origin = PriorOrigin::kSupplied;
};

enum class TieBreak { kNegative, kPositive };

enum class Predictor { kSample, kMajority };

struct TrialConfig {
  int trials = 25;
  double test_fraction = 0.1;
  uint64_t seed = 0;
  PriorOrigin prior_origin = PriorOrigin::kTrain;
  // Required when prior_origin is kSupplied.
  std::optional<PositionDistribution> supplied_prior;
  Predictor predictor = Predictor::kSample;
  TieBreak tie_break = TieBreak::kNegative;
};

// Throws BaselineError when a field is out of range.
void ValidateTrialConfig(const TrialConfig &config);

// Restricts the prior to `valid` and rescales it to sum to 1. When the prior
// puts no mass on any valid position the result is uniform over `valid`.
// Throws BaselineError if `valid` is empty.
PositionDistribution Renormalize(const PositionDistribution &prior,
                                 std::span<const RelativePosition> valid);

// Draws one relative position from the renormalized prior and returns the
// clause index it lands on.
int SamplePrediction(const Instance &instance, const PriorModel &prior,
                     Rng &rng);

// Clause at the argmax of the renormalized prior.
int MajorityPrediction(const Instance &instance, const PriorModel &prior,
                       TieBreak tie_break = TieBreak::kNegative);

// Closed-form expectation of Score() for one SamplePrediction per instance:
// expected correct = sum over instances of the renormalized mass on that
// instance's cause positions. Throws BaselineError on an empty corpus.
EvalScores ExpectedScores(const Corpus &corpus, const PriorModel &prior);

// The same expectation for a sampler that draws from the raw prior and
// wastes its proposal when the draw falls outside the document. Its recall
// is exactly sum_p corpus(p) * prior(p).
EvalScores ExpectedScoresUnnormalized(const Corpus &corpus,
                                      const PriorModel &prior);

// Fits the prior for one trial according to config.prior_origin.
PriorModel FitPrior(const Corpus &train, const Corpus &whole,
                    const TrialConfig &config);

struct Split {
  Corpus train;
  Corpus test;
};

// Seeded shuffle split; the test side holds round(n * test_fraction)
// instances. Both sides keep original corpus order. Throws BaselineError
// when either side would be empty.
Split SplitCorpus(const Corpus &corpus, double test_fraction, Rng &rng);

// One trial of the evaluation protocol, seeded by MixSeed(seed, trial).
EvalScores RunTrial(const Corpus &corpus, const TrialConfig &config,
                    int trial);

// All trials, executed concurrently; per_trial is ordered by trial index.
TrialAggregate RunTrials(const Corpus &corpus, const TrialConfig &config);

}  // namespace ecebias

#endif  // ECEBIAS_BASELINE_H_
