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

#ifndef ECEBIAS_METRICS_H_
#define ECEBIAS_METRICS_H_

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ecebias/corpus.h"

namespace ecebias {

// Micro-averaged clause-level scores. Counts are doubles so the analytic
// baseline oracle can carry expected (fractional) counts through the same
// type.
struct EvalScores {
  double proposed = 0;
  double annotated = 0;
  double correct = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// precision = correct / proposed, recall = correct / annotated,
// f1 = 2PR / (P + R); each ratio is 0 when its denominator is 0.
EvalScores ScoresFromCounts(double proposed, double annotated, double correct);

using Predictions = std::map<std::string, std::set<int>>;

// A predicted clause is correct when it is any annotated cause of its
// instance. Instances without a prediction entry propose nothing but still
// contribute their annotated causes. Throws MetricsError for an unknown id
// or an out-of-range clause index.
EvalScores Score(const Predictions &predictions, const Corpus &gold);

enum class Pool { kMacro, kMicro };

Pool ParsePool(const std::string &name);
std::string PoolName(Pool pool);

struct TrialAggregate {
  std::vector<EvalScores> per_trial;
  double mean_p = 0;
  double mean_r = 0;
  double mean_f1 = 0;
  double std_f1 = 0;  // sample standard deviation; 0 for a single trial
  // Counts summed over trials, then divided.
  EvalScores pooled;
};

// Throws MetricsError on an empty list.
TrialAggregate Aggregate(const std::vector<EvalScores> &trials);

// The headline precision/recall/F1 under the chosen pooling.
EvalScores Headline(const TrialAggregate &aggregate, Pool pool);

// Predictions file: one {"id": str, "predicted_indices": [int, ...]} per
// line. Repeated ids are rejected.
Predictions ParsePredictions(std::istream &in);
Predictions ParsePredictionsString(const std::string &text);
std::string SerializePredictions(const Predictions &predictions);

}  // namespace ecebias

#endif  // ECEBIAS_METRICS_H_
