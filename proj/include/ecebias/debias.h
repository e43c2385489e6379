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

#ifndef ECEBIAS_DEBIAS_H_
#define ECEBIAS_DEBIAS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ecebias/corpus.h"
#include "ecebias/stats.h"

namespace ecebias {

// Names of the shipped target distributions: the original benchmark
// profile, the graded "-1"-reduction series and the balanced benchmark.
const std::vector<std::string> &PresetNames();

// Throws DebiasError for an unknown name.
PositionDistribution PresetTarget(const std::string &name);

// Instances whose annotated causes all sit at `position`.
Corpus FilterSinglePosition(const Corpus &corpus, RelativePosition position);

// Stratum used for resampling: the cause position nearest the emotion
// clause, ties going to the negative side.
RelativePosition StratumOf(const Instance &instance);

struct ResamplePlan {
  PositionDistribution target;
  uint64_t seed = 0;
  double tolerance = 0.02;  // max |achieved - target| per position
  std::string strategy = "max-feasible-size";
};

struct StratumRecord {
  RelativePosition position;
  double target = 0;
  size_t available = 0;
  size_t kept = 0;
  size_t multi_cause_available = 0;  // multi-cause instances binned here
  size_t multi_cause_kept = 0;
};

struct ResampleManifest {
  std::vector<std::string> kept_ids;  // in corpus order
  std::vector<StratumRecord> strata;  // ascending position order
  size_t source_size = 0;
  size_t target_size = 0;
  PositionDistribution achieved;  // cause-weighted, as Audit() reports it
  ResamplePlan plan;
};

struct ResampleResult {
  Corpus corpus;
  ResampleManifest manifest;
};

// Per-stratum quotas for an output of `total` instances: round-half-up of
// total * target, with any rounding residual absorbed by the stratum of
// largest target mass (ties to the negative side).
std::map<RelativePosition, long> StratumQuotas(
    const PositionDistribution &target, long total);

// Deterministic stratified downsampling. The output size is the largest
// total whose quotas fit every stratum's availability; each stratum keeps a
// seeded without-replacement sample, drawing single-cause members before
// multi-cause ones, and strata outside the target support are dropped.
// Throws DebiasError when a target position has no available instance,
// when no positive size is feasible, or when the achieved distribution
// misses the target by more than the plan tolerance at any position with
// target mass >= 0.01.
ResampleResult Rebalance(const Corpus &corpus, const ResamplePlan &plan);

}  // namespace ecebias

#endif  // ECEBIAS_DEBIAS_H_
