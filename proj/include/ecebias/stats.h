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

#ifndef ECEBIAS_STATS_H_
#define ECEBIAS_STATS_H_

#include <cstddef>
#include <map>
#include <vector>

#include "ecebias/corpus.h"

namespace ecebias {

// Probability mass over relative positions. Only positions with non-zero
// mass are stored, so the key set is the support.
class PositionDistribution {
 public:
  PositionDistribution() = default;

  // Normalizes non-negative weights; zero weights are dropped. Throws
  // StatsError if a weight is negative or every weight is zero.
  static PositionDistribution FromWeights(
      const std::map<RelativePosition, double> &weights);
  static PositionDistribution FromCounts(
      const std::map<RelativePosition, size_t> &counts);
  static PositionDistribution Delta(RelativePosition p);

  double Mass(RelativePosition p) const;
  const std::map<RelativePosition, double> &masses() const { return mass_; }
  std::vector<RelativePosition> support() const;
  bool empty() const { return mass_.empty(); }
  // Number of causes the distribution was counted from; 0 when it was built
  // from weights.
  size_t total_causes() const { return total_causes_; }

  friend bool operator==(const PositionDistribution &,
                         const PositionDistribution &) = default;

 private:
  std::map<RelativePosition, double> mass_;
  size_t total_causes_ = 0;
};

struct DocLengthStats {
  int min = 0;
  double median = 0;
  int max = 0;
};

struct AuditReport {
  PositionDistribution distribution;
  std::map<RelativePosition, size_t> position_counts;
  std::map<int, size_t> cause_histogram;  // causes per instance -> instances
  size_t n_instances = 0;
  size_t n_causes = 0;
  double single_cause_fraction = 0;
  DocLengthStats doc_length;
  // clause_count - 1 - emotion_index -> instances
  std::map<int, size_t> emotion_offset_from_end;
};

// Per-position cause counts; every cause of a multi-cause instance counts.
std::map<RelativePosition, size_t> PositionCounts(const Corpus &corpus);

// Cause-weighted distribution. Throws StatsError on an empty corpus.
PositionDistribution ComputePositionDistribution(const Corpus &corpus);

std::map<int, size_t> CauseCountHistogram(const Corpus &corpus);

// Throws StatsError on an empty corpus.
AuditReport Audit(const Corpus &corpus);

}  // namespace ecebias

#endif  // ECEBIAS_STATS_H_
