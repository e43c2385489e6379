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

#include "ecebias/stats.h"

#include <algorithm>
#include <cmath>

#include "ecebias/error.h"

namespace ecebias {

PositionDistribution PositionDistribution::FromWeights(
    const std::map<RelativePosition, double> &weights) {
  double total = 0;
  for (const auto &[p, w] : weights) {
    if (!(w >= 0) || !std::isfinite(w)) {
      throw StatsError("invalid weight at position " + ToString(p));
    }
    total += w;
  }
  if (total <= 0) throw StatsError("distribution has no mass");
  PositionDistribution d;
  for (const auto &[p, w] : weights) {
    if (w > 0) d.mass_[p] = w / total;
  }
  return d;
}

PositionDistribution PositionDistribution::FromCounts(
    const std::map<RelativePosition, size_t> &counts) {
  size_t total = 0;
  for (const auto &[p, c] : counts) total += c;
  if (total == 0) throw StatsError("distribution has no mass");
  PositionDistribution d;
  for (const auto &[p, c] : counts) {
    if (c > 0) {
      d.mass_[p] = static_cast<double>(c) / static_cast<double>(total);
    }
  }
  d.total_causes_ = total;
  return d;
}

PositionDistribution PositionDistribution::Delta(RelativePosition p) {
  PositionDistribution d;
  d.mass_[p] = 1.0;
  return d;
}

double PositionDistribution::Mass(RelativePosition p) const {
  auto it = mass_.find(p);
  return it == mass_.end() ? 0.0 : it->second;
}

std::vector<RelativePosition> PositionDistribution::support() const {
  std::vector<RelativePosition> out;
  out.reserve(mass_.size());
  for (const auto &[p, m] : mass_) out.push_back(p);
  return out;
}

std::map<RelativePosition, size_t> PositionCounts(const Corpus &corpus) {
  std::map<RelativePosition, size_t> counts;
  for (const Instance &instance : corpus.instances) {
    for (RelativePosition p : CausePositions(instance)) ++counts[p];
  }
  return counts;
}

PositionDistribution ComputePositionDistribution(const Corpus &corpus) {
  if (corpus.empty()) throw StatsError("empty corpus");
  return PositionDistribution::FromCounts(PositionCounts(corpus));
}

std::map<int, size_t> CauseCountHistogram(const Corpus &corpus) {
  std::map<int, size_t> histogram;
  for (const Instance &instance : corpus.instances) {
    ++histogram[static_cast<int>(instance.cause_indices.size())];
  }
  return histogram;
}

AuditReport Audit(const Corpus &corpus) {
  if (corpus.empty()) throw StatsError("empty corpus");
  AuditReport report;
  report.position_counts = PositionCounts(corpus);
  report.distribution = PositionDistribution::FromCounts(report.position_counts);
  report.cause_histogram = CauseCountHistogram(corpus);
  report.n_instances = corpus.size();
  for (const auto &[causes, instances] : report.cause_histogram) {
    report.n_causes += static_cast<size_t>(causes) * instances;
  }
  auto single = report.cause_histogram.find(1);
  report.single_cause_fraction =
      single == report.cause_histogram.end()
          ? 0.0
          : static_cast<double>(single->second) /
                static_cast<double>(report.n_instances);

  std::vector<int> lengths;
  lengths.reserve(corpus.size());
  for (const Instance &instance : corpus.instances) {
    lengths.push_back(instance.clause_count());
    ++report.emotion_offset_from_end[instance.clause_count() - 1 -
                                     instance.emotion_index];
  }
  std::sort(lengths.begin(), lengths.end());
  const size_t n = lengths.size();
  report.doc_length.min = lengths.front();
  report.doc_length.max = lengths.back();
  report.doc_length.median =
      n % 2 == 1 ? lengths[n / 2]
                 : (lengths[n / 2 - 1] + lengths[n / 2]) / 2.0;
  return report;
}

}  // namespace ecebias
