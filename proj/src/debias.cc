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

#include "ecebias/debias.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <unordered_set>

#include "ecebias/error.h"
#include "ecebias/rng.h"

namespace ecebias {

namespace {

// Rows shared by every preset column, in ascending position order.
constexpr int kPresetPositions[] = {-10, -9, -7, -6, -5, -4, -3, -2, -1,
                                    0,   1,  2,  3,  4,  5,  7,  8,  12};

struct PresetColumn {
  const char *name;
  double percent[std::size(kPresetPositions)];
};

// Percentages as published; columns are normalized on use because rounding
// leaves each a little short of 100.
constexpr PresetColumn kPresets[] = {
    {"original",
     {0.04, 0.04, 0.13, 0.32, 0.32, 0.59, 1.70, 8.12, 54.45, 23.58, 7.47,
      2.21, 0.50, 0.18, 0.09, 0.04, 0.09, 0.04}},
    {"dataset1",
     {0.05, 0.05, 0.15, 0.36, 0.36, 0.68, 1.79, 8.79, 48.65, 26.90, 8.53,
      2.52, 0.57, 0.21, 0.10, 0.05, 0.10, 0.05}},
    {"dataset2",
     {0.06, 0.06, 0.19, 0.44, 0.44, 0.83, 2.30, 10.44, 44.90, 25.62, 10.24,
      3.07, 0.70, 0.25, 0.18, 0.06, 0.12, 0.06}},
    {"dataset3",
     {0.08, 0.08, 0.26, 0.61, 0.61, 1.05, 2.82, 13.32, 36.71, 24.18, 14.12,
      4.23, 0.97, 0.35, 0.17, 0.08, 0.17, 0.08}},
    {"dataset4",
     {0.10, 0.10, 0.31, 0.74, 0.74, 1.27, 3.72, 15.63, 28.29, 24.04, 17.12,
      5.10, 1.17, 0.42, 0.21, 0.10, 0.21, 0.10}},
    {"balanced",
     {0.12, 0.12, 0.38, 0.89, 0.89, 1.54, 4.10, 18.87, 22.07, 21.69, 20.41,
      6.16, 1.41, 0.51, 0.25, 0.12, 0.25, 0.12}},
};

long RoundHalfUp(double x) {
  return static_cast<long>(std::floor(x + 0.5));
}

// Largest-mass position, ties toward the negative side.
RelativePosition LargestStratum(const PositionDistribution &target) {
  RelativePosition best;
  double best_mass = -1;
  for (const auto &[p, m] : target.masses()) {
    if (m > best_mass) {
      best = p;
      best_mass = m;
    }
  }
  return best;
}

bool Fits(const std::map<RelativePosition, long> &quotas,
          const std::map<RelativePosition, std::vector<size_t>> &strata) {
  for (const auto &[p, q] : quotas) {
    if (q < 0) return false;
    auto it = strata.find(p);
    const size_t available = it == strata.end() ? 0 : it->second.size();
    if (static_cast<size_t>(q) > available) return false;
  }
  return true;
}

}  // namespace

const std::vector<std::string> &PresetNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const PresetColumn &c : kPresets) out.emplace_back(c.name);
    return out;
  }();
  return names;
}

PositionDistribution PresetTarget(const std::string &name) {
  for (const PresetColumn &column : kPresets) {
    if (name != column.name) continue;
    std::map<RelativePosition, double> weights;
    for (size_t i = 0; i < std::size(kPresetPositions); ++i) {
      weights[RelativePosition(kPresetPositions[i])] = column.percent[i];
    }
    return PositionDistribution::FromWeights(weights);
  }
  throw DebiasError("unknown preset \"" + name + "\"");
}

Corpus FilterSinglePosition(const Corpus &corpus, RelativePosition position) {
  Corpus out;
  out.source_label =
      corpus.source_label + " [only " + ToString(position) + "]";
  for (const Instance &instance : corpus.instances) {
    const auto positions = CausePositions(instance);
    if (std::all_of(positions.begin(), positions.end(),
                    [&](RelativePosition p) { return p == position; })) {
      out.instances.push_back(instance);
    }
  }
  return out;
}

RelativePosition StratumOf(const Instance &instance) {
  RelativePosition best;
  int best_distance = std::numeric_limits<int>::max();
  // CausePositions is ascending, so the first of two equidistant causes is
  // the negative one.
  for (RelativePosition p : CausePositions(instance)) {
    if (std::abs(p.value) < best_distance) {
      best = p;
      best_distance = std::abs(p.value);
    }
  }
  return best;
}

std::map<RelativePosition, long> StratumQuotas(
    const PositionDistribution &target, long total) {
  std::map<RelativePosition, long> quotas;
  long sum = 0;
  for (const auto &[p, m] : target.masses()) {
    quotas[p] = RoundHalfUp(static_cast<double>(total) * m);
    sum += quotas[p];
  }
  if (!quotas.empty()) quotas[LargestStratum(target)] += total - sum;
  return quotas;
}

ResampleResult Rebalance(const Corpus &corpus, const ResamplePlan &plan) {
  if (plan.target.empty()) throw DebiasError("empty target distribution");
  if (!(plan.tolerance > 0)) throw DebiasError("tolerance must be positive");
  if (plan.strategy != "max-feasible-size") {
    throw DebiasError("unknown strategy \"" + plan.strategy + "\"");
  }

  std::map<RelativePosition, std::vector<size_t>> strata;
  for (size_t i = 0; i < corpus.size(); ++i) {
    strata[StratumOf(corpus.instances[i])].push_back(i);
  }
  for (RelativePosition p : plan.target.support()) {
    if (strata.find(p) == strata.end()) {
      throw DebiasError("infeasible target: position " + ToString(p) +
                        " has target mass but no available instance");
    }
  }

  // Feasibility is not monotone in the total once the rounding residual is
  // absorbed, so scan down from the corpus size.
  long total = static_cast<long>(corpus.size());
  std::map<RelativePosition, long> quotas;
  for (; total > 0; --total) {
    quotas = StratumQuotas(plan.target, total);
    if (Fits(quotas, strata)) break;
  }
  if (total <= 0) throw DebiasError("infeasible target: no positive size fits");

  std::vector<bool> keep(corpus.size(), false);
  ResampleManifest manifest;
  manifest.plan = plan;
  manifest.source_size = corpus.size();
  manifest.target_size = static_cast<size_t>(total);
  for (auto &[p, members] : strata) {
    StratumRecord record;
    record.position = p;
    record.target = plan.target.Mass(p);
    record.available = members.size();
    auto q = quotas.find(p);
    record.kept = q == quotas.end() ? 0 : static_cast<size_t>(q->second);
    // Streams are keyed by position so each stratum's draw is independent
    // of which other strata exist.
    Rng rng(MixSeed(plan.seed, static_cast<uint64_t>(
                                   static_cast<int64_t>(p.value) + (1 << 20))));
    std::vector<size_t> order = members;
    rng.Shuffle(std::span<size_t>(order));
    // A kept multi-cause instance also adds causes outside its stratum, so
    // it is only drawn once the single-cause members run out.
    std::stable_partition(order.begin(), order.end(), [&](size_t i) {
      return corpus.instances[i].cause_indices.size() == 1;
    });
    for (size_t k = 0; k < record.kept; ++k) keep[order[k]] = true;
    for (size_t i : members) {
      const bool multi = corpus.instances[i].cause_indices.size() > 1;
      record.multi_cause_available += multi ? 1 : 0;
      record.multi_cause_kept += multi && keep[i] ? 1 : 0;
    }
    manifest.strata.push_back(record);
  }

  ResampleResult result;
  result.corpus.source_label = corpus.source_label + " [rebalanced]";
  for (size_t i = 0; i < corpus.size(); ++i) {
    if (!keep[i]) continue;
    result.corpus.instances.push_back(corpus.instances[i]);
    manifest.kept_ids.push_back(corpus.instances[i].id);
  }
  manifest.achieved = ComputePositionDistribution(result.corpus);

  for (const auto &[p, m] : plan.target.masses()) {
    if (m < 0.01) continue;
    const double gap = std::abs(manifest.achieved.Mass(p) - m);
    if (gap > plan.tolerance) {
      throw DebiasError("tolerance unattainable: position " + ToString(p) +
                        " achieved " + std::to_string(manifest.achieved.Mass(p)) +
                        " vs target " + std::to_string(m));
    }
  }
  result.manifest = std::move(manifest);
  return result;
}

}  // namespace ecebias
