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

#include "ecebias/metrics.h"

#include <cmath>
#include <istream>
#include <sstream>
#include <unordered_map>

#include "ecebias/error.h"

namespace ecebias {

using Json = nlohmann::ordered_json;

EvalScores ScoresFromCounts(double proposed, double annotated,
                            double correct) {
  EvalScores s;
  s.proposed = proposed;
  s.annotated = annotated;
  s.correct = correct;
  s.precision = proposed > 0 ? correct / proposed : 0.0;
  s.recall = annotated > 0 ? correct / annotated : 0.0;
  const double denom = s.precision + s.recall;
  s.f1 = denom > 0 ? 2 * s.precision * s.recall / denom : 0.0;
  return s;
}

EvalScores Score(const Predictions &predictions, const Corpus &gold) {
  std::unordered_map<std::string, const Instance *> by_id;
  by_id.reserve(gold.size());
  size_t annotated = 0;
  for (const Instance &instance : gold.instances) {
    by_id.emplace(instance.id, &instance);
    annotated += instance.cause_indices.size();
  }
  size_t proposed = 0;
  size_t correct = 0;
  for (const auto &[id, indices] : predictions) {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw MetricsError("prediction for unknown instance \"" + id + "\"");
    }
    const Instance &instance = *it->second;
    for (int index : indices) {
      if (index < 0 || index >= instance.clause_count()) {
        throw MetricsError("predicted index " + std::to_string(index) +
                           " out of range for instance \"" + id + "\"");
      }
      ++proposed;
      if (instance.IsCause(index)) ++correct;
    }
  }
  return ScoresFromCounts(static_cast<double>(proposed),
                          static_cast<double>(annotated),
                          static_cast<double>(correct));
}

Pool ParsePool(const std::string &name) {
  if (name == "macro") return Pool::kMacro;
  if (name == "micro") return Pool::kMicro;
  throw MetricsError("unknown pooling \"" + name + "\"");
}

std::string PoolName(Pool pool) {
  return pool == Pool::kMacro ? "macro" : "micro";
}

TrialAggregate Aggregate(const std::vector<EvalScores> &trials) {
  if (trials.empty()) throw MetricsError("no trials to aggregate");
  TrialAggregate agg;
  agg.per_trial = trials;
  // Sums run over offsets from the first trial, so identical trials give
  // their common value and a deviation of exactly zero.
  const EvalScores &first = trials.front();
  double proposed = 0, annotated = 0, correct = 0;
  for (const EvalScores &s : trials) {
    agg.mean_p += s.precision - first.precision;
    agg.mean_r += s.recall - first.recall;
    agg.mean_f1 += s.f1 - first.f1;
    proposed += s.proposed;
    annotated += s.annotated;
    correct += s.correct;
  }
  const double n = static_cast<double>(trials.size());
  const double offset_f1 = agg.mean_f1 / n;
  agg.mean_p = first.precision + agg.mean_p / n;
  agg.mean_r = first.recall + agg.mean_r / n;
  agg.mean_f1 = first.f1 + offset_f1;
  if (trials.size() > 1) {
    double ss = 0;
    for (const EvalScores &s : trials) {
      const double d = s.f1 - first.f1 - offset_f1;
      ss += d * d;
    }
    agg.std_f1 = std::sqrt(ss / (n - 1));
  }
  agg.pooled = ScoresFromCounts(proposed, annotated, correct);
  return agg;
}

EvalScores Headline(const TrialAggregate &aggregate, Pool pool) {
  if (pool == Pool::kMicro) return aggregate.pooled;
  EvalScores s = aggregate.pooled;
  s.precision = aggregate.mean_p;
  s.recall = aggregate.mean_r;
  s.f1 = aggregate.mean_f1;
  return s;
}

Predictions ParsePredictions(std::istream &in) {
  Predictions predictions;
  std::string text;
  size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    Json record;
    try {
      record = Json::parse(text);
    } catch (const Json::parse_error &e) {
      throw MetricsError(std::string("malformed record: ") + e.what(), line);
    }
    if (!record.is_object() || !record.contains("id") ||
        !record["id"].is_string() || !record.contains("predicted_indices") ||
        !record["predicted_indices"].is_array()) {
      throw MetricsError(
          "expected {\"id\": str, \"predicted_indices\": [int, ...]}", line);
    }
    std::set<int> indices;
    for (const Json &v : record["predicted_indices"]) {
      if (!v.is_number_integer()) {
        throw MetricsError("predicted index must be an integer", line);
      }
      const auto index = v.get<int64_t>();
      if (index < 0 || index > INT32_MAX) {
        throw MetricsError("predicted index out of range", line);
      }
      indices.insert(static_cast<int>(index));
    }
    const std::string id = record["id"].get<std::string>();
    if (!predictions.emplace(id, std::move(indices)).second) {
      throw MetricsError("duplicate prediction id \"" + id + "\"", line);
    }
  }
  return predictions;
}

Predictions ParsePredictionsString(const std::string &text) {
  std::istringstream in(text);
  return ParsePredictions(in);
}

std::string SerializePredictions(const Predictions &predictions) {
  std::string out;
  for (const auto &[id, indices] : predictions) {
    Json record;
    record["id"] = id;
    record["predicted_indices"] = indices;
    out += record.dump();
    out += '\n';
  }
  return out;
}

}  // namespace ecebias
