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

#ifndef ECEBIAS_REPORT_H_
#define ECEBIAS_REPORT_H_

#include <string>

#include "json.hpp"

#include "ecebias/debias.h"
#include "ecebias/lexicon.h"
#include "ecebias/metrics.h"
#include "ecebias/stats.h"

namespace ecebias {

// Machine-readable (JSON, full precision) and tabular (percentages to two
// decimals) renderings of every report type.

using Json = nlohmann::ordered_json;

// "12.34" for 0.1234.
std::string FormatPercent(double fraction);

// "Previous 2 Clauses", "In the same clauses", "Next 1 Clauses".
std::string PositionLabel(RelativePosition p);

// {"-2": 0.1, "-1": 0.5, "0": 0.4} in ascending position order.
Json DistributionToJson(const PositionDistribution &d);
// Accepts the object above; keys may carry a leading '+'. Values are
// non-negative weights and are normalized. Throws StatsError.
PositionDistribution DistributionFromJson(const Json &doc);
PositionDistribution ParseDistribution(const std::string &json_text);

Json AuditToJson(const AuditReport &report);
std::string AuditTable(const AuditReport &report);

Json ScoresToJson(const EvalScores &scores);
std::string ScoresTable(const EvalScores &scores);

Json AggregateToJson(const TrialAggregate &aggregate, Pool pool);
std::string AggregateTable(const TrialAggregate &aggregate, Pool pool);

Json CoverageToJson(const CoverageReport &report);
std::string CoverageTable(const CoverageReport &report);

Json ManifestToJson(const ResampleManifest &manifest);

}  // namespace ecebias

#endif  // ECEBIAS_REPORT_H_
