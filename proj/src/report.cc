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

#include "ecebias/report.h"

#include <cstdio>
#include <sstream>

#include "ecebias/error.h"

namespace ecebias {

namespace {

std::string Fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

// Left-aligned first column, right-aligned rest.
std::string RenderRows(const std::vector<std::vector<std::string>> &rows) {
  std::vector<size_t> widths;
  for (const auto &row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  std::string out;
  for (size_t r = 0; r < rows.size(); ++r) {
    std::string line;
    for (size_t c = 0; c < rows[r].size(); ++c) {
      const std::string &cell = rows[r][c];
      const std::string pad(widths[c] - cell.size(), ' ');
      if (c > 0) line += "  ";
      line += c == 0 ? cell + pad : pad + cell;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
    if (r == 0) {
      size_t total = 0;
      for (size_t w : widths) total += w;
      out += std::string(total + 2 * (widths.size() - 1), '-') + "\n";
    }
  }
  return out;
}

}  // namespace

std::string FormatPercent(double fraction) { return Fixed(100 * fraction, 2); }

std::string PositionLabel(RelativePosition p) {
  if (p.value == 0) return "In the same clauses";
  const int k = p.value < 0 ? -p.value : p.value;
  return (p.value < 0 ? "Previous " : "Next ") + std::to_string(k) +
         " Clauses";
}

Json DistributionToJson(const PositionDistribution &d) {
  Json out = Json::object();
  for (const auto &[p, m] : d.masses()) out[std::to_string(p.value)] = m;
  return out;
}

PositionDistribution DistributionFromJson(const Json &doc) {
  if (!doc.is_object()) {
    throw StatsError("distribution must be an object of position: weight");
  }
  std::map<RelativePosition, double> weights;
  for (const auto &[key, value] : doc.items()) {
    size_t used = 0;
    int position = 0;
    try {
      position = std::stoi(key, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != key.size() || key.empty()) {
      throw StatsError("bad position key \"" + key + "\"");
    }
    if (!value.is_number()) {
      throw StatsError("weight for position " + key + " must be a number");
    }
    RelativePosition p(position);
    if (weights.count(p) != 0) {
      throw StatsError("position " + key + " listed twice");
    }
    weights[p] = value.get<double>();
  }
  return PositionDistribution::FromWeights(weights);
}

PositionDistribution ParseDistribution(const std::string &json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error &e) {
    throw StatsError(std::string("malformed distribution: ") + e.what());
  }
  return DistributionFromJson(doc);
}

Json AuditToJson(const AuditReport &report) {
  Json out;
  out["n_instances"] = report.n_instances;
  out["n_causes"] = report.n_causes;
  out["single_cause_fraction"] = report.single_cause_fraction;
  Json histogram = Json::object();
  for (const auto &[k, v] : report.cause_histogram) {
    histogram[std::to_string(k)] = v;
  }
  out["cause_histogram"] = std::move(histogram);
  Json counts = Json::object();
  for (const auto &[p, c] : report.position_counts) {
    counts[std::to_string(p.value)] = c;
  }
  out["position_counts"] = std::move(counts);
  out["distribution"] = DistributionToJson(report.distribution);
  out["doc_length_stats"] = {{"min", report.doc_length.min},
                             {"median", report.doc_length.median},
                             {"max", report.doc_length.max}};
  Json offsets = Json::object();
  for (const auto &[k, v] : report.emotion_offset_from_end) {
    offsets[std::to_string(k)] = v;
  }
  out["emotion_index_stats"] = std::move(offsets);
  return out;
}

std::string AuditTable(const AuditReport &report) {
  std::vector<std::vector<std::string>> details = {
      {"Item", "Number"},
      {"Instance", std::to_string(report.n_instances)},
      {"Emotion Cause", std::to_string(report.n_causes)}};
  for (const auto &[k, v] : report.cause_histogram) {
    details.push_back({"Documents with " + std::to_string(k) +
                           (k == 1 ? " emotion cause" : " emotion causes"),
                       std::to_string(v)});
  }
  details.push_back(
      {"Single-cause instances (%)", FormatPercent(report.single_cause_fraction)});

  std::vector<std::vector<std::string>> positions = {
      {"Position", "Offset", "Causes", "Percentage"}};
  for (const auto &[p, c] : report.position_counts) {
    positions.push_back({PositionLabel(p), ToString(p), std::to_string(c),
                         FormatPercent(report.distribution.Mass(p)) + "%"});
  }

  std::ostringstream out;
  out << RenderRows(details) << "\n" << RenderRows(positions) << "\n";
  out << "Document length: min " << report.doc_length.min << ", median "
      << report.doc_length.median << ", max " << report.doc_length.max
      << "\n";
  out << "Emotion clause offset from document end:";
  for (const auto &[k, v] : report.emotion_offset_from_end) {
    out << " " << k << ":" << v;
  }
  out << "\n";
  return out.str();
}

Json ScoresToJson(const EvalScores &scores) {
  Json out;
  out["proposed"] = scores.proposed;
  out["annotated"] = scores.annotated;
  out["correct"] = scores.correct;
  out["precision"] = scores.precision;
  out["recall"] = scores.recall;
  out["f1"] = scores.f1;
  return out;
}

std::string ScoresTable(const EvalScores &scores) {
  return RenderRows({{"Proposed", "Annotated", "Correct", "P", "R", "F1"},
                     {Fixed(scores.proposed, 0), Fixed(scores.annotated, 0),
                      Fixed(scores.correct, 0), Fixed(scores.precision, 4),
                      Fixed(scores.recall, 4), Fixed(scores.f1, 4)}});
}

Json AggregateToJson(const TrialAggregate &aggregate, Pool pool) {
  Json out;
  out["pool"] = PoolName(pool);
  const EvalScores headline = Headline(aggregate, pool);
  out["precision"] = headline.precision;
  out["recall"] = headline.recall;
  out["f1"] = headline.f1;
  out["mean_p"] = aggregate.mean_p;
  out["mean_r"] = aggregate.mean_r;
  out["mean_f1"] = aggregate.mean_f1;
  out["std_f1"] = aggregate.std_f1;
  out["pooled"] = ScoresToJson(aggregate.pooled);
  Json trials = Json::array();
  for (const EvalScores &s : aggregate.per_trial) {
    trials.push_back(ScoresToJson(s));
  }
  out["per_trial"] = std::move(trials);
  return out;
}

std::string AggregateTable(const TrialAggregate &aggregate, Pool pool) {
  std::vector<std::vector<std::string>> rows = {
      {"Trial", "Proposed", "Annotated", "Correct", "P", "R", "F1"}};
  for (size_t t = 0; t < aggregate.per_trial.size(); ++t) {
    const EvalScores &s = aggregate.per_trial[t];
    rows.push_back({std::to_string(t + 1), Fixed(s.proposed, 0),
                    Fixed(s.annotated, 0), Fixed(s.correct, 0),
                    Fixed(s.precision, 4), Fixed(s.recall, 4),
                    Fixed(s.f1, 4)});
  }
  const EvalScores h = Headline(aggregate, pool);
  std::ostringstream out;
  out << RenderRows(rows) << "\n";
  out << RenderRows({{"Pool", "P", "R", "F1", "std F1"},
                     {PoolName(pool), Fixed(h.precision, 4),
                      Fixed(h.recall, 4), Fixed(h.f1, 4),
                      Fixed(aggregate.std_f1, 4)}});
  return out.str();
}

Json CoverageToJson(const CoverageReport &report) {
  Json anchors = Json::array();
  for (const AnchorCoverage &ac : report.anchors) {
    Json a;
    a["anchor"] = ac.anchor.value;
    a["causes"] = ac.causes;
    Json groups = Json::array();
    for (const GroupCoverage &g : ac.groups) {
      Json gj;
      gj["id"] = g.id;
      gj["label"] = g.label;
      gj["matched"] = g.matched;
      gj["fraction"] = g.fraction;
      gj["primary"] = g.primary;
      gj["primary_fraction"] = g.primary_fraction;
      groups.push_back(std::move(gj));
    }
    a["groups"] = std::move(groups);
    a["union_matched"] = ac.union_matched;
    a["union_fraction"] = ac.union_fraction;
    anchors.push_back(std::move(a));
  }
  Json out;
  out["anchors"] = std::move(anchors);
  return out;
}

std::string CoverageTable(const CoverageReport &report) {
  std::ostringstream out;
  for (const AnchorCoverage &ac : report.anchors) {
    out << "Anchor " << ToString(ac.anchor) << " (" << ac.causes
        << " causes)\n";
    std::vector<std::vector<std::string>> rows = {
        {"Group", "Label", "Matched", "Fraction (%)", "Primary",
         "Primary (%)"}};
    for (const GroupCoverage &g : ac.groups) {
      rows.push_back({g.id, g.label, std::to_string(g.matched),
                      FormatPercent(g.fraction), std::to_string(g.primary),
                      FormatPercent(g.primary_fraction)});
    }
    rows.push_back({"union", "", std::to_string(ac.union_matched),
                    FormatPercent(ac.union_fraction), "", ""});
    out << RenderRows(rows) << "\n";
  }
  return out.str();
}

Json ManifestToJson(const ResampleManifest &manifest) {
  Json out;
  out["source_size"] = manifest.source_size;
  out["target_size"] = manifest.target_size;
  out["kept_size"] = manifest.kept_ids.size();
  Json strata = Json::array();
  for (const StratumRecord &s : manifest.strata) {
    Json sj;
    sj["position"] = s.position.value;
    sj["target"] = s.target;
    sj["available"] = s.available;
    sj["kept"] = s.kept;
    sj["multi_cause_available"] = s.multi_cause_available;
    sj["multi_cause_kept"] = s.multi_cause_kept;
    strata.push_back(std::move(sj));
  }
  out["strata"] = std::move(strata);
  out["achieved"] = DistributionToJson(manifest.achieved);
  out["plan"] = {{"target", DistributionToJson(manifest.plan.target)},
                 {"seed", manifest.plan.seed},
                 {"tolerance", manifest.plan.tolerance},
                 {"strategy", manifest.plan.strategy}};
  out["kept_ids"] = manifest.kept_ids;
  return out;
}

}  // namespace ecebias
