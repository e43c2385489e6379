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

#include "ecebias/lexicon.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "ecebias/error.h"
#include "ecebias/io.h"

namespace ecebias {

using Json = nlohmann::ordered_json;

namespace {

constexpr const char *kGroupIds[] = {"I", "II", "III", "IV", "V"};

std::vector<std::string> SplitTokens(const std::string &text) {
  std::vector<std::string> tokens;
  std::istringstream in(text);
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

// Lexicon lookup window for one cause: the clauses to scan.
std::vector<int> ScanClauses(const Instance &instance, int cause_index,
                             RelativePosition position) {
  if (position.value == -1) return {cause_index, instance.emotion_index};
  if (position.value == 0) return {instance.emotion_index};
  return {};
}

}  // namespace

MatchMode ParseMatchMode(const std::string &name) {
  if (name == "substring") return MatchMode::kSubstring;
  if (name == "token") return MatchMode::kToken;
  throw LexiconError("unknown match mode \"" + name + "\"");
}

std::string MatchModeName(MatchMode mode) {
  return mode == MatchMode::kToken ? "token" : "substring";
}

const CueGroup *CueLexicon::Find(RelativePosition anchor,
                                 const std::string &id) const {
  for (const CueGroup &g : groups) {
    if (g.anchor == anchor && g.id == id) return &g;
  }
  return nullptr;
}

std::vector<RelativePosition> CueLexicon::Anchors() const {
  std::set<RelativePosition> anchors;
  for (const CueGroup &g : groups) anchors.insert(g.anchor);
  return {anchors.begin(), anchors.end()};
}

CueLexicon ParseLexicon(const std::string &json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error &e) {
    throw LexiconError(std::string("malformed lexicon: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("groups") ||
      !doc["groups"].is_array()) {
    throw LexiconError("lexicon must be an object with a \"groups\" array");
  }
  CueLexicon lexicon;
  if (doc.contains("match_mode")) {
    if (!doc["match_mode"].is_string()) {
      throw LexiconError("match_mode must be a string");
    }
    lexicon.match_mode = ParseMatchMode(doc["match_mode"].get<std::string>());
  }
  size_t n = 0;
  for (const Json &g : doc["groups"]) {
    const std::string where = "group " + std::to_string(n++) + ": ";
    if (!g.is_object()) throw LexiconError(where + "not an object");
    if (!g.contains("anchor") || !g["anchor"].is_number_integer()) {
      throw LexiconError(where + "anchor must be an integer");
    }
    if (!g.contains("id") || !g["id"].is_string()) {
      throw LexiconError(where + "id must be a string");
    }
    if (!g.contains("label") || !g["label"].is_string()) {
      throw LexiconError(where + "label must be a string");
    }
    if (!g.contains("cues") || !g["cues"].is_array()) {
      throw LexiconError(where + "cues must be an array");
    }
    CueGroup group;
    const auto anchor = g["anchor"].get<int64_t>();
    if (anchor != -1 && anchor != 0) {
      throw LexiconError(where + "anchor must be -1 or 0");
    }
    group.anchor = RelativePosition(static_cast<int>(anchor));
    group.id = g["id"].get<std::string>();
    if (std::none_of(std::begin(kGroupIds), std::end(kGroupIds),
                     [&](const char *id) { return group.id == id; })) {
      throw LexiconError(where + "id must be one of I..V, got \"" + group.id +
                         "\"");
    }
    group.label = g["label"].get<std::string>();
    for (const Json &cue : g["cues"]) {
      if (!cue.is_string() || cue.get<std::string>().empty()) {
        throw LexiconError(where + "cues must be non-empty strings");
      }
      const std::string text = cue.get<std::string>();
      if (std::find(group.cues.begin(), group.cues.end(), text) ==
          group.cues.end()) {
        group.cues.push_back(text);
      }
    }
    if (group.cues.empty()) {
      throw LexiconError(where + "empty cue set for group " + group.id);
    }
    if (lexicon.Find(group.anchor, group.id) != nullptr) {
      throw LexiconError(where + "duplicate group id " + group.id +
                         " at anchor " + ToString(group.anchor));
    }
    lexicon.groups.push_back(std::move(group));
  }
  return lexicon;
}

CueLexicon LoadLexiconFile(const std::string &path) {
  return ParseLexicon(ReadFile(path));
}

CueLexicon DefaultLexicon() { return ParseLexicon(DefaultLexiconJson()); }

std::string LexiconToJson(const CueLexicon &lexicon) {
  Json doc;
  doc["match_mode"] = MatchModeName(lexicon.match_mode);
  doc["groups"] = Json::array();
  for (const CueGroup &g : lexicon.groups) {
    Json group;
    group["anchor"] = g.anchor.value;
    group["id"] = g.id;
    group["label"] = g.label;
    group["cues"] = g.cues;
    doc["groups"].push_back(std::move(group));
  }
  return doc.dump(2) + "\n";
}

bool ContainsCue(const std::string &text, const std::string &cue,
                 MatchMode mode) {
  if (mode == MatchMode::kSubstring) {
    return text.find(cue) != std::string::npos;
  }
  const std::vector<std::string> tokens = SplitTokens(text);
  const std::vector<std::string> needle = SplitTokens(cue);
  if (needle.empty() || needle.size() > tokens.size()) return false;
  return std::search(tokens.begin(), tokens.end(), needle.begin(),
                     needle.end()) != tokens.end();
}

std::vector<CueMatch> MatchInstance(const Instance &instance,
                                    const CueLexicon &lexicon) {
  std::vector<CueMatch> matches;
  for (int cause : instance.cause_indices) {
    const RelativePosition position(cause - instance.emotion_index);
    const std::vector<int> clauses = ScanClauses(instance, cause, position);
    if (clauses.empty()) continue;
    bool have_primary = false;
    for (const CueGroup &group : lexicon.groups) {
      if (group.anchor != position) continue;
      bool group_matched = false;
      for (const std::string &cue : group.cues) {
        for (int clause : clauses) {
          if (!ContainsCue(instance.clauses[clause].text, cue,
                           lexicon.match_mode)) {
            continue;
          }
          CueMatch m;
          m.instance_id = instance.id;
          m.group_id = group.id;
          m.anchor = group.anchor;
          m.cue = cue;
          m.clause_index = clause;
          m.cause_index = cause;
          m.primary = !have_primary;
          matches.push_back(std::move(m));
          group_matched = true;
        }
      }
      if (group_matched) have_primary = true;
    }
  }
  return matches;
}

CoverageReport ComputeCoverage(const Corpus &corpus,
                               const CueLexicon &lexicon) {
  if (corpus.empty()) throw LexiconError("empty corpus");
  CoverageReport report;
  for (RelativePosition anchor : lexicon.Anchors()) {
    AnchorCoverage ac;
    ac.anchor = anchor;
    for (const CueGroup &g : lexicon.groups) {
      if (g.anchor == anchor) ac.groups.push_back({g.id, g.label});
    }
    report.anchors.push_back(std::move(ac));
  }
  auto anchor_slot = [&](RelativePosition p) -> AnchorCoverage * {
    for (AnchorCoverage &ac : report.anchors) {
      if (ac.anchor == p) return &ac;
    }
    return nullptr;
  };

  for (const Instance &instance : corpus.instances) {
    const std::vector<CueMatch> matches = MatchInstance(instance, lexicon);
    for (int cause : instance.cause_indices) {
      AnchorCoverage *ac =
          anchor_slot(RelativePosition(cause - instance.emotion_index));
      if (ac == nullptr) continue;
      ++ac->causes;
      bool any = false;
      for (GroupCoverage &gc : ac->groups) {
        bool matched = false;
        bool primary = false;
        for (const CueMatch &m : matches) {
          if (m.cause_index == cause && m.group_id == gc.id) {
            matched = true;
            primary = primary || m.primary;
          }
        }
        gc.matched += matched ? 1 : 0;
        gc.primary += primary ? 1 : 0;
        any = any || matched;
      }
      ac->union_matched += any ? 1 : 0;
    }
  }

  for (AnchorCoverage &ac : report.anchors) {
    const double denom = static_cast<double>(ac.causes);
    if (ac.causes == 0) continue;
    for (GroupCoverage &gc : ac.groups) {
      gc.fraction = static_cast<double>(gc.matched) / denom;
      gc.primary_fraction = static_cast<double>(gc.primary) / denom;
    }
    ac.union_fraction = static_cast<double>(ac.union_matched) / denom;
  }
  return report;
}

const std::string &InjectableCue(const CueLexicon &lexicon,
                                 const CueGroup &group) {
  for (const std::string &cue : group.cues) {
    bool clean = true;
    for (const CueGroup &other : lexicon.groups) {
      if (other.anchor != group.anchor || other.id == group.id) continue;
      for (const std::string &foreign : other.cues) {
        if (ContainsCue(cue, foreign, lexicon.match_mode)) clean = false;
      }
    }
    if (clean) return cue;
  }
  return group.cues.front();
}

}  // namespace ecebias
