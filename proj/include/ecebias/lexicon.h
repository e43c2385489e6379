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

#ifndef ECEBIAS_LEXICON_H_
#define ECEBIAS_LEXICON_H_

#include <string>
#include <vector>

#include "ecebias/corpus.h"

namespace ecebias {

// Cue-word coverage of causes at the two dominant positions. This measures
// how much of the position skew a lexicon of connectives and reporting verbs
// explains; it never predicts causes.

enum class MatchMode { kToken, kSubstring };

MatchMode ParseMatchMode(const std::string &name);
std::string MatchModeName(MatchMode mode);

struct CueGroup {
  std::string id;  // roman numeral I..V, unique per anchor
  RelativePosition anchor;  // -1 or 0
  std::string label;
  std::vector<std::string> cues;  // non-empty, duplicate-free
};

struct CueLexicon {
  std::vector<CueGroup> groups;  // listed order decides primary attribution
  MatchMode match_mode = MatchMode::kSubstring;

  // nullptr when absent.
  const CueGroup *Find(RelativePosition anchor, const std::string &id) const;
  std::vector<RelativePosition> Anchors() const;  // ascending
};

struct CueMatch {
  std::string instance_id;
  std::string group_id;
  RelativePosition anchor;
  std::string cue;
  int clause_index = 0;
  int cause_index = 0;
  // The match belongs to the first group, in listed order, that matched
  // this cause.
  bool primary = false;

  friend bool operator==(const CueMatch &, const CueMatch &) = default;
};

// Lexicon document:
//   {"match_mode": "substring"|"token",
//    "groups": [{"anchor": -1|0, "id": "I".."V", "label": str,
//                "cues": [str, ...]}, ...]}
// Repeated cues within a group are collapsed. Throws LexiconError on any
// schema violation, including a repeated (anchor, id) pair.
CueLexicon ParseLexicon(const std::string &json_text);
CueLexicon LoadLexiconFile(const std::string &path);

// The shipped lexicon: five groups anchored at -1 and five at 0.
const std::string &DefaultLexiconJson();
CueLexicon DefaultLexicon();

std::string LexiconToJson(const CueLexicon &lexicon);

// True when `cue` occurs in `text` under `mode`. Token mode compares
// whitespace-separated tokens; a multi-token cue must match a contiguous run.
bool ContainsCue(const std::string &text, const std::string &cue,
                 MatchMode mode);

// Every cue of every anchor-matching group found for the instance's causes.
// A cause at -1 is looked up in its own clause and in the emotion clause; a
// cause at 0 in the emotion clause. Other positions never match.
std::vector<CueMatch> MatchInstance(const Instance &instance,
                                    const CueLexicon &lexicon);

struct GroupCoverage {
  std::string id;
  std::string label;
  size_t matched = 0;  // causes with at least one match in this group
  size_t primary = 0;  // causes whose first matching group is this one
  double fraction = 0;
  double primary_fraction = 0;
};

struct AnchorCoverage {
  RelativePosition anchor;
  size_t causes = 0;  // denominator: annotated causes at this anchor
  std::vector<GroupCoverage> groups;
  size_t union_matched = 0;
  double union_fraction = 0;
};

struct CoverageReport {
  std::vector<AnchorCoverage> anchors;  // ascending anchor order
};

// Throws LexiconError on an empty corpus.
CoverageReport ComputeCoverage(const Corpus &corpus, const CueLexicon &lexicon);

// A cue of `group` that contains no cue of any other group at the same
// anchor, so inserting it credits only `group`. Falls back to the first cue.
const std::string &InjectableCue(const CueLexicon &lexicon,
                                 const CueGroup &group);

}  // namespace ecebias

#endif  // ECEBIAS_LEXICON_H_
