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

#ifndef ECEBIAS_CORPUS_H_
#define ECEBIAS_CORPUS_H_

#include <compare>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace ecebias {

// Signed offset of a cause clause from its emotion clause: 0 is the emotion
// clause itself, -1 the clause immediately before it.
struct RelativePosition {
  int value = 0;

  constexpr RelativePosition() = default;
  constexpr explicit RelativePosition(int v) : value(v) {}
  friend constexpr auto operator<=>(RelativePosition, RelativePosition) =
      default;
};

std::string ToString(RelativePosition p);  // "-1", "0", "+2"

struct Clause {
  int index = 0;
  std::string text;

  friend bool operator==(const Clause &, const Clause &) = default;
};

// One document: pre-segmented clauses, a single emotion clause and one or
// more annotated cause clauses. Construct through MakeInstance or the parser
// to get a validated value.
struct Instance {
  std::string id;
  std::vector<Clause> clauses;
  int emotion_index = 0;
  std::string emotion_keyword;
  std::vector<int> cause_indices;  // sorted ascending, duplicate-free
  // Record fields outside the instance schema, carried through unchanged.
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  int clause_count() const { return static_cast<int>(clauses.size()); }
  bool IsCause(int clause_index) const;

  friend bool operator==(const Instance &, const Instance &) = default;
};

struct Corpus {
  std::vector<Instance> instances;
  std::string source_label;

  bool empty() const { return instances.empty(); }
  size_t size() const { return instances.size(); }

  friend bool operator==(const Corpus &, const Corpus &) = default;
};

// Builds an instance from raw clause texts and validates it. Cause indices
// may arrive in any order; duplicates are rejected.
Instance MakeInstance(std::string id, const std::vector<std::string> &texts,
                      int emotion_index, std::string emotion_keyword,
                      std::vector<int> cause_indices);

// Checks every instance invariant; throws CorpusError naming the instance.
void ValidateInstance(const Instance &instance);

// Checks instance invariants and id uniqueness.
void ValidateCorpus(const Corpus &corpus);

// Parses the line-delimited JSON instance format. Blank lines are skipped.
// Non-fatal findings (an emotion keyword that does not occur in the emotion
// clause) are appended to `warnings` when it is non-null.
Corpus ParseCorpus(std::istream &in, std::string source_label = "",
                   std::vector<std::string> *warnings = nullptr);
Corpus ParseCorpusString(const std::string &text,
                         std::string source_label = "",
                         std::vector<std::string> *warnings = nullptr);
Corpus ReadCorpusFile(const std::string &path,
                      std::vector<std::string> *warnings = nullptr);

std::string SerializeInstance(const Instance &instance);
// One line per instance, each terminated by '\n'. Empty corpus -> "".
std::string SerializeCorpus(const Corpus &corpus);

// cause_index - emotion_index. Throws CorpusError if cause_index is not an
// annotated cause of the instance.
RelativePosition GetRelativePosition(const Instance &instance,
                                     int cause_index);

// Relative positions of every annotated cause, in clause order.
std::vector<RelativePosition> CausePositions(const Instance &instance);

// Every offset p with 0 <= emotion_index + p < clause_count, ascending.
std::vector<RelativePosition> ValidPositions(const Instance &instance);

}  // namespace ecebias

#endif  // ECEBIAS_CORPUS_H_
