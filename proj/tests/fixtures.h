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

#ifndef ECEBIAS_TESTS_FIXTURES_H_
#define ECEBIAS_TESTS_FIXTURES_H_

#include <string>
#include <vector>

#include "ecebias/corpus.h"
#include "ecebias/rng.h"

namespace ecebias {
namespace testing {

// Four clauses; the emotion sits in the last one and is caused by the one
// right before it.
inline Instance StreetRescueInstance() {
  return MakeInstance("rescue-1",
                      {"Last weekend an elderly resident fell in the street",
                       "and many people walked past",
                       "a young student stopped and called an ambulance",
                       "the family was deeply touched"},
                      3, "touched", {2});
}

// Instance with placeholder text and the given shape.
inline Instance ShapeInstance(const std::string &id, int clauses,
                              int emotion_index, std::vector<int> causes) {
  std::vector<std::string> texts;
  for (int i = 0; i < clauses; ++i) texts.push_back("c" + std::to_string(i));
  return MakeInstance(id, texts, emotion_index, "", std::move(causes));
}

// One single-cause instance per requested relative position, each in a
// document just long enough to hold it.
inline Corpus SingleCauseCorpus(const std::vector<int> &positions) {
  Corpus corpus;
  for (size_t i = 0; i < positions.size(); ++i) {
    const int p = positions[i];
    const int emotion = p < 0 ? -p : 0;
    const int length = (p < 0 ? -p : p) + 1;
    corpus.instances.push_back(ShapeInstance(
        "i" + std::to_string(i), length, emotion, {emotion + p}));
  }
  return corpus;
}

// Random valid corpus with unicode and escaped text. Some instances carry
// unknown fields.
inline Corpus RandomCorpus(Rng &rng, size_t max_instances) {
  static const std::vector<std::string> kWords = {
      "他", "很", "感动", "because", "tab\tquote\"", "back\\slash", "",
      "ting1", "x1"};
  Corpus corpus;
  corpus.source_label = "random";
  const size_t n = static_cast<size_t>(rng.Below(max_instances + 1));
  for (size_t i = 0; i < n; ++i) {
    const int length = static_cast<int>(rng.Between(1, 8));
    std::vector<std::string> texts;
    for (int c = 0; c < length; ++c) {
      std::string text;
      const int words = static_cast<int>(rng.Below(4));
      for (int w = 0; w < words; ++w) {
        if (w > 0) text += ' ';
        text += kWords[rng.Below(kWords.size())];
      }
      texts.push_back(text);
    }
    const int emotion = static_cast<int>(rng.Below(length));
    std::vector<int> all(length);
    for (int c = 0; c < length; ++c) all[c] = c;
    rng.Shuffle(std::span<int>(all));
    const int n_causes =
        static_cast<int>(rng.Between(1, std::min(3, length)));
    std::vector<int> causes(all.begin(), all.begin() + n_causes);
    Instance instance = MakeInstance("doc-" + std::to_string(i), texts,
                                     emotion, "感动", causes);
    if (rng.Below(4) == 0) instance.extra["source"] = "news";
    if (rng.Below(8) == 0) instance.extra["meta"] = {{"k", 1}, {"v", {1, 2}}};
    corpus.instances.push_back(std::move(instance));
  }
  return corpus;
}

}  // namespace testing
}  // namespace ecebias

#endif  // ECEBIAS_TESTS_FIXTURES_H_
