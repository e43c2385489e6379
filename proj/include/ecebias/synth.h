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

#ifndef ECEBIAS_SYNTH_H_
#define ECEBIAS_SYNTH_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ecebias/corpus.h"
#include "ecebias/lexicon.h"
#include "ecebias/stats.h"

namespace ecebias {

enum class EmotionPlacement {
  kFeasibleUniform,  // uniform over indices keeping every cause in range
  kTail,             // prefer the last `tail_window` clauses when feasible
};

struct CueInjection {
  RelativePosition anchor;
  std::string group_id;
  double rate = 0;  // fraction of causes at `anchor` that receive a cue
};

struct SynthConfig {
  size_t n_instances = 2105;
  PositionDistribution position_target;
  // Weights over clause counts.
  std::map<int, double> doc_length = UniformDocLength(4, 12);
  // When no configured length can hold an instance's causes, use the
  // shortest length that can instead of failing.
  bool stretch_documents = false;
  EmotionPlacement placement = EmotionPlacement::kFeasibleUniform;
  int tail_window = 2;
  // Fraction of instances carrying k > 1 causes.
  std::map<int, double> multi_cause = {{2, 56.0 / 2105.0},
                                       {3, 3.0 / 2105.0}};
  std::vector<CueInjection> cue_injection;
  bool exact_counts = true;
  std::string emotion_keyword = "emo";

  static std::map<int, double> UniformDocLength(int lo, int hi);
};

// Throws SynthError when a field is out of range or an injection names a
// group missing from `lexicon`.
void ValidateSynthConfig(const SynthConfig &config, const CueLexicon &lexicon);

// Short description of the knobs that shape baseline scores; stored as the
// generated corpus's source label.
std::string DescribeSynthConfig(const SynthConfig &config, uint64_t seed);

// Generates a placeholder-text corpus. With exact_counts the number of
// causes at each position is fixed by the target (round-half-up quotas of
// the total cause count), independent of the seed; only document shapes,
// text and instance order vary. Cue tokens for an injection go into the
// cause clause for anchor -1 and the emotion clause for anchor 0. Throws
// SynthError when a quota cannot be placed in any allowed document shape.
Corpus Generate(const SynthConfig &config, uint64_t seed,
                const CueLexicon &lexicon = DefaultLexicon());

}  // namespace ecebias

#endif  // ECEBIAS_SYNTH_H_
