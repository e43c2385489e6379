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

#include "ecebias/synth.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "ecebias/debias.h"
#include "ecebias/error.h"
#include "ecebias/rng.h"

namespace ecebias {

namespace {

// Multi-cause instances draw their positions from the first tier that still
// has an unused position, working down from the dominant positions.
// Minority positions thus stay in single-cause instances and keep their own
// stratum for rebalancing.
constexpr double kShareTiers[] = {0.2, 0.05, 0.0};

// Stream ids for MixSeed; instance streams use their index directly.
constexpr uint64_t kAllocationStream = 1ULL << 40;
constexpr uint64_t kInjectionStream = (1ULL << 40) + 1;

long RoundHalfUp(double x) { return static_cast<long>(std::floor(x + 0.5)); }

std::string PlaceholderToken(Rng &rng) {
  return "x" + std::to_string(rng.Below(10000));
}

void InsertToken(std::string &text, const std::string &token, Rng &rng) {
  std::vector<std::string> tokens;
  std::istringstream in(text);
  std::string t;
  while (in >> t) tokens.push_back(t);
  const size_t slot = static_cast<size_t>(rng.Below(tokens.size() + 1));
  tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(slot), token);
  text.clear();
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) text += ' ';
    text += tokens[i];
  }
}

struct Draft {
  std::vector<RelativePosition> positions;
  int length = 0;
  int emotion_index = 0;
  std::vector<std::string> texts;
};

// Exact mode: fixed per-position quotas dealt to instances.
std::vector<std::vector<RelativePosition>> DealExact(
    const SynthConfig &config, const std::vector<int> &cause_counts,
    Rng &rng) {
  long total = 0;
  for (int k : cause_counts) total += k;
  std::map<RelativePosition, long> remaining =
      StratumQuotas(config.position_target, total);
  for (const auto &[p, q] : remaining) {
    if (q < 0) throw SynthError("negative quota at position " + ToString(p));
  }

  std::vector<std::vector<RelativePosition>> assigned(cause_counts.size());
  for (size_t i = 0; i < cause_counts.size(); ++i) {
    if (cause_counts[i] < 2) continue;
    for (int k = 0; k < cause_counts[i]; ++k) {
      std::vector<RelativePosition> candidates;
      std::vector<double> weights;
      for (double tier : kShareTiers) {
        for (const auto &[p, q] : remaining) {
          if (q <= 0 || config.position_target.Mass(p) < tier) continue;
          if (std::find(assigned[i].begin(), assigned[i].end(), p) !=
              assigned[i].end()) {
            continue;
          }
          candidates.push_back(p);
          weights.push_back(static_cast<double>(q));
        }
        if (!candidates.empty()) break;
      }
      if (candidates.empty()) {
        throw SynthError("cannot give a " + std::to_string(cause_counts[i]) +
                         "-cause instance distinct positions");
      }
      const RelativePosition p = candidates[rng.Weighted(weights)];
      --remaining[p];
      assigned[i].push_back(p);
    }
  }

  std::vector<RelativePosition> pool;
  for (const auto &[p, q] : remaining) {
    for (long k = 0; k < q; ++k) pool.push_back(p);
  }
  rng.Shuffle(std::span<RelativePosition>(pool));
  size_t next = 0;
  for (size_t i = 0; i < cause_counts.size(); ++i) {
    if (cause_counts[i] >= 2) continue;
    assigned[i].push_back(pool[next++]);
  }
  return assigned;
}

// Sampling mode: each cause position drawn independently from the target.
std::vector<std::vector<RelativePosition>> DealSampled(
    const SynthConfig &config, const std::vector<int> &cause_counts,
    Rng &rng) {
  std::vector<RelativePosition> support = config.position_target.support();
  std::vector<double> weights;
  for (RelativePosition p : support) {
    weights.push_back(config.position_target.Mass(p));
  }
  std::vector<std::vector<RelativePosition>> assigned(cause_counts.size());
  for (size_t i = 0; i < cause_counts.size(); ++i) {
    if (static_cast<size_t>(cause_counts[i]) > support.size()) {
      throw SynthError("target support too small for multi-cause instances");
    }
    std::vector<double> w = weights;
    for (int k = 0; k < cause_counts[i]; ++k) {
      const size_t j = rng.Weighted(w);
      assigned[i].push_back(support[j]);
      w[j] = 0;
    }
  }
  return assigned;
}

Draft Shape(const SynthConfig &config, std::vector<RelativePosition> positions,
            Rng &rng) {
  Draft d;
  std::sort(positions.begin(), positions.end());
  d.positions = std::move(positions);
  const int lo = std::min(d.positions.front().value, 0);
  const int hi = std::max(d.positions.back().value, 0);
  const int span = hi - lo + 1;

  std::vector<int> lengths;
  std::vector<double> weights;
  int longest = 0;
  for (const auto &[length, w] : config.doc_length) {
    if (w <= 0) continue;
    longest = std::max(longest, length);
    if (length >= span) {
      lengths.push_back(length);
      weights.push_back(w);
    }
  }
  if (!lengths.empty()) {
    d.length = lengths[rng.Weighted(weights)];
  } else if (config.stretch_documents) {
    d.length = span;
  } else {
    throw SynthError("infeasible quota: causes at " +
                     ToString(RelativePosition(lo)) + ".." +
                     ToString(RelativePosition(hi)) + " need " +
                     std::to_string(span) +
                     " clauses but the longest allowed document has " +
                     std::to_string(longest));
  }

  const int first = -lo;
  const int last = d.length - 1 - hi;
  d.emotion_index = static_cast<int>(rng.Between(first, last));
  if (config.placement == EmotionPlacement::kTail) {
    const int tail_first = std::max(first, d.length - config.tail_window);
    if (tail_first <= last) {
      d.emotion_index = static_cast<int>(rng.Between(tail_first, last));
    }
  }

  d.texts.resize(static_cast<size_t>(d.length));
  for (std::string &text : d.texts) {
    const int n_tokens = static_cast<int>(rng.Between(3, 6));
    for (int k = 0; k < n_tokens; ++k) {
      if (k > 0) text += ' ';
      text += PlaceholderToken(rng);
    }
  }
  if (!config.emotion_keyword.empty()) {
    InsertToken(d.texts[static_cast<size_t>(d.emotion_index)],
                config.emotion_keyword, rng);
  }
  return d;
}

void Inject(const SynthConfig &config, const CueLexicon &lexicon,
            std::vector<Draft> &drafts, Rng &rng) {
  std::vector<RelativePosition> anchors;
  for (const CueInjection &inj : config.cue_injection) {
    if (std::find(anchors.begin(), anchors.end(), inj.anchor) ==
        anchors.end()) {
      anchors.push_back(inj.anchor);
    }
  }
  for (RelativePosition anchor : anchors) {
    // (draft, position) pairs for every cause at this anchor; causes in
    // single-cause documents come first so injected cues do not spill into
    // the lookup window of a sibling cause.
    std::vector<std::pair<size_t, RelativePosition>> eligible;
    for (size_t i = 0; i < drafts.size(); ++i) {
      for (RelativePosition p : drafts[i].positions) {
        if (p == anchor) eligible.emplace_back(i, p);
      }
    }
    rng.Shuffle(std::span<std::pair<size_t, RelativePosition>>(eligible));
    std::stable_partition(eligible.begin(), eligible.end(), [&](auto &e) {
      return drafts[e.first].positions.size() == 1;
    });

    size_t next = 0;
    for (const CueInjection &inj : config.cue_injection) {
      if (inj.anchor != anchor) continue;
      const CueGroup *group = lexicon.Find(inj.anchor, inj.group_id);
      const std::string &cue = InjectableCue(lexicon, *group);
      const long quota =
          RoundHalfUp(inj.rate * static_cast<double>(eligible.size()));
      if (next + static_cast<size_t>(quota) > eligible.size()) {
        throw SynthError("cue injection rates at anchor " + ToString(anchor) +
                         " exceed the number of causes there");
      }
      for (long k = 0; k < quota; ++k) {
        Draft &d = drafts[eligible[next++].first];
        const int clause = d.emotion_index + anchor.value;
        InsertToken(d.texts[static_cast<size_t>(clause)], cue, rng);
      }
    }
  }
}

}  // namespace

std::map<int, double> SynthConfig::UniformDocLength(int lo, int hi) {
  std::map<int, double> weights;
  for (int length = lo; length <= hi; ++length) weights[length] = 1.0;
  return weights;
}

void ValidateSynthConfig(const SynthConfig &config, const CueLexicon &lexicon) {
  if (config.n_instances < 1) throw SynthError("n_instances must be >= 1");
  if (config.position_target.empty()) {
    throw SynthError("position target is empty");
  }
  bool any_length = false;
  for (const auto &[length, w] : config.doc_length) {
    if (length < 1) throw SynthError("document lengths must be >= 1");
    if (!(w >= 0)) throw SynthError("document length weights must be >= 0");
    any_length = any_length || w > 0;
  }
  if (!any_length) throw SynthError("no document length has positive weight");
  if (config.tail_window < 1) throw SynthError("tail window must be >= 1");
  double extra = 0;
  for (const auto &[k, fraction] : config.multi_cause) {
    if (k < 2) throw SynthError("multi_cause keys must be >= 2");
    if (!(fraction >= 0 && fraction <= 1)) {
      throw SynthError("multi_cause fractions must lie in [0, 1]");
    }
    extra += fraction;
  }
  if (!(extra < 1)) throw SynthError("multi_cause fractions must sum below 1");
  for (const CueInjection &inj : config.cue_injection) {
    if (!(inj.rate >= 0 && inj.rate <= 1)) {
      throw SynthError("injection rates must lie in [0, 1]");
    }
    if (lexicon.Find(inj.anchor, inj.group_id) == nullptr) {
      throw SynthError("no cue group " + inj.group_id + " at anchor " +
                       ToString(inj.anchor));
    }
  }
}

std::string DescribeSynthConfig(const SynthConfig &config, uint64_t seed) {
  std::ostringstream out;
  out << "synth n=" << config.n_instances << " seed=" << seed
      << " doc_len=";
  bool contiguous = true;
  int prev = 0;
  bool first = true;
  for (const auto &[length, w] : config.doc_length) {
    if (!first && (length != prev + 1 || w != config.doc_length.begin()->second)) {
      contiguous = false;
    }
    prev = length;
    first = false;
  }
  if (contiguous && !config.doc_length.empty()) {
    out << config.doc_length.begin()->first << ".."
        << config.doc_length.rbegin()->first;
  } else {
    out << "custom";
  }
  out << (config.stretch_documents ? "+stretch" : "") << " placement="
      << (config.placement == EmotionPlacement::kTail
              ? "tail:" + std::to_string(config.tail_window)
              : std::string("feasible-uniform"))
      << " exact_counts=" << (config.exact_counts ? "true" : "false");
  return out.str();
}

Corpus Generate(const SynthConfig &config, uint64_t seed,
                const CueLexicon &lexicon) {
  ValidateSynthConfig(config, lexicon);
  const size_t n = config.n_instances;

  std::vector<int> cause_counts;
  cause_counts.reserve(n);
  for (auto it = config.multi_cause.rbegin(); it != config.multi_cause.rend();
       ++it) {
    const long count = RoundHalfUp(static_cast<double>(n) * it->second);
    for (long k = 0; k < count; ++k) cause_counts.push_back(it->first);
  }
  if (cause_counts.size() > n) {
    throw SynthError("multi-cause instances exceed n_instances");
  }
  cause_counts.resize(n, 1);

  Rng allocation(MixSeed(seed, kAllocationStream));
  allocation.Shuffle(std::span<int>(cause_counts));
  const auto assigned = config.exact_counts
                            ? DealExact(config, cause_counts, allocation)
                            : DealSampled(config, cause_counts, allocation);

  std::vector<Draft> drafts;
  drafts.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    Rng rng(MixSeed(seed, i));
    drafts.push_back(Shape(config, assigned[i], rng));
  }
  Rng injection(MixSeed(seed, kInjectionStream));
  Inject(config, lexicon, drafts, injection);

  Corpus corpus;
  corpus.source_label = DescribeSynthConfig(config, seed);
  corpus.instances.reserve(n);
  const int width = static_cast<int>(std::to_string(n).size());
  for (size_t i = 0; i < n; ++i) {
    const Draft &d = drafts[i];
    std::string id = std::to_string(i + 1);
    id = "syn-" + std::string(static_cast<size_t>(width) - id.size(), '0') + id;
    std::vector<int> causes;
    for (RelativePosition p : d.positions) {
      causes.push_back(d.emotion_index + p.value);
    }
    corpus.instances.push_back(MakeInstance(std::move(id), d.texts,
                                            d.emotion_index,
                                            config.emotion_keyword,
                                            std::move(causes)));
  }
  return corpus;
}

}  // namespace ecebias
