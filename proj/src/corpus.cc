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

#include "ecebias/corpus.h"

#include <algorithm>
#include <istream>
#include <sstream>
#include <unordered_set>

#include "ecebias/error.h"
#include "ecebias/io.h"

namespace ecebias {

using Json = nlohmann::ordered_json;

namespace {

constexpr const char *kSchemaFields[] = {"id", "clauses", "emotion_index",
                                         "emotion_keyword", "cause_indices"};

bool IsSchemaField(const std::string &key) {
  for (const char *field : kSchemaFields) {
    if (key == field) return true;
  }
  return false;
}

int RequireIndex(const Json &value, const char *what, size_t line) {
  if (!value.is_number_integer()) {
    throw CorpusError(std::string(what) + " must be an integer", line);
  }
  const auto v = value.get<int64_t>();
  if (v < 0 || v > INT32_MAX) {
    throw CorpusError(std::string(what) + " out of range: " +
                          std::to_string(v),
                      line);
  }
  return static_cast<int>(v);
}

Instance InstanceFromJson(const Json &record, size_t line) {
  if (!record.is_object()) throw CorpusError("record is not an object", line);
  for (const char *field : kSchemaFields) {
    if (!record.contains(field)) {
      throw CorpusError(std::string("missing field \"") + field + "\"", line);
    }
  }
  const Json &id = record["id"];
  const Json &clauses = record["clauses"];
  const Json &keyword = record["emotion_keyword"];
  const Json &causes = record["cause_indices"];
  if (!id.is_string()) throw CorpusError("id must be a string", line);
  if (!clauses.is_array()) throw CorpusError("clauses must be an array", line);
  if (!keyword.is_string()) {
    throw CorpusError("emotion_keyword must be a string", line);
  }
  if (!causes.is_array()) {
    throw CorpusError("cause_indices must be an array", line);
  }

  std::vector<std::string> texts;
  texts.reserve(clauses.size());
  for (const Json &clause : clauses) {
    if (!clause.is_string()) {
      throw CorpusError("every clause must be a string", line);
    }
    texts.push_back(clause.get<std::string>());
  }
  const int emotion_index =
      RequireIndex(record["emotion_index"], "emotion_index", line);
  std::vector<int> cause_indices;
  cause_indices.reserve(causes.size());
  for (const Json &c : causes) {
    cause_indices.push_back(RequireIndex(c, "cause index", line));
  }

  Instance instance;
  try {
    instance = MakeInstance(id.get<std::string>(), texts, emotion_index,
                            keyword.get<std::string>(),
                            std::move(cause_indices));
  } catch (const CorpusError &e) {
    throw CorpusError(e.what(), line);
  }
  for (const auto &[key, value] : record.items()) {
    if (!IsSchemaField(key)) instance.extra[key] = value;
  }
  return instance;
}

}  // namespace

std::string ToString(RelativePosition p) {
  return p.value > 0 ? "+" + std::to_string(p.value)
                     : std::to_string(p.value);
}

bool Instance::IsCause(int clause_index) const {
  return std::binary_search(cause_indices.begin(), cause_indices.end(),
                            clause_index);
}

Instance MakeInstance(std::string id, const std::vector<std::string> &texts,
                      int emotion_index, std::string emotion_keyword,
                      std::vector<int> cause_indices) {
  Instance instance;
  instance.id = std::move(id);
  instance.clauses.reserve(texts.size());
  for (size_t i = 0; i < texts.size(); ++i) {
    instance.clauses.push_back({static_cast<int>(i), texts[i]});
  }
  instance.emotion_index = emotion_index;
  instance.emotion_keyword = std::move(emotion_keyword);
  std::sort(cause_indices.begin(), cause_indices.end());
  instance.cause_indices = std::move(cause_indices);
  ValidateInstance(instance);
  return instance;
}

void ValidateInstance(const Instance &instance) {
  const std::string where = "instance \"" + instance.id + "\": ";
  const int n = instance.clause_count();
  if (n == 0) throw CorpusError(where + "no clauses");
  for (int i = 0; i < n; ++i) {
    if (instance.clauses[i].index != i) {
      throw CorpusError(where + "clause index mismatch at " +
                        std::to_string(i));
    }
  }
  if (instance.emotion_index < 0 || instance.emotion_index >= n) {
    throw CorpusError(where + "emotion_index " +
                      std::to_string(instance.emotion_index) +
                      " out of range for " + std::to_string(n) + " clauses");
  }
  if (instance.cause_indices.empty()) {
    throw CorpusError(where + "empty cause set");
  }
  for (size_t k = 0; k < instance.cause_indices.size(); ++k) {
    const int c = instance.cause_indices[k];
    if (c < 0 || c >= n) {
      throw CorpusError(where + "cause index " + std::to_string(c) +
                        " out of range for " + std::to_string(n) +
                        " clauses");
    }
    if (k > 0 && instance.cause_indices[k - 1] >= c) {
      throw CorpusError(where + (instance.cause_indices[k - 1] == c
                                     ? "duplicate cause index " +
                                           std::to_string(c)
                                     : std::string("cause indices unsorted")));
    }
  }
}

void ValidateCorpus(const Corpus &corpus) {
  std::unordered_set<std::string> seen;
  for (const Instance &instance : corpus.instances) {
    ValidateInstance(instance);
    if (!seen.insert(instance.id).second) {
      throw CorpusError("duplicate instance id \"" + instance.id + "\"");
    }
  }
}

Corpus ParseCorpus(std::istream &in, std::string source_label,
                   std::vector<std::string> *warnings) {
  Corpus corpus;
  corpus.source_label = std::move(source_label);
  std::unordered_set<std::string> seen;
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
      throw CorpusError(std::string("malformed record: ") + e.what(), line);
    }
    Instance instance = InstanceFromJson(record, line);
    if (!seen.insert(instance.id).second) {
      throw CorpusError("duplicate instance id \"" + instance.id + "\"", line);
    }
    if (warnings != nullptr && !instance.emotion_keyword.empty() &&
        instance.clauses[instance.emotion_index].text.find(
            instance.emotion_keyword) == std::string::npos) {
      warnings->push_back("line " + std::to_string(line) + ": keyword \"" +
                          instance.emotion_keyword +
                          "\" not found in emotion clause");
    }
    corpus.instances.push_back(std::move(instance));
  }
  return corpus;
}

Corpus ParseCorpusString(const std::string &text, std::string source_label,
                         std::vector<std::string> *warnings) {
  std::istringstream in(text);
  return ParseCorpus(in, std::move(source_label), warnings);
}

Corpus ReadCorpusFile(const std::string &path,
                      std::vector<std::string> *warnings) {
  return ParseCorpusString(ReadFile(path), path, warnings);
}

std::string SerializeInstance(const Instance &instance) {
  Json record;
  record["id"] = instance.id;
  Json clauses = Json::array();
  for (const Clause &clause : instance.clauses) clauses.push_back(clause.text);
  record["clauses"] = std::move(clauses);
  record["emotion_index"] = instance.emotion_index;
  record["emotion_keyword"] = instance.emotion_keyword;
  record["cause_indices"] = instance.cause_indices;
  for (const auto &[key, value] : instance.extra.items()) {
    record[key] = value;
  }
  return record.dump();
}

std::string SerializeCorpus(const Corpus &corpus) {
  std::string out;
  for (const Instance &instance : corpus.instances) {
    out += SerializeInstance(instance);
    out += '\n';
  }
  return out;
}

RelativePosition GetRelativePosition(const Instance &instance,
                                     int cause_index) {
  if (!instance.IsCause(cause_index)) {
    throw CorpusError("clause " + std::to_string(cause_index) +
                      " is not an annotated cause of instance \"" +
                      instance.id + "\"");
  }
  return RelativePosition(cause_index - instance.emotion_index);
}

std::vector<RelativePosition> CausePositions(const Instance &instance) {
  std::vector<RelativePosition> positions;
  positions.reserve(instance.cause_indices.size());
  for (int c : instance.cause_indices) {
    positions.emplace_back(c - instance.emotion_index);
  }
  return positions;
}

std::vector<RelativePosition> ValidPositions(const Instance &instance) {
  std::vector<RelativePosition> positions;
  positions.reserve(instance.clauses.size());
  for (int i = 0; i < instance.clause_count(); ++i) {
    positions.emplace_back(i - instance.emotion_index);
  }
  return positions;
}

}  // namespace ecebias
