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

#include "cli.h"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "ecebias/io.h"
#include "ecebias/report.h"
#include "gtest/gtest.h"

namespace ecebias {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome Invoke(const std::vector<std::string> &args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli::Dispatch(args, out, err);
  return {status, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ecebias_cli_" + std::to_string(::testing::UnitTest::GetInstance()
                                                ->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    corpus_ = Path("clone.jsonl");
    ASSERT_EQ(Invoke({"--seed", "1", "--out", corpus_, "synth", "--stretch"})
                  .status,
              0);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string &name) const { return (dir_ / name).string(); }

  fs::path dir_;
  std::string corpus_;
};

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(Invoke({}).status, 2);
  EXPECT_EQ(Invoke({"frobnicate"}).status, 2);
  EXPECT_EQ(Invoke({"audit"}).status, 2);
  EXPECT_EQ(Invoke({"--format", "xml", "audit", "--corpus", corpus_}).status, 2);
  const Outcome r = Invoke({"baseline", "--corpus", corpus_, "--pool", "median"});
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("error"), std::string::npos);
  EXPECT_EQ(Invoke({"--out", Path("o.jsonl"), "debias", "--corpus", corpus_,
                    "--preset", "nope"})
                .status,
            2);
}

TEST_F(CliTest, DomainErrorsExitOne) {
  EXPECT_EQ(Invoke({"audit", "--corpus", Path("missing.jsonl")}).status, 1);
  WriteFileAtomic(Path("bad.jsonl"), "{\"id\": \"x\"}\n");
  const Outcome bad = Invoke({"audit", "--corpus", Path("bad.jsonl")});
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.err.find("line 1"), std::string::npos);
  EXPECT_EQ(Invoke({"--out", Path("o.jsonl"), "debias", "--corpus", corpus_,
                    "--preset", "balanced", "--tolerance", "0.0001"})
                .status,
            1);
}

TEST_F(CliTest, HelpExitsZero) {
  const Outcome r = Invoke({"--help"});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("baseline"), std::string::npos);
}

TEST_F(CliTest, JsonAndTableAgree) {
  const Outcome json = Invoke({"--format", "json", "audit", "--corpus", corpus_});
  const Outcome table = Invoke({"audit", "--corpus", corpus_});
  ASSERT_EQ(json.status, 0);
  ASSERT_EQ(table.status, 0);
  const Json doc = Json::parse(json.out);
  for (const auto &[key, mass] : doc["distribution"].items()) {
    EXPECT_NE(table.out.find(FormatPercent(mass.get<double>())),
              std::string::npos)
        << key;
  }
  EXPECT_NE(table.out.find(std::to_string(doc["n_causes"].get<int>())),
            std::string::npos);

  const std::vector<std::string> base = {"--seed", "3", "baseline", "--corpus",
                                         corpus_, "--trials", "4"};
  std::vector<std::string> as_json = {"--format", "json"};
  as_json.insert(as_json.end(), base.begin(), base.end());
  const Json agg = Json::parse(Invoke(as_json).out);
  const std::string agg_table = Invoke(base).out;
  char mean_f1[32];
  std::snprintf(mean_f1, sizeof mean_f1, "%.4f", agg["mean_f1"].get<double>());
  EXPECT_NE(agg_table.find(mean_f1), std::string::npos)
      << agg_table;
}

TEST_F(CliTest, EveryCommandIsDeterministic) {
  WriteFileAtomic(Path("pred.jsonl"),
                  "{\"id\": \"syn-0001\", \"predicted_indices\": [0]}\n");
  const std::vector<std::vector<std::string>> commands = {
      {"audit", "--corpus", corpus_},
      {"baseline", "--corpus", corpus_, "--trials", "3"},
      {"eval", "--gold", corpus_, "--predictions", Path("pred.jsonl")},
      {"lexicon", "--corpus", corpus_},
      {"synth", "--n", "50"},
  };
  for (const auto &command : commands) {
    for (const char *format : {"json", "table"}) {
      std::vector<std::string> args = {"--seed", "7", "--format", format};
      args.insert(args.end(), command.begin(), command.end());
      const Outcome a = Invoke(args);
      const Outcome b = Invoke(args);
      EXPECT_EQ(a.status, 0) << command[0] << a.err;
      EXPECT_EQ(a.out, b.out) << command[0];
      EXPECT_EQ(a.err, b.err) << command[0];
    }
  }
  std::string first;
  for (int i = 0; i < 2; ++i) {
    const std::string out = Path("debiased" + std::to_string(i) + ".jsonl");
    ASSERT_EQ(Invoke({"--seed", "7", "--out", out, "debias", "--corpus",
                      corpus_, "--preset", "dataset2"})
                  .status,
              0);
    if (i == 0) {
      first = ReadFile(out);
    } else {
      EXPECT_EQ(ReadFile(out), first);
    }
  }
}

TEST_F(CliTest, RunRecordNamesDigests) {
  const std::string out = Path("d.jsonl");
  ASSERT_EQ(Invoke({"--seed", "2", "--out", out, "debias", "--corpus", corpus_,
                    "--preset", "balanced", "--tolerance", "0.05",
                    "--manifest", Path("m.json")})
                .status,
            0);
  const Json record = Json::parse(ReadFile(out + ".run.json"));
  EXPECT_EQ(record["subcommand"], "debias");
  EXPECT_EQ(record["seed"], 2);
  EXPECT_FALSE(record["inputs"].empty());
  EXPECT_FALSE(record["outputs"].empty());
  const Json manifest = Json::parse(ReadFile(Path("m.json")));
  EXPECT_TRUE(manifest.contains("kept_ids"));
}

TEST_F(CliTest, DebiasNeedsOut) {
  EXPECT_NE(Invoke({"debias", "--corpus", corpus_, "--preset", "balanced"})
                .status,
            0);
}

}  // namespace
}  // namespace ecebias
