// Copyright 2026 The ctopics Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <filesystem>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "ctopics/errors.h"
#include "ctopics/lda.h"
#include "ctopics/model_io.h"

namespace ctopics {
namespace {

TrainedModel SmallModel() {
  TermDocumentMatrix m = BuildCorpus({{"c1", {"late", "fee", "fee", "pay"}},
                                      {"c2", {"call", "debt", "call"}},
                                      {"c3", {"pay", "late", "debt"}},
                                      {"c4", {}}});
  LdaConfig c;
  c.num_topics = 3;
  c.sweeps = 30;
  c.burn_in = 10;
  c.sample_lag = 5;
  c.seed = 99;
  return Train(m, c);
}

std::string Serialize(const TrainedModel& m) {
  std::ostringstream out;
  WriteModel(m, out);
  return out.str();
}

TrainedModel Parse(const std::string& s) {
  std::istringstream in(s);
  return ReadModel(in);
}

TEST(ModelIoTest, RoundTripIsExact) {
  TrainedModel m = SmallModel();
  TrainedModel back = Parse(Serialize(m));
  EXPECT_TRUE(back == m);
  EXPECT_EQ(Serialize(back), Serialize(m));
}

TEST(ModelIoTest, LoadedModelInfersIdentically) {
  TrainedModel m = SmallModel();
  auto dir = std::filesystem::temp_directory_path() / "ctopics_model_io";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "model.json").string();
  SaveModel(m, path);
  TrainedModel loaded = LoadModel(path);
  std::vector<std::string> terms = {"late", "fee", "unknown", "call"};
  InferOptions o;
  o.seed = 5;
  EXPECT_EQ(Infer(loaded, terms, o).mixture, Infer(m, terms, o).mixture);
}

TEST(ModelIoTest, RecordsConfig) {
  nlohmann::json j = nlohmann::json::parse(Serialize(SmallModel()));
  EXPECT_EQ(j["format"], "ctopics.lda_model");
  EXPECT_EQ(j["version"], kModelFormatVersion);
  EXPECT_EQ(j["config"]["num_topics"], 3);
  EXPECT_EQ(j["config"]["alpha"], 0.1);
  EXPECT_EQ(j["config"]["seed"], 99);
}

void ExpectRejected(const std::string& text, const std::string& needle) {
  try {
    Parse(text);
    FAIL() << "accepted a bad model; expected " << needle;
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos)
        << e.what();
  }
}

TEST(ModelIoTest, RejectsCorruption) {
  const std::string good = Serialize(SmallModel());
  auto edit = [&](auto fn) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(good);
    fn(j);
    return j.dump();
  };
  ExpectRejected(edit([](auto& j) { j["topic_totals"][0] = 1000; }),
                 "topic_totals");
  ExpectRejected(edit([](auto& j) { j["version"] = 2; }), "version");
  ExpectRejected(edit([](auto& j) { j["format"] = "other"; }),
                 "not a ctopics model");
  ExpectRejected(edit([](auto& j) { j["beta_hat"][1][0] = 0.9; }),
                 "beta_hat row 1");
  ExpectRejected(edit([](auto& j) { j["config"]["alpha"] = -1; }),
                 "config");
  ExpectRejected(edit([](auto& j) { j["documents"][0]["theta"][0] = 0.99; }),
                 "c1");
  ExpectRejected(edit([](auto& j) { j["beta_hat"].erase(0); }), "beta_hat");
  ExpectRejected(edit([](auto& j) { j["topic_term_counts"][0][0] = -1; }),
                 "negative");
  ExpectRejected("{not json", "malformed");
}

TEST(ModelIoTest, MissingFile) {
  EXPECT_THROW(LoadModel("/nonexistent/model.json"), UsageError);
}

}  // namespace
}  // namespace ctopics
