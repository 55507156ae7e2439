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

#include "ctopics/model_io.h"

#include <fstream>

#include <json.hpp>

#include "ctopics/errors.h"

namespace ctopics {

namespace {

using Json = nlohmann::ordered_json;

constexpr char kFormat[] = "ctopics.lda_model";

template <typename T>
Json Rows(const std::vector<T>& flat, size_t rows, size_t cols) {
  Json out = Json::array();
  for (size_t r = 0; r < rows; ++r) {
    out.push_back(std::vector<T>(flat.begin() + r * cols,
                                 flat.begin() + (r + 1) * cols));
  }
  return out;
}

template <typename T>
std::vector<T> Flatten(const Json& rows, size_t expect_rows,
                       size_t expect_cols, const char* name) {
  if (!rows.is_array() || rows.size() != expect_rows) {
    throw DataError(std::string(name) + " has wrong number of rows");
  }
  std::vector<T> flat;
  flat.reserve(expect_rows * expect_cols);
  for (const Json& row : rows) {
    if (!row.is_array() || row.size() != expect_cols) {
      throw DataError(std::string(name) + " has a row of wrong length");
    }
    for (const Json& x : row) flat.push_back(x.get<T>());
  }
  return flat;
}

}  // namespace

void WriteModel(const TrainedModel& model, std::ostream& out) {
  const size_t k_count = static_cast<size_t>(model.num_topics());
  const size_t v = model.num_terms();
  Json j;
  j["format"] = kFormat;
  j["version"] = kModelFormatVersion;
  const LdaConfig& c = model.config;
  j["config"] = {{"num_topics", c.num_topics}, {"alpha", c.alpha},
                 {"eta", c.eta},               {"sweeps", c.sweeps},
                 {"burn_in", c.burn_in},       {"sample_lag", c.sample_lag},
                 {"seed", c.seed}};
  j["vocabulary"] = model.vocabulary.terms();
  j["topic_term_counts"] = Rows(model.topic_term_counts, k_count, v);
  j["topic_totals"] = model.topic_totals;
  j["beta_hat"] = Rows(model.beta_hat, k_count, v);
  Json docs = Json::array();
  for (size_t d = 0; d < model.training_doc_mixtures.size(); ++d) {
    const DocTopicMixture& m = model.training_doc_mixtures[d];
    Json doc = {{"doc_id", m.doc_id},
                {"theta", m.theta},
                {"dominant_rank", m.dominant_rank}};
    doc["assignments"] =
        d < model.assignments.size() ? Json(model.assignments[d]) : Json::array();
    docs.push_back(std::move(doc));
  }
  j["documents"] = std::move(docs);
  out << j.dump() << "\n";
}

TrainedModel ReadModel(std::istream& in) {
  TrainedModel model;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (!j.contains("format") || j["format"] != kFormat) {
      throw DataError("not a ctopics model file");
    }
    int version = j.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw DataError("model format version " + std::to_string(version) +
                      " is not supported (expected " +
                      std::to_string(kModelFormatVersion) + ")");
    }
    const auto& c = j.at("config");
    model.config.num_topics = c.at("num_topics").get<int>();
    model.config.alpha = c.at("alpha").get<double>();
    model.config.eta = c.at("eta").get<double>();
    model.config.sweeps = c.at("sweeps").get<int>();
    model.config.burn_in = c.at("burn_in").get<int>();
    model.config.sample_lag = c.at("sample_lag").get<int>();
    model.config.seed = c.at("seed").get<uint64_t>();
    if (model.config.num_topics < 1) {
      throw DataError("model config invalid: num_topics < 1");
    }
    model.vocabulary =
        Vocabulary(j.at("vocabulary").get<std::vector<std::string>>());
    const size_t k_count = static_cast<size_t>(model.config.num_topics);
    const size_t v = model.vocabulary.size();
    model.topic_term_counts =
        Flatten<int64_t>(j.at("topic_term_counts"), k_count, v,
                         "topic_term_counts");
    model.topic_totals = j.at("topic_totals").get<std::vector<int64_t>>();
    model.beta_hat = Flatten<double>(j.at("beta_hat"), k_count, v, "beta_hat");
    bool any_assignments = false;
    for (const auto& doc : j.at("documents")) {
      DocTopicMixture m;
      m.doc_id = doc.at("doc_id").get<std::string>();
      m.theta = doc.at("theta").get<std::vector<double>>();
      m.dominant_rank = doc.at("dominant_rank").get<std::vector<int>>();
      model.training_doc_mixtures.push_back(std::move(m));
      auto z = doc.value("assignments", std::vector<int>{});
      any_assignments |= !z.empty();
      model.assignments.push_back(std::move(z));
    }
    if (!any_assignments) model.assignments.clear();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed model JSON: ") + e.what());
  }
  model.Validate();
  return model;
}

void SaveModel(const TrainedModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  WriteModel(model, out);
  if (!out) throw DataError("write failed: " + path);
}

TrainedModel LoadModel(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open model file " + path);
  return ReadModel(in);
}

}  // namespace ctopics
