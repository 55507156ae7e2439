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

#include "ctopics/analytics.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <unordered_map>

#include <json.hpp>

#include "ctopics/csv.h"
#include "ctopics/errors.h"
#include "ctopics/utf8.h"

namespace ctopics {

namespace {

int MonthIndex(const YearMonth& ym) { return ym.year * 12 + (ym.month - 1); }

int ParseInt(const std::string& s, const char* what) {
  int v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw DataError(std::string("bad ") + what + " \"" + s + "\"");
  }
  return v;
}

// Dense contribution of one document under `mode`.
void Contribution(const DocTopicMixture& m, const PopularityMode& mode,
                  std::vector<double>* out) {
  if (!mode.truncated) {
    *out = m.theta;
    return;
  }
  out->assign(m.theta.size(), 0.0);
  for (const auto& [topic, p] : TruncateMixture(m, mode.top_m, mode.renormalize).entries) {
    (*out)[topic] = p;
  }
}

}  // namespace

void TopicLabelMap::Set(int topic, std::string label) {
  if (topic < 0) throw UsageError("label topic id must be >= 0");
  if (label.empty()) {
    throw UsageError("label for topic " + std::to_string(topic) + " is empty");
  }
  labels_[topic] = std::move(label);
}

std::string TopicLabelMap::Label(int topic) const {
  auto it = labels_.find(topic);
  return it == labels_.end() ? "topic-" + std::to_string(topic) : it->second;
}

void TopicLabelMap::CheckRange(int num_topics) const {
  for (const auto& [topic, label] : labels_) {
    if (topic >= num_topics) {
      throw UsageError("label given for topic " + std::to_string(topic) +
                       " but the model has " + std::to_string(num_topics) +
                       " topics");
    }
  }
}

TopicLabelMap TopicLabelMap::Read(std::istream& in) {
  TopicLabelMap map;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError("label file line " + std::to_string(line_no) +
                      ": expected topic_id<TAB>label");
    }
    int topic;
    try {
      topic = ParseInt(line.substr(0, tab), "topic id");
    } catch (const DataError& e) {
      throw DataError("label file line " + std::to_string(line_no) + ": " +
                      e.what());
    }
    std::string label = line.substr(tab + 1);
    if (topic < 0 || label.empty()) {
      throw DataError("label file line " + std::to_string(line_no) +
                      ": negative topic id or empty label");
    }
    map.Set(topic, std::move(label));
  }
  return map;
}

TopicLabelMap TopicLabelMap::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open label file " + path);
  return Read(in);
}

TruncatedMixture TruncateMixture(const DocTopicMixture& mixture, int m,
                                 bool renormalize) {
  if (m < 1) throw UsageError("truncation size must be >= 1");
  TruncatedMixture out;
  out.doc_id = mixture.doc_id;
  std::vector<int> order = mixture.dominant_rank;
  if (order.size() != mixture.theta.size()) {
    order = DocTopicMixture::FromTheta("", mixture.theta).dominant_rank;
  }
  for (int topic : order) {
    if (static_cast<int>(out.entries.size()) >= m) break;
    double p = mixture.theta[topic];
    if (p > 0) out.entries.emplace_back(topic, p);
  }
  if (renormalize && !out.entries.empty()) {
    double sum = 0;
    for (const auto& e : out.entries) sum += e.second;
    for (auto& e : out.entries) e.second /= sum;
  }
  return out;
}

std::string PopularityMode::Describe() const {
  if (!truncated) return "full";
  return "top-" + std::to_string(top_m) + (renormalize ? "-renormalized" : "");
}

TopicPopularitySeries TopicPopularity(std::span<const DatedMixture> docs,
                                      const PopularityMode& mode) {
  if (docs.empty()) {
    throw DataError("topic popularity needs at least one dated document");
  }
  if (mode.truncated && mode.top_m < 1) {
    throw UsageError("truncation size must be >= 1");
  }
  const size_t k_count = docs.front().mixture->theta.size();
  int first = MonthIndex(YearMonth::Of(docs.front().date));
  int last = first;
  for (const DatedMixture& d : docs) {
    if (d.mixture->theta.size() != k_count) {
      throw DataError("mixtures have different numbers of topics");
    }
    int idx = MonthIndex(YearMonth::Of(d.date));
    first = std::min(first, idx);
    last = std::max(last, idx);
  }

  TopicPopularitySeries series;
  series.num_topics = static_cast<int>(k_count);
  series.mode = mode;
  const size_t num_buckets = static_cast<size_t>(last - first + 1);
  YearMonth ym{first / 12, first % 12 + 1};
  for (size_t t = 0; t < num_buckets; ++t, ym = ym.Next()) {
    series.buckets.push_back(ym);
  }
  std::vector<std::vector<size_t>> members(num_buckets);
  for (size_t i = 0; i < docs.size(); ++i) {
    members[MonthIndex(YearMonth::Of(docs[i].date)) - first].push_back(i);
  }
  series.n_per_bucket.assign(num_buckets, 0);
  series.values.assign(k_count, std::vector<double>(num_buckets, 0.0));
  std::vector<double> contribution;
  std::vector<double> sum(k_count);
  for (size_t t = 0; t < num_buckets; ++t) {
    auto& idx = members[t];
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
      const DocTopicMixture& ma = *docs[a].mixture;
      const DocTopicMixture& mb = *docs[b].mixture;
      if (ma.doc_id != mb.doc_id) return ma.doc_id < mb.doc_id;
      return ma.theta < mb.theta;
    });
    series.n_per_bucket[t] = static_cast<int64_t>(idx.size());
    if (idx.empty()) continue;
    std::fill(sum.begin(), sum.end(), 0.0);
    for (size_t i : idx) {
      Contribution(*docs[i].mixture, mode, &contribution);
      for (size_t k = 0; k < k_count; ++k) sum[k] += contribution[k];
    }
    const double n = static_cast<double>(idx.size());
    for (size_t k = 0; k < k_count; ++k) series.values[k][t] = sum[k] / n;
  }
  return series;
}

std::vector<std::pair<std::string, double>> DocumentsByTopicRankWithProportion(
    std::span<const DocTopicMixture> mixtures, int topic, int rank, int m) {
  if (m < 1 || rank < 1 || rank > m) {
    throw UsageError("rank must satisfy 1 <= rank <= m (rank " +
                     std::to_string(rank) + ", m " + std::to_string(m) + ")");
  }
  std::vector<std::pair<std::string, double>> out;
  for (const DocTopicMixture& mix : mixtures) {
    TruncatedMixture t = TruncateMixture(mix, m, false);
    if (static_cast<int>(t.entries.size()) >= rank &&
        t.entries[rank - 1].first == topic) {
      out.emplace_back(mix.doc_id, t.entries[rank - 1].second);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  return out;
}

std::vector<std::string> DocumentsByTopicRank(
    std::span<const DocTopicMixture> mixtures, int topic, int rank, int m) {
  std::vector<std::string> ids;
  for (auto& [id, p] :
       DocumentsByTopicRankWithProportion(mixtures, topic, rank, m)) {
    ids.push_back(std::move(id));
  }
  return ids;
}

std::vector<DatedMixture> JoinDates(std::span<const DocTopicMixture> mixtures,
                                    std::span<const DocumentInfo> documents,
                                    const std::optional<std::string>& company) {
  std::unordered_map<std::string_view, const DocumentInfo*> by_id;
  for (const DocumentInfo& d : documents) by_id.emplace(d.doc_id, &d);
  const std::string wanted = company ? utf8::ToLower(*company) : "";
  std::vector<DatedMixture> out;
  bool matched_company = false;
  for (const DocTopicMixture& m : mixtures) {
    auto it = by_id.find(m.doc_id);
    if (it == by_id.end()) continue;
    const DocumentInfo& info = *it->second;
    if (company) {
      if (utf8::ToLower(info.company) != wanted) continue;
      matched_company = true;
    }
    if (!info.date_received) continue;
    out.push_back({&m, *info.date_received});
  }
  if (company && !matched_company) {
    throw DataError("company filter \"" + *company +
                    "\" matches no documents");
  }
  return out;
}

TopicPopularitySeries CompanyFilteredPopularity(
    std::span<const DocTopicMixture> mixtures,
    std::span<const DocumentInfo> documents, const std::string& company,
    const PopularityMode& mode) {
  auto dated = JoinDates(mixtures, documents, company);
  if (dated.empty()) {
    throw DataError("company filter \"" + company +
                    "\" matches no dated documents");
  }
  return TopicPopularity(dated, mode);
}

std::string FormatNumber(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void ExportSeriesCsv(const TopicPopularitySeries& series,
                     const TopicLabelMap& labels, std::ostream& out) {
  out << "topic_id,label,year,month,n_docs,popularity\n";
  for (int k = 0; k < series.num_topics; ++k) {
    const std::string label = CsvEscape(labels.Label(k));
    for (size_t t = 0; t < series.num_buckets(); ++t) {
      out << k << ',' << label << ',' << series.buckets[t].year << ','
          << series.buckets[t].month << ',' << series.n_per_bucket[t] << ','
          << FormatNumber(series.values[k][t]) << '\n';
    }
  }
  if (!out) throw DataError("failed writing popularity CSV");
}

void ExportSeriesJson(const TopicPopularitySeries& series,
                      const TopicLabelMap& labels, std::ostream& out) {
  using Json = nlohmann::ordered_json;
  Json j;
  j["mode"] = series.mode.Describe();
  j["num_topics"] = series.num_topics;
  Json buckets = Json::array();
  for (size_t t = 0; t < series.num_buckets(); ++t) {
    buckets.push_back({{"year", series.buckets[t].year},
                       {"month", series.buckets[t].month},
                       {"n_docs", series.n_per_bucket[t]},
                       {"empty", series.IsEmpty(t)}});
  }
  j["buckets"] = std::move(buckets);
  Json rows = Json::array();
  for (int k = 0; k < series.num_topics; ++k) {
    for (size_t t = 0; t < series.num_buckets(); ++t) {
      rows.push_back({{"topic_id", k},
                      {"label", labels.Label(k)},
                      {"year", series.buckets[t].year},
                      {"month", series.buckets[t].month},
                      {"n_docs", series.n_per_bucket[t]},
                      {"popularity",
                       std::stod(FormatNumber(series.values[k][t]))}});
    }
  }
  j["rows"] = std::move(rows);
  out << j.dump(2) << "\n";
  if (!out) throw DataError("failed writing popularity JSON");
}

TopicPopularitySeries ParseSeriesCsv(std::istream& in) {
  CsvReader reader(in);
  std::vector<std::string> f;
  if (!reader.Next(&f) ||
      f != std::vector<std::string>{"topic_id", "label", "year", "month",
                                    "n_docs", "popularity"}) {
    throw DataError("not a popularity CSV (bad header)");
  }
  struct Row {
    int topic;
    YearMonth ym;
    int64_t n;
    double value;
  };
  std::vector<Row> rows;
  int max_topic = -1;
  while (reader.Next(&f)) {
    if (f.size() != 6) throw DataError("popularity CSV row has wrong arity");
    Row r;
    r.topic = ParseInt(f[0], "topic id");
    r.ym = {ParseInt(f[2], "year"), ParseInt(f[3], "month")};
    r.n = ParseInt(f[4], "n_docs");
    r.value = std::stod(f[5]);
    max_topic = std::max(max_topic, r.topic);
    rows.push_back(r);
  }
  TopicPopularitySeries s;
  s.num_topics = max_topic + 1;
  std::map<YearMonth, int64_t> buckets;
  for (const Row& r : rows) buckets[r.ym] = r.n;
  for (const auto& [ym, n] : buckets) {
    s.buckets.push_back(ym);
    s.n_per_bucket.push_back(n);
  }
  s.values.assign(s.num_topics, std::vector<double>(s.buckets.size(), 0.0));
  for (const Row& r : rows) {
    size_t t = std::distance(buckets.begin(), buckets.find(r.ym));
    s.values[r.topic][t] = r.value;
  }
  return s;
}

void WriteDocumentInfoJson(std::span<const DocumentInfo> docs,
                           std::ostream& out) {
  using Json = nlohmann::ordered_json;
  Json arr = Json::array();
  for (const DocumentInfo& d : docs) {
    arr.push_back(
        {{"doc_id", d.doc_id},
         {"date_received",
          d.date_received ? Json(d.date_received->ToString()) : Json(nullptr)},
         {"company", d.company},
         {"issue", d.issue},
         {"product", d.product}});
  }
  Json j;
  j["format"] = "ctopics.documents";
  j["version"] = 1;
  j["documents"] = std::move(arr);
  out << j.dump(1) << "\n";
}

std::vector<DocumentInfo> ReadDocumentInfoJson(std::istream& in) {
  std::vector<DocumentInfo> docs;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.value("format", "") != "ctopics.documents") {
      throw DataError("not a ctopics document file");
    }
    for (const auto& d : j.at("documents")) {
      DocumentInfo info;
      info.doc_id = d.at("doc_id").get<std::string>();
      if (!d.at("date_received").is_null()) {
        info.date_received =
            ParseCivilDate(d.at("date_received").get<std::string>());
        if (!info.date_received) {
          throw DataError("bad date for document \"" + info.doc_id + "\"");
        }
      }
      info.company = d.value("company", "");
      info.issue = d.value("issue", "");
      info.product = d.value("product", "");
      docs.push_back(std::move(info));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed document file: ") + e.what());
  }
  return docs;
}

}  // namespace ctopics
