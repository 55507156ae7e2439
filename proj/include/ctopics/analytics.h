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
//
// Topic popularity over calendar months, mixture truncation, grouping of
// documents by topic rank, and plot-ready export.
//
// Popularity of topic i in month t is the mean proportion of i over the n_t
// documents received that month:
//
//   Tp[i][t] = (sum_j theta_i(d_t^j)) / n_t

#ifndef CTOPICS_ANALYTICS_H_
#define CTOPICS_ANALYTICS_H_

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ctopics/civil_date.h"
#include "ctopics/lda.h"

namespace ctopics {

class TopicLabelMap {
 public:
  TopicLabelMap() = default;

  // Throws UsageError for an empty label or negative id.
  void Set(int topic, std::string label);
  // "topic-<id>" when no label was given.
  std::string Label(int topic) const;
  const std::map<int, std::string>& labels() const { return labels_; }

  // Throws UsageError if a key is outside [0, num_topics).
  void CheckRange(int num_topics) const;

  // Lines of `topic_id<TAB>label`; '#' comment lines and blank lines are
  // skipped. Throws DataError with the line number on a malformed line.
  static TopicLabelMap Read(std::istream& in);
  static TopicLabelMap Load(const std::string& path);

 private:
  std::map<int, std::string> labels_;
};

struct TruncatedMixture {
  std::string doc_id;
  // (topic, proportion), descending by proportion, at most m entries.
  std::vector<std::pair<int, double>> entries;
};

// Keeps the m largest positive proportions (ties by ascending topic id);
// with `renormalize` they are scaled to sum to 1. m >= 1.
TruncatedMixture TruncateMixture(const DocTopicMixture& mixture, int m,
                                 bool renormalize);

struct PopularityMode {
  bool truncated = false;
  int top_m = 5;
  bool renormalize = false;

  static PopularityMode Full() { return {}; }
  static PopularityMode Truncated(int m, bool renormalize) {
    return {true, m, renormalize};
  }
  std::string Describe() const;
};

struct DatedMixture {
  const DocTopicMixture* mixture = nullptr;
  CivilDate date;
};

struct TopicPopularitySeries {
  int num_topics = 0;
  // Every month from the earliest to the latest document, in order.
  std::vector<YearMonth> buckets;
  std::vector<int64_t> n_per_bucket;
  // values[topic][bucket].
  std::vector<std::vector<double>> values;
  PopularityMode mode;

  size_t num_buckets() const { return buckets.size(); }
  // Months inside the range that received no documents (all-zero values).
  bool IsEmpty(size_t bucket) const { return n_per_bucket[bucket] == 0; }
};

// Throws DataError when there are no documents or the mixtures disagree on K.
// Within a month, contributions are summed in doc id order so the result does
// not depend on input order.
TopicPopularitySeries TopicPopularity(std::span<const DatedMixture> docs,
                                      const PopularityMode& mode = {});

// Ids of documents whose r-th most probable topic (1-based, within the top-m
// truncation) is `topic`, by descending proportion of that topic (ties keep
// input order). Throws UsageError unless 1 <= r <= m.
std::vector<std::string> DocumentsByTopicRank(
    std::span<const DocTopicMixture> mixtures, int topic, int rank, int m);

// Same, returning the topic's proportion alongside each id.
std::vector<std::pair<std::string, double>> DocumentsByTopicRankWithProportion(
    std::span<const DocTopicMixture> mixtures, int topic, int rank, int m);

// Per-document attributes needed to place a mixture in time and by company.
struct DocumentInfo {
  std::string doc_id;
  std::optional<CivilDate> date_received;
  std::string company;
  std::string issue;
  std::string product;
};

// Pairs mixtures with their dates by doc id; undated or unknown documents are
// skipped. When `company` is set, keeps only documents whose company equals
// it case-insensitively and throws DataError naming the filter if none match.
std::vector<DatedMixture> JoinDates(
    std::span<const DocTopicMixture> mixtures,
    std::span<const DocumentInfo> documents,
    const std::optional<std::string>& company = std::nullopt);

TopicPopularitySeries CompanyFilteredPopularity(
    std::span<const DocTopicMixture> mixtures,
    std::span<const DocumentInfo> documents, const std::string& company,
    const PopularityMode& mode = {});

// CSV header: topic_id,label,year,month,n_docs,popularity. One row per
// (topic, bucket) sorted by topic then bucket; numbers with 12 significant
// digits.
void ExportSeriesCsv(const TopicPopularitySeries& series,
                     const TopicLabelMap& labels, std::ostream& out);
// {"mode": ..., "num_topics": K, "buckets": [{"year","month","n_docs",
//  "empty"}], "rows": [{"topic_id","label","year","month","n_docs",
//  "popularity"}]} with the same row order and precision as the CSV.
void ExportSeriesJson(const TopicPopularitySeries& series,
                      const TopicLabelMap& labels, std::ostream& out);

// Reads the CSV form back. Mode is not recorded in the CSV and is left at
// its default.
TopicPopularitySeries ParseSeriesCsv(std::istream& in);

// Formats with 12 significant digits.
std::string FormatNumber(double x);

// Per-document attribute file written next to the matrix.
void WriteDocumentInfoJson(std::span<const DocumentInfo> docs,
                           std::ostream& out);
std::vector<DocumentInfo> ReadDocumentInfoJson(std::istream& in);

}  // namespace ctopics

#endif  // CTOPICS_ANALYTICS_H_
