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
// Reading complaint exports and selecting the modeling corpus.

#ifndef CTOPICS_INGEST_H_
#define CTOPICS_INGEST_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctopics/civil_date.h"

namespace ctopics {

// Header names of the columns we read. Defaults match the public export.
struct ColumnMap {
  std::string complaint_id = "Complaint ID";
  std::string date_received = "Date received";
  std::string product = "Product";
  std::string issue = "Issue";
  std::string company = "Company";
  std::string state = "State";  // optional column
  std::string narrative = "Consumer complaint narrative";
};

struct ComplaintRecord {
  std::string complaint_id;
  // Absent when the date field did not parse; such rows are listed in
  // LoadResult::rejected_rows and stay out of the time series only.
  std::optional<CivilDate> date_received;
  std::string product;
  std::string issue;
  std::string company;
  std::optional<std::string> state;
  std::optional<std::string> narrative;
  // CSV record number (header is 1).
  int64_t row = 0;

  bool operator==(const ComplaintRecord&) const = default;
};

struct RejectedRow {
  int64_t row = 0;
  std::string reason;
};

struct LoadResult {
  std::vector<ComplaintRecord> records;
  // Rows with an unparseable date (kept, undated) or an empty complaint id
  // (dropped).
  std::vector<RejectedRow> rejected_rows;
};

// Parses a complaint export. Throws DataError on structural CSV damage
// (with the record number) or when a required column is missing from the
// header (naming the column).
LoadResult LoadComplaints(std::istream& csv, const ColumnMap& columns = {});

struct CorpusDocument {
  std::string complaint_id;
  std::optional<CivilDate> date_received;
  std::string raw_text;
  std::string issue;
  std::string company;
  std::string product;

  bool operator==(const CorpusDocument&) const = default;
};

struct SelectionReport {
  int64_t total = 0;
  int64_t with_narrative = 0;
  int64_t duplicates_removed = 0;
  int64_t final_count = 0;
  // Documents kept for modeling that have no usable date.
  int64_t undated = 0;
  std::vector<RejectedRow> rejected_rows;
};

struct Selection {
  std::vector<CorpusDocument> documents;
  SelectionReport report;
};

// Trims, then collapses internal whitespace runs to a single space. Two
// narratives are duplicates when their normalized forms are equal.
std::string NormalizeNarrative(std::string_view text);

// Keeps records with a non-blank narrative, dropping later duplicates of an
// earlier narrative. Order is preserved.
Selection SelectCorpus(const std::vector<ComplaintRecord>& records);

std::string SelectionReportToJson(const SelectionReport& report);

}  // namespace ctopics

#endif  // CTOPICS_INGEST_H_
