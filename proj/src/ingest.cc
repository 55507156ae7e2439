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

#include "ctopics/ingest.h"

#include <unordered_set>

#include <json.hpp>

#include "ctopics/csv.h"
#include "ctopics/errors.h"

namespace ctopics {

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

int FindColumn(const std::vector<std::string>& header, const std::string& name,
               bool required) {
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  if (required) {
    throw DataError("missing required column \"" + name + "\" in CSV header");
  }
  return -1;
}

}  // namespace

LoadResult LoadComplaints(std::istream& csv, const ColumnMap& columns) {
  CsvReader reader(csv);
  std::vector<std::string> fields;
  if (!reader.Next(&fields)) {
    throw DataError("CSV input is empty (header row required)");
  }
  const int id_col = FindColumn(fields, columns.complaint_id, true);
  const int date_col = FindColumn(fields, columns.date_received, true);
  const int product_col = FindColumn(fields, columns.product, true);
  const int issue_col = FindColumn(fields, columns.issue, true);
  const int company_col = FindColumn(fields, columns.company, true);
  const int narrative_col = FindColumn(fields, columns.narrative, true);
  const int state_col = FindColumn(fields, columns.state, false);

  LoadResult result;
  while (reader.Next(&fields)) {
    auto field = [&](int col) -> const std::string* {
      if (col < 0 || static_cast<size_t>(col) >= fields.size()) return nullptr;
      return &fields[col];
    };
    auto text = [&](int col) {
      const std::string* f = field(col);
      return f ? *f : std::string();
    };

    ComplaintRecord rec;
    rec.row = reader.record_number();
    rec.complaint_id = text(id_col);
    if (NormalizeNarrative(rec.complaint_id).empty()) {
      result.rejected_rows.push_back({rec.row, "empty complaint id"});
      continue;
    }
    rec.date_received = ParseCivilDate(text(date_col));
    if (!rec.date_received) {
      result.rejected_rows.push_back(
          {rec.row, "unparseable date \"" + text(date_col) + "\""});
    }
    rec.product = text(product_col);
    rec.issue = text(issue_col);
    rec.company = text(company_col);
    if (const std::string* s = field(state_col); s && !s->empty()) {
      rec.state = *s;
    }
    if (const std::string* n = field(narrative_col)) rec.narrative = *n;
    result.records.push_back(std::move(rec));
  }
  return result;
}

std::string NormalizeNarrative(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

Selection SelectCorpus(const std::vector<ComplaintRecord>& records) {
  Selection sel;
  sel.report.total = static_cast<int64_t>(records.size());
  std::unordered_set<std::string> seen;
  for (const ComplaintRecord& rec : records) {
    if (!rec.narrative) continue;
    std::string key = NormalizeNarrative(*rec.narrative);
    if (key.empty()) continue;
    ++sel.report.with_narrative;
    if (!seen.insert(std::move(key)).second) {
      ++sel.report.duplicates_removed;
      continue;
    }
    CorpusDocument doc;
    doc.complaint_id = rec.complaint_id;
    doc.date_received = rec.date_received;
    doc.raw_text = *rec.narrative;
    doc.issue = rec.issue;
    doc.company = rec.company;
    doc.product = rec.product;
    if (!doc.date_received) ++sel.report.undated;
    sel.documents.push_back(std::move(doc));
  }
  sel.report.final_count = static_cast<int64_t>(sel.documents.size());
  return sel;
}

std::string SelectionReportToJson(const SelectionReport& report) {
  nlohmann::ordered_json j;
  j["total"] = report.total;
  j["with_narrative"] = report.with_narrative;
  j["duplicates_removed"] = report.duplicates_removed;
  j["final"] = report.final_count;
  j["undated"] = report.undated;
  auto rows = nlohmann::ordered_json::array();
  for (const RejectedRow& r : report.rejected_rows) {
    rows.push_back({{"row", r.row}, {"reason", r.reason}});
  }
  j["rejected_rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace ctopics
