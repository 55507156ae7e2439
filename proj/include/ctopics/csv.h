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

#ifndef CTOPICS_CSV_H_
#define CTOPICS_CSV_H_

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace ctopics {

// Streaming reader for comma-separated values with double-quote escaping.
// Quoted fields may contain commas, doubled quotes and line breaks. Records
// end at LF or CRLF. Completely blank lines are skipped. A leading UTF-8 BOM
// is ignored.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in);

  // Reads the next record into `fields`. Returns false at end of input.
  // Throws DataError naming the record number on an unterminated quote or on
  // stray characters after a closing quote.
  bool Next(std::vector<std::string>* fields);

  // 1-based index of the record last returned by Next(), counting the header.
  int64_t record_number() const { return record_number_; }

 private:
  int Get();
  int Peek();

  std::streambuf* buf_;
  int64_t record_number_ = 0;
  bool at_start_ = true;
};

// Quotes `field` if it contains a comma, quote, CR or LF.
std::string CsvEscape(std::string_view field);

}  // namespace ctopics

#endif  // CTOPICS_CSV_H_
