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

#include "ctopics/csv.h"

#include <string>

#include "ctopics/errors.h"

namespace ctopics {

namespace {
constexpr int kEof = std::char_traits<char>::eof();
}  // namespace

CsvReader::CsvReader(std::istream& in) : buf_(in.rdbuf()) {}

int CsvReader::Get() { return buf_ ? buf_->sbumpc() : kEof; }

int CsvReader::Peek() { return buf_ ? buf_->sgetc() : kEof; }

bool CsvReader::Next(std::vector<std::string>* fields) {
  if (at_start_) {
    at_start_ = false;
    // Skip a UTF-8 byte order mark.
    if (Peek() == 0xEF) {
      Get();
      if (Get() != 0xBB || Get() != 0xBF) {
        throw DataError("CSV: malformed byte order mark");
      }
    }
  }
  for (;;) {
    fields->clear();
    int c = Peek();
    if (c == kEof) return false;
    ++record_number_;
    std::string field;
    bool any_content = false;
    for (;;) {
      c = Get();
      if (c == '"' && field.empty()) {
        // Quoted field.
        any_content = true;
        for (;;) {
          c = Get();
          if (c == kEof) {
            throw DataError("CSV: unterminated quoted field in record " +
                            std::to_string(record_number_));
          }
          if (c == '"') {
            if (Peek() == '"') {
              Get();
              field.push_back('"');
              continue;
            }
            break;
          }
          field.push_back(static_cast<char>(c));
        }
        c = Get();
        if (c == '\r' && Peek() == '\n') c = Get();
        if (c != ',' && c != '\n' && c != kEof) {
          throw DataError("CSV: unexpected character after closing quote in "
                          "record " + std::to_string(record_number_));
        }
      } else {
        while (c != ',' && c != '\n' && c != kEof) {
          if (c == '\r' && Peek() == '\n') {
            c = Get();
            break;
          }
          field.push_back(static_cast<char>(c));
          c = Get();
        }
      }
      if (!field.empty()) any_content = true;
      fields->push_back(std::move(field));
      field.clear();
      if (c == ',') {
        any_content = true;
        continue;
      }
      break;  // end of record
    }
    if (!any_content) {
      // Blank line; not a record.
      --record_number_;
      continue;
    }
    return true;
  }
}

std::string CsvEscape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace ctopics
