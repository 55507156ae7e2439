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

#include "ctopics/civil_date.h"

#include <charconv>
#include <cstdio>

namespace ctopics {

namespace {

bool IsLeap(int year) {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

// Parses exactly `width` decimal digits.
bool ParseFixed(std::string_view text, size_t width, int* out) {
  if (text.size() != width) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto res = std::from_chars(text.data(), text.data() + text.size(), *out);
  return res.ec == std::errc();
}

// One or two digits (CFPB exports have used both 3/5/2015 and 03/05/2015).
bool ParseShort(std::string_view text, int* out) {
  if (text.empty() || text.size() > 2) return false;
  return ParseFixed(text, text.size(), out);
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r' || s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::string CivilDate::ToString() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

YearMonth YearMonth::Next() const {
  return month == 12 ? YearMonth{year + 1, 1} : YearMonth{year, month + 1};
}

bool IsValidDate(int year, int month, int day) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30,
                                  31, 31, 30, 31, 30, 31};
  if (year < 1 || year > 9999 || month < 1 || month > 12 || day < 1) {
    return false;
  }
  int limit = kDays[month - 1] + (month == 2 && IsLeap(year) ? 1 : 0);
  return day <= limit;
}

std::optional<CivilDate> ParseCivilDate(std::string_view text) {
  text = Trim(text);
  CivilDate d;
  if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
    if (!ParseFixed(text.substr(0, 4), 4, &d.year) ||
        !ParseFixed(text.substr(5, 2), 2, &d.month) ||
        !ParseFixed(text.substr(8, 2), 2, &d.day)) {
      return std::nullopt;
    }
  } else {
    size_t s1 = text.find('/');
    if (s1 == std::string_view::npos) return std::nullopt;
    size_t s2 = text.find('/', s1 + 1);
    if (s2 == std::string_view::npos) return std::nullopt;
    if (!ParseShort(text.substr(0, s1), &d.month) ||
        !ParseShort(text.substr(s1 + 1, s2 - s1 - 1), &d.day) ||
        !ParseFixed(text.substr(s2 + 1), 4, &d.year)) {
      return std::nullopt;
    }
  }
  if (!IsValidDate(d.year, d.month, d.day)) return std::nullopt;
  return d;
}

}  // namespace ctopics
