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

#ifndef CTOPICS_CIVIL_DATE_H_
#define CTOPICS_CIVIL_DATE_H_

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace ctopics {

// A calendar date with no time or timezone attached.
struct CivilDate {
  int year = 1970;
  int month = 1;
  int day = 1;

  auto operator<=>(const CivilDate&) const = default;

  // ISO 8601, YYYY-MM-DD.
  std::string ToString() const;
};

// Month bucket used by the popularity series.
struct YearMonth {
  int year = 1970;
  int month = 1;

  auto operator<=>(const YearMonth&) const = default;

  YearMonth Next() const;
  static YearMonth Of(const CivilDate& date) { return {date.year, date.month}; }
};

bool IsValidDate(int year, int month, int day);

// Accepts MM/DD/YYYY and YYYY-MM-DD, with optional surrounding whitespace.
// Returns nullopt for anything else, including impossible dates (02/30).
std::optional<CivilDate> ParseCivilDate(std::string_view text);

}  // namespace ctopics

#endif  // CTOPICS_CIVIL_DATE_H_
