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
// Narrative text -> stemmed terms: lowercase, split on non-letters, length
// gate, stop words, Porter stemming.

#ifndef CTOPICS_PREPROCESS_H_
#define CTOPICS_PREPROCESS_H_

#include <functional>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ctopics {

using TermSet = std::set<std::string, std::less<>>;

struct StopwordPolicy {
  TermSet generic;
  // Company and state names.
  TermSet domain;
  // Redaction placeholders in the public narratives.
  TermSet masking = {"xx", "xxxx", "xxxxxxxx"};
  int min_token_length = 2;

  bool IsStopword(std::string_view term) const;

  // Throws UsageError if a member term is not lowercase alphabetic or
  // min_token_length < 1.
  void Validate() const;
};

// One term per line; '#' starts a comment; blank lines are ignored. Terms are
// lowercased. Throws DataError (with line number) on a non-alphabetic term.
TermSet ReadStopwordList(std::istream& in);
TermSet LoadStopwordFile(const std::string& path);

// The shipped English list (data/stopwords_en.txt), compiled in.
TermSet DefaultGenericStopwords();

// Lowercase, split into maximal alphabetic runs, drop tokens shorter than
// min_token_length (counted in code points) or in the stop set, stem, and
// drop stems that land in the stop set. Order is preserved.
std::vector<std::string> PreprocessText(std::string_view text,
                                        const StopwordPolicy& policy);

}  // namespace ctopics

#endif  // CTOPICS_PREPROCESS_H_
