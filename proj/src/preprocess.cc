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

#include "ctopics/preprocess.h"

#include <fstream>

#include "ctopics/errors.h"
#include "ctopics/porter_stemmer.h"
#include "ctopics/utf8.h"

namespace ctopics {

namespace {

bool IsLowerAlphaTerm(std::string_view term) {
  if (term.empty()) return false;
  size_t pos = 0;
  while (pos < term.size()) {
    char32_t cp = utf8::Decode(term, &pos);
    if (!utf8::IsAlpha(cp) || utf8::ToLower(cp) != cp) return false;
  }
  return true;
}

std::string_view TrimLine(std::string_view s) {
  const char* kSpace = " \t\r\n";
  size_t b = s.find_first_not_of(kSpace);
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(kSpace);
  return s.substr(b, e - b + 1);
}

}  // namespace

bool StopwordPolicy::IsStopword(std::string_view term) const {
  return generic.contains(term) || domain.contains(term) ||
         masking.contains(term);
}

void StopwordPolicy::Validate() const {
  if (min_token_length < 1) {
    throw UsageError("min_token_length must be >= 1");
  }
  for (const auto* set : {&generic, &domain, &masking}) {
    for (const std::string& t : *set) {
      if (!IsLowerAlphaTerm(t)) {
        throw UsageError("stop word \"" + t +
                         "\" is not a lowercase alphabetic term");
      }
    }
  }
}

TermSet ReadStopwordList(std::istream& in) {
  TermSet terms;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (size_t hash = body.find('#'); hash != std::string_view::npos) {
      body = body.substr(0, hash);
    }
    body = TrimLine(body);
    if (body.empty()) continue;
    std::string term = utf8::ToLower(body);
    if (!IsLowerAlphaTerm(term)) {
      throw DataError("stop word list line " + std::to_string(line_no) +
                      ": \"" + std::string(body) +
                      "\" is not an alphabetic term");
    }
    terms.insert(std::move(term));
  }
  return terms;
}

TermSet LoadStopwordFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open stop word file " + path);
  try {
    return ReadStopwordList(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::vector<std::string> PreprocessText(std::string_view text,
                                        const StopwordPolicy& policy) {
  std::vector<std::string> terms;
  std::string token;
  int token_len = 0;
  auto flush = [&] {
    if (token_len >= policy.min_token_length && !policy.IsStopword(token)) {
      std::string stem = PorterStem(token);
      if (!stem.empty() && !policy.IsStopword(stem)) terms.push_back(std::move(stem));
    }
    token.clear();
    token_len = 0;
  };
  size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp = utf8::Decode(text, &pos);
    if (utf8::IsAlpha(cp)) {
      utf8::Append(utf8::ToLower(cp), &token);
      ++token_len;
    } else if (token_len > 0) {
      flush();
    }
  }
  if (token_len > 0) flush();
  return terms;
}

}  // namespace ctopics
