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

#include "ctopics/porter_stemmer.h"

#include <span>

namespace ctopics {

namespace {

// Word being stemmed. All conditions are evaluated on a prefix `stem` of the
// buffer of length `len`.
class Stemmer {
 public:
  explicit Stemmer(std::string_view word) : w_(word) {}

  std::string Run() {
    Step1a();
    Step1b();
    Step1c();
    Step2();
    Step3();
    Step4();
    Step5a();
    Step5b();
    return w_;
  }

 private:
  struct Rule {
    std::string_view suffix;
    std::string_view replacement;
  };

  bool IsConsonant(size_t i) const {
    switch (w_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !IsConsonant(i - 1);
      default:
        return true;
    }
  }

  // m in [C](VC)^m[V], over the first `len` letters.
  int Measure(size_t len) const {
    int m = 0;
    size_t i = 0;
    while (i < len && IsConsonant(i)) ++i;
    while (i < len) {
      while (i < len && !IsConsonant(i)) ++i;
      if (i >= len) break;
      while (i < len && IsConsonant(i)) ++i;
      ++m;
    }
    return m;
  }

  bool ContainsVowel(size_t len) const {
    for (size_t i = 0; i < len; ++i) {
      if (!IsConsonant(i)) return true;
    }
    return false;
  }

  // *d
  bool EndsDoubleConsonant(size_t len) const {
    return len >= 2 && w_[len - 1] == w_[len - 2] && IsConsonant(len - 1);
  }

  // *o: cvc where the final c is not w, x or y.
  bool EndsCvc(size_t len) const {
    if (len < 3) return false;
    if (!IsConsonant(len - 3) || IsConsonant(len - 2) || !IsConsonant(len - 1))
      return false;
    char c = w_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool EndsWith(std::string_view s) const {
    return w_.size() >= s.size() &&
           std::string_view(w_).substr(w_.size() - s.size()) == s;
  }

  void Replace(size_t stem_len, std::string_view replacement) {
    w_.resize(stem_len);
    w_.append(replacement);
  }

  // The first rule whose suffix matches decides; if its condition fails the
  // word is left alone. No rule list below has a suffix that is a proper
  // suffix of an earlier entry, so first match is longest match.
  template <typename Cond>
  void ApplyRules(std::span<const Rule> rules, Cond cond) {
    for (const Rule& r : rules) {
      if (!EndsWith(r.suffix)) continue;
      size_t stem_len = w_.size() - r.suffix.size();
      if (cond(stem_len, r)) Replace(stem_len, r.replacement);
      return;
    }
  }

  void Step1a() {
    if (EndsWith("sses")) {
      Replace(w_.size() - 2, "");
    } else if (EndsWith("ies")) {
      Replace(w_.size() - 3, "i");
    } else if (EndsWith("ss")) {
      // unchanged
    } else if (EndsWith("s")) {
      Replace(w_.size() - 1, "");
    }
  }

  void Step1b() {
    if (EndsWith("eed")) {
      if (Measure(w_.size() - 3) > 0) Replace(w_.size() - 1, "");
      return;
    }
    size_t stem_len;
    if (EndsWith("ed") && ContainsVowel(w_.size() - 2)) {
      stem_len = w_.size() - 2;
    } else if (EndsWith("ing") && ContainsVowel(w_.size() - 3)) {
      stem_len = w_.size() - 3;
    } else {
      return;
    }
    w_.resize(stem_len);
    if (EndsWith("at") || EndsWith("bl") || EndsWith("iz")) {
      w_.push_back('e');
    } else if (EndsDoubleConsonant(w_.size())) {
      char c = w_.back();
      if (c != 'l' && c != 's' && c != 'z') w_.pop_back();
    } else if (Measure(w_.size()) == 1 && EndsCvc(w_.size())) {
      w_.push_back('e');
    }
  }

  void Step1c() {
    if (EndsWith("y") && ContainsVowel(w_.size() - 1)) w_.back() = 'i';
  }

  void Step2() {
    static constexpr Rule kRules[] = {
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
        {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
        {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
        {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
        {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
        {"iviti", "ive"},   {"biliti", "ble"},
    };
    ApplyRules(kRules, [this](size_t len, const Rule&) {
      return Measure(len) > 0;
    });
  }

  void Step3() {
    static constexpr Rule kRules[] = {
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    };
    ApplyRules(kRules, [this](size_t len, const Rule&) {
      return Measure(len) > 0;
    });
  }

  void Step4() {
    static constexpr Rule kRules[] = {
        {"al", ""},   {"ance", ""}, {"ence", ""}, {"er", ""},   {"ic", ""},
        {"able", ""}, {"ible", ""}, {"ant", ""},  {"ement", ""},
        {"ment", ""}, {"ent", ""},  {"ion", ""},  {"ou", ""},   {"ism", ""},
        {"ate", ""},  {"iti", ""},  {"ous", ""},  {"ive", ""},  {"ize", ""},
    };
    ApplyRules(kRules, [this](size_t len, const Rule& r) {
      if (Measure(len) <= 1) return false;
      if (r.suffix == "ion") {
        return len > 0 && (w_[len - 1] == 's' || w_[len - 1] == 't');
      }
      return true;
    });
  }

  void Step5a() {
    if (!EndsWith("e")) return;
    size_t len = w_.size() - 1;
    int m = Measure(len);
    if (m > 1 || (m == 1 && !EndsCvc(len))) w_.pop_back();
  }

  void Step5b() {
    if (EndsWith("ll") && Measure(w_.size() - 1) > 1) w_.pop_back();
  }

  std::string w_;
};

bool IsLowerAscii(std::string_view token) {
  for (char c : token) {
    if (c < 'a' || c > 'z') return false;
  }
  return true;
}

}  // namespace

std::string PorterStem(std::string_view token) {
  if (token.empty() || !IsLowerAscii(token)) return std::string(token);
  return Stemmer(token).Run();
}

}  // namespace ctopics
