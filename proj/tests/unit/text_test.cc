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


#include <cctype>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ctopics/errors.h"
#include "ctopics/porter_stemmer.h"
#include "ctopics/preprocess.h"
#include "ctopics/utf8.h"

namespace ctopics {
namespace {

using Terms = std::vector<std::string>;

StopwordPolicy DefaultPolicy() {
  StopwordPolicy p;
  p.generic = DefaultGenericStopwords();
  return p;
}

TEST(Utf8Test, LowercaseAcrossScripts) {
  EXPECT_EQ(utf8::ToLower("ÀÉÎÕÜ ÇÑ"), "àéîõü çñ");
  EXPECT_EQ(utf8::ToLower("ΑΒΓ Ωμέγα"), "αβγ ωμέγα");
  EXPECT_EQ(utf8::ToLower("ПРИВЕТ Ёж"), "привет ёж");
  EXPECT_EQ(utf8::ToLower("MiXeD 123"), "mixed 123");
}

TEST(Utf8Test, DecodeInvalidBytes) {
  std::string s = "a\xff\xc3";
  size_t pos = 0;
  EXPECT_EQ(utf8::Decode(s, &pos), U'a');
  EXPECT_EQ(utf8::Decode(s, &pos), U'�');
  EXPECT_EQ(pos, 2u);
  EXPECT_EQ(utf8::Decode(s, &pos), U'�');
  EXPECT_EQ(pos, 3u);
}

TEST(Utf8Test, AppendRoundTrip) {
  for (char32_t cp : {U'a', U'é', U'Ω', U'ж', U'€', U'\U0001F600'}) {
    std::string s;
    utf8::Append(cp, &s);
    size_t pos = 0;
    EXPECT_EQ(utf8::Decode(s, &pos), cp);
    EXPECT_EQ(pos, s.size());
  }
}

TEST(PorterStemTest, FinanceFamily) {
  EXPECT_EQ(PorterStem("finance"), "financ");
  EXPECT_EQ(PorterStem("finances"), "financ");
  EXPECT_EQ(PorterStem("financing"), "financ");
  // Step 4 drops -al and nothing removes the i that is left.
  EXPECT_EQ(PorterStem("financial"), "financi");
}

TEST(PorterStemTest, ShortAndNonAscii) {
  EXPECT_EQ(PorterStem("a"), "a");
  // No length guard: step 1a strips a final s even from two letters.
  EXPECT_EQ(PorterStem("is"), "i");
  EXPECT_EQ(PorterStem("s"), "");
  EXPECT_EQ(PorterStem(""), "");
  EXPECT_EQ(PorterStem("café"), "café");
}

TEST(PorterStemTest, ReferenceVocabulary) {
  std::ifstream f(std::string(CTOPICS_TEST_DATA) + "/porter_reference.tsv");
  ASSERT_TRUE(f);
  std::string line;
  int checked = 0;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    ASSERT_NE(tab, std::string::npos) << line;
    EXPECT_EQ(PorterStem(line.substr(0, tab)), line.substr(tab + 1)) << line;
    ++checked;
  }
  EXPECT_GE(checked, 600);
}

// The algorithm is not a projection: a second pass can strip more.
TEST(PorterStemTest, NotIdempotent) {
  EXPECT_EQ(PorterStem("agreed"), "agre");
  EXPECT_EQ(PorterStem("agre"), "agr");
}

TEST(PorterStemTest, OutputShapeOnRandomWords) {
  std::mt19937_64 g(3);
  for (int i = 0; i < 20000; ++i) {
    std::string w;
    const int len = 1 + g() % 14;
    for (int j = 0; j < len; ++j) w += static_cast<char>('a' + g() % 26);
    std::string s = PorterStem(w);
    ASSERT_LE(s.size(), w.size()) << w;
    if (w != "s") ASSERT_FALSE(s.empty()) << w;
    for (char c : s) ASSERT_TRUE(c >= 'a' && c <= 'z') << w;
  }
}

TEST(PreprocessTextTest, Examples) {
  StopwordPolicy p = DefaultPolicy();
  EXPECT_EQ(PreprocessText("finance finances financing", p),
            (Terms{"financ", "financ", "financ"}));
  EXPECT_EQ(PreprocessText("XXXX xx is a 1234 !!", p), Terms{});
  EXPECT_EQ(PreprocessText("", p), Terms{});
  EXPECT_EQ(PreprocessText("They CHARGED me fees, twice!", p),
            (Terms{"charg", "fee", "twice"}));
}

TEST(PreprocessTextTest, ApostrophesAndDigitsSplit) {
  StopwordPolicy p;
  EXPECT_EQ(PreprocessText("don't pay2day", p), (Terms{"don", "pai", "dai"}));
}

TEST(PreprocessTextTest, LengthGateBeforeStemming) {
  StopwordPolicy p;
  p.min_token_length = 4;
  // "ties" passes the gate at length 4 and shrinks to "ti".
  EXPECT_EQ(PreprocessText("tie ties", p), Terms{"ti"});
}

TEST(PreprocessTextTest, NoEmptyTerms) {
  StopwordPolicy p;
  p.min_token_length = 1;
  EXPECT_EQ(PreprocessText("s is as", p), (Terms{"i", "a"}));
}

TEST(PreprocessTextTest, StemmedStopwordCaught) {
  StopwordPolicy p;
  p.generic = {"be"};
  EXPECT_EQ(PreprocessText("being late", p), Terms{"late"});
}

TEST(PreprocessTextTest, DomainStopwords) {
  StopwordPolicy p = DefaultPolicy();
  p.domain = {"wells", "fargo", "california"};
  EXPECT_EQ(PreprocessText("Wells Fargo in California foreclosed", p),
            Terms{"foreclos"});
}

TEST(PreprocessTextTest, NonAsciiLettersKept) {
  StopwordPolicy p;
  EXPECT_EQ(PreprocessText("Crédito ÜBER", p), (Terms{"crédito", "über"}));
}

// Independent ASCII pipeline: split on non-letters, lowercase, filter, stem.
Terms ReferencePipeline(const std::string& text, const StopwordPolicy& p) {
  Terms out;
  std::string tok;
  auto flush = [&] {
    if (static_cast<int>(tok.size()) >= p.min_token_length &&
        !p.generic.contains(tok) && !p.masking.contains(tok)) {
      std::string s = PorterStem(tok);
      if (!p.generic.contains(s) && !p.masking.contains(s)) out.push_back(s);
    }
    tok.clear();
  };
  for (char c : text) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      tok += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!tok.empty()) {
      flush();
    }
  }
  if (!tok.empty()) flush();
  return out;
}

TEST(PreprocessTextTest, PropertiesOnRandomText) {
  StopwordPolicy p = DefaultPolicy();
  const std::vector<std::string> words = {
      "The", "payments", "XXXX", "were", "LATE", "being", "charged", "a",
      "x", "fees", "Collector", "calling", "don't", "12/03/2015", "$400.00",
      "xx", "agreed", "relational", "ponies", "I", "it's", "and"};
  std::mt19937_64 g(5);
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    const int n = g() % 25;
    for (int i = 0; i < n; ++i) {
      text += words[g() % words.size()];
      text += " ,.!\n-"[g() % 6];
    }
    Terms got = PreprocessText(text, p);
    ASSERT_EQ(got, ReferencePipeline(text, p)) << text;
    for (const std::string& t : got) {
      ASSERT_FALSE(p.IsStopword(t)) << t;
      for (char c : t) ASSERT_TRUE(c >= 'a' && c <= 'z') << t;
    }
    ASSERT_EQ(PreprocessText(text, p), got);
  }
}

TEST(StopwordPolicyTest, DefaultsAndValidation) {
  StopwordPolicy p = DefaultPolicy();
  EXPECT_TRUE(p.masking.contains("xx"));
  EXPECT_TRUE(p.masking.contains("xxxx"));
  EXPECT_TRUE(p.masking.contains("xxxxxxxx"));
  EXPECT_TRUE(p.IsStopword("xxxx"));
  EXPECT_EQ(p.min_token_length, 2);
  EXPECT_GE(p.generic.size(), 150u);
  EXPECT_NO_THROW(p.Validate());
  p.domain.insert("Chase");
  EXPECT_THROW(p.Validate(), UsageError);
  StopwordPolicy q;
  q.min_token_length = 0;
  EXPECT_THROW(q.Validate(), UsageError);
}

TEST(StopwordPolicyTest, ReadList) {
  std::istringstream in("# comment\n\nThe\nand # trailing\n  Über \n");
  TermSet t = ReadStopwordList(in);
  EXPECT_EQ(t, (TermSet{"and", "the", "über"}));
  std::istringstream bad("ok\nnot ok\n");
  try {
    ReadStopwordList(bad);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(StopwordPolicyTest, ShippedDomainList) {
  TermSet t = LoadStopwordFile(std::string(CTOPICS_TEST_DATA) +
                               "/../../data/domain_stopwords.txt");
  EXPECT_TRUE(t.contains("fargo"));
  EXPECT_TRUE(t.contains("texas"));
}

}  // namespace
}  // namespace ctopics
