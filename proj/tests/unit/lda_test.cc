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


#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "ctopics/errors.h"
#include "ctopics/lda.h"
#include "lda_oracle.h"
#include "synthetic.h"

namespace ctopics {
namespace {

using Docs = std::vector<std::pair<std::string, std::vector<std::string>>>;

// Term ids index single letters a, b, c, ... so vocabulary order matches.
TermDocumentMatrix LetterCorpus(const std::vector<std::vector<int>>& docs) {
  Docs d;
  for (size_t i = 0; i < docs.size(); ++i) {
    std::vector<std::string> terms;
    for (int w : docs[i]) terms.emplace_back(1, static_cast<char>('a' + w));
    d.emplace_back("d" + std::to_string(i), terms);
  }
  return BuildCorpus(d);
}

TermDocumentMatrix RandomCorpus(uint64_t seed, int docs, int max_len, int v) {
  std::mt19937_64 g(seed);
  Docs d;
  for (int i = 0; i < docs; ++i) {
    std::vector<std::string> terms;
    const int len = 1 + g() % max_len;
    for (int n = 0; n < len; ++n) {
      // Skewed term choice so topics have something to find.
      const int block = (i % 3) * (v / 3);
      const int w = g() % 4 ? block + g() % (v / 3) : g() % v;
      terms.push_back("t" + std::to_string(100 + w));
    }
    d.emplace_back("doc" + std::to_string(i), terms);
  }
  return BuildCorpus(d);
}

// Model with given K x V counts and the matching smoothed beta.
TrainedModel HandModel(const std::vector<std::vector<int64_t>>& counts,
                       double alpha = 0.1, double eta = 0.1) {
  TrainedModel m;
  m.config.num_topics = static_cast<int>(counts.size());
  m.config.alpha = alpha;
  m.config.eta = eta;
  const size_t v = counts[0].size();
  std::vector<std::string> terms;
  for (size_t w = 0; w < v; ++w) terms.emplace_back(1, static_cast<char>('a' + w));
  m.vocabulary = Vocabulary(terms);
  for (const auto& row : counts) {
    const int64_t total = std::accumulate(row.begin(), row.end(), int64_t{0});
    m.topic_totals.push_back(total);
    for (int64_t c : row) {
      m.topic_term_counts.push_back(c);
      m.beta_hat.push_back((c + eta) / (total + v * eta));
    }
  }
  return m;
}

double Sum(const std::vector<double>& x) {
  return std::accumulate(x.begin(), x.end(), 0.0);
}

TEST(LdaConfigTest, DefaultsAndValidation) {
  LdaConfig c;
  EXPECT_EQ(c.num_topics, 40);
  EXPECT_EQ(c.alpha, 0.1);
  EXPECT_EQ(c.eta, 0.1);
  EXPECT_EQ(c.sweeps, 1000);
  EXPECT_EQ(c.burn_in, 800);
  EXPECT_EQ(c.sample_lag, 10);
  EXPECT_NO_THROW(c.Validate());
  EXPECT_EQ(c.RetainedSamples(), 20);
  EXPECT_TRUE(c.IsRetainedSweep(1000));
  EXPECT_TRUE(c.IsRetainedSweep(810));
  EXPECT_FALSE(c.IsRetainedSweep(800));
  EXPECT_FALSE(c.IsRetainedSweep(805));

  for (auto mutate : std::vector<void (*)(LdaConfig&)>{
           [](LdaConfig& x) { x.num_topics = 0; },
           [](LdaConfig& x) { x.alpha = 0; },
           [](LdaConfig& x) { x.eta = -1; },
           [](LdaConfig& x) { x.burn_in = x.sweeps; },
           [](LdaConfig& x) { x.burn_in = -1; },
           [](LdaConfig& x) { x.sample_lag = 0; }}) {
    LdaConfig bad;
    mutate(bad);
    EXPECT_THROW(bad.Validate(), UsageError);
  }
}

TEST(DocTopicMixtureTest, RankTiesByLowerId) {
  auto m = DocTopicMixture::FromTheta("x", {0.2, 0.4, 0.2, 0.2});
  EXPECT_EQ(m.dominant_rank, (std::vector<int>{1, 0, 2, 3}));
}

TEST(TrainTest, RejectsEmptyInput) {
  LdaConfig c;
  c.num_topics = 2;
  c.sweeps = 10;
  c.burn_in = 5;
  EXPECT_THROW(Train(BuildCorpus({}), c), DataError);
  EXPECT_THROW(Train(BuildCorpus({{"a", {}}, {"b", {}}}), c), DataError);
}

TEST(TrainTest, SingleTopic) {
  TermDocumentMatrix m = RandomCorpus(1, 30, 20, 12);
  LdaConfig c;
  c.num_topics = 1;
  c.sweeps = 20;
  c.burn_in = 10;
  c.sample_lag = 2;
  TrainedModel model = Train(m, c);
  for (const auto& mix : model.training_doc_mixtures) {
    ASSERT_EQ(mix.theta, std::vector<double>{1.0});
  }
  const double total = static_cast<double>(m.total_tokens());
  const double v = static_cast<double>(m.num_terms());
  for (TermId w = 0; w < m.num_terms(); ++w) {
    uint64_t count = 0;
    for (size_t d = 0; d < m.num_docs(); ++d) count += m.count(w, d);
    EXPECT_NEAR(model.beta(0, w), (count + 0.1) / (total + v * 0.1), 1e-15);
  }
}

TEST(TrainTest, EmptyDocumentGetsUniformMixture) {
  TermDocumentMatrix m =
      BuildCorpus({{"a", {"x", "y"}}, {"b", {}}, {"c", {"y", "z"}}});
  LdaConfig c;
  c.num_topics = 4;
  c.sweeps = 30;
  c.burn_in = 10;
  TrainedModel model = Train(m, c);
  EXPECT_EQ(model.training_doc_mixtures[1].theta,
            std::vector<double>(4, 0.25));
  EXPECT_TRUE(model.assignments[1].empty());
  EXPECT_NO_THROW(model.Validate());
}

TEST(TrainTest, DeterministicBySeed) {
  TermDocumentMatrix m = RandomCorpus(2, 60, 30, 24);
  LdaConfig c;
  c.num_topics = 5;
  c.sweeps = 60;
  c.burn_in = 30;
  c.sample_lag = 5;
  TrainedModel a = Train(m, c);
  TrainedModel b = Train(m, c);
  EXPECT_TRUE(a == b);
  c.seed += 1;
  TrainedModel other = Train(m, c);
  EXPECT_NE(a.assignments, other.assignments);
}

// Count identities after every sweep, conditionals checked in the sampler.
TEST(TrainTest, CountConservationEverySweep) {
  TermDocumentMatrix m = RandomCorpus(3, 50, 40, 30);
  ASSERT_GE(m.total_tokens(), 900u);
  LdaConfig c;
  c.num_topics = 6;
  c.sweeps = 40;
  c.burn_in = 20;
  c.sample_lag = 4;
  TrainOptions opts;
  opts.check_invariants = true;
  int calls = 0;
  opts.on_sweep = [&](const GibbsSampler& s, int sweep) {
    ++calls;
    ASSERT_EQ(s.sweeps_done(), sweep);
    uint64_t all = 0;
    for (size_t d = 0; d < s.num_docs(); ++d) {
      auto counts = s.doc_topic_counts(d);
      uint64_t sum = std::accumulate(counts.begin(), counts.end(), uint64_t{0});
      ASSERT_EQ(sum, m.doc_length(d));
    }
    for (TermId w = 0; w < s.num_terms(); ++w) {
      for (uint32_t x : s.term_topic_counts(w)) all += x;
    }
    ASSERT_EQ(all, m.total_tokens());
    auto totals = s.topic_totals();
    ASSERT_EQ(std::accumulate(totals.begin(), totals.end(), uint64_t{0}),
              m.total_tokens());
  };
  TrainedModel model = Train(m, c, opts);
  EXPECT_EQ(calls, c.sweeps);
  for (int k = 0; k < c.num_topics; ++k) {
    auto row = model.beta_row(k);
    EXPECT_NEAR(std::accumulate(row.begin(), row.end(), 0.0), 1.0, 1e-9);
  }
  for (const auto& mix : model.training_doc_mixtures) {
    EXPECT_NEAR(Sum(mix.theta), 1.0, 1e-9);
  }
  EXPECT_NO_THROW(model.Validate());
}

TEST(EnumerationOracleTest, FrozenValues) {
  auto tiny = ctopics_test::EnumerateTraining({{0, 1}, {1}, {2}}, 3, 2, 0.1, 0.1);
  for (const auto& th : tiny.theta) {
    EXPECT_NEAR(th[0], 0.5, 1e-12);
    EXPECT_NEAR(th[1], 0.5, 1e-12);
  }
  EXPECT_NEAR(tiny.theta_max[0], 0.87735849056603754, 1e-12);
  EXPECT_NEAR(tiny.theta_max[1], 0.91666666666666674, 1e-12);
  EXPECT_NEAR(tiny.coassign[0][1], 44.0 / 53.0, 1e-12);
  EXPECT_NEAR(tiny.coassign[0][2], 0.68867924528301849, 1e-12);
  EXPECT_NEAR(tiny.coassign[0][3], 0.21698113207547193, 1e-12);

  auto mid = ctopics_test::EnumerateTraining(
      {{0, 0, 1, 1}, {0, 1, 2}, {2, 3, 3}, {3, 2, 2, 3, 3}}, 4, 2, 0.1, 0.1);
  const double max_expect[] = {0.97383742568069309, 0.80457528461844685,
                               0.96263092636814185, 0.97518077337535625};
  for (int d = 0; d < 4; ++d) EXPECT_NEAR(mid.theta_max[d], max_expect[d], 1e-9);
  EXPECT_NEAR(mid.coassign[0][6], 0.4710073521752921, 1e-9);
  EXPECT_NEAR(mid.coassign[6][7], 0.54484623554590494, 1e-9);
  EXPECT_NEAR(mid.coassign[0][7], 0.020516110383305742, 1e-9);
}

struct ChainSummary {
  std::vector<double> theta_max;
  std::vector<std::vector<double>> coassign;
  TrainedModel model;
};

ChainSummary RunChain(const std::vector<std::vector<int>>& docs, uint64_t seed) {
  TermDocumentMatrix m = LetterCorpus(docs);
  LdaConfig c;
  c.num_topics = 2;
  c.sweeps = 20000;
  c.burn_in = 1000;
  c.sample_lag = 1;
  c.seed = seed;
  size_t n = 0;
  for (const auto& d : docs) n += d.size();
  ChainSummary s;
  s.theta_max.assign(docs.size(), 0);
  s.coassign.assign(n, std::vector<double>(n, 0));
  int samples = 0;
  TrainOptions opts;
  opts.on_sweep = [&](const GibbsSampler& g, int sweep) {
    if (!c.IsRetainedSweep(sweep)) return;
    ++samples;
    std::vector<uint32_t> z;
    for (size_t d = 0; d < docs.size(); ++d) {
      auto cnt = g.doc_topic_counts(d);
      s.theta_max[d] += (std::max(cnt[0], cnt[1]) + c.alpha) /
                        (docs[d].size() + 2 * c.alpha);
      for (uint32_t t : g.doc_assignments(d)) z.push_back(t);
    }
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) s.coassign[i][j] += z[i] == z[j];
    }
  };
  s.model = Train(m, c, opts);
  for (double& x : s.theta_max) x /= samples;
  for (auto& row : s.coassign) {
    for (double& x : row) x /= samples;
  }
  return s;
}

// Token order inside a document is canonical (sorted term ids), which the
// corpora below already follow so oracle token indices line up.
TEST(SamplerOracleTest, TinyCorpusPosteriorMeans) {
  const std::vector<std::vector<int>> docs = {{0, 1}, {1}, {2}};
  auto exact = ctopics_test::EnumerateTraining(docs, 3, 2, 0.1, 0.1);
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    ChainSummary s = RunChain(docs, seed);
    for (size_t d = 0; d < docs.size(); ++d) {
      for (int k = 0; k < 2; ++k) {
        EXPECT_NEAR(s.model.training_doc_mixtures[d].theta[k],
                    exact.theta[d][k], 0.05)
            << "seed " << seed;
      }
      EXPECT_NEAR(s.theta_max[d], exact.theta_max[d], 0.05);
    }
    for (size_t i = 0; i < exact.coassign.size(); ++i) {
      for (size_t j = 0; j < exact.coassign.size(); ++j) {
        EXPECT_NEAR(s.coassign[i][j], exact.coassign[i][j], 0.05);
      }
    }
  }
}

// Fifteen tokens in two clear clusters. The chain rarely swaps labels here,
// so only label-free summaries are compared.
TEST(SamplerOracleTest, ClusteredCorpusLabelFreeSummaries) {
  const std::vector<std::vector<int>> docs = {
      {0, 0, 1, 1}, {0, 1, 2}, {2, 3, 3}, {2, 2, 3, 3, 3}};
  auto exact = ctopics_test::EnumerateTraining(docs, 4, 2, 0.1, 0.1);
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    ChainSummary s = RunChain(docs, seed);
    for (size_t d = 0; d < docs.size(); ++d) {
      EXPECT_NEAR(s.theta_max[d], exact.theta_max[d], 0.05) << "seed " << seed;
    }
    for (size_t i = 0; i < exact.coassign.size(); ++i) {
      for (size_t j = 0; j < exact.coassign.size(); ++j) {
        EXPECT_NEAR(s.coassign[i][j], exact.coassign[i][j], 0.05)
            << "seed " << seed << " tokens " << i << "," << j;
      }
    }
  }
}

TEST(InferTest, EmptyAndUnseenGiveUniform) {
  TrainedModel model = HandModel({{7, 2, 1}, {1, 3, 6}, {0, 0, 5}});
  InferResult r = Infer(model, {});
  EXPECT_EQ(r.mixture.theta, std::vector<double>(3, 1.0 / 3));
  EXPECT_EQ(r.known_terms, 0u);
  std::vector<std::string> unseen = {"zz", "qq"};
  r = Infer(model, unseen);
  EXPECT_EQ(r.mixture.theta, std::vector<double>(3, 1.0 / 3));
  EXPECT_EQ(r.unseen_terms, 2u);
}

TEST(InferTest, SkipsUnknownTerms) {
  TrainedModel model = HandModel({{7, 2, 1}, {1, 3, 6}});
  std::vector<std::string> terms = {"a", "nope", "c"};
  InferResult r = Infer(model, terms);
  EXPECT_EQ(r.known_terms, 2u);
  EXPECT_EQ(r.unseen_terms, 1u);
  EXPECT_NEAR(Sum(r.mixture.theta), 1.0, 1e-12);
}

TEST(FoldInOracleTest, FrozenValues) {
  const std::vector<double> a = {7.1 / 10.3, 1.1 / 10.3};
  const std::vector<double> b = {2.1 / 10.3, 3.1 / 10.3};
  const std::vector<double> c = {1.1 / 10.3, 6.1 / 10.3};
  auto t1 = ctopics_test::EnumerateFoldIn({a, a, b}, 2, 0.1);
  EXPECT_NEAR(t1[0], 0.90392220270916734, 1e-12);
  auto t2 = ctopics_test::EnumerateFoldIn({c, b, a, c}, 2, 0.1);
  EXPECT_NEAR(t2[0], 0.21019097885203566, 1e-12);
}

TEST(InferTest, MatchesFoldInEnumeration) {
  TrainedModel model = HandModel({{7, 2, 1}, {1, 3, 6}});
  InferOptions opts;
  opts.sweeps = 40000;
  opts.burn_in = 1000;
  opts.sample_lag = 1;
  const std::vector<std::vector<std::string>> docs = {{"a", "a", "b"},
                                                      {"c", "b", "a", "c"}};
  const double expect0[] = {0.90392220270916734, 0.21019097885203566};
  for (uint64_t seed = 1; seed <= 3; ++seed) {
    opts.seed = seed;
    for (int i = 0; i < 2; ++i) {
      InferResult r = Infer(model, docs[i], opts);
      EXPECT_NEAR(r.mixture.theta[0], expect0[i], 0.01) << "seed " << seed;
      EXPECT_NEAR(r.mixture.theta[1], 1 - expect0[i], 0.01);
    }
  }
}

TEST(InferTest, ConcentratedTermsPickTheirTopic) {
  TrainedModel model = HandModel({{50, 1, 1}, {1, 50, 1}, {1, 1, 50}});
  for (int j = 0; j < 3; ++j) {
    std::vector<std::string> terms(4, std::string(1, static_cast<char>('a' + j)));
    EXPECT_EQ(Infer(model, terms).mixture.dominant_rank[0], j);
  }
}

// One token: p(z = k) is proportional to beta[k][w], so theta is exact.
TEST(InferTest, SingleTokenIsExact) {
  TrainedModel model = HandModel({{7, 2, 1}, {1, 3, 6}, {2, 2, 2}});
  model.config.sweeps = 10;
  model.config.burn_in = 5;
  for (TermId w = 0; w < 3; ++w) {
    std::vector<std::string> terms = {model.vocabulary.term(w)};
    double z = 0;
    for (int k = 0; k < 3; ++k) z += model.beta(k, w);
    auto theta = Infer(model, terms).mixture.theta;
    for (int k = 0; k < 3; ++k) {
      EXPECT_NEAR(theta[k], (model.beta(k, w) / z + 0.1) / 1.3, 1e-12);
    }
  }
}

TEST(InferTest, DefaultsFollowModelConfigAndSeed) {
  TrainedModel model = HandModel({{7, 2, 1}, {1, 3, 6}});
  model.config.sweeps = 50;
  model.config.burn_in = 10;
  std::vector<std::string> terms = {"a", "b", "c", "c"};
  EXPECT_EQ(Infer(model, terms).mixture, Infer(model, terms).mixture);
  InferOptions short_run;
  short_run.sweeps = 5;  // burn-in clamps to 4
  EXPECT_NO_THROW(Infer(model, terms, short_run));
}

TEST(TopWordsTest, OrderAndTies) {
  TrainedModel model = HandModel({{5, 3, 2}, {1, 1, 1}});
  auto top = TopWords(model, 0, 2);
  ASSERT_EQ(top.size(), 2u);
  EXPECT_EQ(top[0].first, "a");
  EXPECT_EQ(top[1].first, "b");
  EXPECT_GT(top[0].second, top[1].second);
  auto uniform = TopWords(model, 1, 3);
  EXPECT_EQ(uniform[0].first, "a");
  EXPECT_EQ(uniform[1].first, "b");
  EXPECT_EQ(uniform[2].first, "c");
  EXPECT_EQ(TopWords(model, 0, 10).size(), 3u);
  EXPECT_THROW(TopWords(model, 2, 1), UsageError);
  EXPECT_THROW(TopWords(model, -1, 1), UsageError);
  EXPECT_THROW(TopWords(model, 0, 0), UsageError);
}

TEST(LogLikelihoodTest, SingleTopicClosedForm) {
  TermDocumentMatrix m = RandomCorpus(4, 20, 15, 9);
  LdaConfig c;
  c.num_topics = 1;
  c.sweeps = 5;
  c.burn_in = 1;
  TrainedModel model = Train(m, c);
  double expect = 0;
  for (size_t d = 0; d < m.num_docs(); ++d) {
    for (const TermCount& tc : m.column(d)) {
      expect += tc.count * std::log(model.beta(0, tc.term));
    }
  }
  EXPECT_NEAR(LogLikelihood(model, m), expect, 1e-9 * std::abs(expect));
}

TEST(LogLikelihoodTest, DocumentOrderDoesNotMatter) {
  std::mt19937_64 g(9);
  Docs docs;
  for (int i = 0; i < 40; ++i) {
    std::vector<std::string> t;
    for (int n = 0; n < 10; ++n) t.push_back("w" + std::to_string(g() % 15));
    docs.emplace_back("d" + std::to_string(i), t);
  }
  TermDocumentMatrix m = BuildCorpus(docs);
  LdaConfig c;
  c.num_topics = 3;
  c.sweeps = 30;
  c.burn_in = 10;
  TrainedModel model = Train(m, c);
  std::shuffle(docs.begin(), docs.end(), g);
  EXPECT_EQ(LogLikelihood(model, BuildCorpus(docs)), LogLikelihood(model, m));
}

TEST(LogLikelihoodTest, MatchesHighPrecisionRecomputation) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  TermDocumentMatrix m = RandomCorpus(5, 12, 10, 9);
  LdaConfig c;
  c.num_topics = 3;
  c.sweeps = 40;
  c.burn_in = 20;
  TrainedModel model = Train(m, c);
  Big total = 0;
  for (size_t d = 0; d < m.num_docs(); ++d) {
    const auto& theta = model.training_doc_mixtures[d].theta;
    for (const TermCount& tc : m.column(d)) {
      Big p = 0;
      for (int k = 0; k < 3; ++k) p += Big(theta[k]) * Big(model.beta(k, tc.term));
      total += Big(tc.count) * log(p);
    }
  }
  const double expect = total.convert_to<double>();
  EXPECT_NEAR(LogLikelihood(model, m), expect, 1e-12 * std::abs(expect));
}

TEST(LogLikelihoodTest, UnknownDocumentRejected) {
  TermDocumentMatrix m = BuildCorpus({{"a", {"x", "y"}}});
  LdaConfig c;
  c.num_topics = 2;
  c.sweeps = 5;
  c.burn_in = 1;
  TrainedModel model = Train(m, c);
  EXPECT_THROW(LogLikelihood(model, BuildCorpus({{"b", {"x"}}})), DataError);
}

}  // namespace
}  // namespace ctopics
