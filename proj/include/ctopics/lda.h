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
// Latent Dirichlet allocation fitted by collapsed Gibbs sampling.
//
// Each token's topic is resampled from
//
//   p(z = k | rest) ∝ (n_dk + alpha) * (n_kw + eta) / (n_k + V * eta)
//
// with the token's own assignment removed from the counts. After burn-in,
// every sample_lag-th sweep (counted back from the last sweep, so the last
// sweep is always retained) contributes the smoothed estimates
//
//   theta_dk = (n_dk + alpha) / (N_d + K * alpha)
//   beta_kw  = (n_kw + eta) / (n_k + V * eta)
//
// to the reported averages.

#ifndef CTOPICS_LDA_H_
#define CTOPICS_LDA_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ctopics/rng.h"
#include "ctopics/term_document_matrix.h"

namespace ctopics {

struct LdaConfig {
  int num_topics = 40;
  double alpha = 0.1;
  double eta = 0.1;
  int sweeps = 1000;
  int burn_in = 800;
  int sample_lag = 10;
  uint64_t seed = 20170101;

  // Throws UsageError unless K >= 1, alpha > 0, eta > 0,
  // sweeps > burn_in >= 0 and sample_lag >= 1.
  void Validate() const;

  // Sweep numbers (1-based) whose state feeds the estimates.
  bool IsRetainedSweep(int sweep) const {
    return sweep > burn_in && (sweeps - sweep) % sample_lag == 0;
  }
  int RetainedSamples() const;

  bool operator==(const LdaConfig&) const = default;
};

struct DocTopicMixture {
  std::string doc_id;
  std::vector<double> theta;
  // Topic ids by descending proportion; ties by ascending id.
  std::vector<int> dominant_rank;

  static DocTopicMixture FromTheta(std::string doc_id,
                                   std::vector<double> theta);

  bool operator==(const DocTopicMixture&) const = default;
};

struct TrainedModel {
  LdaConfig config;
  Vocabulary vocabulary;
  // K x V, row-major by topic.
  std::vector<int64_t> topic_term_counts;
  std::vector<int64_t> topic_totals;
  std::vector<double> beta_hat;
  std::vector<DocTopicMixture> training_doc_mixtures;
  // Final z per token, in the canonical token order of the training matrix
  // (TermDocumentMatrix::ExpandTokens).
  std::vector<std::vector<int>> assignments;

  int num_topics() const { return config.num_topics; }
  size_t num_terms() const { return vocabulary.size(); }
  int64_t term_count(int topic, TermId term) const {
    return topic_term_counts[topic * num_terms() + term];
  }
  double beta(int topic, TermId term) const {
    return beta_hat[topic * num_terms() + term];
  }
  std::span<const double> beta_row(int topic) const {
    return std::span<const double>(beta_hat).subspan(topic * num_terms(),
                                                     num_terms());
  }

  // Throws DataError naming the first failed check: config, shapes,
  // topic_totals vs row sums, beta rows summing to 1, mixtures summing to 1
  // with a valid rank, assignment ranges and totals.
  void Validate() const;

  bool operator==(const TrainedModel&) const = default;
};

// Collapsed Gibbs sampler state over one matrix. Single-threaded; token
// visit order is document index then canonical token position.
class GibbsSampler {
 public:
  // Draws each token's initial topic uniformly from the seeded generator.
  GibbsSampler(const TermDocumentMatrix& matrix, const LdaConfig& config);

  // One pass over all tokens. With `validate`, every conditional is checked
  // to be non-negative and normalizable to 1 within 1e-12 (DataError if not).
  void Sweep(bool validate = false);

  // Recomputes all count tables from the assignments and compares; throws
  // DataError on any mismatch.
  void CheckCounts() const;

  int num_topics() const { return num_topics_; }
  size_t num_docs() const { return doc_offsets_.size() - 1; }
  size_t num_terms() const { return num_terms_; }
  int sweeps_done() const { return sweeps_done_; }

  std::span<const TermId> doc_tokens(size_t d) const {
    return {words_.data() + doc_offsets_[d],
            doc_offsets_[d + 1] - doc_offsets_[d]};
  }
  std::span<const uint32_t> doc_assignments(size_t d) const {
    return {topics_.data() + doc_offsets_[d],
            doc_offsets_[d + 1] - doc_offsets_[d]};
  }
  std::span<const uint32_t> doc_topic_counts(size_t d) const {
    return {doc_topic_.data() + d * num_topics_,
            static_cast<size_t>(num_topics_)};
  }
  // Indexed by topic for a fixed term.
  std::span<const uint32_t> term_topic_counts(TermId w) const {
    return {term_topic_.data() + static_cast<size_t>(w) * num_topics_,
            static_cast<size_t>(num_topics_)};
  }
  std::span<const uint32_t> topic_totals() const { return topic_total_; }

 private:
  int num_topics_;
  size_t num_terms_;
  double alpha_;
  double eta_;
  double eta_sum_;
  std::vector<size_t> doc_offsets_;
  std::vector<TermId> words_;
  std::vector<uint32_t> topics_;
  std::vector<uint32_t> doc_topic_;   // D x K
  std::vector<uint32_t> term_topic_;  // V x K
  std::vector<uint32_t> topic_total_;
  std::vector<double> inv_denominator_;  // 1 / (n_k + V * eta)
  std::vector<double> cdf_;
  Rng rng_;
  int sweeps_done_ = 0;
};

struct TrainOptions {
  // Per-sweep count and conditional checks (slow).
  bool check_invariants = false;
  // Called after every sweep with the sweep number (1-based).
  std::function<void(const GibbsSampler&, int)> on_sweep;
};

// Throws DataError when the matrix has no documents or no tokens.
TrainedModel Train(const TermDocumentMatrix& matrix, const LdaConfig& config,
                   const TrainOptions& options = {});

struct InferOptions {
  std::optional<int> sweeps;
  std::optional<int> burn_in;
  std::optional<int> sample_lag;
  std::optional<uint64_t> seed;
};

struct InferResult {
  DocTopicMixture mixture;
  size_t known_terms = 0;
  size_t unseen_terms = 0;
};

// Folding-in: the topics stay fixed at beta_hat and only the new document's
// assignments are resampled. theta is (E[n_k] + alpha) / (N + K * alpha),
// with E[n_k] the per-token conditionals averaged over retained sweeps, so a
// one-token document gets its exact posterior mean. Unknown terms are
// skipped. With no known terms the result is exactly the uniform prior mean
// 1/K. Sweep settings default to the model's; an overridden sweep count
// without a burn-in clamps burn-in to sweeps - 1.
InferResult Infer(const TrainedModel& model,
                  std::span<const std::string> terms,
                  const InferOptions& options = {},
                  std::string doc_id = "");

// The n most probable terms of a topic, descending; ties by ascending id.
// Throws UsageError for an out-of-range topic or n < 1.
std::vector<std::pair<std::string, double>> TopWords(const TrainedModel& model,
                                                     int topic, int n);

// Sum over tokens of log sum_k theta_dk * beta_kw, using the model's
// training mixtures (matched by doc id) and terms matched by string. Throws
// DataError when a document or term is unknown to the model.
double LogLikelihood(const TrainedModel& model,
                     const TermDocumentMatrix& matrix);

}  // namespace ctopics

#endif  // CTOPICS_LDA_H_
