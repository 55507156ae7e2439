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

#include "ctopics/lda.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "ctopics/errors.h"

namespace ctopics {

namespace {

constexpr double kSumTolerance = 1e-9;

// Draws an index from the running sums in `cdf` (last entry is the total).
uint32_t SampleIndex(const std::vector<double>& cdf, int n, double u) {
  const double target = u * cdf[n - 1];
  int k = 0;
  while (k < n - 1 && cdf[k] <= target) ++k;
  return static_cast<uint32_t>(k);
}

std::vector<double> UniformTheta(int k) {
  return std::vector<double>(k, 1.0 / k);
}

}  // namespace

void LdaConfig::Validate() const {
  if (num_topics < 1) throw UsageError("number of topics must be >= 1");
  if (!(alpha > 0) || !std::isfinite(alpha)) {
    throw UsageError("alpha must be > 0");
  }
  if (!(eta > 0) || !std::isfinite(eta)) throw UsageError("eta must be > 0");
  if (burn_in < 0) throw UsageError("burn-in must be >= 0");
  if (sweeps <= burn_in) {
    throw UsageError("sweeps (" + std::to_string(sweeps) +
                     ") must exceed burn-in (" + std::to_string(burn_in) + ")");
  }
  if (sample_lag < 1) throw UsageError("sample lag must be >= 1");
}

int LdaConfig::RetainedSamples() const {
  int n = 0;
  for (int s = burn_in + 1; s <= sweeps; ++s) n += IsRetainedSweep(s);
  return n;
}

DocTopicMixture DocTopicMixture::FromTheta(std::string doc_id,
                                           std::vector<double> theta) {
  DocTopicMixture m;
  m.doc_id = std::move(doc_id);
  m.dominant_rank.resize(theta.size());
  std::iota(m.dominant_rank.begin(), m.dominant_rank.end(), 0);
  std::stable_sort(m.dominant_rank.begin(), m.dominant_rank.end(),
                   [&](int a, int b) { return theta[a] > theta[b]; });
  m.theta = std::move(theta);
  return m;
}

void TrainedModel::Validate() const {
  try {
    config.Validate();
  } catch (const UsageError& e) {
    throw DataError(std::string("model config invalid: ") + e.what());
  }
  const size_t k_count = static_cast<size_t>(num_topics());
  const size_t v = num_terms();
  if (topic_term_counts.size() != k_count * v) {
    throw DataError("topic_term_counts has wrong shape");
  }
  if (topic_totals.size() != k_count) {
    throw DataError("topic_totals has wrong length");
  }
  if (beta_hat.size() != k_count * v) {
    throw DataError("beta_hat has wrong shape");
  }
  int64_t all_counts = 0;
  for (size_t k = 0; k < k_count; ++k) {
    int64_t row = 0;
    double beta_sum = 0;
    for (size_t w = 0; w < v; ++w) {
      int64_t c = topic_term_counts[k * v + w];
      if (c < 0) throw DataError("negative topic_term_counts entry");
      row += c;
      double b = beta_hat[k * v + w];
      if (!(b >= 0) || !std::isfinite(b)) {
        throw DataError("beta_hat entry out of range in topic " +
                        std::to_string(k));
      }
      beta_sum += b;
    }
    if (row != topic_totals[k]) {
      throw DataError("topic_totals[" + std::to_string(k) +
                      "] does not equal the sum of its topic_term_counts row");
    }
    if (v > 0 && std::abs(beta_sum - 1.0) > kSumTolerance) {
      throw DataError("beta_hat row " + std::to_string(k) +
                      " does not sum to 1");
    }
    all_counts += row;
  }
  for (const DocTopicMixture& m : training_doc_mixtures) {
    if (m.theta.size() != k_count) {
      throw DataError("mixture for \"" + m.doc_id + "\" has wrong length");
    }
    double sum = 0;
    for (double t : m.theta) {
      if (!(t >= 0) || !std::isfinite(t)) {
        throw DataError("mixture for \"" + m.doc_id + "\" has a bad entry");
      }
      sum += t;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
      throw DataError("mixture for \"" + m.doc_id + "\" does not sum to 1");
    }
    if (m.dominant_rank != DocTopicMixture::FromTheta("", m.theta).dominant_rank) {
      throw DataError("dominant_rank for \"" + m.doc_id +
                      "\" is not the descending order of theta");
    }
  }
  if (!assignments.empty()) {
    if (assignments.size() != training_doc_mixtures.size()) {
      throw DataError("assignments and mixtures cover different documents");
    }
    int64_t tokens = 0;
    for (const auto& doc : assignments) {
      for (int z : doc) {
        if (z < 0 || static_cast<size_t>(z) >= k_count) {
          throw DataError("assignment out of topic range");
        }
      }
      tokens += static_cast<int64_t>(doc.size());
    }
    if (tokens != all_counts) {
      throw DataError("assignment count does not equal the topic count total");
    }
  }
}

GibbsSampler::GibbsSampler(const TermDocumentMatrix& matrix,
                           const LdaConfig& config)
    : num_topics_(config.num_topics),
      num_terms_(matrix.num_terms()),
      alpha_(config.alpha),
      eta_(config.eta),
      eta_sum_(config.eta * static_cast<double>(matrix.num_terms())),
      rng_(config.seed) {
  const size_t k_count = static_cast<size_t>(num_topics_);
  doc_offsets_.reserve(matrix.num_docs() + 1);
  doc_offsets_.push_back(0);
  words_.reserve(matrix.total_tokens());
  for (size_t d = 0; d < matrix.num_docs(); ++d) {
    for (const TermCount& c : matrix.column(d)) {
      words_.insert(words_.end(), c.count, c.term);
    }
    doc_offsets_.push_back(words_.size());
  }
  topics_.resize(words_.size());
  doc_topic_.assign(matrix.num_docs() * k_count, 0);
  term_topic_.assign(num_terms_ * k_count, 0);
  topic_total_.assign(k_count, 0);
  inv_denominator_.resize(k_count);
  cdf_.resize(k_count);

  for (size_t d = 0; d + 1 < doc_offsets_.size(); ++d) {
    for (size_t i = doc_offsets_[d]; i < doc_offsets_[d + 1]; ++i) {
      uint32_t z = rng_.UniformInt(static_cast<uint32_t>(num_topics_));
      topics_[i] = z;
      ++doc_topic_[d * k_count + z];
      ++term_topic_[words_[i] * k_count + z];
      ++topic_total_[z];
    }
  }
  for (size_t k = 0; k < k_count; ++k) {
    inv_denominator_[k] = 1.0 / (topic_total_[k] + eta_sum_);
  }
}

void GibbsSampler::Sweep(bool validate) {
  const int k_count = num_topics_;
  double* inv = inv_denominator_.data();
  double* cdf = cdf_.data();
  uint32_t* totals = topic_total_.data();
  for (size_t d = 0; d + 1 < doc_offsets_.size(); ++d) {
    uint32_t* ndk = doc_topic_.data() + d * k_count;
    for (size_t i = doc_offsets_[d]; i < doc_offsets_[d + 1]; ++i) {
      uint32_t* nwk = term_topic_.data() + static_cast<size_t>(words_[i]) * k_count;
      const uint32_t old = topics_[i];
      --ndk[old];
      --nwk[old];
      --totals[old];
      inv[old] = 1.0 / (totals[old] + eta_sum_);

      double sum = 0;
      for (int k = 0; k < k_count; ++k) {
        sum += (ndk[k] + alpha_) * (nwk[k] + eta_) * inv[k];
        cdf[k] = sum;
      }
      if (validate) {
        double normalized = 0;
        double prev = 0;
        for (int k = 0; k < k_count; ++k) {
          double p = cdf[k] - prev;
          prev = cdf[k];
          if (!(p >= 0)) throw DataError("negative sampling weight");
          normalized += p / sum;
        }
        if (!(sum > 0) || std::abs(normalized - 1.0) > 1e-12) {
          throw DataError("sampling conditional does not normalize");
        }
      }
      const uint32_t z = SampleIndex(cdf_, k_count, rng_.Uniform());
      topics_[i] = z;
      ++ndk[z];
      ++nwk[z];
      ++totals[z];
      inv[z] = 1.0 / (totals[z] + eta_sum_);
    }
  }
  ++sweeps_done_;
}

void GibbsSampler::CheckCounts() const {
  const size_t k_count = static_cast<size_t>(num_topics_);
  std::vector<uint32_t> doc_topic(doc_topic_.size(), 0);
  std::vector<uint32_t> term_topic(term_topic_.size(), 0);
  std::vector<uint32_t> totals(k_count, 0);
  for (size_t d = 0; d + 1 < doc_offsets_.size(); ++d) {
    for (size_t i = doc_offsets_[d]; i < doc_offsets_[d + 1]; ++i) {
      ++doc_topic[d * k_count + topics_[i]];
      ++term_topic[words_[i] * k_count + topics_[i]];
      ++totals[topics_[i]];
    }
  }
  if (doc_topic != doc_topic_) throw DataError("document-topic counts drifted");
  if (term_topic != term_topic_) throw DataError("term-topic counts drifted");
  if (totals != topic_total_) throw DataError("topic totals drifted");
}

TrainedModel Train(const TermDocumentMatrix& matrix, const LdaConfig& config,
                   const TrainOptions& options) {
  config.Validate();
  if (matrix.num_docs() == 0) throw DataError("cannot train on an empty matrix");
  if (matrix.total_tokens() == 0) {
    throw DataError("cannot train: every document is empty");
  }
  const size_t k_count = static_cast<size_t>(config.num_topics);
  const size_t v = matrix.num_terms();
  const size_t num_docs = matrix.num_docs();

  GibbsSampler sampler(matrix, config);
  std::vector<uint64_t> theta_sum(num_docs * k_count, 0);
  std::vector<double> beta_sum(k_count * v, 0.0);
  int samples = 0;
  const double eta_sum = config.eta * static_cast<double>(v);

  for (int sweep = 1; sweep <= config.sweeps; ++sweep) {
    sampler.Sweep(options.check_invariants);
    if (options.check_invariants) sampler.CheckCounts();
    if (options.on_sweep) options.on_sweep(sampler, sweep);
    if (!config.IsRetainedSweep(sweep)) continue;
    ++samples;
    for (size_t d = 0; d < num_docs; ++d) {
      auto counts = sampler.doc_topic_counts(d);
      for (size_t k = 0; k < k_count; ++k) theta_sum[d * k_count + k] += counts[k];
    }
    auto totals = sampler.topic_totals();
    for (TermId w = 0; w < v; ++w) {
      auto counts = sampler.term_topic_counts(w);
      for (size_t k = 0; k < k_count; ++k) {
        beta_sum[k * v + w] += (counts[k] + config.eta) / (totals[k] + eta_sum);
      }
    }
  }

  TrainedModel model;
  model.config = config;
  model.vocabulary = matrix.vocabulary();
  model.topic_term_counts.assign(k_count * v, 0);
  model.topic_totals.assign(k_count, 0);
  for (TermId w = 0; w < v; ++w) {
    auto counts = sampler.term_topic_counts(w);
    for (size_t k = 0; k < k_count; ++k) {
      model.topic_term_counts[k * v + w] = counts[k];
    }
  }
  for (size_t k = 0; k < k_count; ++k) {
    model.topic_totals[k] = sampler.topic_totals()[k];
  }
  model.beta_hat.resize(k_count * v);
  for (size_t i = 0; i < beta_sum.size(); ++i) {
    model.beta_hat[i] = beta_sum[i] / samples;
  }
  model.training_doc_mixtures.reserve(num_docs);
  model.assignments.reserve(num_docs);
  const double k_alpha = config.num_topics * config.alpha;
  for (size_t d = 0; d < num_docs; ++d) {
    const double length = static_cast<double>(matrix.doc_length(d));
    std::vector<double> theta;
    if (matrix.doc_length(d) == 0) {
      theta = UniformTheta(config.num_topics);
    } else {
      theta.resize(k_count);
      for (size_t k = 0; k < k_count; ++k) {
        double mean_count =
            static_cast<double>(theta_sum[d * k_count + k]) / samples;
        theta[k] = (mean_count + config.alpha) / (length + k_alpha);
      }
    }
    model.training_doc_mixtures.push_back(
        DocTopicMixture::FromTheta(matrix.doc_ids()[d], std::move(theta)));
    auto z = sampler.doc_assignments(d);
    model.assignments.emplace_back(z.begin(), z.end());
  }
  return model;
}

InferResult Infer(const TrainedModel& model,
                  std::span<const std::string> terms,
                  const InferOptions& options, std::string doc_id) {
  LdaConfig cfg = model.config;
  if (options.sweeps) {
    cfg.sweeps = *options.sweeps;
    if (!options.burn_in) cfg.burn_in = std::max(0, std::min(cfg.burn_in, cfg.sweeps - 1));
  }
  if (options.burn_in) cfg.burn_in = *options.burn_in;
  if (options.sample_lag) cfg.sample_lag = *options.sample_lag;
  if (options.seed) cfg.seed = *options.seed;
  cfg.Validate();

  const int k_count = model.num_topics();
  InferResult result;
  std::vector<TermId> words;
  for (const std::string& t : terms) {
    if (auto id = model.vocabulary.Find(t)) {
      words.push_back(*id);
    } else {
      ++result.unseen_terms;
    }
  }
  result.known_terms = words.size();
  if (words.empty()) {
    result.mixture =
        DocTopicMixture::FromTheta(std::move(doc_id), UniformTheta(k_count));
    return result;
  }

  // Topic likelihoods of each token, fixed at the model's beta.
  std::vector<double> phi(words.size() * k_count);
  for (size_t i = 0; i < words.size(); ++i) {
    for (int k = 0; k < k_count; ++k) {
      phi[i * k_count + k] = model.beta(k, words[i]);
    }
  }

  Rng rng(cfg.seed);
  std::vector<uint32_t> z(words.size());
  std::vector<uint32_t> ndk(k_count, 0);
  for (auto& zi : z) {
    zi = rng.UniformInt(static_cast<uint32_t>(k_count));
    ++ndk[zi];
  }
  std::vector<double> cdf(k_count);
  // Expected topic counts: per-token conditionals summed over retained sweeps.
  std::vector<double> expected(k_count, 0.0);
  int samples = 0;
  for (int sweep = 1; sweep <= cfg.sweeps; ++sweep) {
    const bool retained = cfg.IsRetainedSweep(sweep);
    samples += retained;
    for (size_t i = 0; i < words.size(); ++i) {
      --ndk[z[i]];
      const double* p = phi.data() + i * k_count;
      double sum = 0;
      for (int k = 0; k < k_count; ++k) {
        sum += (ndk[k] + cfg.alpha) * p[k];
        cdf[k] = sum;
      }
      if (retained) {
        double prev = 0;
        for (int k = 0; k < k_count; ++k) {
          expected[k] += (cdf[k] - prev) / sum;
          prev = cdf[k];
        }
      }
      z[i] = SampleIndex(cdf, k_count, rng.Uniform());
      ++ndk[z[i]];
    }
  }
  std::vector<double> theta(k_count);
  const double denom = static_cast<double>(words.size()) + k_count * cfg.alpha;
  for (int k = 0; k < k_count; ++k) {
    theta[k] = (expected[k] / samples + cfg.alpha) / denom;
  }
  result.mixture = DocTopicMixture::FromTheta(std::move(doc_id), std::move(theta));
  return result;
}

std::vector<std::pair<std::string, double>> TopWords(const TrainedModel& model,
                                                     int topic, int n) {
  if (topic < 0 || topic >= model.num_topics()) {
    throw UsageError("topic " + std::to_string(topic) + " out of range [0, " +
                     std::to_string(model.num_topics()) + ")");
  }
  if (n < 1) throw UsageError("number of top words must be >= 1");
  auto row = model.beta_row(topic);
  std::vector<TermId> ids(row.size());
  std::iota(ids.begin(), ids.end(), 0);
  const size_t take = std::min(ids.size(), static_cast<size_t>(n));
  std::partial_sort(ids.begin(), ids.begin() + take, ids.end(),
                    [&](TermId a, TermId b) {
                      if (row[a] != row[b]) return row[a] > row[b];
                      return a < b;
                    });
  std::vector<std::pair<std::string, double>> out;
  out.reserve(take);
  for (size_t i = 0; i < take; ++i) {
    out.emplace_back(model.vocabulary.term(ids[i]), row[ids[i]]);
  }
  return out;
}

double LogLikelihood(const TrainedModel& model,
                     const TermDocumentMatrix& matrix) {
  std::unordered_map<std::string_view, const DocTopicMixture*> by_id;
  for (const DocTopicMixture& m : model.training_doc_mixtures) {
    by_id.emplace(m.doc_id, &m);
  }
  const int k_count = model.num_topics();
  std::vector<TermId> term_map(matrix.num_terms());
  for (TermId t = 0; t < matrix.num_terms(); ++t) {
    auto id = model.vocabulary.Find(matrix.vocabulary().term(t));
    if (!id) {
      throw DataError("term \"" + matrix.vocabulary().term(t) +
                      "\" is not in the model vocabulary");
    }
    term_map[t] = *id;
  }
  std::vector<double> log_terms(k_count);
  std::vector<double> per_doc;
  per_doc.reserve(matrix.num_docs());
  for (size_t d = 0; d < matrix.num_docs(); ++d) {
    auto it = by_id.find(matrix.doc_ids()[d]);
    if (it == by_id.end()) {
      throw DataError("document \"" + matrix.doc_ids()[d] +
                      "\" has no mixture in the model");
    }
    const std::vector<double>& theta = it->second->theta;
    double doc_ll = 0;
    for (const TermCount& c : matrix.column(d)) {
      const TermId w = term_map[c.term];
      double max_log = -INFINITY;
      for (int k = 0; k < k_count; ++k) {
        log_terms[k] = std::log(theta[k]) + std::log(model.beta(k, w));
        max_log = std::max(max_log, log_terms[k]);
      }
      double s = 0;
      for (int k = 0; k < k_count; ++k) s += std::exp(log_terms[k] - max_log);
      doc_ll += c.count * (max_log + std::log(s));
    }
    per_doc.push_back(doc_ll);
  }
  // Summing in sorted order makes the result independent of document order.
  std::sort(per_doc.begin(), per_doc.end());
  double total = 0;
  for (double x : per_doc) total += x;
  return total;
}

}  // namespace ctopics
