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

#ifndef CTOPICS_TERM_DOCUMENT_MATRIX_H_
#define CTOPICS_TERM_DOCUMENT_MATRIX_H_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ctopics {

using TermId = uint32_t;

// Dense 0-based ids over a sorted list of unique terms.
class Vocabulary {
 public:
  Vocabulary() = default;
  // Terms must be unique; they are kept in the given order.
  explicit Vocabulary(std::vector<std::string> terms);

  size_t size() const { return terms_.size(); }
  const std::string& term(TermId id) const { return terms_[id]; }
  const std::vector<std::string>& terms() const { return terms_; }
  std::optional<TermId> Find(std::string_view term) const;

  bool operator==(const Vocabulary& other) const {
    return terms_ == other.terms_;
  }

 private:
  std::vector<std::string> terms_;
  std::map<std::string, TermId, std::less<>> index_;
};

struct TermCount {
  TermId term = 0;
  uint32_t count = 0;

  bool operator==(const TermCount&) const = default;
};

// Sparse term-by-document frequency counts, stored column-wise: each
// document holds its (term, count) pairs sorted by term id, counts >= 1.
class TermDocumentMatrix {
 public:
  TermDocumentMatrix() = default;

  // Columns must be sorted by term id with positive counts and ids < V.
  // Throws DataError otherwise, or on duplicate doc ids.
  TermDocumentMatrix(Vocabulary vocabulary, std::vector<std::string> doc_ids,
                     std::vector<std::vector<TermCount>> columns);

  const Vocabulary& vocabulary() const { return vocabulary_; }
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  size_t num_docs() const { return doc_ids_.size(); }
  size_t num_terms() const { return vocabulary_.size(); }
  std::span<const TermCount> column(size_t doc) const { return columns_[doc]; }
  uint64_t doc_length(size_t doc) const { return doc_lengths_[doc]; }
  const std::vector<uint64_t>& doc_lengths() const { return doc_lengths_; }
  uint64_t total_tokens() const { return total_tokens_; }
  size_t nonzeros() const;
  // Count for (term, doc); 0 when absent.
  uint32_t count(TermId term, size_t doc) const;
  // Documents with no tokens after preprocessing.
  std::vector<size_t> EmptyDocuments() const;

  // Token sequence of a document in canonical order: ascending term id, each
  // term repeated by its count.
  std::vector<TermId> ExpandTokens(size_t doc) const;

  bool operator==(const TermDocumentMatrix& other) const {
    return vocabulary_ == other.vocabulary_ && doc_ids_ == other.doc_ids_ &&
           columns_ == other.columns_;
  }

 private:
  Vocabulary vocabulary_;
  std::vector<std::string> doc_ids_;
  std::vector<std::vector<TermCount>> columns_;
  std::vector<uint64_t> doc_lengths_;
  uint64_t total_tokens_ = 0;
};

// Vocabulary is the lexicographically sorted set of all terms; cell (t, d) is
// the frequency of t in d. Documents with no terms are kept as empty columns.
// Throws DataError on a duplicate doc id.
TermDocumentMatrix BuildCorpus(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& docs);

// JSON container:
//   {"format": "ctopics.term_document_matrix", "version": 1,
//    "vocabulary": [...], "doc_ids": [...],
//    "triplets": [[term_id, doc_index, count], ...]}
// Triplets are ordered by (doc_index, term_id).
void WriteMatrixJson(const TermDocumentMatrix& m, std::ostream& out);
TermDocumentMatrix ReadMatrixJson(std::istream& in);

// Compact little-endian binary form of the same content:
//   "CTDM" u32 version, u64 V, V x (u32 len, bytes), u64 D,
//   D x (u32 len, bytes), u64 nnz, nnz x (u32 term, u32 doc, u32 count).
void WriteMatrixBinary(const TermDocumentMatrix& m, std::ostream& out);
TermDocumentMatrix ReadMatrixBinary(std::istream& in);

// Dispatches on the file extension (".bin" is binary, anything else JSON).
void SaveMatrix(const TermDocumentMatrix& m, const std::string& path);
TermDocumentMatrix LoadMatrix(const std::string& path);

}  // namespace ctopics

#endif  // CTOPICS_TERM_DOCUMENT_MATRIX_H_
