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

#include "ctopics/term_document_matrix.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "ctopics/errors.h"

namespace ctopics {

namespace {

constexpr char kJsonFormat[] = "ctopics.term_document_matrix";
constexpr int kFormatVersion = 1;
constexpr char kMagic[4] = {'C', 'T', 'D', 'M'};

void PutU32(std::ostream& out, uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(b, 4);
}

void PutU64(std::ostream& out, uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(b, 8);
}

void PutString(std::ostream& out, const std::string& s) {
  PutU32(out, static_cast<uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void ReadExact(std::istream& in, char* dst, size_t n) {
  in.read(dst, static_cast<std::streamsize>(n));
  if (static_cast<size_t>(in.gcount()) != n) {
    throw DataError("binary matrix: unexpected end of file");
  }
}

uint32_t GetU32(std::istream& in) {
  unsigned char b[4];
  ReadExact(in, reinterpret_cast<char*>(b), 4);
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

uint64_t GetU64(std::istream& in) {
  unsigned char b[8];
  ReadExact(in, reinterpret_cast<char*>(b), 8);
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

std::string GetString(std::istream& in) {
  uint32_t len = GetU32(in);
  std::string s(len, '\0');
  ReadExact(in, s.data(), len);
  return s;
}

struct Triplet {
  uint64_t term;
  uint64_t doc;
  uint64_t count;
};

TermDocumentMatrix FromTriplets(std::vector<std::string> vocab,
                                std::vector<std::string> doc_ids,
                                const std::vector<Triplet>& triplets) {
  std::vector<std::vector<TermCount>> columns(doc_ids.size());
  for (const Triplet& t : triplets) {
    if (t.doc >= doc_ids.size() || t.term >= vocab.size()) {
      throw DataError("matrix triplet [" + std::to_string(t.term) + ", " +
                      std::to_string(t.doc) + "] is out of range");
    }
    if (t.count == 0 || t.count > UINT32_MAX) {
      throw DataError("matrix triplet has invalid count");
    }
    columns[t.doc].push_back(
        {static_cast<TermId>(t.term), static_cast<uint32_t>(t.count)});
  }
  for (auto& col : columns) {
    std::sort(col.begin(), col.end(),
              [](const TermCount& a, const TermCount& b) {
                return a.term < b.term;
              });
  }
  return TermDocumentMatrix(Vocabulary(std::move(vocab)), std::move(doc_ids),
                            std::move(columns));
}

bool EndsWith(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> terms)
    : terms_(std::move(terms)) {
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (!index_.emplace(terms_[i], static_cast<TermId>(i)).second) {
      throw DataError("duplicate vocabulary term \"" + terms_[i] + "\"");
    }
  }
}

std::optional<TermId> Vocabulary::Find(std::string_view term) const {
  auto it = index_.find(term);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TermDocumentMatrix::TermDocumentMatrix(
    Vocabulary vocabulary, std::vector<std::string> doc_ids,
    std::vector<std::vector<TermCount>> columns)
    : vocabulary_(std::move(vocabulary)),
      doc_ids_(std::move(doc_ids)),
      columns_(std::move(columns)) {
  if (columns_.size() != doc_ids_.size()) {
    throw DataError("matrix has " + std::to_string(columns_.size()) +
                    " columns but " + std::to_string(doc_ids_.size()) +
                    " doc ids");
  }
  std::unordered_set<std::string_view> seen;
  for (const std::string& id : doc_ids_) {
    if (!seen.insert(id).second) {
      throw DataError("duplicate document id \"" + id + "\"");
    }
  }
  doc_lengths_.reserve(columns_.size());
  for (const auto& col : columns_) {
    uint64_t len = 0;
    for (size_t i = 0; i < col.size(); ++i) {
      if (col[i].count == 0) throw DataError("matrix cell with zero count");
      if (col[i].term >= vocabulary_.size()) {
        throw DataError("matrix term id out of range");
      }
      if (i > 0 && col[i - 1].term >= col[i].term) {
        throw DataError("matrix column not sorted by term id");
      }
      len += col[i].count;
    }
    doc_lengths_.push_back(len);
    total_tokens_ += len;
  }
}

size_t TermDocumentMatrix::nonzeros() const {
  size_t n = 0;
  for (const auto& col : columns_) n += col.size();
  return n;
}

uint32_t TermDocumentMatrix::count(TermId term, size_t doc) const {
  const auto& col = columns_[doc];
  auto it = std::lower_bound(
      col.begin(), col.end(), term,
      [](const TermCount& c, TermId t) { return c.term < t; });
  return (it != col.end() && it->term == term) ? it->count : 0;
}

std::vector<size_t> TermDocumentMatrix::EmptyDocuments() const {
  std::vector<size_t> out;
  for (size_t d = 0; d < columns_.size(); ++d) {
    if (columns_[d].empty()) out.push_back(d);
  }
  return out;
}

std::vector<TermId> TermDocumentMatrix::ExpandTokens(size_t doc) const {
  std::vector<TermId> tokens;
  tokens.reserve(doc_lengths_[doc]);
  for (const TermCount& c : columns_[doc]) tokens.insert(tokens.end(), c.count, c.term);
  return tokens;
}

TermDocumentMatrix BuildCorpus(
    const std::vector<std::pair<std::string, std::vector<std::string>>>&
        docs) {
  std::set<std::string_view> distinct;
  for (const auto& [id, terms] : docs) {
    distinct.insert(terms.begin(), terms.end());
  }
  std::vector<std::string> vocab(distinct.begin(), distinct.end());
  Vocabulary vocabulary(vocab);

  std::vector<std::string> doc_ids;
  std::vector<std::vector<TermCount>> columns;
  doc_ids.reserve(docs.size());
  columns.reserve(docs.size());
  std::vector<TermId> ids;
  for (const auto& [id, terms] : docs) {
    ids.clear();
    for (const std::string& t : terms) ids.push_back(*vocabulary.Find(t));
    std::sort(ids.begin(), ids.end());
    std::vector<TermCount> col;
    for (TermId t : ids) {
      if (!col.empty() && col.back().term == t) {
        ++col.back().count;
      } else {
        col.push_back({t, 1});
      }
    }
    doc_ids.push_back(id);
    columns.push_back(std::move(col));
  }
  return TermDocumentMatrix(std::move(vocabulary), std::move(doc_ids),
                            std::move(columns));
}

void WriteMatrixJson(const TermDocumentMatrix& m, std::ostream& out) {
  nlohmann::ordered_json j;
  j["format"] = kJsonFormat;
  j["version"] = kFormatVersion;
  j["vocabulary"] = m.vocabulary().terms();
  j["doc_ids"] = m.doc_ids();
  auto triplets = nlohmann::ordered_json::array();
  for (size_t d = 0; d < m.num_docs(); ++d) {
    for (const TermCount& c : m.column(d)) {
      triplets.push_back({c.term, d, c.count});
    }
  }
  j["triplets"] = std::move(triplets);
  out << j.dump() << "\n";
}

TermDocumentMatrix ReadMatrixJson(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
    if (j.at("format").get<std::string>() != kJsonFormat) {
      throw DataError("not a term-document matrix file");
    }
    if (j.at("version").get<int>() != kFormatVersion) {
      throw DataError("unsupported matrix format version " +
                      j.at("version").dump());
    }
    auto vocab = j.at("vocabulary").get<std::vector<std::string>>();
    auto doc_ids = j.at("doc_ids").get<std::vector<std::string>>();
    std::vector<Triplet> triplets;
    for (const auto& t : j.at("triplets")) {
      if (!t.is_array() || t.size() != 3) {
        throw DataError("matrix triplet must be [term_id, doc_index, count]");
      }
      triplets.push_back({t[0].get<uint64_t>(), t[1].get<uint64_t>(),
                          t[2].get<uint64_t>()});
    }
    return FromTriplets(std::move(vocab), std::move(doc_ids), triplets);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed matrix JSON: ") + e.what());
  }
}

void WriteMatrixBinary(const TermDocumentMatrix& m, std::ostream& out) {
  out.write(kMagic, 4);
  PutU32(out, kFormatVersion);
  PutU64(out, m.num_terms());
  for (const std::string& t : m.vocabulary().terms()) PutString(out, t);
  PutU64(out, m.num_docs());
  for (const std::string& id : m.doc_ids()) PutString(out, id);
  PutU64(out, m.nonzeros());
  for (size_t d = 0; d < m.num_docs(); ++d) {
    for (const TermCount& c : m.column(d)) {
      PutU32(out, c.term);
      PutU32(out, static_cast<uint32_t>(d));
      PutU32(out, c.count);
    }
  }
}

TermDocumentMatrix ReadMatrixBinary(std::istream& in) {
  char magic[4];
  ReadExact(in, magic, 4);
  if (!std::equal(magic, magic + 4, kMagic)) {
    throw DataError("binary matrix: bad magic");
  }
  uint32_t version = GetU32(in);
  if (version != kFormatVersion) {
    throw DataError("binary matrix: unsupported version " +
                    std::to_string(version));
  }
  std::vector<std::string> vocab(GetU64(in));
  for (auto& t : vocab) t = GetString(in);
  std::vector<std::string> doc_ids(GetU64(in));
  for (auto& id : doc_ids) id = GetString(in);
  std::vector<Triplet> triplets(GetU64(in));
  for (auto& t : triplets) {
    t.term = GetU32(in);
    t.doc = GetU32(in);
    t.count = GetU32(in);
  }
  return FromTriplets(std::move(vocab), std::move(doc_ids), triplets);
}

void SaveMatrix(const TermDocumentMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  if (EndsWith(path, ".bin")) {
    WriteMatrixBinary(m, out);
  } else {
    WriteMatrixJson(m, out);
  }
  if (!out) throw DataError("write failed: " + path);
}

TermDocumentMatrix LoadMatrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open matrix file " + path);
  return EndsWith(path, ".bin") ? ReadMatrixBinary(in) : ReadMatrixJson(in);
}

}  // namespace ctopics
