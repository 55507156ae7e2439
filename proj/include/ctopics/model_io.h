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
// Model file, versioned JSON:
//
//   {
//     "format": "ctopics.lda_model",
//     "version": 1,
//     "config": {"num_topics", "alpha", "eta", "sweeps", "burn_in",
//                "sample_lag", "seed"},
//     "vocabulary": [term, ...],
//     "topic_term_counts": [[int x V] x K],
//     "topic_totals": [int x K],
//     "beta_hat": [[double x V] x K],
//     "documents": [{"doc_id", "theta": [double x K],
//                    "dominant_rank": [int x K],
//                    "assignments": [int x N_d]}, ...]
//   }
//
// Doubles are written in shortest round-trip form, so save/load is exact.

#ifndef CTOPICS_MODEL_IO_H_
#define CTOPICS_MODEL_IO_H_

#include <istream>
#include <ostream>
#include <string>

#include "ctopics/lda.h"

namespace ctopics {

inline constexpr int kModelFormatVersion = 1;

void WriteModel(const TrainedModel& model, std::ostream& out);

// Throws DataError on a format/version mismatch or any failed
// TrainedModel::Validate check.
TrainedModel ReadModel(std::istream& in);

void SaveModel(const TrainedModel& model, const std::string& path);
TrainedModel LoadModel(const std::string& path);

}  // namespace ctopics

#endif  // CTOPICS_MODEL_IO_H_
