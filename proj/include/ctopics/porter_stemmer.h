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

#ifndef CTOPICS_PORTER_STEMMER_H_
#define CTOPICS_PORTER_STEMMER_H_

#include <string>
#include <string_view>

namespace ctopics {

// The original Porter (1980) suffix-stripping algorithm, steps 1a through 5b,
// without the later ABLI->BLI or LOGI extensions and without a minimum
// length guard ("is" -> "i").
//
// Input must be lowercase. Tokens containing anything other than ASCII a-z
// are returned unchanged, since the rules are defined over that alphabet.
//
// Note the algorithm is not idempotent in general: "agreed" -> "agre" ->
// "agr".
std::string PorterStem(std::string_view token);

}  // namespace ctopics

#endif  // CTOPICS_PORTER_STEMMER_H_
