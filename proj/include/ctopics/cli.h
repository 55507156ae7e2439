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

#ifndef CTOPICS_CLI_H_
#define CTOPICS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace ctopics {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitData = 3,
};

// Entry point of the `ctopics` tool. Machine-readable results go to `out`,
// progress and diagnostics to `err`. args[0] is the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace ctopics

#endif  // CTOPICS_CLI_H_
