// Copyright 2026 The compwire Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Subcommands: analyze, channel, commute,
// invariance, lemmas, moments. Every subcommand builds a JSON report; the
// csv and pretty formats are renderings of that JSON.
//
// Exit codes: 0 success, 1 input or parse error, 2 precondition violation,
// 3 verdict failure.

#ifndef COMPWIRE_TOOLS_CLI_H_
#define COMPWIRE_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "compwire/report.h"

namespace compwire::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kPreconditionError = 2,
  kVerdictFailure = 3,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

std::string render_json(const Json& report);
std::string render_pretty(const Json& report);
std::string render_csv(const Json& report);

}  // namespace compwire::cli

#endif  // COMPWIRE_TOOLS_CLI_H_
