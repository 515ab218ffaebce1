// Copyright 2026 The corpusforge Authors.
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


#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "forge_cli/config.hpp"

namespace forge::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitProcessing = 2,
  kExitUsage = 64,
};

// args excludes the program name, e.g. {"sweep", "--rates", "0,0.5", ...}.
// Data goes to out or to files, diagnostics to err.
int run_subcommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                   const EnvLookup& env = process_env());

}  // namespace forge::cli
