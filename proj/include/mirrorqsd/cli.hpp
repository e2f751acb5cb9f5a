// Copyright 2026 The mirrorqsd Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mirrorqsd {

/// Environment variable naming the directory for relative output paths.
inline constexpr const char *kOutputDirEnv = "MIRRORQSD_OUTPUT_DIR";

/**
 * Entry point for the `mirrorqsd` tool. `args` excludes the program name.
 * Subcommands: bounds, scan, walk, experiment, locus, figure.
 * Returns 0 on success, 1 on runtime errors, 2 on usage errors.
 */
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace mirrorqsd
