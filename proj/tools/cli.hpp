// Copyright 2026 The synthvol Authors
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

#ifndef SYNTHVOL_TOOLS_CLI_HPP_
#define SYNTHVOL_TOOLS_CLI_HPP_

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace synthvol::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailures = 1;
inline constexpr int kExitUsage = 2;

/// Runs the synthvol command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Resolves a preview slice selection against a volume depth. Accepts "all"
/// or a comma-separated list of 1-based indices and the words first, mid and
/// last (mid = (depth + 1) / 2). Duplicates are dropped, order is kept.
/// Throws ParameterError on anything else or an index outside [1, depth].
std::vector<int> parse_slice_spec(const std::string& spec, int depth);

/// Locates `<prefix>_image` and `<prefix>_label` volumes, preferring NIfTI.
std::pair<std::filesystem::path, std::filesystem::path> find_sample_files(
    const std::filesystem::path& prefix);

}  // namespace synthvol::cli

#endif  // SYNTHVOL_TOOLS_CLI_HPP_
