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

#ifndef SYNTHVOL_DIGEST_HPP_
#define SYNTHVOL_DIGEST_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

namespace synthvol {

/// "sha256:<64 hex chars>" of the given bytes.
std::string content_digest(std::span<const std::uint8_t> bytes);

/// content_digest of a file's bytes. Throws IoError if it cannot be read.
std::string file_digest(const std::filesystem::path& path);

}  // namespace synthvol

#endif  // SYNTHVOL_DIGEST_HPP_
