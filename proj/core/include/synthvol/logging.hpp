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

#ifndef SYNTHVOL_LOGGING_HPP_
#define SYNTHVOL_LOGGING_HPP_

namespace synthvol {

/// Configures the process-wide logger on stderr. The level comes from the
/// SYNTHVOL_LOG environment variable (error, info, debug; default info).
void init_logging();

}  // namespace synthvol

#endif  // SYNTHVOL_LOGGING_HPP_
