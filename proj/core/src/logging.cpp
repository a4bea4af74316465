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

#include "synthvol/logging.hpp"

#include <cstdlib>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace synthvol {

void init_logging() {
  auto logger = spdlog::get("synthvol");
  if (!logger) logger = spdlog::stderr_color_mt("synthvol");
  logger->set_pattern("[%Y-%m-%d %H:%M:%S.%e] [%^%l%$] %v");
  spdlog::level::level_enum level = spdlog::level::info;
  if (const char* env = std::getenv("SYNTHVOL_LOG")) {
    const std::string value = env;
    if (value == "error") {
      level = spdlog::level::err;
    } else if (value == "debug") {
      level = spdlog::level::debug;
    } else if (value != "info") {
      logger->warn("ignoring SYNTHVOL_LOG={} (expected error, info or debug)", value);
    }
  }
  logger->set_level(level);
  spdlog::set_default_logger(logger);
}

}  // namespace synthvol
