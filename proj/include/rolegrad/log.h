// Copyright 2026 The Rolegrad Authors.
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

#ifndef ROLEGRAD_LOG_H_
#define ROLEGRAD_LOG_H_

#include <spdlog/logger.h>

namespace rolegrad {

// Process-wide logger writing to stderr. The level is read once from the
// ROLEGRAD_LOG environment variable (trace, debug, info, warn, error, off);
// the default is warn.
spdlog::logger& logger();

}  // namespace rolegrad

#endif  // ROLEGRAD_LOG_H_
