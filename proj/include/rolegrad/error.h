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

#ifndef ROLEGRAD_ERROR_H_
#define ROLEGRAD_ERROR_H_

#include <stdexcept>
#include <string>

namespace rolegrad {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (corpus, frames, checkpoint).
class DataError : public Error {
 public:
  using Error::Error;
};

// Invalid run configuration or incompatible artifacts.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A loss or gradient became NaN or infinite.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace rolegrad

#endif  // ROLEGRAD_ERROR_H_
