// Copyright 2026 The fcgen Authors
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

#include <stdexcept>
#include <string>

namespace fcgen {

// Coarse classification used to map failures onto C status codes and CLI
// exit codes.
enum class ErrorKind {
  kValidation,  // malformed input data or configuration
  kIo,          // filesystem failures
  kEndpoint,    // generation service failures
  kInternal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorKind::kValidation, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

}  // namespace fcgen
