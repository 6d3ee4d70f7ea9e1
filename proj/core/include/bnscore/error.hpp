// Copyright 2026 The bnscore Authors
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

namespace bnscore {

// Coarse failure categories, surfaced verbatim in CLI error reports.
enum class ErrorKind {
  usage,       // caller violated a precondition (mismatched inputs, bad flags)
  structure,   // corrupted structural input (e.g. a cyclic "DAG")
  domain,      // parameter outside its mathematical domain
  capacity,    // desk-scale limit exceeded
  positivity,  // a probability or pivot that must be strictly positive is not
  numeric,     // numerical failure (non-PD matrix, degenerate data)
  schema,      // malformed file content
  io,          // file system failure
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) throw Error(kind, message);
}

}  // namespace bnscore
