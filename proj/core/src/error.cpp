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

#include "bnscore/error.hpp"

namespace bnscore {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::usage:
      return "usage";
    case ErrorKind::structure:
      return "structure";
    case ErrorKind::domain:
      return "domain";
    case ErrorKind::capacity:
      return "capacity";
    case ErrorKind::positivity:
      return "positivity";
    case ErrorKind::numeric:
      return "numeric";
    case ErrorKind::schema:
      return "schema";
    case ErrorKind::io:
      return "io";
  }
  return "unknown";
}

}  // namespace bnscore
