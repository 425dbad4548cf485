// Copyright 2026 The sbpr Authors
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

#include "sbpr/error.hpp"

namespace sbpr
{

const char * error_code_name(ErrorCode code)
{
  switch (code) {
    case ErrorCode::io: return "io";
    case ErrorCode::parse: return "parse";
    case ErrorCode::invalid: return "invalid";
    case ErrorCode::taxonomy: return "taxonomy";
    case ErrorCode::geometry: return "geometry";
    case ErrorCode::numeric: return "numeric";
    case ErrorCode::degenerate_box: return "degenerate_box";
    case ErrorCode::provider_mismatch: return "provider_mismatch";
    case ErrorCode::metric_undefined: return "metric_undefined";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string & message)
: std::runtime_error(message), code_(code)
{
}

void raise(ErrorCode code, const std::string & message)
{
  throw Error(code, message);
}

}  // namespace sbpr
