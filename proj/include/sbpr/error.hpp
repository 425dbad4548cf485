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

#ifndef SBPR_ERROR_HPP_
#define SBPR_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace sbpr
{

enum class ErrorCode {
  io,
  parse,
  invalid,
  taxonomy,
  geometry,
  numeric,
  degenerate_box,
  provider_mismatch,
  metric_undefined,
};

const char * error_code_name(ErrorCode code);

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string & message);
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string & message);

}  // namespace sbpr

#endif  // SBPR_ERROR_HPP_
