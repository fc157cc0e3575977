// Copyright 2026 The seldkit Authors. All Rights Reserved.
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

#ifndef SELD_ERROR_H_
#define SELD_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace seld {

enum class ErrorCode {
  kRange,
  kInvariant,
  kUndefinedDistance,
  kInsufficientInput,
  kConfiguration,
  kFormat,
  kShape,
  kOverflow,
  kParse,
  kValidation,
  kUndefinedMetric,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception. `module` names
// the component that raised it so the CLI can print useful context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string module, const std::string& message)
      : std::runtime_error(module + ": " + message),
        code_(code),
        module_(std::move(module)) {}

  ErrorCode code() const { return code_; }
  const std::string& module() const { return module_; }

 private:
  ErrorCode code_;
  std::string module_;
};

}  // namespace seld

#endif  // SELD_ERROR_H_
