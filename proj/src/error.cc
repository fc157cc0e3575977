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

#include "seld/error.h"

namespace seld {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kRange: return "range";
    case ErrorCode::kInvariant: return "invariant";
    case ErrorCode::kUndefinedDistance: return "undefined-distance";
    case ErrorCode::kInsufficientInput: return "insufficient-input";
    case ErrorCode::kConfiguration: return "configuration";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kShape: return "shape";
    case ErrorCode::kOverflow: return "overflow";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kUndefinedMetric: return "undefined-metric";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace seld
