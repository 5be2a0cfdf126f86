// Copyright 2023 Ant Group Co., Ltd.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wvss/errors.h"

namespace wvss {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kVectorTooWide: return "VectorTooWide";
    case ErrorCode::kWeightOutOfRange: return "WeightOutOfRange";
    case ErrorCode::kNotCoprime: return "NotCoprime";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kPrimeTooLarge: return "PrimeTooLarge";
    case ErrorCode::kBadPrimes: return "BadPrimes";
    case ErrorCode::kUnsatisfiedWitness: return "UnsatisfiedWitness";
    case ErrorCode::kMalformedProof: return "MalformedProof";
    case ErrorCode::kBadInput: return "BadInput";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kUnauthorized: return "Unauthorized";
    case ErrorCode::kTooLargeToEnumerate: return "TooLargeToEnumerate";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace wvss
