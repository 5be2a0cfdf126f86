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

#pragma once

#include <stdexcept>
#include <string>

namespace wvss {

enum class ErrorCode {
  kVectorTooWide,
  kWeightOutOfRange,
  kNotCoprime,
  kTooLarge,
  kDimensionMismatch,
  kPrimeTooLarge,
  kBadPrimes,
  kUnsatisfiedWitness,
  kMalformedProof,
  kBadInput,
  kInfeasible,
  kUnauthorized,
  kTooLargeToEnumerate,
  kUnsupported,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

#define WVSS_ENFORCE(cond, code, msg)          \
  do {                                         \
    if (!(cond)) throw ::wvss::Error(code, msg); \
  } while (0)

}  // namespace wvss
