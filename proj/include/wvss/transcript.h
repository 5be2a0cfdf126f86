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

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>

#include "wvss/group.h"
#include "wvss/nat.h"

namespace wvss {

// Fiat-Shamir transcript over SHAKE256. Every absorb is framed as
// (tag, label length, label, data length, data), so distinct message
// sequences never collide. Challenges are squeezed from a copy of the state
// and fed back before the next absorb.
class Transcript {
 public:
  explicit Transcript(std::string_view domain);
  ~Transcript();
  Transcript(const Transcript& other);
  Transcript& operator=(const Transcript& other);

  void Absorb(std::string_view label, std::span<const uint8_t> data);
  void AbsorbU64(std::string_view label, uint64_t x);
  void AbsorbScalar(std::string_view label, const Scalar& x);
  void AbsorbPoint(std::string_view label, const Point& p);
  void AbsorbNat(std::string_view label, const Nat& x);

  void ChallengeBytes(std::string_view label, std::span<uint8_t> out);
  Scalar ChallengeScalar(std::string_view label);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Deterministic map (label, index) -> group element with unknown discrete
// log relations between distinct inputs.
Point HashToGroup(std::string_view label, uint64_t index);

}  // namespace wvss
