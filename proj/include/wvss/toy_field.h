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

#include "wvss/nat.h"

namespace wvss {

// Prime field Z_P with a small compile-time modulus. Plugs into the circuit
// builders and the satisfaction oracle so soundness can be checked by
// exhaustive search.
template <uint32_t P>
class ToyField {
  static_assert(P >= 2 && P < (1u << 31));

 public:
  constexpr ToyField() : v_(0) {}

  static constexpr ToyField Zero() { return ToyField(); }
  static constexpr ToyField One() { return Raw(1 % P); }
  static constexpr ToyField FromU64(uint64_t x) { return Raw(static_cast<uint32_t>(x % P)); }
  static ToyField FromNat(const Nat& x) {
    Nat r = x % P;
    if (r < 0) r += P;
    return Raw(static_cast<uint32_t>(r.get_ui()));
  }
  static const Nat& Modulus() {
    static const Nat kP(static_cast<unsigned long>(P));
    return kP;
  }

  constexpr uint32_t value() const { return v_; }
  Nat ToNat() const { return Nat(static_cast<unsigned long>(v_)); }
  constexpr bool IsZero() const { return v_ == 0; }

  constexpr ToyField Inverse() const {
    if (v_ == 0) return Zero();
    uint64_t result = 1, base = v_, e = P - 2;
    while (e != 0) {
      if (e & 1) result = result * base % P;
      base = base * base % P;
      e >>= 1;
    }
    return Raw(static_cast<uint32_t>(result));
  }

  friend constexpr ToyField operator+(ToyField a, ToyField b) {
    return Raw(static_cast<uint32_t>((uint64_t{a.v_} + b.v_) % P));
  }
  friend constexpr ToyField operator-(ToyField a, ToyField b) {
    return Raw(static_cast<uint32_t>((uint64_t{a.v_} + P - b.v_) % P));
  }
  friend constexpr ToyField operator*(ToyField a, ToyField b) {
    return Raw(static_cast<uint32_t>(uint64_t{a.v_} * b.v_ % P));
  }
  constexpr ToyField operator-() const { return Zero() - *this; }
  ToyField& operator+=(ToyField o) { return *this = *this + o; }
  ToyField& operator-=(ToyField o) { return *this = *this - o; }
  ToyField& operator*=(ToyField o) { return *this = *this * o; }
  friend constexpr bool operator==(ToyField a, ToyField b) { return a.v_ == b.v_; }

 private:
  static constexpr ToyField Raw(uint32_t v) {
    ToyField f;
    f.v_ = v;
    return f;
  }
  uint32_t v_;
};

}  // namespace wvss
