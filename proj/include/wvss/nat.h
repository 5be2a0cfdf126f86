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

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "wvss/rng.h"

namespace wvss {

// Arbitrary-precision natural number. Callers keep values non-negative;
// API boundaries that take a Nat check this.
using Nat = mpz_class;

Nat NatFromU64(uint64_t x);
uint64_t NatToU64(const Nat& x);
unsigned NatBitLength(const Nat& x);
// log2(x) for x > 0, accurate to double precision.
double NatLog2(const Nat& x);
Nat NatPow2(unsigned bits);
Nat NatPow(const Nat& base, unsigned long exp);

// Uniform in [0, bound).
Nat NatRandomBelow(Rng& rng, const Nat& bound);

// Big-endian, minimal length. Zero encodes as the empty string.
std::vector<uint8_t> NatToBytesBE(const Nat& x);
Nat NatFromBytesBE(const uint8_t* data, size_t len);

std::string NatToDec(const Nat& x);
// Throws Error(kBadInput) on anything but a plain decimal string.
Nat NatFromDec(const std::string& s);

}  // namespace wvss
