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

#include <span>
#include <vector>

#include "wvss/group.h"
#include "wvss/nat.h"
#include "wvss/rng.h"

namespace wvss {

// Largest sharing-prime bit length for a group of order ~2^lambda0 such that
// p^2 + p < p0 always holds.
inline constexpr unsigned MaxPrimeBits(unsigned lambda0) {
  return (lambda0 - 1) / 2;
}

struct SharingPrime {
  Nat p;
  unsigned bit_length = 0;  // 2^(bit_length-1) < p < 2^bit_length
};

// Random prime with exactly `bits` bits, drawn from the top sixteenth of the
// range when that range is wide enough. Miller-Rabin with 50 rounds.
// Throws kWeightOutOfRange unless 2 <= bits <= max_bits.
SharingPrime GenPrime(unsigned bits, Rng& rng, unsigned max_bits);

// Distinct primes for the given bit lengths.
std::vector<SharingPrime> GenPrimes(std::span<const unsigned> bits, Rng& rng,
                                    unsigned max_bits);

// The unique s in [0, prod p_i) with s = residues[i] mod moduli[i].
// Throws kNotCoprime or kDimensionMismatch.
Nat CrtSolve(std::span<const Nat> residues, std::span<const Nat> moduli);

// Digits a_0..a_m in base p0 with s = sum a_j p0^j. Throws kTooLarge if
// s >= p0^(m+1).
std::vector<Nat> DecomposeBase(const Nat& s, const Nat& p0, unsigned m);
Nat ComposeBase(std::span<const Nat> digits, const Nat& p0);

Nat ModSmall(const Nat& s, const Nat& p);

}  // namespace wvss
