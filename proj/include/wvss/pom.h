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
#include <span>
#include <vector>

#include "wvss/circuit_proof.h"
#include "wvss/nat.h"

namespace wvss {

// Non-interactive proof that the committed v equals (sum_j a_j p0^j) mod p
// over the integers, for committed digits a_0..a_m. m = 0 is the base case
// v = s mod p.
struct PomProof {
  WireCommitments wires;
  CircuitProof ckt;

  size_t group_elements() const { return 2 + ckt.group_elements(); }
  size_t field_elements() const { return CircuitProof::kScalars; }

  // AI || AO || CircuitProof.
  std::vector<uint8_t> Serialize() const;
  static PomProof Deserialize(std::span<const uint8_t> in);
};

struct PomOpening {
  Nat v;
  Scalar r_v;
  std::vector<Nat> digits;
  std::vector<Scalar> r_digits;
};

struct PomStatement {
  Nat p;
  Point V;
  std::vector<Point> digits;
};

PomStatement PomCommit(const PedersenParams& pp, const Nat& p, const PomOpening& open);

// Throws kBadInput for a false statement or digits outside the field.
PomProof ProvePom(const PedersenParams& pp, const PomStatement& st,
                  const PomOpening& open, Rng& rng);

// Skips the honesty checks and fills a false statement the way a wraparound
// forger would. For adversarial tests and simulations only.
PomProof ForgePom(const PedersenParams& pp, const PomStatement& st,
                  const PomOpening& open, Rng& rng);

bool VerifyPom(const PedersenParams& pp, const PomStatement& st, const PomProof& proof);

// Padded gate count of the circuit for modulus p and m + 1 digits.
size_t PomPaddedGates(const Nat& p, uint32_t m);

}  // namespace wvss
