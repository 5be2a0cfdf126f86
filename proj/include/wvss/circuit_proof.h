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

#include "wvss/group.h"
#include "wvss/pedersen.h"
#include "wvss/r1cs.h"
#include "wvss/rng.h"
#include "wvss/transcript.h"

namespace wvss {

using ScalarCircuit = CircuitSpec<Scalar>;
using ScalarWitness = Witness<Scalar>;

// Hiding commitments to the wires. AI holds the left and right wires, AO the
// outputs. Gate i uses g_vec[2i] for left and output wires and g_vec[2i+1]
// for the right wire.
struct WireCommitments {
  Point AI, AO;
};

struct WireOpening {
  ScalarWitness w;
  Scalar r_i, r_o;
};

// Smallest power of two holding m_mul gates (at least 1).
size_t PaddedGates(size_t m_mul);

WireCommitments CommitWires(const PedersenParams& pp, const WireOpening& open);

WireOpening RandomizeWires(ScalarWitness w, Rng& rng);

struct CircuitProof {
  Point S;
  Point T1, T3, T4, T5, T6;
  std::vector<Point> L, R;
  Scalar tau_x, mu, t_hat, a, b;

  static constexpr size_t kScalars = 5;
  size_t group_elements() const { return 6 + L.size() + R.size(); }
  size_t rounds() const { return L.size(); }

  // u32 group count, u32 scalar count (little endian), then the encodings.
  std::vector<uint8_t> Serialize() const;
  // Throws kMalformedProof on any framing or encoding error.
  static CircuitProof Deserialize(std::span<const uint8_t> in);
  size_t SerializedSize() const;
};

// Proves that the committed wires and the openings of V satisfy ckt. Throws
// kUnsatisfiedWitness if they do not, kDimensionMismatch on shape errors and
// kVectorTooWide if pp has fewer than 2 * PaddedGates(m_mul) generators.
CircuitProof ProveCircuit(const PedersenParams& pp, const ScalarCircuit& ckt,
                          std::span<const Point> V, std::span<const Scalar> v,
                          std::span<const Scalar> gamma, const WireCommitments& wires,
                          const WireOpening& open, Transcript& tr, Rng& rng);

// Same as ProveCircuit without the satisfaction check. Only for tests that
// exercise soundness against malicious provers.
CircuitProof ProveCircuitUnchecked(const PedersenParams& pp, const ScalarCircuit& ckt,
                                   std::span<const Point> V, std::span<const Scalar> v,
                                   std::span<const Scalar> gamma,
                                   const WireCommitments& wires, const WireOpening& open,
                                   Transcript& tr, Rng& rng);

bool VerifyCircuit(const PedersenParams& pp, const ScalarCircuit& ckt,
                   std::span<const Point> V, const WireCommitments& wires,
                   const CircuitProof& proof, Transcript& tr);

}  // namespace wvss
