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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wvss/circuit_proof.h"
#include "wvss/crt.h"
#include "wvss/nat.h"

namespace wvss {

inline constexpr const char* kGroupName = "ristretto255";
inline constexpr const char* kGeneratorLabel = "wvss/v1";
// Slack bits on top of the 2 * lambda0 ramp gap.
inline constexpr unsigned kGapSlack = 64;

// One CRT share: a prime of `bits` bits held by `party`. Share indices are
// 1-based; index 0 is the secret's own commitment.
struct ShareSlot {
  uint32_t party = 0;
  unsigned bits = 0;
  Nat p;
};

struct WvssParams {
  std::string group = kGroupName;
  unsigned lambda0 = 0;
  unsigned lambda_sec = 0;
  double ratio_T = 1.0;
  std::vector<uint32_t> weights;  // input weight per party
  uint32_t amplification = 1;
  std::vector<ShareSlot> shares;  // shares[i - 1] is share i
  uint32_t m = 0;
  uint64_t t_priv = 0;
  uint64_t T_rec = 0;

  size_t n() const { return shares.size(); }
  uint64_t total_bits() const;
  std::vector<uint32_t> ShareIdsOf(uint32_t party) const;
  // Bits held by a set of share indices.
  uint64_t BitsOf(std::span<const uint32_t> ids) const;
  std::vector<Nat> primes() const;

  std::string ToJson() const;
  // Throws kBadInput on schema errors and kUnsupported on a foreign group.
  static WvssParams FromJson(const std::string& text);
};

struct DeriveOptions {
  unsigned lambda_sec = 128;
  double ratio_T = 1.0;
  // Split weights above the per-prime cap into several shares.
  bool virtualize = false;
  uint32_t max_amplification = 100000;
};

// Per-share bit cap for the group: the largest prime size a proof-of-mod
// accepts.
unsigned WeightCap();

// Picks amplification, shares, primes and thresholds. Throws kInfeasible
// when no amplification satisfies the constraints, and kWeightOutOfRange for
// weights above the cap without virtualize.
WvssParams DeriveParams(std::span<const uint32_t> weights, const DeriveOptions& opt,
                        Rng& rng);

// Parameters from explicit per-share bit lengths and digit count, one party
// per share. Thresholds are the ones implied by the primes; no feasibility
// policy is applied. Used for size sweeps and benchmarks.
WvssParams FixedParams(std::span<const unsigned> bits, uint32_t m, unsigned lambda_sec,
                       Rng& rng);

// Checks the secrecy and reconstruction bounds. Throws kBadPrimes or
// kInfeasible with the violated bound.
void CheckParams(const WvssParams& params);

struct ShareOpening {
  uint32_t index = 0;
  Nat s;
  Scalar r;
};

struct DealPublic {
  std::vector<Point> Y;  // Y_0 .. Y_n
  WireCommitments wires;
  CircuitProof proof;

  size_t group_elements() const { return Y.size() + 2 + proof.group_elements(); }
  // u32 Y count, u32 wire commitment count, Y_0..Y_n, AI, AO, proof.
  std::vector<uint8_t> Serialize() const;
  // Throws kMalformedProof.
  static DealPublic Deserialize(std::span<const uint8_t> in);
};

struct Deal {
  DealPublic pub;
  ShareOpening secret;                // index 0
  std::vector<ShareOpening> openings;  // index 1..n
};

// Generators shared by every deal of this group, grown on demand.
std::shared_ptr<const PedersenParams> DealGenerators(size_t width);

size_t DealPaddedGates(const WvssParams& params);

Deal Share(const WvssParams& params, const Scalar& s0, Rng& rng);

enum class DealCheat {
  kNone,
  kTamperShare,         // wrong opening sent to the target share
  kForgeWraparound,     // target share committed off by a multiple of p0
  kInconsistentDigits,  // target share computed from different digits
};

// Dealer that deviates on share `target` (1-based). Only for tests and
// simulation.
Deal ShareAdversarial(const WvssParams& params, const Scalar& s0, DealCheat cheat,
                      uint32_t target, Rng& rng);

enum class DealVerdict { kAccept, kProofInvalid, kOpeningMismatch };
const char* DealVerdictName(DealVerdict v);

bool VerifyDealProof(const WvssParams& params, const DealPublic& pub);
bool CheckOpening(const WvssParams& params, const DealPublic& pub,
                  const ShareOpening& open);

// Verifies the proof and then every opening given.
DealVerdict VerifyDeal(const WvssParams& params, const DealPublic& pub,
                       std::span<const ShareOpening> mine);

// Throws kUnauthorized when the shares carry fewer than T_rec bits. Returns
// nullopt when the proof or any opening fails. With proof_checked the caller
// has already run VerifyDealProof on pub and only the openings are checked.
std::optional<Scalar> Reconstruct(const WvssParams& params, const DealPublic& pub,
                                  std::span<const ShareOpening> shares,
                                  bool proof_checked = false);

// Exact statistical distance between the joint residues of the shares in
// `unauthorized` for secrets s and s2, with the lift a drawn uniformly from
// [0, lifts) and the shared integer s + a * p0. Throws kTooLargeToEnumerate
// beyond 10^7 lifts times the product of the unauthorized primes.
double SecrecyDistance(const Nat& p0, std::span<const Nat> primes, uint64_t lifts,
                       const Nat& s, const Nat& s2,
                       std::span<const uint32_t> unauthorized);

std::string OpeningsToJson(std::span<const ShareOpening> openings);
std::vector<ShareOpening> OpeningsFromJson(const std::string& text);

}  // namespace wvss
