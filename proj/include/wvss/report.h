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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wvss/wvss.h"

namespace wvss {

struct StakeRecord {
  std::string entity;
  uint64_t eth_staked = 0;
};

// CSV with header `entity,eth_staked`. Quoted fields and thousands
// separators inside quotes are accepted. Throws kBadInput.
std::vector<StakeRecord> ParseStakeCsv(std::string_view text);

// Rows that are aggregates rather than operators.
const std::vector<std::string>& DefaultStakeExclusions();

struct StakeWeights {
  std::vector<std::string> entities;
  std::vector<uint32_t> weights;
  std::vector<std::string> below_min;
  std::vector<std::string> excluded;
  uint64_t total_stake = 0;

  uint64_t total_weight() const;
};

// weight = round(stake% / min_stake% * base_weight), stake% taken over every
// row. Throws kInfeasible when no entity reaches the minimum.
StakeWeights WeightsFromStakes(std::span<const StakeRecord> records, double min_stake_pct,
                               uint32_t base_weight,
                               std::span<const std::string> exclude);

struct BandwidthRow {
  std::string design;
  uint64_t broadcast_group = 0;
  uint64_t broadcast_field = 0;
  uint64_t broadcast_bytes = 0;
  uint64_t private_field = 0;
  uint64_t private_bytes = 0;
};

struct ElementWidths {
  unsigned group = 32;
  unsigned field = 32;
  unsigned signature = 48;
};

BandwidthRow CurrentRow(uint64_t signatures, const ElementWidths& widths);
// N + ceil(2N/3) broadcast group elements and N private field elements.
BandwidthRow FeldmanRow(uint64_t parties, const ElementWidths& widths);
// One deal: n + 1 share commitments, the two wire commitments and the
// circuit proof broadcast; s_i and r_i sent privately per share.
BandwidthRow WrssRow(uint64_t shares, unsigned rounds, const ElementWidths& widths);

// Rounds of the inner-product argument for a circuit of m_mul gates.
unsigned ProofRounds(size_t m_mul);

struct EthReportOptions {
  double min_stake_pct = 0.02;
  uint32_t base_weight = 10;
  double ratio_T = 2.0 / 3.0;
  unsigned lambda_sec = 128;
  uint64_t feldman_parties = 4110;
  uint64_t current_signatures = 28000;
  ElementWidths widths;
  std::vector<std::string> exclude = DefaultStakeExclusions();
};

struct EthReport {
  StakeWeights stakes;
  WvssParams params;
  size_t gates = 0;
  size_t padded_gates = 0;
  unsigned rounds = 0;
  std::vector<BandwidthRow> rows;  // Current, Feldman, WRSS
  std::vector<std::string> assumptions;
};

EthReport ComputeEthReport(std::span<const StakeRecord> records,
                           const EthReportOptions& opt, Rng& rng);

// Reference values the report is compared against.
struct EthReference {
  uint64_t total_weight = 41125;
  uint64_t shares = 365;
  uint32_t m = 108;
  uint64_t wrss_group = 389;
  uint64_t wrss_field = 6;
  uint64_t wrss_private = 892;
};

std::string FormatEthReport(const EthReport& r, bool csv);

struct BenchRow {
  uint32_t n = 0, m = 0;
  size_t gate_count = 0;
  size_t proof_bytes = 0;  // wire commitments plus circuit proof
  double prove_ms = 0, verify_ms = 0;
  bool verified = false;
};

// Deal and verify once with n shares of `bits` bits and m digits.
BenchRow RunBench(uint32_t n, uint32_t m, unsigned bits, Rng& rng);

std::string BenchCsvHeader();
std::string BenchCsvLine(const BenchRow& row);

struct LogFit {
  double a = 0, b = 0, r2 = 0;
};

// Least squares y = a + b log2(x).
LogFit FitLog2(std::span<const double> x, std::span<const double> y);

struct SimOutcome {
  std::vector<DealVerdict> verdicts;  // per party
  struct Subset {
    std::vector<uint32_t> parties;
    std::optional<Scalar> secret;
  };
  std::vector<Subset> subsets;
  Scalar secret;
  bool malformed = false;

  // Every reconstruction that returned a value returned the same one.
  bool Consistent() const;
};

// Dealer and parties in one process exchanging serialized messages. Each
// party verifies its own openings; then `subsets` random authorized sets of
// parties reconstruct.
SimOutcome Simulate(const WvssParams& params, DealCheat cheat, uint32_t target,
                    size_t subsets, Rng& rng);

std::string FormatSimulation(const WvssParams& params, const SimOutcome& out, bool csv);

}  // namespace wvss
