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

#include "wvss/report.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

#include "wvss/errors.h"
#include "wvss/pom_circuit.h"

namespace wvss {
namespace {

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back().push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back().push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back().push_back(c);
    }
  }
  WVSS_ENFORCE(!quoted, ErrorCode::kBadInput, "unterminated quote");
  return out;
}

std::string Trim(std::string s) {
  const char* ws = " \t\r";
  s.erase(0, s.find_first_not_of(ws));
  s.erase(s.find_last_not_of(ws) + 1);
  return s;
}

double Ms(std::chrono::steady_clock::duration d) {
  return std::chrono::duration<double, std::milli>(d).count();
}

std::string Hex(const Scalar& x) {
  std::ostringstream os;
  for (uint8_t b : x.ToBytes()) os << std::hex << std::setw(2) << std::setfill('0') << int{b};
  return os.str();
}

}  // namespace

std::vector<StakeRecord> ParseStakeCsv(std::string_view text) {
  std::vector<StakeRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    auto f = SplitCsvLine(line);
    for (auto& s : f) s = Trim(s);
    if (!header) {
      WVSS_ENFORCE(f.size() == 2 && f[0] == "entity" && f[1] == "eth_staked",
                   ErrorCode::kBadInput, "expected header entity,eth_staked");
      header = true;
      continue;
    }
    const std::string where = "line " + std::to_string(lineno);
    WVSS_ENFORCE(f.size() == 2 && !f[0].empty(), ErrorCode::kBadInput,
                 where + ": expected 2 fields");
    std::string digits;
    for (char c : f[1]) {
      if (c == ',' || c == '_') continue;
      WVSS_ENFORCE(c >= '0' && c <= '9', ErrorCode::kBadInput,
                   where + ": stake is not a non-negative integer");
      digits.push_back(c);
    }
    WVSS_ENFORCE(!digits.empty() && digits.size() <= 18, ErrorCode::kBadInput,
                 where + ": bad stake");
    out.push_back({f[0], std::stoull(digits)});
  }
  WVSS_ENFORCE(header, ErrorCode::kBadInput, "empty stake file");
  return out;
}

const std::vector<std::string>& DefaultStakeExclusions() {
  static const std::vector<std::string> v = {"Other Solo Stakers", "Unidentified"};
  return v;
}

uint64_t StakeWeights::total_weight() const {
  uint64_t t = 0;
  for (uint32_t w : weights) t += w;
  return t;
}

StakeWeights WeightsFromStakes(std::span<const StakeRecord> records, double min_stake_pct,
                               uint32_t base_weight,
                               std::span<const std::string> exclude) {
  WVSS_ENFORCE(min_stake_pct > 0 && base_weight > 0, ErrorCode::kBadInput,
               "min stake and base weight must be positive");
  StakeWeights sw;
  for (const auto& r : records) sw.total_stake += r.eth_staked;
  WVSS_ENFORCE(sw.total_stake > 0, ErrorCode::kInfeasible, "total stake is zero");
  const std::set<std::string> skip(exclude.begin(), exclude.end());
  for (const auto& r : records) {
    if (skip.count(r.entity)) {
      sw.excluded.push_back(r.entity);
      continue;
    }
    const double pct = 100.0 * static_cast<double>(r.eth_staked) /
                       static_cast<double>(sw.total_stake);
    if (pct < min_stake_pct) {
      sw.below_min.push_back(r.entity);
      continue;
    }
    const double w = std::round(pct / min_stake_pct * base_weight);
    WVSS_ENFORCE(w <= 4e9, ErrorCode::kWeightOutOfRange, r.entity + ": weight overflow");
    sw.entities.push_back(r.entity);
    sw.weights.push_back(static_cast<uint32_t>(w));
  }
  WVSS_ENFORCE(!sw.weights.empty(), ErrorCode::kInfeasible,
               "no entity holds the minimum stake of " + std::to_string(min_stake_pct) +
                   "%");
  return sw;
}

BandwidthRow CurrentRow(uint64_t signatures, const ElementWidths& widths) {
  BandwidthRow r;
  r.design = "Current";
  r.broadcast_bytes = signatures * widths.signature;
  return r;
}

BandwidthRow FeldmanRow(uint64_t parties, const ElementWidths& widths) {
  BandwidthRow r;
  r.design = "Feldman";
  r.broadcast_group = parties + (2 * parties + 2) / 3;
  r.broadcast_bytes = r.broadcast_group * widths.group;
  r.private_field = parties;
  r.private_bytes = parties * widths.field;
  return r;
}

BandwidthRow WrssRow(uint64_t shares, unsigned rounds, const ElementWidths& widths) {
  BandwidthRow r;
  r.design = "WRSS";
  r.broadcast_group = (shares + 1) + 2 + (6 + 2 * uint64_t{rounds});
  r.broadcast_field = CircuitProof::kScalars;
  r.broadcast_bytes = r.broadcast_group * widths.group + r.broadcast_field * widths.field;
  r.private_field = 2 * shares;
  r.private_bytes = r.private_field * widths.field;
  return r;
}

unsigned ProofRounds(size_t m_mul) {
  return static_cast<unsigned>(std::countr_zero(PaddedGates(m_mul)));
}

EthReport ComputeEthReport(std::span<const StakeRecord> records,
                           const EthReportOptions& opt, Rng& rng) {
  EthReport r;
  r.stakes = WeightsFromStakes(records, opt.min_stake_pct, opt.base_weight, opt.exclude);
  DeriveOptions d;
  d.ratio_T = opt.ratio_T;
  d.lambda_sec = opt.lambda_sec;
  d.virtualize = true;
  r.params = DeriveParams(r.stakes.weights, d, rng);
  r.gates = VssLayout<Scalar>(r.params.primes(), r.params.m).m_mul();
  r.padded_gates = PaddedGates(r.gates);
  r.rounds = ProofRounds(r.gates);
  r.rows = {CurrentRow(opt.current_signatures, opt.widths),
            FeldmanRow(opt.feldman_parties, opt.widths),
            WrssRow(r.params.n(), r.rounds, opt.widths)};
  auto& a = r.assumptions;
  a.push_back("weights: round(stake% / " + std::to_string(opt.min_stake_pct) + "% * " +
              std::to_string(opt.base_weight) + "), stake% over all rows");
  a.push_back("per-share cap " + std::to_string(WeightCap()) +
              " bits; heavier parties split into balanced shares");
  a.push_back("T_rec = ceil(" + std::to_string(opt.ratio_T) +
              " * total bits), gap 2*lambda0+" + std::to_string(kGapSlack));
  a.push_back("group element " + std::to_string(opt.widths.group) + " B, field element " +
              std::to_string(opt.widths.field) + " B, signature " +
              std::to_string(opt.widths.signature) + " B");
  a.push_back("Feldman: N + ceil(2N/3) commitments broadcast, one share per party");
  a.push_back("WRSS broadcast: n+1 share commitments, 2 wire commitments, "
              "6 + 2 log2(G) proof points, 5 scalars; challenge z is recomputed");
  a.push_back("WRSS private: s_i and r_i for every share");
  return r;
}

std::string FormatEthReport(const EthReport& r, bool csv) {
  std::ostringstream os;
  const EthReference ref;
  if (csv) {
    os << "design,broadcast_group,broadcast_field,broadcast_bytes,private_field,"
          "private_bytes\n";
    for (const auto& row : r.rows) {
      os << row.design << ',' << row.broadcast_group << ',' << row.broadcast_field << ','
         << row.broadcast_bytes << ',' << row.private_field << ',' << row.private_bytes
         << '\n';
    }
    return os.str();
  }
  const auto& p = r.params;
  os << "entities: " << r.stakes.entities.size() << " weighted, "
     << r.stakes.below_min.size() << " below minimum, " << r.stakes.excluded.size()
     << " excluded\n";
  os << "total weight: " << r.stakes.total_weight() << " (reference " << ref.total_weight
     << ")\n";
  os << "shares: " << p.n() << " (reference " << ref.shares << "), m: " << p.m
     << " (reference " << ref.m << "), amplification: " << p.amplification << "\n";
  os << "T_rec: " << p.T_rec << ", t_priv: " << p.t_priv << ", gates: " << r.gates
     << ", padded: " << r.padded_gates << ", rounds: " << r.rounds << "\n\n";
  os << std::left << std::setw(9) << "design" << std::right << std::setw(12) << "bc group"
     << std::setw(10) << "bc field" << std::setw(12) << "bc bytes" << std::setw(12)
     << "priv field" << std::setw(12) << "priv bytes" << "\n";
  for (const auto& row : r.rows) {
    os << std::left << std::setw(9) << row.design << std::right << std::setw(12)
       << row.broadcast_group << std::setw(10) << row.broadcast_field << std::setw(12)
       << row.broadcast_bytes << std::setw(12) << row.private_field << std::setw(12)
       << row.private_bytes << "\n";
  }
  const auto& w = r.rows[2];
  os << "\nWRSS delta vs reference: group "
     << static_cast<int64_t>(w.broadcast_group) - static_cast<int64_t>(ref.wrss_group)
     << ", field "
     << static_cast<int64_t>(w.broadcast_field) - static_cast<int64_t>(ref.wrss_field)
     << ", private "
     << static_cast<int64_t>(w.private_field) - static_cast<int64_t>(ref.wrss_private)
     << "\n";
  os << "broadcast improvement over Feldman: " << std::fixed << std::setprecision(1)
     << static_cast<double>(r.rows[1].broadcast_bytes) /
            static_cast<double>(w.broadcast_bytes)
     << "x\n\nassumptions:\n";
  for (const auto& s : r.assumptions) os << "  " << s << "\n";
  return os.str();
}

BenchRow RunBench(uint32_t n, uint32_t m, unsigned bits, Rng& rng) {
  std::vector<unsigned> b(n, bits);
  WvssParams params = FixedParams(b, m, 128, rng);
  BenchRow row;
  row.n = n;
  row.m = m;
  row.gate_count = DealPaddedGates(params);
  DealGenerators(2 * row.gate_count);
  auto t0 = std::chrono::steady_clock::now();
  Deal deal = Share(params, Scalar::Random(rng), rng);
  auto t1 = std::chrono::steady_clock::now();
  row.verified = VerifyDealProof(params, deal.pub);
  auto t2 = std::chrono::steady_clock::now();
  row.proof_bytes = 2 * kPointBytes + deal.pub.proof.SerializedSize();
  row.prove_ms = Ms(t1 - t0);
  row.verify_ms = Ms(t2 - t1);
  return row;
}

std::string BenchCsvHeader() { return "n,m,gate_count,proof_bytes,prove_ms,verify_ms"; }

std::string BenchCsvLine(const BenchRow& row) {
  std::ostringstream os;
  os << row.n << ',' << row.m << ',' << row.gate_count << ',' << row.proof_bytes << ','
     << std::fixed << std::setprecision(1) << row.prove_ms << ',' << row.verify_ms;
  return os.str();
}

LogFit FitLog2(std::span<const double> x, std::span<const double> y) {
  WVSS_ENFORCE(x.size() == y.size() && x.size() >= 2, ErrorCode::kDimensionMismatch,
               "fit needs at least two points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log2(x[i]);
    sx += lx;
    sy += y[i];
    sxx += lx * lx;
    sxy += lx * y[i];
  }
  LogFit f;
  const double den = n * sxx - sx * sx;
  f.b = den == 0 ? 0 : (n * sxy - sx * sy) / den;
  f.a = (sy - f.b * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean = sy / n;
  for (size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.a + f.b * std::log2(x[i]));
    ss_res += e * e;
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  f.r2 = ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return f;
}

bool SimOutcome::Consistent() const {
  std::optional<Scalar> seen;
  for (const auto& s : subsets) {
    if (!s.secret) continue;
    if (seen && *seen != *s.secret) return false;
    seen = s.secret;
  }
  return true;
}

SimOutcome Simulate(const WvssParams& params, DealCheat cheat, uint32_t target,
                    size_t subsets, Rng& rng) {
  SimOutcome out;
  out.secret = Scalar::Random(rng);
  Deal deal = ShareAdversarial(params, out.secret, cheat, target, rng);
  const auto wire = deal.pub.Serialize();
  const size_t parties = params.weights.size();

  std::vector<std::string> inbox(parties);
  for (uint32_t party = 0; party < parties; ++party) {
    std::vector<ShareOpening> mine;
    for (uint32_t id : params.ShareIdsOf(party)) mine.push_back(deal.openings[id - 1]);
    inbox[party] = OpeningsToJson(mine);
  }

  std::optional<DealPublic> pub;
  try {
    pub = DealPublic::Deserialize(wire);
  } catch (const Error&) {
    out.malformed = true;
  }
  for (uint32_t party = 0; party < parties; ++party) {
    auto mine = OpeningsFromJson(inbox[party]);
    out.verdicts.push_back(pub ? VerifyDeal(params, *pub, mine)
                               : DealVerdict::kProofInvalid);
  }
  if (!pub) return out;

  for (size_t k = 0; k < subsets; ++k) {
    std::vector<uint32_t> order(parties);
    for (uint32_t i = 0; i < parties; ++i) order[i] = i;
    for (size_t i = parties; i > 1; --i) std::swap(order[i - 1], order[rng.Uniform(i)]);
    SimOutcome::Subset s;
    std::vector<ShareOpening> pool;
    uint64_t bits = 0;
    for (uint32_t party : order) {
      if (bits >= params.T_rec) break;
      s.parties.push_back(party);
      auto mine = OpeningsFromJson(inbox[party]);
      pool.insert(pool.end(), mine.begin(), mine.end());
      bits += params.BitsOf(params.ShareIdsOf(party));
    }
    std::sort(s.parties.begin(), s.parties.end());
    s.secret = Reconstruct(params, *pub, pool);
    out.subsets.push_back(std::move(s));
  }
  return out;
}

std::string FormatSimulation(const WvssParams& params, const SimOutcome& out, bool csv) {
  std::ostringstream os;
  auto parties_of = [](const std::vector<uint32_t>& v) {
    std::string s;
    for (uint32_t p : v) s += (s.empty() ? "" : " ") + std::to_string(p + 1);
    return s;
  };
  auto result = [&](const std::optional<Scalar>& x) {
    if (!x) return std::string("reject");
    return *x == out.secret ? "secret " + Hex(*x) : "wrong " + Hex(*x);
  };
  if (csv) {
    os << "kind,who,result\n";
    for (size_t i = 0; i < out.verdicts.size(); ++i) {
      os << "party," << i + 1 << ',' << DealVerdictName(out.verdicts[i]) << '\n';
    }
    for (const auto& s : out.subsets) {
      os << "subset," << parties_of(s.parties) << ',' << result(s.secret) << '\n';
    }
    return os.str();
  }
  os << "shares: " << params.n() << ", parties: " << params.weights.size()
     << ", T_rec: " << params.T_rec << ", t_priv: " << params.t_priv << "\n";
  if (out.malformed) os << "deal file malformed\n";
  for (size_t i = 0; i < out.verdicts.size(); ++i) {
    os << "party " << i + 1 << " (weight " << params.weights[i]
       << "): " << DealVerdictName(out.verdicts[i]) << "\n";
  }
  for (const auto& s : out.subsets) {
    os << "subset {" << parties_of(s.parties) << "}: " << result(s.secret) << "\n";
  }
  os << "subsets consistent: " << (out.Consistent() ? "yes" : "no") << "\n";
  return os.str();
}

}  // namespace wvss
