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

#include "wvss/wvss.h"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>

#include "json.hpp"
#include "wvss/errors.h"
#include "wvss/pom_circuit.h"

namespace wvss {
namespace {

using Json = nlohmann::json;

constexpr uint64_t kEnumerationLimit = 10'000'000;

// max m >= 0 with p0^(m+1) * 2^sum_bits < 2^T * prod(p), or -1.
long MaxDigits(const Nat& p0, uint64_t T, uint64_t sum_bits, std::span<const Nat> primes) {
  Nat lhs = NatPow2(static_cast<unsigned>(T));
  for (const Nat& p : primes) lhs *= p;
  Nat rhs = p0 * NatPow2(static_cast<unsigned>(sum_bits));
  long m = -1;
  while (rhs < lhs) {
    ++m;
    rhs *= p0;
  }
  return m;
}

std::vector<unsigned> SplitWeight(uint64_t w, unsigned cap) {
  const uint64_t k = (w + cap - 1) / cap;
  std::vector<unsigned> parts;
  for (uint64_t i = 0; i < k; ++i) {
    parts.push_back(static_cast<unsigned>(w / k + (i < w % k ? 1 : 0)));
  }
  return parts;
}

Transcript DealTranscript(const WvssParams& params, const DealPublic& pub) {
  Transcript tr("wvss/deal/v1");
  tr.Absorb("deal/group", std::span<const uint8_t>(
                              reinterpret_cast<const uint8_t*>(params.group.data()),
                              params.group.size()));
  tr.AbsorbNat("deal/p0", Scalar::Modulus());
  tr.AbsorbU64("deal/m", params.m);
  tr.AbsorbU64("deal/n", params.n());
  for (const ShareSlot& sl : params.shares) tr.AbsorbNat("deal/p", sl.p);
  for (const Point& y : pub.Y) tr.AbsorbPoint("deal/Y", y);
  tr.AbsorbPoint("deal/AI", pub.wires.AI);
  tr.AbsorbPoint("deal/AO", pub.wires.AO);
  return tr;
}

ResidueCircuit<Scalar> DealLayout(const WvssParams& params) {
  return VssLayout<Scalar>(params.primes(), params.m);
}

Deal MakeDeal(const WvssParams& params, const Scalar& s0, DealCheat cheat,
              uint32_t target, Rng& rng) {
  WVSS_ENFORCE(params.n() > 0, ErrorCode::kBadInput, "no shares");
  WVSS_ENFORCE(cheat == DealCheat::kNone || (target >= 1 && target <= params.n()),
               ErrorCode::kBadInput, "cheat target out of range");
  const Nat& p0 = Scalar::Modulus();
  std::vector<Nat> digits(params.m + 1);
  digits[0] = s0.ToNat();
  for (uint32_t j = 1; j <= params.m; ++j) digits[j] = NatRandomBelow(rng, p0);
  const Nat s = ComposeBase(digits, p0);

  Deal deal;
  deal.secret = {0, digits[0], Scalar::Random(rng)};
  std::vector<Nat> inputs = {digits[0]};
  for (uint32_t i = 1; i <= params.n(); ++i) {
    const Nat& p = params.shares[i - 1].p;
    Nat si = ModSmall(s, p);
    if (i == target && cheat == DealCheat::kForgeWraparound) {
      si = ModSmall(si + 1 + NatRandomBelow(rng, p - 1), p);
    } else if (i == target && cheat == DealCheat::kInconsistentDigits) {
      std::vector<Nat> other = digits;
      for (uint32_t j = 1; j <= params.m; ++j) other[j] = NatRandomBelow(rng, p0);
      if (params.m == 0) other[0] = ModSmall(other[0] + 1, p0);
      si = ModSmall(ComposeBase(other, p0), p);
    }
    inputs.push_back(si);
    deal.openings.push_back({i, si, Scalar::Random(rng)});
  }

  const bool forge =
      cheat == DealCheat::kForgeWraparound || cheat == DealCheat::kInconsistentDigits;
  auto layout = DealLayout(params);
  auto pp = DealGenerators(2 * PaddedGates(layout.m_mul()));
  deal.pub.Y.push_back(pp->Commit(Scalar::FromNat(deal.secret.s), deal.secret.r));
  for (const ShareOpening& o : deal.openings) {
    deal.pub.Y.push_back(pp->Commit(Scalar::FromNat(o.s), o.r));
  }
  WireOpening wo = RandomizeWires(layout.Solve(inputs, digits, forge), rng);
  deal.pub.wires = CommitWires(*pp, wo);

  Transcript tr = DealTranscript(params, deal.pub);
  ScalarCircuit ckt = layout.Build(tr.ChallengeScalar("deal/z"));
  std::vector<Scalar> v, gamma;
  v.push_back(Scalar::FromNat(deal.secret.s));
  gamma.push_back(deal.secret.r);
  for (const ShareOpening& o : deal.openings) {
    v.push_back(Scalar::FromNat(o.s));
    gamma.push_back(o.r);
  }
  deal.pub.proof =
      forge ? ProveCircuitUnchecked(*pp, ckt, deal.pub.Y, v, gamma, deal.pub.wires, wo, tr, rng)
            : ProveCircuit(*pp, ckt, deal.pub.Y, v, gamma, deal.pub.wires, wo, tr, rng);

  if (cheat == DealCheat::kTamperShare) {
    ShareOpening& o = deal.openings[target - 1];
    o.s = ModSmall(o.s + 1, params.shares[target - 1].p);
  }
  return deal;
}

std::string ScalarHex(const Scalar& x) {
  static const char* kDigits = "0123456789abcdef";
  std::string out;
  for (uint8_t b : x.ToBytes()) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 15]);
  }
  return out;
}

Scalar ScalarFromHex(const std::string& hex) {
  WVSS_ENFORCE(hex.size() == 64, ErrorCode::kBadInput, "scalar hex must be 64 chars");
  std::array<uint8_t, 32> b{};
  auto nib = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  for (size_t i = 0; i < 32; ++i) {
    int hi = nib(hex[2 * i]), lo = nib(hex[2 * i + 1]);
    WVSS_ENFORCE(hi >= 0 && lo >= 0, ErrorCode::kBadInput, "bad hex digit");
    b[i] = static_cast<uint8_t>(hi << 4 | lo);
  }
  auto s = Scalar::FromCanonicalBytes(b);
  WVSS_ENFORCE(s.has_value(), ErrorCode::kBadInput, "non-canonical scalar");
  return *s;
}

void AppendU32(std::vector<uint8_t>& out, uint32_t x) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(x >> (8 * i)));
}

uint32_t ReadU32(const uint8_t* p) {
  return uint32_t{p[0]} | uint32_t{p[1]} << 8 | uint32_t{p[2]} << 16 |
         uint32_t{p[3]} << 24;
}

}  // namespace

uint64_t WvssParams::total_bits() const {
  uint64_t t = 0;
  for (const auto& s : shares) t += s.bits;
  return t;
}

std::vector<uint32_t> WvssParams::ShareIdsOf(uint32_t party) const {
  std::vector<uint32_t> ids;
  for (size_t i = 0; i < shares.size(); ++i) {
    if (shares[i].party == party) ids.push_back(static_cast<uint32_t>(i + 1));
  }
  return ids;
}

uint64_t WvssParams::BitsOf(std::span<const uint32_t> ids) const {
  uint64_t t = 0;
  for (uint32_t i : ids) {
    WVSS_ENFORCE(i >= 1 && i <= shares.size(), ErrorCode::kBadInput,
                 "share index " + std::to_string(i) + " out of range");
    t += shares[i - 1].bits;
  }
  return t;
}

std::vector<Nat> WvssParams::primes() const {
  std::vector<Nat> out;
  for (const auto& s : shares) out.push_back(s.p);
  return out;
}

std::string WvssParams::ToJson() const {
  Json j;
  j["group"] = group;
  j["lambda0"] = lambda0;
  j["lambda_sec"] = lambda_sec;
  j["ratio_T"] = ratio_T;
  j["weights"] = weights;
  j["amplification"] = amplification;
  j["m"] = m;
  j["t_priv"] = t_priv;
  j["T_rec"] = T_rec;
  Json sh = Json::array();
  for (const auto& s : shares) {
    sh.push_back({{"party", s.party}, {"bits", s.bits}, {"prime", NatToDec(s.p)}});
  }
  j["shares"] = sh;
  return j.dump(2) + "\n";
}

WvssParams WvssParams::FromJson(const std::string& text) {
  WvssParams p;
  try {
    Json j = Json::parse(text);
    p.group = j.at("group").get<std::string>();
    WVSS_ENFORCE(p.group == kGroupName, ErrorCode::kUnsupported,
                 "group " + p.group + " is not supported");
    p.lambda0 = j.at("lambda0").get<unsigned>();
    WVSS_ENFORCE(p.lambda0 == Scalar::ModulusBits(), ErrorCode::kUnsupported,
                 "lambda0 does not match the group");
    p.lambda_sec = j.at("lambda_sec").get<unsigned>();
    p.ratio_T = j.at("ratio_T").get<double>();
    p.weights = j.at("weights").get<std::vector<uint32_t>>();
    p.amplification = j.at("amplification").get<uint32_t>();
    p.m = j.at("m").get<uint32_t>();
    p.t_priv = j.at("t_priv").get<uint64_t>();
    p.T_rec = j.at("T_rec").get<uint64_t>();
    for (const auto& s : j.at("shares")) {
      ShareSlot sl;
      sl.party = s.at("party").get<uint32_t>();
      sl.bits = s.at("bits").get<unsigned>();
      sl.p = NatFromDec(s.at("prime").get<std::string>());
      WVSS_ENFORCE(NatBitLength(sl.p) == sl.bits, ErrorCode::kBadInput,
                   "prime does not have the stated bit length");
      WVSS_ENFORCE(sl.party < p.weights.size(), ErrorCode::kBadInput,
                   "share refers to unknown party");
      p.shares.push_back(sl);
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kBadInput, std::string("params file: ") + e.what());
  }
  WVSS_ENFORCE(!p.shares.empty(), ErrorCode::kBadInput, "params have no shares");
  return p;
}

unsigned WeightCap() { return MaxPrimeBits(Scalar::ModulusBits()); }

void CheckParams(const WvssParams& params) {
  const Nat& p0 = Scalar::Modulus();
  const unsigned cap = WeightCap();
  std::set<Nat> seen;
  for (const auto& s : params.shares) {
    WVSS_ENFORCE(s.bits >= 2 && s.bits <= cap, ErrorCode::kBadPrimes,
                 "share bit length outside [2, cap]");
    WVSS_ENFORCE(NatBitLength(s.p) == s.bits && s.p > NatPow2(s.bits - 1),
                 ErrorCode::kBadPrimes, "prime outside its bit range");
    WVSS_ENFORCE(mpz_probab_prime_p(s.p.get_mpz_t(), 50) > 0, ErrorCode::kBadPrimes,
                 "share modulus is not prime");
    WVSS_ENFORCE(seen.insert(s.p).second, ErrorCode::kBadPrimes, "repeated prime");
  }
  WVSS_ENFORCE(params.T_rec <= params.total_bits() && params.t_priv < params.T_rec,
               ErrorCode::kInfeasible, "thresholds out of order");
  // Any share set with at least T_rec bits has product above p0^(m+1).
  std::vector<Nat> primes = params.primes();
  WVSS_ENFORCE(MaxDigits(p0, params.T_rec, params.total_bits(), primes) >=
                   static_cast<long>(params.m),
               ErrorCode::kInfeasible, "reconstruction bound fails");
  // Any set below t_priv bits has product at most 2^-lambda_sec of p0^m.
  WVSS_ENFORCE(NatPow2(static_cast<unsigned>(params.t_priv + params.lambda_sec)) <=
                   NatPow(p0, params.m),
               ErrorCode::kInfeasible, "secrecy bound fails");
}

WvssParams DeriveParams(std::span<const uint32_t> weights, const DeriveOptions& opt,
                        Rng& rng) {
  WVSS_ENFORCE(!weights.empty(), ErrorCode::kBadInput, "no parties");
  WVSS_ENFORCE(opt.ratio_T > 0 && opt.ratio_T <= 1, ErrorCode::kBadInput,
               "ratio_T must be in (0, 1]");
  const unsigned cap = WeightCap();
  const unsigned lambda0 = Scalar::ModulusBits();
  const uint64_t gap = 2 * lambda0 + kGapSlack;
  for (uint32_t w : weights) {
    WVSS_ENFORCE(w >= 1, ErrorCode::kWeightOutOfRange, "weights must be positive");
    WVSS_ENFORCE(opt.virtualize || w <= cap, ErrorCode::kInfeasible,
                 "weight " + std::to_string(w) + " exceeds the per-prime cap of " +
                     std::to_string(cap) + " bits");
  }
  const Nat& p0 = Scalar::Modulus();
  for (uint32_t c = 1; c <= opt.max_amplification; ++c) {
    WvssParams params;
    params.lambda0 = lambda0;
    params.lambda_sec = opt.lambda_sec;
    params.ratio_T = opt.ratio_T;
    params.weights.assign(weights.begin(), weights.end());
    params.amplification = c;
    bool too_small = false;
    std::vector<unsigned> bits;
    for (size_t i = 0; i < weights.size(); ++i) {
      for (unsigned b : SplitWeight(uint64_t{weights[i]} * c, cap)) {
        too_small = too_small || b < 2;
        bits.push_back(b);
        params.shares.push_back({static_cast<uint32_t>(i), b, Nat()});
      }
    }
    if (too_small) continue;
    const uint64_t sum = params.total_bits();
    const uint64_t T = static_cast<uint64_t>(std::ceil(opt.ratio_T * sum - 1e-9));
    if (T < gap + 1) continue;
    std::vector<SharingPrime> primes;
    try {
      primes = GenPrimes(bits, rng, cap);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInfeasible) continue;
      throw;
    }
    for (size_t i = 0; i < primes.size(); ++i) params.shares[i].p = primes[i].p;
    const long m_max = MaxDigits(p0, T, sum, params.primes());
    const long t = std::min<long>(static_cast<long>(T - gap),
                                  m_max * static_cast<long>(lambda0 - 1) -
                                      static_cast<long>(opt.lambda_sec));
    if (t < 1) continue;
    params.T_rec = T;
    params.t_priv = static_cast<uint64_t>(t);
    params.m = static_cast<uint32_t>((params.t_priv + opt.lambda_sec + lambda0 - 2) /
                                     (lambda0 - 1));
    CheckParams(params);
    return params;
  }
  throw Error(ErrorCode::kInfeasible, "no amplification up to " +
                                          std::to_string(opt.max_amplification) +
                                          " satisfies the thresholds");
}

WvssParams FixedParams(std::span<const unsigned> bits, uint32_t m, unsigned lambda_sec,
                       Rng& rng) {
  WvssParams params;
  params.lambda0 = Scalar::ModulusBits();
  params.lambda_sec = lambda_sec;
  params.m = m;
  auto primes = GenPrimes(bits, rng, WeightCap());
  for (size_t i = 0; i < bits.size(); ++i) {
    params.weights.push_back(bits[i]);
    params.shares.push_back({static_cast<uint32_t>(i), bits[i], primes[i].p});
  }
  params.T_rec = params.total_bits();
  params.t_priv = 0;
  return params;
}

std::shared_ptr<const PedersenParams> DealGenerators(size_t width) {
  static std::mutex mu;
  static std::shared_ptr<const PedersenParams> cached;
  std::lock_guard<std::mutex> lock(mu);
  if (!cached || cached->width() < width) {
    cached = std::make_shared<const PedersenParams>(
        PedersenParams::Setup(std::max<size_t>(width, 64), kGeneratorLabel));
  }
  return cached;
}

size_t DealPaddedGates(const WvssParams& params) {
  return PaddedGates(DealLayout(params).m_mul());
}

std::vector<uint8_t> DealPublic::Serialize() const {
  std::vector<uint8_t> out;
  AppendU32(out, static_cast<uint32_t>(Y.size()));
  AppendU32(out, 2);
  auto put = [&](const Point& p) {
    auto e = p.Encode();
    out.insert(out.end(), e.begin(), e.end());
  };
  for (const Point& y : Y) put(y);
  put(wires.AI);
  put(wires.AO);
  auto pf = proof.Serialize();
  out.insert(out.end(), pf.begin(), pf.end());
  return out;
}

DealPublic DealPublic::Deserialize(std::span<const uint8_t> in) {
  WVSS_ENFORCE(in.size() >= 8, ErrorCode::kMalformedProof, "deal header truncated");
  const uint32_t ys = ReadU32(in.data());
  const uint32_t ws = ReadU32(in.data() + 4);
  WVSS_ENFORCE(ws == 2, ErrorCode::kMalformedProof, "bad wire commitment count");
  WVSS_ENFORCE(ys >= 2 && ys <= (1u << 20), ErrorCode::kMalformedProof,
               "bad commitment count");
  const size_t head = 8 + (size_t{ys} + 2) * kPointBytes;
  WVSS_ENFORCE(in.size() >= head, ErrorCode::kMalformedProof, "deal truncated");
  DealPublic d;
  const uint8_t* p = in.data() + 8;
  auto get = [&]() {
    auto pt = Point::Decode(std::span<const uint8_t, 32>(p, 32));
    WVSS_ENFORCE(pt.has_value(), ErrorCode::kMalformedProof, "invalid group element");
    p += kPointBytes;
    return *pt;
  };
  for (uint32_t i = 0; i < ys; ++i) d.Y.push_back(get());
  d.wires.AI = get();
  d.wires.AO = get();
  d.proof = CircuitProof::Deserialize(in.subspan(head));
  return d;
}

Deal Share(const WvssParams& params, const Scalar& s0, Rng& rng) {
  return MakeDeal(params, s0, DealCheat::kNone, 0, rng);
}

Deal ShareAdversarial(const WvssParams& params, const Scalar& s0, DealCheat cheat,
                      uint32_t target, Rng& rng) {
  return MakeDeal(params, s0, cheat, target, rng);
}

const char* DealVerdictName(DealVerdict v) {
  switch (v) {
    case DealVerdict::kAccept:
      return "Accept";
    case DealVerdict::kProofInvalid:
      return "ProofInvalid";
    case DealVerdict::kOpeningMismatch:
      return "OpeningMismatch";
  }
  return "Unknown";
}

bool VerifyDealProof(const WvssParams& params, const DealPublic& pub) {
  if (pub.Y.size() != params.n() + 1) return false;
  auto layout = DealLayout(params);
  auto pp = DealGenerators(2 * PaddedGates(layout.m_mul()));
  Transcript tr = DealTranscript(params, pub);
  ScalarCircuit ckt = layout.Build(tr.ChallengeScalar("deal/z"));
  return VerifyCircuit(*pp, ckt, pub.Y, pub.wires, pub.proof, tr);
}

bool CheckOpening(const WvssParams& params, const DealPublic& pub,
                  const ShareOpening& open) {
  if (open.index > params.n() || open.index >= pub.Y.size()) return false;
  const Nat& bound = open.index == 0 ? Scalar::Modulus() : params.shares[open.index - 1].p;
  if (open.s < 0 || open.s >= bound) return false;
  auto pp = DealGenerators(0);
  return pp->Commit(Scalar::FromNat(open.s), open.r) == pub.Y[open.index];
}

DealVerdict VerifyDeal(const WvssParams& params, const DealPublic& pub,
                       std::span<const ShareOpening> mine) {
  if (!VerifyDealProof(params, pub)) return DealVerdict::kProofInvalid;
  for (const ShareOpening& o : mine) {
    if (o.index == 0 || !CheckOpening(params, pub, o)) return DealVerdict::kOpeningMismatch;
  }
  return DealVerdict::kAccept;
}

std::optional<Scalar> Reconstruct(const WvssParams& params, const DealPublic& pub,
                                  std::span<const ShareOpening> shares, bool proof_checked) {
  std::set<uint32_t> ids;
  for (const ShareOpening& o : shares) {
    WVSS_ENFORCE(o.index >= 1 && o.index <= params.n(), ErrorCode::kBadInput,
                 "share index " + std::to_string(o.index) + " out of range");
    WVSS_ENFORCE(ids.insert(o.index).second, ErrorCode::kBadInput,
                 "share " + std::to_string(o.index) + " given twice");
  }
  std::vector<uint32_t> idv(ids.begin(), ids.end());
  const uint64_t bits = params.BitsOf(idv);
  WVSS_ENFORCE(bits >= params.T_rec, ErrorCode::kUnauthorized,
               "shares carry " + std::to_string(bits) + " bits, need " +
                   std::to_string(params.T_rec));
  Nat prod = 1;
  for (uint32_t i : idv) prod *= params.shares[i - 1].p;
  WVSS_ENFORCE(prod > NatPow(Scalar::Modulus(), params.m + 1), ErrorCode::kUnauthorized,
               "share moduli too small to fix the lifted secret");
  if (!proof_checked && !VerifyDealProof(params, pub)) return std::nullopt;
  std::vector<Nat> res, mods;
  for (const ShareOpening& o : shares) {
    if (!CheckOpening(params, pub, o)) return std::nullopt;
    res.push_back(o.s);
    mods.push_back(params.shares[o.index - 1].p);
  }
  return Scalar::FromNat(CrtSolve(res, mods) % Scalar::Modulus());
}

double SecrecyDistance(const Nat& p0, std::span<const Nat> primes, uint64_t lifts,
                       const Nat& s, const Nat& s2,
                       std::span<const uint32_t> unauthorized) {
  WVSS_ENFORCE(lifts >= 1 && p0 >= 2, ErrorCode::kBadInput, "bad toy parameters");
  WVSS_ENFORCE(Nat(lifts) * p0 <= kEnumerationLimit, ErrorCode::kTooLargeToEnumerate,
               "lifts times p0 exceeds 10^7");
  if (unauthorized.empty()) return 0.0;
  Nat prod = 1;
  for (uint32_t i : unauthorized) {
    WVSS_ENFORCE(i >= 1 && i <= primes.size(), ErrorCode::kBadInput,
                 "share index out of range");
    prod *= primes[i - 1];
  }
  WVSS_ENFORCE(prod <= kEnumerationLimit, ErrorCode::kTooLargeToEnumerate,
               "unauthorized modulus exceeds 10^7");
  const uint64_t P = NatToU64(prod), q0 = NatToU64(p0 % prod);
  std::vector<int64_t> diff(P, 0);
  uint64_t x1 = NatToU64(Nat(s % prod)), x2 = NatToU64(Nat(s2 % prod));
  for (uint64_t a = 0; a < lifts; ++a) {
    ++diff[x1];
    --diff[x2];
    x1 = (x1 + q0) % P;
    x2 = (x2 + q0) % P;
  }
  uint64_t total = 0;
  for (int64_t d : diff) total += static_cast<uint64_t>(d < 0 ? -d : d);
  return 0.5 * static_cast<double>(total) / static_cast<double>(lifts);
}

std::string OpeningsToJson(std::span<const ShareOpening> openings) {
  Json arr = Json::array();
  for (const ShareOpening& o : openings) {
    arr.push_back({{"index", o.index}, {"s", NatToDec(o.s)}, {"r", ScalarHex(o.r)}});
  }
  return Json{{"openings", arr}}.dump(2) + "\n";
}

std::vector<ShareOpening> OpeningsFromJson(const std::string& text) {
  std::vector<ShareOpening> out;
  try {
    Json j = Json::parse(text);
    for (const auto& o : j.at("openings")) {
      out.push_back({o.at("index").get<uint32_t>(),
                     NatFromDec(o.at("s").get<std::string>()),
                     ScalarFromHex(o.at("r").get<std::string>())});
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kBadInput, std::string("openings file: ") + e.what());
  }
  return out;
}

}  // namespace wvss
