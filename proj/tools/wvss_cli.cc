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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wvss/errors.h"
#include "wvss/report.h"
#include "wvss/wvss.h"

namespace fs = std::filesystem;
using namespace wvss;

namespace {

constexpr int kOk = 0;
constexpr int kReject = 1;
constexpr int kUsage = 2;

struct Reject {
  std::string reason, detail;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  WVSS_ENFORCE(in.good(), ErrorCode::kIo, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  WVSS_ENFORCE(out.good(), ErrorCode::kIo, "cannot write " + path);
  out << data;
  WVSS_ENFORCE(out.good(), ErrorCode::kIo, "write failed for " + path);
}

void Emit(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
  } else {
    WriteFile(path, data);
  }
}

std::unique_ptr<Rng> MakeRng(const std::string& seed) {
  if (seed.empty()) return std::make_unique<SystemRng>();
  return std::make_unique<SeededRng>(seed);
}

std::vector<uint32_t> ParseWeights(const std::string& text) {
  std::vector<uint32_t> out;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    for (char c : tok) {
      WVSS_ENFORCE(c >= '0' && c <= '9', ErrorCode::kBadInput, "bad weight '" + tok + "'");
    }
    WVSS_ENFORCE(tok.size() <= 9, ErrorCode::kBadInput, "weight too large: " + tok);
    out.push_back(static_cast<uint32_t>(std::stoul(tok)));
    tok.clear();
  };
  bool comment = false;
  for (char c : text) {
    if (c == '#') comment = true;
    if (c == '\n') comment = false;
    if (comment) continue;
    if (c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      flush();
    } else {
      tok.push_back(c);
    }
  }
  flush();
  WVSS_ENFORCE(!out.empty(), ErrorCode::kBadInput, "no weights given");
  return out;
}

// "3", "1..4" or "1,2,8".
std::vector<uint32_t> ParseRange(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) return ParseWeights(s);
  uint32_t lo = ParseWeights(s.substr(0, dots)).at(0);
  uint32_t hi = ParseWeights(s.substr(dots + 2)).at(0);
  WVSS_ENFORCE(lo >= 1 && lo <= hi && hi <= 64, ErrorCode::kBadInput, "bad range " + s);
  std::vector<uint32_t> out;
  for (uint32_t i = lo; i <= hi; ++i) out.push_back(i);
  return out;
}

WvssParams LoadParams(const std::string& path) {
  WvssParams p = WvssParams::FromJson(ReadFile(path));
  CheckParams(p);
  return p;
}

DealPublic LoadDeal(const std::string& path) {
  std::string bytes = ReadFile(path);
  return DealPublic::Deserialize(
      std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(bytes.data()), bytes.size()));
}

std::string DecimalSecret(const Scalar& s) { return NatToDec(s.ToNat()); }

struct Globals {
  std::string seed;
  std::string format = "table";
  bool csv() const { return format == "csv"; }
};

struct ParamsCmd {
  std::string weights, stakes, out;
  double min_stake = 0.02, ratio = 1.0;
  uint32_t base_weight = 10;
  unsigned lambda_sec = 128;
  bool virtualize = false;
  std::vector<std::string> exclude = DefaultStakeExclusions();

  int Run(const Globals& g) {
    auto rng = MakeRng(g.seed);
    std::vector<uint32_t> w;
    DeriveOptions opt;
    opt.ratio_T = ratio;
    opt.lambda_sec = lambda_sec;
    opt.virtualize = virtualize;
    if (!stakes.empty()) {
      auto rows = ParseStakeCsv(ReadFile(stakes));
      auto sw = WeightsFromStakes(rows, min_stake, base_weight, exclude);
      for (const auto& e : sw.excluded) std::cerr << "excluded: " << e << "\n";
      for (const auto& e : sw.below_min) std::cerr << "below minimum stake: " << e << "\n";
      std::cerr << sw.entities.size() << " parties, total weight " << sw.total_weight()
                << "\n";
      w = sw.weights;
      opt.virtualize = true;
    } else {
      w = ParseWeights(ReadFile(weights));
    }
    WvssParams p = DeriveParams(w, opt, *rng);
    std::cerr << "shares " << p.n() << ", m " << p.m << ", amplification "
              << p.amplification << ", T_rec " << p.T_rec << ", t_priv " << p.t_priv
              << "\n";
    Emit(out, p.ToJson());
    return kOk;
  }
};

struct DealCmd {
  std::string params, secret, deal_out, dir;

  int Run(const Globals& g) {
    auto rng = MakeRng(g.seed);
    WvssParams p = LoadParams(params);
    Scalar s = secret.empty() ? Scalar::Random(*rng) : Scalar::FromNat(NatFromDec(secret));
    WVSS_ENFORCE(secret.empty() || NatFromDec(secret) < Scalar::Modulus(),
                 ErrorCode::kBadInput, "secret must be below the group order");
    Deal d = Share(p, s, *rng);
    auto bytes = d.pub.Serialize();
    WriteFile(deal_out, std::string(bytes.begin(), bytes.end()));
    fs::create_directories(dir);
    for (uint32_t party = 0; party < p.weights.size(); ++party) {
      std::vector<ShareOpening> mine;
      for (uint32_t id : p.ShareIdsOf(party)) mine.push_back(d.openings[id - 1]);
      WriteFile((fs::path(dir) / ("party_" + std::to_string(party + 1) + ".json")).string(),
                OpeningsToJson(mine));
    }
    std::vector<ShareOpening> dealer = {d.secret};
    WriteFile((fs::path(dir) / "dealer.json").string(), OpeningsToJson(dealer));
    std::cerr << "deal: " << bytes.size() << " bytes, " << d.pub.group_elements()
              << " group elements, " << p.weights.size() << " opening files\n";
    return kOk;
  }
};

struct VerifyCmd {
  std::string params, deal, openings;

  int Run(const Globals&) {
    WvssParams p = LoadParams(params);
    DealPublic pub = LoadDeal(deal);
    std::vector<ShareOpening> mine;
    if (!openings.empty()) mine = OpeningsFromJson(ReadFile(openings));
    DealVerdict v = VerifyDeal(p, pub, mine);
    std::cout << DealVerdictName(v) << "\n";
    if (v != DealVerdict::kAccept) throw Reject{DealVerdictName(v), "deal rejected"};
    return kOk;
  }
};

struct ReconstructCmd {
  std::string params, deal;
  std::vector<std::string> openings;

  int Run(const Globals&) {
    WvssParams p = LoadParams(params);
    DealPublic pub = LoadDeal(deal);
    std::vector<ShareOpening> all;
    for (const auto& f : openings) {
      auto o = OpeningsFromJson(ReadFile(f));
      all.insert(all.end(), o.begin(), o.end());
    }
    auto s = Reconstruct(p, pub, all);
    if (!s) throw Reject{"Reject", "proof or an opening failed"};
    std::cout << DecimalSecret(*s) << "\n";
    return kOk;
  }
};

struct SimulateCmd {
  std::string params, weights, profile = "honest";
  size_t subsets = 5;
  double ratio = 1.0;

  int Run(const Globals& g) {
    auto rng = MakeRng(g.seed);
    WvssParams p;
    if (!params.empty()) {
      p = LoadParams(params);
    } else {
      DeriveOptions opt;
      opt.ratio_T = ratio;
      p = DeriveParams(ParseWeights(weights), opt, *rng);
    }
    DealCheat cheat = DealCheat::kNone;
    uint32_t target = 0;
    std::string name = profile, arg;
    if (auto c = profile.find(':'); c != std::string::npos) {
      name = profile.substr(0, c);
      arg = profile.substr(c + 1);
    }
    if (name == "tamper-share") {
      cheat = DealCheat::kTamperShare;
    } else if (name == "forge-wraparound") {
      cheat = DealCheat::kForgeWraparound;
    } else if (name == "inconsistent-digits") {
      cheat = DealCheat::kInconsistentDigits;
    } else {
      WVSS_ENFORCE(name == "honest", ErrorCode::kBadInput, "unknown profile " + profile);
    }
    if (cheat != DealCheat::kNone) {
      const uint32_t party = arg.empty() ? 1 : ParseWeights(arg).at(0);
      WVSS_ENFORCE(party >= 1 && party <= p.weights.size(), ErrorCode::kBadInput,
                   "target party out of range");
      target = p.ShareIdsOf(party - 1).at(0);
    }
    SimOutcome out = Simulate(p, cheat, target, subsets, *rng);
    std::cout << FormatSimulation(p, out, g.csv());
    return kOk;
  }
};

struct BenchCmd {
  std::string n = "1..4", m = "1..4";
  unsigned bits = 100;

  int Run(const Globals& g) {
    auto rng = MakeRng(g.seed.empty() ? "bench" : g.seed);
    std::vector<double> x, y;
    std::cout << BenchCsvHeader() << "\n";
    for (uint32_t ni : ParseRange(n)) {
      for (uint32_t mi : ParseRange(m)) {
        BenchRow row = RunBench(ni, mi, bits, *rng);
        WVSS_ENFORCE(row.verified, ErrorCode::kUnsatisfiedWitness, "bench proof rejected");
        std::cout << BenchCsvLine(row) << "\n" << std::flush;
        x.push_back(static_cast<double>(ni) * mi);
        y.push_back(static_cast<double>(row.proof_bytes));
      }
    }
    if (x.size() >= 2) {
      LogFit f = FitLog2(x, y);
      std::cerr << "fit proof_bytes = " << f.a << " + " << f.b << " * log2(n*m), R^2 = "
                << f.r2 << "\n";
    }
    return kOk;
  }
};

struct EthCmd {
  std::string stakes;
  EthReportOptions opt;

  int Run(const Globals& g) {
    auto rng = MakeRng(g.seed.empty() ? "eth-report" : g.seed);
    auto rows = ParseStakeCsv(ReadFile(stakes));
    EthReport r = ComputeEthReport(rows, opt, *rng);
    std::cout << FormatEthReport(r, g.csv());
    return kOk;
  }
};

int Fail(int code, const std::string& reason, const std::string& detail) {
  std::cerr << "reason: " << reason << "\n" << detail << "\n";
  return code;
}

int ExitFor(ErrorCode c) {
  switch (c) {
    case ErrorCode::kBadInput:
    case ErrorCode::kIo:
    case ErrorCode::kUnsupported:
    case ErrorCode::kWeightOutOfRange:
      return kUsage;
    default:
      return kReject;
  }
}


}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verifiable weighted ramp secret sharing"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for deterministic randomness");
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"table", "csv"}));

  ParamsCmd pc;
  auto* params = app.add_subcommand("params", "Derive sharing parameters");
  auto* src = params->add_option_group("source");
  src->add_option("--weights", pc.weights, "File of integer weights");
  src->add_option("--stakes", pc.stakes, "Stake CSV (entity,eth_staked)");
  src->require_option(1);
  params->add_option("--min-stake", pc.min_stake, "Minimum stake in percent");
  params->add_option("--base-weight", pc.base_weight, "Weight at the minimum stake");
  params->add_option("--exclude", pc.exclude, "Aggregate rows to skip")->delimiter(',');
  params->add_option("--ratio-T", pc.ratio, "Reconstruction threshold ratio");
  params->add_option("--lambda-sec", pc.lambda_sec, "Statistical security bits");
  params->add_flag("--virtualize", pc.virtualize, "Split weights above the cap");
  params->add_option("-o,--out", pc.out, "Output file (default stdout)");

  DealCmd dc;
  auto* deal = app.add_subcommand("deal", "Share a secret");
  deal->add_option("--params", dc.params)->required();
  deal->add_option("--secret", dc.secret, "Decimal secret (default random)");
  deal->add_option("--deal", dc.deal_out, "Deal file to write")->required();
  deal->add_option("--openings", dc.dir, "Directory for opening files")->required();

  VerifyCmd vc;
  auto* verify = app.add_subcommand("verify", "Verify a deal and optional openings");
  verify->add_option("--params", vc.params)->required();
  verify->add_option("--deal", vc.deal)->required();
  verify->add_option("--openings", vc.openings, "This party's opening file");

  ReconstructCmd rc;
  auto* recon = app.add_subcommand("reconstruct", "Recover the secret");
  recon->add_option("--params", rc.params)->required();
  recon->add_option("--deal", rc.deal)->required();
  recon->add_option("--openings", rc.openings, "Opening files")->required();

  SimulateCmd sc;
  auto* sim = app.add_subcommand("simulate", "Dealer and parties in one process");
  auto* ssrc = sim->add_option_group("source");
  ssrc->add_option("--params", sc.params);
  ssrc->add_option("--weights", sc.weights, "Comma separated weights");
  ssrc->require_option(1);
  sim->add_option("--profile", sc.profile,
                  "honest, tamper-share[:party], forge-wraparound[:party], inconsistent-digits[:party]");
  sim->add_option("--subsets", sc.subsets, "Authorized subsets to reconstruct");
  sim->add_option("--ratio-T", sc.ratio, "Threshold ratio when deriving from weights");

  BenchCmd bc;
  auto* bench = app.add_subcommand("bench", "Proof size and time sweep as CSV");
  bench->add_option("--n", bc.n, "Share counts, e.g. 1..4");
  bench->add_option("--m", bc.m, "Digit counts, e.g. 1..4");
  bench->add_option("--bits", bc.bits, "Bits per share");

  EthCmd ec;
  auto* eth = app.add_subcommand("eth-report", "Ethereum bandwidth comparison");
  eth->add_option("--stakes", ec.stakes, "Stake CSV")->required();
  eth->add_option("--min-stake", ec.opt.min_stake_pct);
  eth->add_option("--ratio-T", ec.opt.ratio_T);
  eth->add_option("--lambda-sec", ec.opt.lambda_sec);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (const char* grp = std::getenv("WVSS_GROUP"); grp && std::string(grp) != kGroupName) {
    return Fail(kUsage, "Unsupported", std::string("group ") + grp + " is not available");
  }

  try {
    if (*params) return pc.Run(g);
    if (*deal) return dc.Run(g);
    if (*verify) return vc.Run(g);
    if (*recon) return rc.Run(g);
    if (*sim) return sc.Run(g);
    if (*bench) return bc.Run(g);
    if (*eth) return ec.Run(g);
  } catch (const Reject& r) {
    return Fail(kReject, r.reason, r.detail);
  } catch (const Error& e) {
    return Fail(ExitFor(e.code()), ErrorCodeName(e.code()), e.what());
  } catch (const fs::filesystem_error& e) {
    return Fail(kUsage, "Io", e.what());
  }
  return kUsage;
}
