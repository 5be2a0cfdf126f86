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

// Acceptance run: one PASS/FAIL line per criterion, with details indented
// below it. Exit status is 0 when every criterion outside --expect-fail
// passes and every criterion inside it fails.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "toy_oracle.h"
#include "wvss/errors.h"
#include "wvss/pom.h"
#include "wvss/pom_circuit.h"
#include "wvss/report.h"
#include "wvss/wvss.h"

namespace wvss {
namespace {

using F13 = ToyField<13>;

struct Result {
  bool pass = true;
  std::string summary;
  std::vector<std::string> notes;

  void Check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  template <class... T>
  void Note(const T&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    notes.push_back(os.str());
  }
};

unsigned Log2(size_t padded) { return static_cast<unsigned>(std::countr_zero(padded)); }

unsigned CeilLog2(uint64_t x) {
  unsigned k = 0;
  while ((uint64_t{1} << k) < x) ++k;
  return k;
}

std::string ReadFixture() {
  std::ifstream in(std::string(WVSS_DATA_DIR) + "/eth_stakes.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Criterion 1: measured proof sizes against 2 log2(G) + 8 group elements.
Result SizeFormula() {
  Result r;
  SeededRng rng("acceptance-size");
  const unsigned lambda = Scalar::ModulusBits();
  const uint64_t base_gates = 3 * lambda + 1;
  const Nat p = GenPrime(MaxPrimeBits(lambda), rng, MaxPrimeBits(lambda)).p;
  int field_delta_cases = 0, cases = 0;

  for (uint32_t m : {0u, 1u, 2u, 4u}) {
    const size_t G = PomPaddedGates(p, m);
    auto pp = DealGenerators(2 * G);
    PomOpening o;
    Nat s = 0, pw = 1;
    for (uint32_t j = 0; j <= m; ++j) {
      o.digits.push_back(NatRandomBelow(rng, Scalar::Modulus()));
      o.r_digits.push_back(Scalar::Random(rng));
      s += o.digits.back() * pw;
      pw *= Scalar::Modulus();
    }
    o.v = s % p;
    o.r_v = Scalar::Random(rng);
    PomStatement st = PomCommit(*pp, p, o);
    PomProof pf = ProvePom(*pp, st, o, rng);
    const size_t k = Log2(G);
    const size_t want = 2 * k + 8;
    const size_t bytes = pf.Serialize().size();
    ++cases;
    r.Check(VerifyPom(*pp, st, pf), "PoM m=" + std::to_string(m) + " verifies");
    r.Check(pf.group_elements() == want, "PoM m=" + std::to_string(m) + " group count");
    r.Check(bytes == 8 + 32 * (pf.group_elements() + pf.field_elements()),
            "PoM m=" + std::to_string(m) + " byte size");
    if (pf.field_elements() == 5) ++field_delta_cases;
    const uint64_t table_gates = (m == 0 ? 1 : 3 * m) * base_gates;
    r.Note(m == 0 ? "base PoM" : "ext PoM m=" + std::to_string(m), ": G=", G,
           " group=", pf.group_elements(), " (2log2G+8=", want, ", table formula ",
           2 * CeilLog2(table_gates) + 8, ") field=", pf.field_elements(),
           " bytes=", bytes);
  }

  for (uint32_t n : {1u, 2u, 4u}) {
    for (uint32_t m : {1u, 2u, 4u}) {
      std::vector<unsigned> bits(n, 100);
      WvssParams params = FixedParams(bits, m, 128, rng);
      const size_t G = DealPaddedGates(params);
      Deal d = Share(params, Scalar::Random(rng), rng);
      const size_t k = Log2(G);
      const size_t proof_group = 2 + d.pub.proof.group_elements();
      const size_t bytes = d.pub.Serialize().size();
      ++cases;
      const std::string tag = "VSS n=" + std::to_string(n) + " m=" + std::to_string(m);
      r.Check(VerifyDealProof(params, d.pub), tag + " verifies");
      r.Check(proof_group == 2 * k + 8, tag + " proof group count");
      r.Check(d.pub.group_elements() == (n + 1) + 2 * k + 8, tag + " broadcast count");
      r.Check(bytes == 8 + 32 * (n + 3) + d.pub.proof.SerializedSize(), tag + " bytes");
      if (d.pub.proof.kScalars == 5) ++field_delta_cases;
      r.Note(tag, ": G=", G, " proof group=", proof_group, " (2log2G+8=", 2 * k + 8,
             ", table formula ", 2 * CeilLog2(uint64_t{3} * n * m * base_gates) + 8,
             ") + ", n + 1, " share commitments, field=", CircuitProof::kScalars,
             " bytes=", bytes);
    }
  }
  r.Note("field elements: 5 in all ", field_delta_cases, " of ", cases,
         " cases vs 6 in the table; the challenge z is recomputed, never sent");
  r.Note("wire commitments AI, AO are inside the 2log2G+8 count, as in the table");
  r.summary = std::to_string(cases) + " proofs, group counts exact, field delta -1";
  return r;
}

struct Profile {
  std::string name;
  WvssParams params;
};

std::vector<Profile> CorrectnessProfiles(Rng& rng) {
  DeriveOptions opt;
  opt.ratio_T = 2.0 / 3.0;
  std::vector<Profile> out;
  std::vector<uint32_t> uniform(7, 1), tiers = {2, 2, 1, 1, 1};
  out.push_back({"uniform 7x1", DeriveParams(uniform, opt, rng)});
  out.push_back({"2-tier 2,2,1,1,1", DeriveParams(tiers, opt, rng)});

  auto sw = WeightsFromStakes(ParseStakeCsv(ReadFixture()), 0.02, 10,
                              DefaultStakeExclusions());
  // Five operators drawn from those that fit in one share before
  // amplification; the largest pools alone would need hundreds of shares.
  std::vector<uint32_t> pool, sample;
  for (uint32_t w : sw.weights) {
    if (w <= WeightCap()) pool.push_back(w);
  }
  std::string names;
  for (size_t i = 0; i < 5; ++i) {
    std::swap(pool[i], pool[i + rng.Uniform(pool.size() - i)]);
    sample.push_back(pool[i]);
    names += (names.empty() ? "" : ",") + std::to_string(sample.back());
  }
  out.push_back({"ethereum-sampled " + names, DeriveParams(sample, opt, rng)});
  return out;
}

// Criterion 2: deal, every party accepts, random authorized sets reconstruct.
Result EndToEnd(int trials) {
  Result r;
  SeededRng rng("acceptance-e2e");
  int failures = 0, deals = 0, recon = 0;
  for (const Profile& prof : CorrectnessProfiles(rng)) {
    const WvssParams& params = prof.params;
    const size_t parties = params.weights.size();
    for (int t = 0; t < trials; ++t) {
      const Scalar secret = Scalar::Random(rng);
      Deal d = Share(params, secret, rng);
      ++deals;
      DealPublic pub = DealPublic::Deserialize(d.pub.Serialize());
      // The proof check is a function of public data only, so every party
      // reaches the same result; it runs once here.
      bool ok = VerifyDealProof(params, pub);
      for (uint32_t party = 0; party < parties && ok; ++party) {
        for (uint32_t id : params.ShareIdsOf(party)) {
          ok = ok && CheckOpening(params, pub, d.openings[id - 1]);
        }
      }
      if (!ok) {
        ++failures;
        continue;
      }
      for (int k = 0; k < 5; ++k) {
        std::vector<uint32_t> order(parties);
        for (uint32_t i = 0; i < parties; ++i) order[i] = i;
        for (size_t i = parties; i > 1; --i) std::swap(order[i - 1], order[rng.Uniform(i)]);
        std::vector<ShareOpening> pool;
        uint64_t bits = 0;
        for (uint32_t party : order) {
          if (bits >= params.T_rec) break;
          for (uint32_t id : params.ShareIdsOf(party)) pool.push_back(d.openings[id - 1]);
          bits += params.BitsOf(params.ShareIdsOf(party));
        }
        auto got = Reconstruct(params, pub, pool, true);
        ++recon;
        if (!got || *got != secret) ++failures;
      }
    }
    r.Note(prof.name, ": shares=", params.n(), " m=", params.m, " c=", params.amplification,
           " T_rec=", params.T_rec, " t_priv=", params.t_priv,
           " gates=", DealPaddedGates(params));
  }
  r.Check(failures == 0, std::to_string(failures) + " failures");
  r.summary = std::to_string(deals) + " deals, " + std::to_string(recon) +
              " reconstructions, " + std::to_string(failures) + " failures";
  return r;
}

// Criterion 3: deals whose target share is shifted by the k' construction.
Result Wraparound(int trials) {
  Result r;
  SeededRng rng("acceptance-wrap");
  std::vector<unsigned> bits = {60, 90};
  WvssParams params = FixedParams(bits, 1, 128, rng);
  int rejected = 0, opens = 0;
  for (int t = 0; t < trials; ++t) {
    const uint32_t target = 1 + static_cast<uint32_t>(rng.Uniform(params.n()));
    Deal d = ShareAdversarial(params, Scalar::Random(rng), DealCheat::kForgeWraparound,
                              target, rng);
    if (CheckOpening(params, d.pub, d.openings[target - 1])) ++opens;
    std::vector<ShareOpening> all = d.openings;
    if (VerifyDeal(params, d.pub, all) == DealVerdict::kProofInvalid) ++rejected;
  }
  r.Check(rejected == trials, "all forgeries rejected");
  r.Note("forged share opens against its commitment in ", opens, " of ", trials, " deals");
  r.summary = std::to_string(rejected) + "/" + std::to_string(trials) + " rejected";
  return r;
}

// Criterion 4: toy-field oracle for the mod circuit, p0 = 13 and p = 3.
Result ToySoundness() {
  Result r;
  testing::ToySoundnessOracle<13> oracle(
      [](F13 z) { return ModCircuit<F13>(Nat(3), z); });
  const PomShape sh = PomShape::Make(Nat(13), Nat(3));
  const uint32_t bound = 2 * (sh.n1 + sh.n2);
  uint32_t worst = 0;
  int true_ok = 0, false_ok = 0, true_n = 0, false_n = 0;
  for (uint32_t v = 0; v < 13; ++v) {
    for (uint32_t s = 0; s < 13; ++s) {
      const uint32_t best = oracle.MaxSatisfiedChallenges({v, s});
      if (v < 3 && s % 3 == v) {
        ++true_n;
        if (best == 13) ++true_ok;
      } else {
        ++false_n;
        if (best <= bound) ++false_ok;
        worst = std::max(worst, best);
      }
    }
  }
  r.Check(true_ok == true_n, "true statements satisfiable for every z");
  r.Check(false_ok == false_n, "false statements bounded");
  r.Note("true statements: ", true_ok, "/", true_n, " satisfiable for all 13 challenges");
  r.Note("false statements: largest satisfying challenge set ", worst, ", bound ", bound);
  r.summary = "largest root set " + std::to_string(worst) + " <= " + std::to_string(bound);
  return r;
}

// Criterion 5: 3-bit range circuit over Z_13 by full witness enumeration.
Result RangeBruteForce() {
  Result r;
  auto ckt = BitRangeCircuit<F13>(3);
  std::vector<uint32_t> sat;
  for (uint32_t v = 0; v < 13; ++v) {
    std::vector<F13> in = {F13::FromU64(v)};
    Witness<F13> w{std::vector<F13>(3), std::vector<F13>(3), std::vector<F13>(3)};
    uint64_t found = 0;
    for (uint64_t code = 0; code < 4826809; ++code) {  // 13^6
      uint64_t c = code;
      for (int g = 0; g < 3; ++g) {
        w.a[g] = F13::FromU64(c % 13);
        c /= 13;
        w.b[g] = F13::FromU64(c % 13);
        c /= 13;
      }
      if (IsSatisfied<F13>(ckt, in, w)) ++found;
    }
    if (found) sat.push_back(v);
  }
  r.Check(sat == std::vector<uint32_t>({0, 1, 2, 3, 4, 5, 6, 7}), "satisfiable set");
  std::string s;
  for (uint32_t v : sat) s += (s.empty() ? "" : ",") + std::to_string(v);
  r.summary = "satisfiable for v in {" + s + "}";
  return r;
}

// Criterion 6: exact statistical distance for p0 = 2, primes 3 and 5.
Result RampSecrecy() {
  Result r;
  const uint64_t lifts = 1024;
  const std::vector<Nat> primes = {3, 5};
  int cases = 0;
  for (uint32_t idx : {1u, 2u}) {
    const uint64_t p = NatToU64(primes[idx - 1]);
    for (uint64_t s = 0; s < 2; ++s) {
      for (uint64_t s2 = 0; s2 < 2; ++s2) {
        std::vector<uint32_t> set = {idx};
        const double d = SecrecyDistance(2, primes, lifts, s, s2, set);
        std::vector<int64_t> diff(p, 0);
        for (uint64_t a = 0; a < lifts; ++a) {
          ++diff[(s + 2 * a) % p];
          --diff[(s2 + 2 * a) % p];
        }
        int64_t tot = 0;
        for (int64_t x : diff) tot += std::abs(x);
        const double oracle = 0.5 * static_cast<double>(tot) / lifts;
        const double bound = static_cast<double>(p) / lifts;
        ++cases;
        r.Check(d == oracle && d <= bound,
                "share " + std::to_string(idx) + " secrets " + std::to_string(s) + "," +
                    std::to_string(s2));
        if (s != s2) r.Note("share ", idx, " secrets (", s, ",", s2, "): SD=", d,
                            " bound=", bound);
      }
    }
  }
  r.summary = std::to_string(cases) + " cases within P/L";
  return r;
}

// Criterion 7: bandwidth table for the Ethereum fixture.
Result EthBandwidth() {
  Result r;
  SeededRng rng("acceptance-eth");
  EthReport rep = ComputeEthReport(ParseStakeCsv(ReadFixture()), EthReportOptions{}, rng);
  const auto& cur = rep.rows[0];
  const auto& fel = rep.rows[1];
  const auto& wr = rep.rows[2];
  const EthReference ref;
  r.Check(cur.broadcast_bytes == 1344000, "Current row bytes");
  r.Check(fel.broadcast_group == 6850 && fel.private_field == 4110, "Feldman row");
  const double gain = static_cast<double>(fel.broadcast_bytes) / wr.broadcast_bytes;
  r.Check(gain >= 10, "WRSS broadcast at least 10x below Feldman");
  r.Note("Current ", cur.broadcast_bytes, " B; Feldman ", fel.broadcast_group, " group, ",
         fel.private_field, " private field");
  r.Note("total weight ", rep.stakes.total_weight(), " (", ref.total_weight, "), shares ",
         rep.params.n(), " (", ref.shares, "), m ", rep.params.m, " (", ref.m, "), rounds ",
         rep.rounds);
  r.Note("WRSS ", wr.broadcast_group, " group, ", wr.broadcast_field, " field, ",
         wr.private_field, " private field; delta vs (", ref.wrss_group, ", ",
         ref.wrss_field, ", ", ref.wrss_private, ") = (",
         static_cast<int64_t>(wr.broadcast_group) - static_cast<int64_t>(ref.wrss_group), ", ",
         static_cast<int64_t>(wr.broadcast_field) - static_cast<int64_t>(ref.wrss_field), ", ",
         static_cast<int64_t>(wr.private_field) - static_cast<int64_t>(ref.wrss_private), ")");
  r.Note("group delta: ", rep.params.n() - ref.shares, " extra shares from the 126-bit cap, ",
         "proof over ", rep.rounds, " rounds");
  r.Note("private delta: 2 scalars per share (s_i, r_i) over ", rep.params.n(), " shares");
  for (const auto& a : rep.assumptions) r.Note("assumption: ", a);
  std::ostringstream g;
  g.precision(3);
  g << gain;
  r.summary = "Feldman 6850/4110, Current 1344000 B, WRSS " + g.str() + "x smaller broadcast";
  return r;
}

// Criterion 8: proof size against log2(n m), and the large-size extrapolation.
Result LogFitAndExtrapolation() {
  Result r;
  SeededRng rng("acceptance-bench");
  std::vector<double> x, y, lg;
  std::map<std::pair<uint32_t, uint32_t>, BenchRow> rows;
  double tsum = 0;
  for (uint32_t n = 1; n <= 4; ++n) {
    for (uint32_t m = 1; m <= 4; ++m) {
      BenchRow row = RunBench(n, m, 100, rng);
      r.Check(row.verified, "bench proof verifies");
      rows[{n, m}] = row;
      x.push_back(static_cast<double>(n) * m);
      y.push_back(static_cast<double>(row.proof_bytes));
      lg.push_back(static_cast<double>(PaddedGates(row.gate_count)));
      tsum += row.prove_ms;
    }
  }
  const LogFit f = FitLog2(x, y);
  const LogFit fg = FitLog2(lg, y);
  r.Check(f.r2 >= 0.99, "R^2 >= 0.99 against log2(n m)");
  r.Note("fit proof_bytes = ", f.a, " + ", f.b, " log2(n m), R^2 = ", f.r2);
  r.Note("against log2 of the padded gate count: slope ", fg.b, ", R^2 = ", fg.r2);
  r.Note("padding makes size a step function; n m spans 4 bits and each step is 64 B");

  int step_ok = 0, step_n = 0;
  for (uint32_t n = 1; n <= 4; ++n) {
    for (uint32_t m : {1u, 2u}) {
      const auto& a = rows[{n, m}];
      const auto& b = rows[{n, 2 * m}];
      const size_t crossings = Log2(PaddedGates(b.gate_count)) -
                               Log2(PaddedGates(a.gate_count));
      ++step_n;
      if (b.proof_bytes - a.proof_bytes == crossings * 64) ++step_ok;
    }
  }
  r.Check(step_ok == step_n, "doubling m adds 2 elements per padding crossing");
  r.Note("doubling m: ", step_ok, "/", step_n, " pairs add exactly 2 group elements per crossing");
  r.Note("mean prove time ", tsum / x.size(), " ms over the sweep");

  // n = 365 shares at the 126-bit cap and m = 108.
  const unsigned cap = WeightCap();
  std::vector<unsigned> bits(365, cap);
  auto primes = GenPrimes(bits, rng, cap);
  std::vector<Nat> ps;
  for (const auto& p : primes) ps.push_back(p.p);
  const size_t gates = VssLayout<Scalar>(ps, 108).m_mul();
  const unsigned k = ProofRounds(gates);
  const size_t ckt_bytes = 8 + 32 * (6 + 2 * k) + 32 * CircuitProof::kScalars;
  r.Check(ckt_bytes <= 2048, "extrapolated circuit proof <= 2 KiB");
  r.Note("n=365 m=108: ", gates, " gates, ", k, " rounds, circuit proof ", ckt_bytes,
         " B without commitments (", ckt_bytes + 64, " B with AI, AO)");
  std::ostringstream s;
  s << "R^2 " << f.r2 << " (need 0.99); extrapolated proof " << ckt_bytes << " B";
  r.summary = s.str();
  return r;
}

// Criterion 9: byte-level mutants of a deal file.
Result Mutations(int count) {
  Result r;
  SeededRng rng("acceptance-mutate");
  std::vector<unsigned> bits = {60, 90};
  WvssParams params = FixedParams(bits, 1, 128, rng);
  Deal d = Share(params, Scalar::Random(rng), rng);
  const auto good = d.pub.Serialize();
  r.Check(VerifyDealProof(params, DealPublic::Deserialize(good)), "original accepted");
  int accepted = 0, malformed = 0, invalid = 0;
  for (int i = 0; i < count; ++i) {
    auto mut = good;
    const int kind = i % 10;
    if (kind < 6) {
      mut[rng.Uniform(mut.size())] ^= static_cast<uint8_t>(1u << rng.Uniform(8));
    } else if (kind < 8) {
      const size_t pos = rng.Uniform(mut.size());
      mut[pos] = static_cast<uint8_t>(mut[pos] + 1 + rng.Uniform(255));
    } else if (kind == 8) {
      mut.resize(rng.Uniform(mut.size()));
      if (rng.Uniform(2)) mut.push_back(static_cast<uint8_t>(rng.Uniform(256)));
    } else {
      const size_t blocks = (mut.size() - 8) / 32;
      size_t a = rng.Uniform(blocks), b = rng.Uniform(blocks);
      if (a == b) b = (a + 1) % blocks;
      std::swap_ranges(mut.begin() + 8 + 32 * a, mut.begin() + 8 + 32 * a + 32,
                       mut.begin() + 8 + 32 * b);
    }
    try {
      DealPublic pub = DealPublic::Deserialize(mut);
      if (VerifyDealProof(params, pub)) {
        ++accepted;
      } else {
        ++invalid;
      }
    } catch (const Error&) {
      ++malformed;
    }
  }
  r.Check(accepted == 0, "no mutant accepted");
  r.Note(malformed, " MalformedProof, ", invalid, " ProofInvalid");
  r.summary = std::to_string(count) + " mutants, " + std::to_string(accepted) + " accepted";
  return r;
}

}  // namespace
}  // namespace wvss

int main(int argc, char** argv) {
  using namespace wvss;
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only, expect_fail;
  int trials = 100, mutants = 1200;
  app.add_option("--only", only, "Run only these criteria")->delimiter(',');
  app.add_option("--expect-fail", expect_fail, "Criteria documented as failing")
      ->delimiter(',');
  app.add_option("--trials", trials, "Secrets per profile and forged deals");
  app.add_option("--mutants", mutants, "Deal-file mutants");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<int, std::function<Result()>>> criteria = {
      {1, SizeFormula},
      {2, [&] { return EndToEnd(trials); }},
      {3, [&] { return Wraparound(trials); }},
      {4, ToySoundness},
      {5, RangeBruteForce},
      {6, RampSecrecy},
      {7, EthBandwidth},
      {8, LogFitAndExtrapolation},
      {9, [&] { return Mutations(mutants); }},
  };
  int unexpected = 0;
  for (const auto& [id, run] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = run();
    } catch (const std::exception& e) {
      r.pass = false;
      r.summary = std::string("exception: ") + e.what();
    }
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool expected_fail =
        std::find(expect_fail.begin(), expect_fail.end(), id) != expect_fail.end();
    std::cout << "criterion " << id << ": " << (r.pass ? "PASS" : "FAIL") << " - "
              << r.summary << " [" << std::fixed << std::setprecision(1) << sec << " s]"
              << (expected_fail ? " (expected FAIL)" : "") << "\n";
    std::cout.unsetf(std::ios::fixed);
    for (const auto& n : r.notes) std::cout << "    " << n << "\n";
    std::cout << std::flush;
    if (r.pass == expected_fail) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
