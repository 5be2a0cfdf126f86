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

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <vector>

#include "wvss/crt.h"
#include "wvss/errors.h"
#include "wvss/pom.h"
#include "wvss/pom_circuit.h"

namespace wvss {
namespace {

const PedersenParams& Params() {
  static const PedersenParams pp = PedersenParams::Setup(16384, "pom-test");
  return pp;
}

Nat RandomPrime(unsigned bits, Rng& rng) {
  return GenPrime(bits, rng, MaxPrimeBits(Scalar::ModulusBits())).p;
}

PomOpening Honest(const Nat& p, uint32_t m, Rng& rng) {
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
  return o;
}

TEST(PomTest, DecompExamples) {
  auto [a, b] = Decomp(Scalar::FromU64(5), 3);
  EXPECT_EQ(a, (std::vector<Scalar>{Scalar::One(), Scalar(), Scalar::One()}));
  EXPECT_EQ(b, (std::vector<Scalar>{Scalar(), -Scalar::One(), Scalar()}));
  auto [a0, b0] = Decomp(Scalar(), 3);
  EXPECT_EQ(b0, std::vector<Scalar>(3, -Scalar::One()));
  auto [a9, b9] = Decomp(Scalar::FromU64(9), 3);
  EXPECT_EQ(a9, (std::vector<Scalar>{Scalar::FromU64(9), Scalar(), Scalar()}));
  EXPECT_EQ(b9, (std::vector<Scalar>{Scalar(), -Scalar::One(), -Scalar::One()}));
}

// Honest witnesses only use the fallback decomposition on the inactive side
// of the disjunction. All other bit blocks carry true binary digits.
TEST(PomTest, HonestSolverStaysOnBinaryPath) {
  SeededRng rng(1);
  auto binary = [](const ScalarWitness& w, Block blk) {
    for (uint32_t i = blk.first; i < blk.first + blk.len; ++i) {
      bool bit = w.a[i] == Scalar() || w.a[i] == Scalar::One();
      if (!bit || !(w.b[i] == w.a[i] - Scalar::One())) return false;
    }
    return true;
  };
  for (unsigned bits : {4u, 10u, 32u, 126u}) {
    Nat p = RandomPrime(bits, rng);
    PomShape sh = PomShape::Make(Scalar::Modulus(), p);
    for (uint32_t m : {0u, 1u, 2u}) {
      PomOpening o = Honest(p, m, rng);
      auto layout = EModLayout<Scalar>(p, m);
      std::vector<Nat> in = {o.v};
      in.insert(in.end(), o.digits.begin(), o.digits.end());
      auto w = layout.Solve(in, o.digits);
      for (size_t i = 0; i < layout.pom_count(); ++i) {
        PomGates g = AllocPomGates(static_cast<uint32_t>(i * sh.gates()), sh);
        EXPECT_TRUE(binary(w, g.k) && binary(w, g.qk) && binary(w, g.v) &&
                    binary(w, g.pv));
        EXPECT_TRUE(binary(w, g.qk1) || binary(w, g.tv));
      }
    }
  }
}

TEST(PomTest, ProofSizeBaseCase) {
  SeededRng rng(2);
  Nat p = RandomPrime(126, rng);
  EXPECT_EQ(EModLayout<Scalar>(p, 0).m_mul(), 760u);
  PomOpening o = Honest(p, 0, rng);
  PomStatement st = PomCommit(Params(), p, o);
  PomProof pf = ProvePom(Params(), st, o, rng);
  EXPECT_EQ(pf.group_elements(), 2 * 10 + 8u);
  EXPECT_EQ(pf.field_elements(), 5u);
  EXPECT_EQ(pf.Serialize().size(), 32 * 2 + 8 + 32 * (2 * 10 + 6) + 32 * 5u);
  EXPECT_TRUE(VerifyPom(Params(), st, pf));
}

TEST(PomTest, CompletenessThousandTrials) {
  SeededRng rng("pom-completeness");
  const unsigned bit_lengths[] = {4, 10, 32, MaxPrimeBits(Scalar::ModulusBits())};
  int accepted = 0;
  const int trials = 1000;
  for (int i = 0; i < trials; ++i) {
    Nat p = RandomPrime(bit_lengths[i % 4], rng);
    uint32_t m = i % 10 == 9 ? 1 : 0;
    PomOpening o = Honest(p, m, rng);
    PomStatement st = PomCommit(Params(), p, o);
    PomProof pf = ProvePom(Params(), st, o, rng);
    bool ok = VerifyPom(Params(), st, PomProof::Deserialize(pf.Serialize()));
    EXPECT_TRUE(ok) << "trial " << i;
    accepted += ok;
  }
  EXPECT_EQ(accepted, trials);
}

TEST(PomTest, ExtendedDigits) {
  SeededRng rng(3);
  for (uint32_t m : {1u, 2u, 4u}) {
    Nat p = RandomPrime(10, rng);
    PomOpening o = Honest(p, m, rng);
    PomStatement st = PomCommit(Params(), p, o);
    PomProof pf = ProvePom(Params(), st, o, rng);
    EXPECT_TRUE(VerifyPom(Params(), st, pf)) << m;
    EXPECT_EQ(pf.ckt.rounds(),
              static_cast<size_t>(std::countr_zero(PomPaddedGates(p, m))));
  }
}

TEST(PomTest, DeterministicUnderSeed) {
  SeededRng setup(4);
  Nat p = RandomPrime(32, setup);
  PomOpening o = Honest(p, 0, setup);
  PomStatement st = PomCommit(Params(), p, o);
  SeededRng r1("same"), r2("same");
  EXPECT_EQ(ProvePom(Params(), st, o, r1).Serialize(),
            ProvePom(Params(), st, o, r2).Serialize());
}

TEST(PomTest, FalseStatementRefused) {
  SeededRng rng(5);
  Nat p = RandomPrime(10, rng);
  PomOpening o = Honest(p, 0, rng);
  o.v = (o.v + 1) % p;
  PomStatement st = PomCommit(Params(), p, o);
  try {
    ProvePom(Params(), st, o, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadInput);
  }
}

TEST(PomTest, WrongModulusRejected) {
  SeededRng rng(6);
  Nat p = RandomPrime(10, rng);
  Nat q = RandomPrime(10, rng);
  while (q == p) q = RandomPrime(10, rng);
  PomOpening o = Honest(p, 0, rng);
  PomStatement st = PomCommit(Params(), p, o);
  PomProof pf = ProvePom(Params(), st, o, rng);
  PomStatement other = st;
  other.p = q;
  EXPECT_FALSE(VerifyPom(Params(), other, pf));
  PomStatement moved = st;
  moved.V = moved.V + Params().g();
  EXPECT_FALSE(VerifyPom(Params(), moved, pf));
}

// The dealer picks v' != s mod p and the k' with s = v' + k' p mod p0, which
// always exists since p is invertible mod p0. Every such proof must fail.
TEST(PomTest, WraparoundForgeriesRejected) {
  SeededRng rng("wraparound");
  const Nat& p0 = Scalar::Modulus();
  int rejected = 0;
  const int trials = 100;
  for (int i = 0; i < trials; ++i) {
    Nat p = RandomPrime(i % 2 ? 126 : 16, rng);
    PomOpening o = Honest(p, 0, rng);
    Nat wrong = (o.v + 1 + NatRandomBelow(rng, p - 1)) % p;
    ASSERT_NE(wrong, o.v);
    o.v = wrong;
    Nat pinv;
    mpz_invert(pinv.get_mpz_t(), p.get_mpz_t(), p0.get_mpz_t());
    Nat kp = ModSmall((o.digits[0] - o.v) * pinv, p0);
    ASSERT_EQ(ModSmall(o.v + kp * p, p0), o.digits[0]);  // consistent mod p0
    ASSERT_GT(kp, p0 / p);                                // but out of range
    PomStatement st = PomCommit(Params(), p, o);
    PomProof pf = ForgePom(Params(), st, o, rng);
    rejected += !VerifyPom(Params(), st, pf);
  }
  EXPECT_EQ(rejected, trials);
}

// Proofs for two statements with equal residues look alike: equal length and
// per-byte-position means that agree within sampling noise.
TEST(PomTest, ZeroKnowledgeSmoke) {
  SeededRng rng("zk");
  Nat p = RandomPrime(32, rng);
  PomOpening o1 = Honest(p, 0, rng);
  PomOpening o2 = o1;
  o2.digits[0] = o1.digits[0] + p * (1 + NatRandomBelow(rng, Nat(1000)));
  ASSERT_LT(o2.digits[0], Scalar::Modulus());
  PomStatement s1 = PomCommit(Params(), p, o1);
  PomStatement s2 = PomCommit(Params(), p, o2);
  const int samples = 500;
  size_t len = 0;
  std::vector<double> sum1, sum2;
  for (int i = 0; i < samples; ++i) {
    auto b1 = ProvePom(Params(), s1, o1, rng).Serialize();
    auto b2 = ProvePom(Params(), s2, o2, rng).Serialize();
    ASSERT_EQ(b1.size(), b2.size());
    if (len == 0) {
      len = b1.size();
      sum1.assign(len, 0);
      sum2.assign(len, 0);
    }
    ASSERT_EQ(b1.size(), len);
    for (size_t j = 0; j < len; ++j) {
      sum1[j] += b1[j];
      sum2[j] += b2[j];
    }
  }
  // Per-position means of uniform bytes have sd ~ 73.9 / sqrt(samples); the
  // difference of two has sd ~ 4.7. Allow 6 sd, skipping fixed header bytes
  // and the top byte of each encoding.
  size_t checked = 0, outliers = 0;
  for (size_t j = 0; j < len; ++j) {
    double d = std::fabs(sum1[j] - sum2[j]) / samples;
    bool fixed = sum1[j] == sum2[j];
    if (fixed) continue;
    ++checked;
    if (d > 6 * 73.9 * std::sqrt(2.0 / samples)) ++outliers;
  }
  EXPECT_GT(checked, len / 2);
  EXPECT_EQ(outliers, 0u);
}

}  // namespace
}  // namespace wvss
