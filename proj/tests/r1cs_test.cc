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

#include <array>

#include "gtest/gtest.h"
#include "toy_oracle.h"
#include "wvss/group.h"
#include "wvss/pom_circuit.h"
#include "wvss/r1cs.h"
#include "wvss/toy_field.h"

namespace wvss {
namespace {

using F13 = ToyField<13>;

std::vector<F13> Inputs13(std::initializer_list<uint32_t> xs) {
  std::vector<F13> v;
  for (uint32_t x : xs) v.push_back(F13::FromU64(x));
  return v;
}

TEST(R1csTest, SatisfactionAndDimensionChecks) {
  CircuitBuilder<F13> cb(1);
  Block g = cb.AllocGates(1);
  cb.Equal(LinExpr<F13>::Of(Wire::kA, g.first), Input<F13>(0));
  cb.Equal(LinExpr<F13>::Of(Wire::kB, g.first), LinExpr<F13>::Constant(F13::FromU64(3)));
  auto ckt = std::move(cb).Finish();
  ASSERT_EQ(ckt.q(), 2u);

  Witness<F13> w{{F13::FromU64(4)}, {F13::FromU64(3)}, {F13::FromU64(12)}};
  auto v = Inputs13({4});
  EXPECT_TRUE(IsSatisfied<F13>(ckt, v, w));
  w.c[0] = F13::FromU64(11);
  EXPECT_EQ(FirstViolation<F13>(ckt, v, w), -1);
  w.c[0] = F13::FromU64(12);
  auto v_bad = Inputs13({5});
  EXPECT_EQ(FirstViolation<F13>(ckt, v_bad, w), 0);

  auto v_wrong = Inputs13({4, 1});
  try {
    IsSatisfied<F13>(ckt, v_wrong, w);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(R1csTest, BuilderMergesAndDropsTrivialRows) {
  CircuitBuilder<F13> cb(1);
  Block g = cb.AllocGates(1);
  auto a = LinExpr<F13>::Of(Wire::kA, g.first);
  cb.Equal(a + a, a + a);
  EXPECT_EQ(cb.rows(), 0u);
  cb.Equal(a + a + Input<F13>(0), LinExpr<F13>::Constant(F13::One()));
  auto ckt = std::move(cb).Finish();
  ASSERT_EQ(ckt.q(), 1u);
  ASSERT_EQ(ckt.rows[0].a.size(), 1u);
  EXPECT_EQ(ckt.rows[0].a[0].coeff, F13::FromU64(2));
  EXPECT_EQ(ckt.rows[0].v[0].coeff, -F13::One());
  EXPECT_EQ(ckt.rows[0].k, F13::One());
}

TEST(R1csTest, DumpIsDeterministic) {
  auto c1 = ModCircuit<F13>(Nat(3), F13::FromU64(5));
  auto c2 = ModCircuit<F13>(Nat(3), F13::FromU64(5));
  EXPECT_EQ(c1, c2);
  EXPECT_EQ(DumpCircuit(c1), DumpCircuit(c2));
  EXPECT_NE(DumpCircuit(c1), DumpCircuit(ModCircuit<F13>(Nat(3), F13::FromU64(6))));
  EXPECT_EQ(DumpCircuit(c1).rfind("circuit n_in=2 m_mul=16 q=34\n", 0), 0u);
}

// Exhaustive: with 3 bits only 0..7 have a satisfying witness.
TEST(R1csTest, BitRangeExhaustiveOverToyField) {
  auto ckt = BitRangeCircuit<F13>(3);
  ASSERT_EQ(ckt.m_mul, 3u);
  for (uint32_t v = 0; v < 13; ++v) {
    auto in = Inputs13({v});
    uint64_t found = 0;
    std::array<uint32_t, 6> x{};
    Witness<F13> w{std::vector<F13>(3), std::vector<F13>(3), std::vector<F13>(3)};
    for (uint64_t code = 0; code < 4826809; ++code) {  // 13^6
      uint64_t c = code;
      for (int i = 0; i < 6; ++i) {
        x[i] = static_cast<uint32_t>(c % 13);
        c /= 13;
      }
      for (int g = 0; g < 3; ++g) {
        w.a[g] = F13::FromU64(x[2 * g]);
        w.b[g] = F13::FromU64(x[2 * g + 1]);
      }
      if (IsSatisfied<F13>(ckt, in, w)) ++found;
    }
    EXPECT_EQ(found > 0, v < 8) << "v=" << v;
    if (v < 8) EXPECT_EQ(found, 1u) << "v=" << v;
  }
}

TEST(R1csTest, ModCircuitToyShape) {
  PomShape sh = PomShape::Make(Nat(13), Nat(3));
  EXPECT_EQ(sh.q, 4);
  EXPECT_EQ(sh.t, 1);
  EXPECT_EQ(sh.n1, 2u);
  EXPECT_EQ(sh.n2, 3u);
  auto ckt = ModCircuit<F13>(Nat(3), F13::FromU64(2));
  EXPECT_EQ(ckt.m_mul, 3 * sh.n1 + 3 * sh.n2 + 1);
  EXPECT_EQ(ckt.q(), 5 * sh.n1 + 5 * sh.n2 + 9);
  EXPECT_THROW(PomShape::Make(Nat(13), Nat(5)), Error);
}

TEST(R1csTest, ModSolveToyExample) {
  auto layout = ModLayout<F13>(Nat(3));
  auto w = layout.Solve({Nat(2), Nat(11)}, {Nat(11)});
  PomGates g = AllocPomGates(0, PomShape::Make(Nat(13), Nat(3)));
  // k = 3 in binary on the first block.
  EXPECT_EQ(w.a[g.k.first].value(), 1u);
  EXPECT_EQ(w.a[g.k.first + 1].value(), 1u);
  EXPECT_EQ(w.a[g.k.first + 2].value(), 0u);
  for (uint32_t z = 0; z < 13; ++z) {
    auto ckt = layout.Build(F13::FromU64(z));
    EXPECT_TRUE(IsSatisfied<F13>(ckt, Inputs13({2, 11}), w)) << z;
  }
}

TEST(R1csTest, DecompFallback) {
  auto [a, b] = Decomp(F13::FromU64(12), 3);
  EXPECT_EQ(a[0].value(), 12u);
  EXPECT_EQ(a[1].value(), 0u);
  EXPECT_EQ(b[0].value(), 0u);
  EXPECT_EQ(b[1], -F13::One());
  auto [a2, b2] = Decomp(F13::FromU64(5), 3);
  EXPECT_EQ(a2[0].value() + 2 * a2[1].value() + 4 * a2[2].value(), 5u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(a2[i] - b2[i], F13::One());
}

// Every true (v, s) over Z_13 with p = 3 has a witness satisfying every z;
// every false one is refused by the solver.
TEST(R1csTest, ModCompletenessAllToyStatements) {
  auto layout = ModLayout<F13>(Nat(3));
  std::vector<CircuitSpec<F13>> ckts;
  for (uint32_t z = 0; z < 13; ++z) ckts.push_back(layout.Build(F13::FromU64(z)));
  for (uint32_t s = 0; s < 13; ++s) {
    for (uint32_t v = 0; v < 3; ++v) {
      if (s % 3 == v) {
        auto w = layout.Solve({Nat(v), Nat(s)}, {Nat(s)});
        for (const auto& c : ckts) EXPECT_TRUE(IsSatisfied<F13>(c, Inputs13({v, s}), w));
      } else {
        EXPECT_THROW(layout.Solve({Nat(v), Nat(s)}, {Nat(s)}), Error);
      }
    }
  }
}

TEST(R1csTest, ModToySoundnessOracle) {
  testing::ToySoundnessOracle<13> oracle(
      [](F13 z) { return ModCircuit<F13>(Nat(3), z); });
  EXPECT_EQ(oracle.dynamic_rows(), 2u);
  const uint32_t bound = 2 * (2 + 3);
  for (uint32_t v = 0; v < 13; ++v) {
    for (uint32_t s = 0; s < 13; ++s) {
      uint32_t best = oracle.MaxSatisfiedChallenges({v, s});
      if (v < 3 && s % 3 == v) {
        EXPECT_EQ(best, 13u) << "v=" << v << " s=" << s;
      } else {
        EXPECT_LE(best, bound) << "v=" << v << " s=" << s;
      }
    }
  }
}

TEST(R1csTest, EModToyExample) {
  // digits (5, 7, 2) encode 434 = 2 mod 3
  for (auto layout_kind : {ResidueCircuit<F13>::Layout::kChain,
                           ResidueCircuit<F13>::Layout::kDirect}) {
    auto layout = EModLayout<F13>(Nat(3), 2, layout_kind);
    EXPECT_EQ(layout.pom_count(),
              layout_kind == ResidueCircuit<F13>::Layout::kChain ? 5u : 4u);
    auto w = layout.Solve({Nat(2), Nat(5), Nat(7), Nat(2)}, {Nat(5), Nat(7), Nat(2)});
    for (uint32_t z = 0; z < 13; ++z) {
      EXPECT_TRUE(IsSatisfied<F13>(layout.Build(F13::FromU64(z)),
                                   Inputs13({2, 5, 7, 2}), w));
    }
    EXPECT_THROW(
        layout.Solve({Nat(1), Nat(5), Nat(7), Nat(2)}, {Nat(5), Nat(7), Nat(2)}),
        Error);
  }
}

TEST(R1csTest, EModZeroDigitsMatchesMod) {
  for (uint32_t z : {0u, 4u, 9u}) {
    EXPECT_EQ(EModCircuit<F13>(Nat(3), 0, F13::FromU64(z)),
              ModCircuit<F13>(Nat(3), F13::FromU64(z)));
  }
}

TEST(R1csTest, EModToySoundnessOracle) {
  testing::ToySoundnessOracle<13> oracle(
      [](F13 z) { return EModCircuit<F13>(Nat(3), 1, z); });
  const uint32_t bound = 2 * (2 + 3);
  // digits (a0, a1) with value a0 + 13 a1
  for (uint32_t a0 : {0u, 4u, 11u, 12u}) {
    for (uint32_t a1 : {0u, 5u, 12u}) {
      for (uint32_t v = 0; v < 3; ++v) {
        bool honest = (a0 + 13 * a1) % 3 == v;
        uint32_t best = oracle.MaxSatisfiedChallenges({v, a0, a1}, honest ? 12 : bound);
        if (honest) {
          EXPECT_EQ(best, 13u);
        } else {
          EXPECT_LE(best, bound) << a0 << " " << a1 << " " << v;
        }
      }
    }
  }
}

TEST(R1csTest, VssToyCircuit) {
  // Field 31 allows primes 2, 3 and 5 (p^2 + p < 31).
  using F31 = ToyField<31>;
  std::vector<Nat> primes = {Nat(3), Nat(5)};
  auto layout = VssLayout<F31>(primes, 1);
  Nat s0 = 17, a1 = 20;
  Nat s = s0 + 31 * a1;
  std::vector<Nat> in = {s0, Nat(s % 3), Nat(s % 5)};
  auto w = layout.Solve(in, {s0, a1});
  std::vector<F31> v;
  for (const Nat& x : in) v.push_back(F31::FromNat(x));
  for (uint32_t z = 0; z < 31; ++z) {
    EXPECT_TRUE(IsSatisfied<F31>(layout.Build(F31::FromU64(z)), v, w));
  }
  std::vector<Nat> bad = {s0, Nat(s % 3), Nat((s + 1) % 5)};
  EXPECT_THROW(layout.Solve(bad, {s0, a1}), Error);
}

TEST(R1csTest, RealFieldShapes) {
  Nat p = Nat("1125899906842597");  // 2^50 - 27, prime
  auto sh = PomShape::Make(Scalar::Modulus(), p);
  EXPECT_EQ(sh.n1 + sh.n2, 253u);
  auto ckt = ModCircuit<Scalar>(p, Scalar::FromU64(7));
  EXPECT_EQ(ckt.m_mul, 760u);
  EXPECT_EQ(ckt.q(), 5u * 253 + 9);
  Nat s = Nat("123456789012345678901234567890");
  auto w = ModLayout<Scalar>(p).Solve({Nat(s % p), s}, {s});
  std::vector<Scalar> v = {Scalar::FromNat(s % p), Scalar::FromNat(s)};
  EXPECT_TRUE(IsSatisfied<Scalar>(ckt, v, w));
}

}  // namespace
}  // namespace wvss
