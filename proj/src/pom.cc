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

#include "wvss/pom.h"

#include "wvss/errors.h"
#include "wvss/pom_circuit.h"

namespace wvss {
namespace {

Scalar ChallengeZ(Transcript& tr) { return tr.ChallengeScalar("pom/z"); }

Transcript StatementTranscript(const PomStatement& st, const WireCommitments& wires) {
  Transcript tr("wvss/pom/v1");
  tr.AbsorbNat("pom/p0", Scalar::Modulus());
  tr.AbsorbNat("pom/p", st.p);
  tr.AbsorbU64("pom/m", st.digits.size() - 1);
  tr.AbsorbPoint("pom/V", st.V);
  for (const Point& a : st.digits) tr.AbsorbPoint("pom/A", a);
  tr.AbsorbPoint("pom/AI", wires.AI);
  tr.AbsorbPoint("pom/AO", wires.AO);
  return tr;
}

void CheckStatement(const PomStatement& st) {
  WVSS_ENFORCE(!st.digits.empty(), ErrorCode::kBadInput, "no digit commitments");
  PomShape::Make(Scalar::Modulus(), st.p);
}

PomProof Prove(const PedersenParams& pp, const PomStatement& st, const PomOpening& open,
               Rng& rng, bool forge) {
  CheckStatement(st);
  const uint32_t m = static_cast<uint32_t>(st.digits.size() - 1);
  WVSS_ENFORCE(open.digits.size() == m + 1 && open.r_digits.size() == m + 1,
               ErrorCode::kDimensionMismatch, "digit openings do not match statement");
  if (!forge) {
    for (const Nat& d : open.digits) {
      WVSS_ENFORCE(d >= 0 && d < Scalar::Modulus(), ErrorCode::kBadInput,
                   "digit outside field");
    }
    WVSS_ENFORCE(open.v >= 0 && open.v < Scalar::Modulus(), ErrorCode::kBadInput,
                 "residue outside field");
  }
  auto layout = EModLayout<Scalar>(st.p, m);
  std::vector<Nat> inputs = {open.v};
  inputs.insert(inputs.end(), open.digits.begin(), open.digits.end());
  WireOpening wo = RandomizeWires(layout.Solve(inputs, open.digits, forge), rng);
  PomProof pf;
  pf.wires = CommitWires(pp, wo);

  Transcript tr = StatementTranscript(st, pf.wires);
  ScalarCircuit ckt = layout.Build(ChallengeZ(tr));
  std::vector<Point> V = {st.V};
  V.insert(V.end(), st.digits.begin(), st.digits.end());
  std::vector<Scalar> v = {Scalar::FromNat(open.v)};
  std::vector<Scalar> gamma = {open.r_v};
  for (uint32_t j = 0; j <= m; ++j) {
    v.push_back(Scalar::FromNat(open.digits[j]));
    gamma.push_back(open.r_digits[j]);
  }
  pf.ckt = forge ? ProveCircuitUnchecked(pp, ckt, V, v, gamma, pf.wires, wo, tr, rng)
                 : ProveCircuit(pp, ckt, V, v, gamma, pf.wires, wo, tr, rng);
  return pf;
}

}  // namespace

std::vector<uint8_t> PomProof::Serialize() const {
  std::vector<uint8_t> out;
  for (const Point* p : {&wires.AI, &wires.AO}) {
    auto e = p->Encode();
    out.insert(out.end(), e.begin(), e.end());
  }
  auto c = ckt.Serialize();
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

PomProof PomProof::Deserialize(std::span<const uint8_t> in) {
  WVSS_ENFORCE(in.size() >= 2 * kPointBytes, ErrorCode::kMalformedProof,
               "proof truncated");
  PomProof pf;
  Point* dst[2] = {&pf.wires.AI, &pf.wires.AO};
  for (size_t i = 0; i < 2; ++i) {
    auto p = Point::Decode(std::span<const uint8_t, 32>(in.data() + 32 * i, 32));
    WVSS_ENFORCE(p.has_value(), ErrorCode::kMalformedProof, "invalid wire commitment");
    *dst[i] = *p;
  }
  pf.ckt = CircuitProof::Deserialize(in.subspan(2 * kPointBytes));
  return pf;
}

PomStatement PomCommit(const PedersenParams& pp, const Nat& p, const PomOpening& open) {
  WVSS_ENFORCE(open.digits.size() == open.r_digits.size(), ErrorCode::kDimensionMismatch,
               "digit openings mismatch");
  PomStatement st;
  st.p = p;
  st.V = pp.Commit(Scalar::FromNat(open.v), open.r_v);
  for (size_t j = 0; j < open.digits.size(); ++j) {
    st.digits.push_back(pp.Commit(Scalar::FromNat(open.digits[j]), open.r_digits[j]));
  }
  return st;
}

PomProof ProvePom(const PedersenParams& pp, const PomStatement& st,
                  const PomOpening& open, Rng& rng) {
  return Prove(pp, st, open, rng, false);
}

PomProof ForgePom(const PedersenParams& pp, const PomStatement& st,
                  const PomOpening& open, Rng& rng) {
  return Prove(pp, st, open, rng, true);
}

bool VerifyPom(const PedersenParams& pp, const PomStatement& st, const PomProof& proof) {
  CheckStatement(st);
  const uint32_t m = static_cast<uint32_t>(st.digits.size() - 1);
  auto layout = EModLayout<Scalar>(st.p, m);
  if (2 * PaddedGates(layout.m_mul()) > pp.width()) return false;
  Transcript tr = StatementTranscript(st, proof.wires);
  ScalarCircuit ckt = layout.Build(ChallengeZ(tr));
  std::vector<Point> V = {st.V};
  V.insert(V.end(), st.digits.begin(), st.digits.end());
  return VerifyCircuit(pp, ckt, V, proof.wires, proof.ckt, tr);
}

size_t PomPaddedGates(const Nat& p, uint32_t m) {
  return PaddedGates(EModLayout<Scalar>(p, m).m_mul());
}

}  // namespace wvss
