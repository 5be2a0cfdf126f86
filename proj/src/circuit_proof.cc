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

#include "wvss/circuit_proof.h"

#include <bit>
#include <cstring>

#include "wvss/errors.h"

namespace wvss {
namespace {

constexpr size_t kMaxRounds = 32;
// Rounds run against the unfolded generators before they are recombined.
constexpr size_t kFoldBatch = 3;

Scalar Challenge(Transcript& tr, std::string_view label) {
  while (true) {
    Scalar c = tr.ChallengeScalar(label);
    if (!c.IsZero()) return c;
  }
}

Scalar Inner(std::span<const Scalar> a, std::span<const Scalar> b) {
  Scalar acc;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

struct Weights {
  std::vector<Scalar> wL, wR, wO, wV;
  Scalar wc;
};

Weights Flatten(const ScalarCircuit& ckt, size_t n, const Scalar& w) {
  Weights out;
  out.wL.assign(n, Scalar());
  out.wR.assign(n, Scalar());
  out.wO.assign(n, Scalar());
  out.wV.assign(ckt.n_in, Scalar());
  Scalar wp = w;
  for (const auto& row : ckt.rows) {
    for (const auto& t : row.a) out.wL[t.index] += wp * t.coeff;
    for (const auto& t : row.b) out.wR[t.index] += wp * t.coeff;
    for (const auto& t : row.c) out.wO[t.index] += wp * t.coeff;
    for (const auto& t : row.v) out.wV[t.index] += wp * t.coeff;
    out.wc += wp * row.k;
    wp *= w;
  }
  return out;
}

void CheckShape(const PedersenParams& pp, const ScalarCircuit& ckt,
                std::span<const Point> V) {
  WVSS_ENFORCE(V.size() == ckt.n_in, ErrorCode::kDimensionMismatch,
               "input commitment count does not match circuit");
  for (const auto& row : ckt.rows) {
    bool ok = true;
    for (const auto& t : row.a) ok = ok && t.index < ckt.m_mul;
    for (const auto& t : row.b) ok = ok && t.index < ckt.m_mul;
    for (const auto& t : row.c) ok = ok && t.index < ckt.m_mul;
    for (const auto& t : row.v) ok = ok && t.index < ckt.n_in;
    WVSS_ENFORCE(ok, ErrorCode::kDimensionMismatch, "constraint index out of range");
  }
  WVSS_ENFORCE(2 * PaddedGates(ckt.m_mul) <= pp.width(), ErrorCode::kVectorTooWide,
               "circuit needs " + std::to_string(2 * PaddedGates(ckt.m_mul)) +
                   " generators, have " + std::to_string(pp.width()));
}

void AbsorbStatement(Transcript& tr, const ScalarCircuit& ckt, size_t n,
                     std::span<const Point> V, const WireCommitments& wires) {
  tr.AbsorbU64("ckt/n_in", ckt.n_in);
  tr.AbsorbU64("ckt/m_mul", ckt.m_mul);
  tr.AbsorbU64("ckt/q", ckt.rows.size());
  tr.AbsorbU64("ckt/n", n);
  for (const Point& p : V) tr.AbsorbPoint("ckt/V", p);
  tr.AbsorbPoint("ckt/AI", wires.AI);
  tr.AbsorbPoint("ckt/AO", wires.AO);
}

std::vector<Scalar> Padded(const std::vector<Scalar>& x, size_t n) {
  std::vector<Scalar> out(x);
  out.resize(n);
  return out;
}

// Inner product argument for P = <a, G> + <b, H'> + <a, b> Q where
// H'_i = hcoef[i] * H_i. Generators are folded lazily: each current generator
// is a known combination of base points, recombined every kFoldBatch rounds.
void ProveInner(std::vector<Point> gb, std::vector<Point> hb, std::vector<Scalar> cg,
                std::vector<Scalar> ch, const Point& Q, std::vector<Scalar> a,
                std::vector<Scalar> b, Transcript& tr, CircuitProof& out) {
  size_t n = a.size();
  size_t since_fold = 0;
  std::vector<Scalar> sc;
  std::vector<Point> pts;
  while (n > 1) {
    const size_t half = n / 2;
    const size_t nb = gb.size();
    auto msm = [&](bool left) {
      sc.clear();
      pts.clear();
      for (size_t idx = 0; idx < nb; ++idx) {
        size_t r = idx % n;
        bool hi = r >= half;
        // L pairs a_lo with G_hi and b_hi with H_lo; R the mirror image.
        if (hi == left) {
          sc.push_back(a[left ? r - half : r + half] * cg[idx]);
          pts.push_back(gb[idx]);
        }
        if (hi != left) {
          sc.push_back(b[left ? r + half : r - half] * ch[idx]);
          pts.push_back(hb[idx]);
        }
      }
      std::span<const Scalar> alo(a.data(), half), ahi(a.data() + half, half);
      std::span<const Scalar> blo(b.data(), half), bhi(b.data() + half, half);
      sc.push_back(left ? Inner(alo, bhi) : Inner(ahi, blo));
      pts.push_back(Q);
      return Msm(sc, pts);
    };
    Point L = msm(true);
    Point R = msm(false);
    tr.AbsorbPoint("ipa/L", L);
    tr.AbsorbPoint("ipa/R", R);
    out.L.push_back(L);
    out.R.push_back(R);
    Scalar u = Challenge(tr, "ipa/u");
    Scalar uinv = u.Inverse();
    for (size_t k = 0; k < half; ++k) {
      a[k] = a[k] * u + a[k + half] * uinv;
      b[k] = b[k] * uinv + b[k + half] * u;
    }
    a.resize(half);
    b.resize(half);
    for (size_t idx = 0; idx < nb; ++idx) {
      bool lo = idx % n < half;
      cg[idx] *= lo ? uinv : u;
      ch[idx] *= lo ? u : uinv;
    }
    n = half;
    if (++since_fold == kFoldBatch && n > 1) {
      since_fold = 0;
      const size_t per = nb / n;
      std::vector<Point> ng(n), nh(n);
      std::vector<Scalar> s1(per), s2(per);
      std::vector<Point> p1(per), p2(per);
      for (size_t k = 0; k < n; ++k) {
        for (size_t j = 0; j < per; ++j) {
          s1[j] = cg[k + j * n];
          p1[j] = gb[k + j * n];
          s2[j] = ch[k + j * n];
          p2[j] = hb[k + j * n];
        }
        ng[k] = Msm(s1, p1);
        nh[k] = Msm(s2, p2);
      }
      gb = std::move(ng);
      hb = std::move(nh);
      cg.assign(n, Scalar::One());
      ch.assign(n, Scalar::One());
    }
  }
  out.a = a[0];
  out.b = b[0];
}

CircuitProof Prove(const PedersenParams& pp, const ScalarCircuit& ckt,
                   std::span<const Point> V, std::span<const Scalar> gamma,
                   const WireCommitments& wires, const WireOpening& open, Transcript& tr,
                   Rng& rng) {
  const size_t n = PaddedGates(ckt.m_mul);
  const auto& gv = pp.g_vec();

  std::vector<Scalar> aL = Padded(open.w.a, n), aR = Padded(open.w.b, n),
                      aO = Padded(open.w.c, n);
  AbsorbStatement(tr, ckt, n, V, wires);

  CircuitProof pf;
  std::vector<Scalar> sL(n), sR(n);
  for (auto& x : sL) x = Scalar::Random(rng);
  for (auto& x : sR) x = Scalar::Random(rng);
  Scalar rho = Scalar::Random(rng);
  {
    std::vector<Scalar> sc;
    std::vector<Point> pts;
    sc.reserve(2 * n + 1);
    pts.reserve(2 * n + 1);
    for (size_t i = 0; i < n; ++i) {
      sc.push_back(sL[i]);
      pts.push_back(gv[2 * i]);
      sc.push_back(sR[i]);
      pts.push_back(gv[2 * i + 1]);
    }
    sc.push_back(rho);
    pts.push_back(pp.h());
    pf.S = Msm(sc, pts);
  }
  tr.AbsorbPoint("ckt/S", pf.S);
  Scalar y = Challenge(tr, "ckt/y");
  Scalar w = Challenge(tr, "ckt/w");

  Weights W = Flatten(ckt, n, w);
  std::vector<Scalar> yn = ScalarPowers(y, n);
  std::vector<Scalar> yinv = ScalarPowers(y.Inverse(), n);

  std::vector<Scalar> l1(n), r0(n), r1(n), r3(n);
  for (size_t i = 0; i < n; ++i) {
    l1[i] = aL[i] + yinv[i] * W.wR[i];
    r0[i] = W.wO[i] - yn[i];
    r1[i] = yn[i] * aR[i] + W.wL[i];
    r3[i] = yn[i] * sR[i];
  }
  const std::vector<Scalar>& l2 = aO;
  const std::vector<Scalar>& l3 = sL;
  Scalar t1 = Inner(l1, r0);
  Scalar t3 = Inner(l2, r1) + Inner(l3, r0);
  Scalar t4 = Inner(l1, r3) + Inner(l3, r1);
  Scalar t5 = Inner(l2, r3);
  Scalar t6 = Inner(l3, r3);

  Scalar tau1 = Scalar::Random(rng), tau3 = Scalar::Random(rng),
         tau4 = Scalar::Random(rng), tau5 = Scalar::Random(rng),
         tau6 = Scalar::Random(rng);
  pf.T1 = pp.Commit(t1, tau1);
  pf.T3 = pp.Commit(t3, tau3);
  pf.T4 = pp.Commit(t4, tau4);
  pf.T5 = pp.Commit(t5, tau5);
  pf.T6 = pp.Commit(t6, tau6);
  for (const Point* t : {&pf.T1, &pf.T3, &pf.T4, &pf.T5, &pf.T6}) {
    tr.AbsorbPoint("ckt/T", *t);
  }
  Scalar x = Challenge(tr, "ckt/x");
  Scalar x2 = x * x, x3 = x2 * x;

  std::vector<Scalar> l(n), r(n);
  for (size_t i = 0; i < n; ++i) {
    l[i] = l1[i] * x + l2[i] * x2 + l3[i] * x3;
    r[i] = r0[i] + r1[i] * x + r3[i] * x3;
  }
  pf.t_hat = Inner(l, r);
  Scalar wv_gamma = Inner(W.wV, gamma);
  Scalar x4 = x3 * x, x5 = x4 * x, x6 = x5 * x;
  pf.tau_x = tau1 * x + tau3 * x3 + tau4 * x4 + tau5 * x5 + tau6 * x6 + x2 * wv_gamma;
  pf.mu = open.r_i * x + open.r_o * x2 + rho * x3;
  tr.AbsorbScalar("ckt/tau_x", pf.tau_x);
  tr.AbsorbScalar("ckt/mu", pf.mu);
  tr.AbsorbScalar("ckt/t_hat", pf.t_hat);
  Scalar w_ipa = Challenge(tr, "ckt/w_ipa");
  Point Q = w_ipa * pp.g();

  std::vector<Point> gb(n), hb(n);
  for (size_t i = 0; i < n; ++i) {
    gb[i] = gv[2 * i];
    hb[i] = gv[2 * i + 1];
  }
  ProveInner(std::move(gb), std::move(hb), std::vector<Scalar>(n, Scalar::One()),
             std::move(yinv), Q, std::move(l), std::move(r), tr, pf);
  tr.AbsorbScalar("ipa/a", pf.a);
  tr.AbsorbScalar("ipa/b", pf.b);
  return pf;
}

void AppendU32(std::vector<uint8_t>& out, uint32_t x) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(x >> (8 * i)));
}

uint32_t ReadU32(const uint8_t* p) {
  return uint32_t{p[0]} | uint32_t{p[1]} << 8 | uint32_t{p[2]} << 16 |
         uint32_t{p[3]} << 24;
}

}  // namespace

size_t PaddedGates(size_t m_mul) { return std::bit_ceil(std::max<size_t>(m_mul, 1)); }

WireCommitments CommitWires(const PedersenParams& pp, const WireOpening& open) {
  const size_t m = open.w.a.size();
  WVSS_ENFORCE(open.w.b.size() == m && open.w.c.size() == m,
               ErrorCode::kDimensionMismatch, "wire vectors differ in length");
  WVSS_ENFORCE(2 * m <= pp.width(), ErrorCode::kVectorTooWide,
               "not enough generators for wires");
  std::vector<Scalar> si, so;
  std::vector<Point> pi, po;
  for (size_t i = 0; i < m; ++i) {
    si.push_back(open.w.a[i]);
    pi.push_back(pp.g_vec()[2 * i]);
    si.push_back(open.w.b[i]);
    pi.push_back(pp.g_vec()[2 * i + 1]);
    so.push_back(open.w.c[i]);
    po.push_back(pp.g_vec()[2 * i]);
  }
  si.push_back(open.r_i);
  pi.push_back(pp.h());
  so.push_back(open.r_o);
  po.push_back(pp.h());
  return WireCommitments{Msm(si, pi), Msm(so, po)};
}

WireOpening RandomizeWires(ScalarWitness w, Rng& rng) {
  WireOpening o;
  o.w = std::move(w);
  o.r_i = Scalar::Random(rng);
  o.r_o = Scalar::Random(rng);
  return o;
}

std::vector<uint8_t> CircuitProof::Serialize() const {
  std::vector<uint8_t> out;
  out.reserve(SerializedSize());
  AppendU32(out, static_cast<uint32_t>(group_elements()));
  AppendU32(out, static_cast<uint32_t>(kScalars));
  auto put_point = [&](const Point& p) {
    auto e = p.Encode();
    out.insert(out.end(), e.begin(), e.end());
  };
  for (const Point* p : {&S, &T1, &T3, &T4, &T5, &T6}) put_point(*p);
  for (const Point& p : L) put_point(p);
  for (const Point& p : R) put_point(p);
  for (const Scalar* s : {&tau_x, &mu, &t_hat, &a, &b}) {
    auto e = s->ToBytes();
    out.insert(out.end(), e.begin(), e.end());
  }
  return out;
}

size_t CircuitProof::SerializedSize() const {
  return 8 + kPointBytes * group_elements() + kScalarBytes * kScalars;
}

CircuitProof CircuitProof::Deserialize(std::span<const uint8_t> in) {
  WVSS_ENFORCE(in.size() >= 8, ErrorCode::kMalformedProof, "proof header truncated");
  const uint32_t groups = ReadU32(in.data());
  const uint32_t scalars = ReadU32(in.data() + 4);
  WVSS_ENFORCE(scalars == kScalars, ErrorCode::kMalformedProof, "bad scalar count");
  WVSS_ENFORCE(groups >= 6 && (groups - 6) % 2 == 0 && (groups - 6) / 2 <= kMaxRounds,
               ErrorCode::kMalformedProof, "bad group element count");
  WVSS_ENFORCE(in.size() == 8 + size_t{groups} * kPointBytes + kScalars * kScalarBytes,
               ErrorCode::kMalformedProof, "proof length does not match header");
  const uint8_t* p = in.data() + 8;
  auto get_point = [&]() {
    auto pt = Point::Decode(std::span<const uint8_t, 32>(p, 32));
    WVSS_ENFORCE(pt.has_value(), ErrorCode::kMalformedProof, "invalid group element");
    p += kPointBytes;
    return *pt;
  };
  auto get_scalar = [&]() {
    auto s = Scalar::FromCanonicalBytes(std::span<const uint8_t, 32>(p, 32));
    WVSS_ENFORCE(s.has_value(), ErrorCode::kMalformedProof, "non-canonical scalar");
    p += kScalarBytes;
    return *s;
  };
  CircuitProof pf;
  pf.S = get_point();
  pf.T1 = get_point();
  pf.T3 = get_point();
  pf.T4 = get_point();
  pf.T5 = get_point();
  pf.T6 = get_point();
  const size_t k = (groups - 6) / 2;
  for (size_t i = 0; i < k; ++i) pf.L.push_back(get_point());
  for (size_t i = 0; i < k; ++i) pf.R.push_back(get_point());
  pf.tau_x = get_scalar();
  pf.mu = get_scalar();
  pf.t_hat = get_scalar();
  pf.a = get_scalar();
  pf.b = get_scalar();
  return pf;
}

CircuitProof ProveCircuit(const PedersenParams& pp, const ScalarCircuit& ckt,
                          std::span<const Point> V, std::span<const Scalar> v,
                          std::span<const Scalar> gamma, const WireCommitments& wires,
                          const WireOpening& open, Transcript& tr, Rng& rng) {
  CheckShape(pp, ckt, V);
  WVSS_ENFORCE(gamma.size() == v.size(), ErrorCode::kDimensionMismatch,
               "blinding count does not match inputs");
  auto bad = FirstViolation<Scalar>(ckt, v, open.w);
  WVSS_ENFORCE(!bad.has_value(), ErrorCode::kUnsatisfiedWitness,
               *bad < 0 ? "gate " + std::to_string(-*bad - 1) + " violated"
                        : "constraint " + std::to_string(*bad) + " violated");
  return Prove(pp, ckt, V, gamma, wires, open, tr, rng);
}

CircuitProof ProveCircuitUnchecked(const PedersenParams& pp, const ScalarCircuit& ckt,
                                   std::span<const Point> V, std::span<const Scalar> v,
                                   std::span<const Scalar> gamma,
                                   const WireCommitments& wires, const WireOpening& open,
                                   Transcript& tr, Rng& rng) {
  CheckShape(pp, ckt, V);
  WVSS_ENFORCE(gamma.size() == v.size() && open.w.a.size() == ckt.m_mul &&
                   open.w.b.size() == ckt.m_mul && open.w.c.size() == ckt.m_mul,
               ErrorCode::kDimensionMismatch, "witness shape does not match circuit");
  return Prove(pp, ckt, V, gamma, wires, open, tr, rng);
}

bool VerifyCircuit(const PedersenParams& pp, const ScalarCircuit& ckt,
                   std::span<const Point> V, const WireCommitments& wires,
                   const CircuitProof& pf, Transcript& tr) {
  CheckShape(pp, ckt, V);
  const size_t n = PaddedGates(ckt.m_mul);
  const size_t k = static_cast<size_t>(std::countr_zero(n));
  if (pf.L.size() != k || pf.R.size() != k) return false;

  AbsorbStatement(tr, ckt, n, V, wires);
  tr.AbsorbPoint("ckt/S", pf.S);
  Scalar y = Challenge(tr, "ckt/y");
  Scalar w = Challenge(tr, "ckt/w");
  for (const Point* t : {&pf.T1, &pf.T3, &pf.T4, &pf.T5, &pf.T6}) {
    tr.AbsorbPoint("ckt/T", *t);
  }
  Scalar x = Challenge(tr, "ckt/x");
  tr.AbsorbScalar("ckt/tau_x", pf.tau_x);
  tr.AbsorbScalar("ckt/mu", pf.mu);
  tr.AbsorbScalar("ckt/t_hat", pf.t_hat);
  Scalar w_ipa = Challenge(tr, "ckt/w_ipa");
  std::vector<Scalar> u(k), uinv(k);
  for (size_t j = 0; j < k; ++j) {
    tr.AbsorbPoint("ipa/L", pf.L[j]);
    tr.AbsorbPoint("ipa/R", pf.R[j]);
    u[j] = Challenge(tr, "ipa/u");
  }
  tr.AbsorbScalar("ipa/a", pf.a);
  tr.AbsorbScalar("ipa/b", pf.b);
  Scalar beta = Challenge(tr, "ckt/beta");

  uinv = u;
  BatchInvert(uinv);
  // s[i] multiplies u_j for each round j whose split bit of i is set.
  std::vector<Scalar> s(n);
  s[0] = Scalar::One();
  for (const Scalar& ui : uinv) s[0] *= ui;
  for (size_t i = 1; i < n; ++i) {
    size_t lg = static_cast<size_t>(std::bit_width(i) - 1);
    size_t hb = size_t{1} << lg;
    const Scalar& uj = u[k - 1 - lg];
    s[i] = s[i - hb] * uj * uj;
  }

  Weights W = Flatten(ckt, n, w);
  std::vector<Scalar> yinv = ScalarPowers(y.Inverse(), n);
  Scalar delta;
  for (size_t i = 0; i < n; ++i) delta += yinv[i] * W.wR[i] * W.wL[i];

  Scalar x2 = x * x, x3 = x2 * x, x4 = x3 * x, x5 = x4 * x, x6 = x5 * x;
  const auto& gv = pp.g_vec();
  std::vector<Scalar> sc;
  std::vector<Point> pts;
  const size_t total = 2 * n + 2 + V.size() + 3 + 5 + 2 * k;
  sc.reserve(total);
  pts.reserve(total);
  for (size_t i = 0; i < n; ++i) {
    sc.push_back(x * yinv[i] * W.wR[i] - pf.a * s[i]);
    pts.push_back(gv[2 * i]);
    sc.push_back(yinv[i] * (x * W.wL[i] + W.wO[i] - pf.b * s[n - 1 - i]) -
                 Scalar::One());
    pts.push_back(gv[2 * i + 1]);
  }
  sc.push_back(-pf.mu - beta * pf.tau_x);
  pts.push_back(pp.h());
  sc.push_back(w_ipa * (pf.t_hat - pf.a * pf.b) +
               beta * (x2 * (delta + W.wc) - pf.t_hat));
  pts.push_back(pp.g());
  for (size_t j = 0; j < V.size(); ++j) {
    sc.push_back(beta * x2 * W.wV[j]);
    pts.push_back(V[j]);
  }
  sc.insert(sc.end(), {x, x2, x3});
  pts.insert(pts.end(), {wires.AI, wires.AO, pf.S});
  sc.insert(sc.end(), {beta * x, beta * x3, beta * x4, beta * x5, beta * x6});
  pts.insert(pts.end(), {pf.T1, pf.T3, pf.T4, pf.T5, pf.T6});
  for (size_t j = 0; j < k; ++j) {
    sc.push_back(u[j] * u[j]);
    pts.push_back(pf.L[j]);
    sc.push_back(uinv[j] * uinv[j]);
    pts.push_back(pf.R[j]);
  }
  return Msm(sc, pts).IsIdentity();
}

}  // namespace wvss
