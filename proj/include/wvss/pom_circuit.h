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

#include <optional>
#include <utility>
#include <vector>

#include "wvss/errors.h"
#include "wvss/nat.h"
#include "wvss/r1cs.h"

namespace wvss {

// Constants of the proof-of-mod circuit for v = s mod p over Z_p0.
struct PomShape {
  Nat p0, p, q, t;
  uint32_t n1 = 0;  // bits for values below p
  uint32_t n2 = 0;  // bits for values up to q

  // Throws kBadPrimes unless 2 <= p and p0 > p^2 + p.
  static PomShape Make(const Nat& p0, const Nat& p) {
    WVSS_ENFORCE(p >= 2 && p0 > p * p + p, ErrorCode::kBadPrimes,
                 "modulus " + p.get_str() + " too large for field");
    PomShape sh;
    sh.p0 = p0;
    sh.p = p;
    sh.q = p0 / p;
    sh.t = p0 % p;
    sh.n1 = NatBitLength(p);
    sh.n2 = NatBitLength(sh.q);
    return sh;
  }

  uint32_t gates() const { return 3 * n1 + 3 * n2 + 1; }
};

struct PomGates {
  Block k, qk, v, pv, qk1, tv;
  uint32_t last = 0;
};

template <class F>
struct PomWires {
  PomGates gates;
  LinExpr<F> s;  // the reduced value
  LinExpr<F> v;  // its residue
};

inline PomGates AllocPomGates(uint32_t first, const PomShape& sh) {
  PomGates g;
  uint32_t at = first;
  auto take = [&](uint32_t n) {
    Block b{at, n};
    at += n;
    return b;
  };
  g.k = take(sh.n2);
  g.qk = take(sh.n2);
  g.v = take(sh.n1);
  g.pv = take(sh.n1);
  g.qk1 = take(sh.n2);
  g.tv = take(sh.n1);
  g.last = at;
  return g;
}

// Proof-of-mod subcircuit. A missing s or v is eliminated: it is defined by
// the subcircuit's own bit blocks (v as its bits, s as v + p k) and the
// corresponding row is dropped.
template <class F>
PomWires<F> BuildPom(CircuitBuilder<F>& cb, const PomShape& sh,
                     const std::optional<LinExpr<F>>& s,
                     const std::optional<LinExpr<F>>& v, const F& z) {
  PomWires<F> out;
  const uint32_t first = static_cast<uint32_t>(cb.gates());
  cb.AllocGates(sh.gates());
  out.gates = AllocPomGates(first, sh);
  const PomGates& g = out.gates;
  using E = LinExpr<F>;
  const F p = F::FromNat(sh.p);
  const E k_bits = BitSum<F>(g.k);

  out.v = v ? *v : BitSum<F>(g.v);
  out.s = s ? *s : out.v + k_bits * p;

  if (s) cb.Equal(k_bits * p, *s - out.v);
  cb.Equal(k_bits + BitSum<F>(g.qk), E::Constant(F::FromNat(sh.q)));
  if (v) cb.Equal(BitSum<F>(g.v), *v);
  cb.Equal(BitSum<F>(g.pv), E::Constant(F::FromNat(sh.p - 1)) - out.v);
  cb.Equal(k_bits + BitSum<F>(g.qk1), E::Constant(F::FromNat(sh.q - 1)));
  cb.Equal(BitSum<F>(g.tv), E::Constant(F::FromNat(sh.t - 1)) - out.v);
  AddBitRows(cb, g.k);
  AddBitRows(cb, g.qk);
  AddBitRows(cb, g.v);
  AddBitRows(cb, g.pv);
  cb.Equal(BitPoly(g.qk1, z), E::Of(Wire::kA, g.last));
  cb.Equal(BitPoly(g.tv, z), E::Of(Wire::kB, g.last));
  return out;
}

// Left/right wires for `value` on n gates: its bits with b = a - 1 when
// value < 2^n, otherwise the fallback a = (value, 0, ..), b = (0, -1, ..)
// which keeps a o b = 0 and the weighted sum but breaks a - b - 1 = 0.
template <class F>
std::pair<std::vector<F>, std::vector<F>> Decomp(const F& value, uint32_t n) {
  std::vector<F> a(n, F::Zero()), b(n, F::Zero());
  const Nat x = value.ToNat();
  if (NatBitLength(x) <= n) {
    for (uint32_t i = 0; i < n; ++i) {
      a[i] = mpz_tstbit(x.get_mpz_t(), i) ? F::One() : F::Zero();
      b[i] = a[i] - F::One();
    }
  } else if (n > 0) {
    a[0] = value;
    for (uint32_t i = 1; i < n; ++i) b[i] = -F::One();
  }
  return {std::move(a), std::move(b)};
}

// Fills the witness of one proof-of-mod subcircuit for integers s < p0 and
// v = s mod p. Throws kBadInput otherwise. With forge set, a false statement
// is filled in anyway using the field quotient (s - v) / p, which is what a
// cheating prover exploiting wraparound would do.
template <class F>
void SolvePom(Witness<F>& w, const PomShape& sh, const PomGates& g, const Nat& s,
              const Nat& v, bool forge = false) {
  const F kf = (F::FromNat(s) - F::FromNat(v)) * F::FromNat(sh.p).Inverse();
  if (!forge) {
    WVSS_ENFORCE(s >= 0 && s < sh.p0, ErrorCode::kBadInput, "value outside field");
    WVSS_ENFORCE(v >= 0 && v < sh.p && (s - v) % sh.p == 0, ErrorCode::kBadInput,
                 "claimed residue is not s mod p");
    // The field quotient must agree with the integer one.
    WVSS_ENFORCE(kf.ToNat() == (s - v) / sh.p, ErrorCode::kBadInput,
                 "quotient mismatch");
  }

  const F kF = kf, vF = F::FromNat(v);
  auto put = [&](Block blk, const F& value) {
    auto [a, b] = Decomp(value, blk.len);
    for (uint32_t i = 0; i < blk.len; ++i) {
      w.a[blk.first + i] = a[i];
      w.b[blk.first + i] = b[i];
      w.c[blk.first + i] = a[i] * b[i];
    }
  };
  put(g.k, kF);
  put(g.qk, F::FromNat(sh.q) - kF);
  put(g.v, vF);
  put(g.pv, F::FromNat(sh.p - 1) - vF);
  put(g.qk1, F::FromNat(sh.q - 1) - kF);
  put(g.tv, F::FromNat(sh.t - 1) - vF);
  const F c1 = w.a[g.qk1.first] - w.b[g.qk1.first] - F::One();
  const F c2 = w.a[g.tv.first] - w.b[g.tv.first] - F::One();
  WVSS_ENFORCE(forge || c1 == F::Zero() || c2 == F::Zero(), ErrorCode::kBadInput,
               "neither disjunct holds");
  w.a[g.last] = c1;
  w.b[g.last] = c2;
  w.c[g.last] = c1 * c2;
}

// Circuit proving that one or more committed residues v_i equal
// (sum_j a_j p0^j) mod p_i for shared digits a_0..a_m.
//
// Digit j is either a committed input or, when no input is given, defined by
// the bit blocks of the first residue's proof-of-mod on that digit.
template <class F>
class ResidueCircuit {
 public:
  enum class Layout { kAuto, kChain, kDirect };

  struct Part {
    Nat p;
    uint32_t v_input;
  };

  ResidueCircuit(size_t n_in, std::vector<std::optional<uint32_t>> digit_inputs,
                 std::vector<Part> parts, Layout layout = Layout::kAuto)
      : n_in_(n_in), digit_inputs_(std::move(digit_inputs)) {
    WVSS_ENFORCE(!digit_inputs_.empty() && !parts.empty(), ErrorCode::kBadInput,
                 "empty residue circuit");
    const Nat& p0 = F::Modulus();
    const uint32_t m = static_cast<uint32_t>(digit_inputs_.size() - 1);
    uint32_t gate = 0;
    for (const Part& part : parts) {
      PartPlan plan;
      plan.part = part;
      plan.shape = PomShape::Make(p0, part.p);
      const Nat bound = Nat(m + 1) * (part.p - 1) * (part.p - 1);
      plan.direct = m >= 2 && (layout == Layout::kDirect ||
                               (layout == Layout::kAuto && bound < p0));
      WVSS_ENFORCE(!plan.direct || bound < p0, ErrorCode::kBadInput,
                   "direct residue sum can overflow the field");
      const size_t poms = m == 0 ? 1 : (plan.direct ? m + 2 : 2 * m + 1);
      for (size_t i = 0; i < poms; ++i) {
        plan.gates.push_back(AllocPomGates(gate, plan.shape));
        gate += plan.shape.gates();
      }
      plans_.push_back(std::move(plan));
    }
    m_mul_ = gate;
  }

  size_t n_in() const { return n_in_; }
  size_t m_mul() const { return m_mul_; }
  uint32_t m() const { return static_cast<uint32_t>(digit_inputs_.size() - 1); }
  size_t pom_count() const {
    size_t n = 0;
    for (const auto& pl : plans_) n += pl.gates.size();
    return n;
  }

  CircuitSpec<F> Build(const F& z) const {
    CircuitBuilder<F> cb(n_in_);
    const uint32_t m = this->m();
    std::vector<std::optional<LinExpr<F>>> digit(m + 1);
    for (uint32_t j = 0; j <= m; ++j) {
      if (digit_inputs_[j]) digit[j] = Input<F>(*digit_inputs_[j]);
    }
    for (const PartPlan& plan : plans_) {
      const LinExpr<F> v_in = Input<F>(plan.part.v_input);
      std::vector<LinExpr<F>> residue;
      for (uint32_t j = 0; j <= m; ++j) {
        std::optional<LinExpr<F>> v;
        if (m == 0) v = v_in;
        PomWires<F> w = BuildPom(cb, plan.shape, digit[j], v, z);
        if (!digit[j]) digit[j] = w.s;
        residue.push_back(w.v);
      }
      if (m == 0) continue;
      if (plan.direct) {
        LinExpr<F> sum;
        Nat tj = 1;
        for (uint32_t j = 0; j <= m; ++j) {
          sum += residue[j] * F::FromNat(tj);
          tj = tj * plan.shape.t % plan.part.p;
        }
        BuildPom(cb, plan.shape, std::optional(sum), std::optional(v_in), z);
      } else {
        LinExpr<F> cur = residue[m];
        const F t = F::FromNat(plan.shape.t);
        for (uint32_t j = m; j-- > 0;) {
          std::optional<LinExpr<F>> v;
          if (j == 0) v = v_in;
          PomWires<F> w = BuildPom(cb, plan.shape,
                                   std::optional(residue[j] + cur * t), v, z);
          cur = w.v;
        }
      }
    }
    WVSS_ENFORCE(cb.gates() == m_mul_, ErrorCode::kBadInput, "layout drift");
    cb.ZeroOutputs();
    return std::move(cb).Finish();
  }

  // Witness from the integer inputs and digits. Throws kBadInput when the
  // statement is false, unless forge is set (see SolvePom).
  Witness<F> Solve(const std::vector<Nat>& inputs, const std::vector<Nat>& digits,
                   bool forge = false) const {
    const uint32_t m = this->m();
    WVSS_ENFORCE(inputs.size() == n_in_ && digits.size() == m + 1,
                 ErrorCode::kDimensionMismatch, "input count mismatch");
    for (uint32_t j = 0; j <= m; ++j) {
      if (digit_inputs_[j]) {
        WVSS_ENFORCE(forge || inputs[*digit_inputs_[j]] == digits[j], ErrorCode::kBadInput,
                     "digit does not match its committed input");
      }
    }
    Witness<F> w;
    w.a.assign(m_mul_, F::Zero());
    w.b.assign(m_mul_, F::Zero());
    w.c.assign(m_mul_, F::Zero());
    for (const PartPlan& plan : plans_) {
      const Nat& p = plan.part.p;
      const Nat& v_in = inputs[plan.part.v_input];
      size_t next = 0;
      std::vector<Nat> residue;
      for (uint32_t j = 0; j <= m; ++j) {
        Nat v = m == 0 ? v_in : Nat(digits[j] % p);
        SolvePom(w, plan.shape, plan.gates[next++], digits[j], v, forge);
        residue.push_back(v);
      }
      if (m == 0) continue;
      if (plan.direct) {
        Nat sum = 0, tj = 1;
        for (uint32_t j = 0; j <= m; ++j) {
          sum += residue[j] * tj;
          tj = tj * plan.shape.t % p;
        }
        SolvePom(w, plan.shape, plan.gates[next++], sum, v_in, forge);
      } else {
        Nat cur = residue[m];
        for (uint32_t j = m; j-- > 0;) {
          Nat s = residue[j] + plan.shape.t * cur;
          Nat v = j == 0 ? v_in : Nat(s % p);
          SolvePom(w, plan.shape, plan.gates[next++], s, v, forge);
          cur = v;
        }
      }
    }
    return w;
  }

 private:
  struct PartPlan {
    Part part;
    PomShape shape;
    bool direct = false;
    std::vector<PomGates> gates;
  };

  size_t n_in_;
  size_t m_mul_ = 0;
  std::vector<std::optional<uint32_t>> digit_inputs_;
  std::vector<PartPlan> plans_;
};

// v = s mod p with inputs (v, s).
template <class F>
ResidueCircuit<F> ModLayout(const Nat& p) {
  return ResidueCircuit<F>(2, {uint32_t{1}}, {{p, 0}});
}

// v = (sum_j a_j p0^j) mod p with inputs (v, a_0, .., a_m).
template <class F>
ResidueCircuit<F> EModLayout(
    const Nat& p, uint32_t m,
    typename ResidueCircuit<F>::Layout layout = ResidueCircuit<F>::Layout::kAuto) {
  std::vector<std::optional<uint32_t>> digits;
  for (uint32_t j = 0; j <= m; ++j) digits.push_back(j + 1);
  return ResidueCircuit<F>(m + 2, std::move(digits), {{p, 0}}, layout);
}

// s_i = (s_0 + sum_{j>=1} a_j p0^j) mod p_i with inputs (s_0, .., s_n) and
// the digits a_1..a_m kept inside the circuit.
template <class F>
ResidueCircuit<F> VssLayout(const std::vector<Nat>& primes, uint32_t m) {
  std::vector<std::optional<uint32_t>> digits(m + 1);
  digits[0] = 0;
  std::vector<typename ResidueCircuit<F>::Part> parts;
  for (size_t i = 0; i < primes.size(); ++i) {
    parts.push_back({primes[i], static_cast<uint32_t>(i + 1)});
  }
  return ResidueCircuit<F>(primes.size() + 1, std::move(digits), std::move(parts));
}

template <class F>
CircuitSpec<F> ModCircuit(const Nat& p, const F& z) {
  return ModLayout<F>(p).Build(z);
}

template <class F>
CircuitSpec<F> EModCircuit(const Nat& p, uint32_t m, const F& z) {
  return EModLayout<F>(p, m).Build(z);
}

template <class F>
CircuitSpec<F> VssCircuit(const std::vector<Nat>& primes, uint32_t m, const F& z) {
  return VssLayout<F>(primes, m).Build(z);
}

}  // namespace wvss
