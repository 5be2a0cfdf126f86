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

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "wvss/errors.h"
#include "wvss/nat.h"

namespace wvss {

template <class F>
concept CircuitField = requires(F a, F b, const Nat& n) {
  { F::Zero() } -> std::convertible_to<F>;
  { F::One() } -> std::convertible_to<F>;
  { F::FromU64(uint64_t{}) } -> std::convertible_to<F>;
  { F::FromNat(n) } -> std::convertible_to<F>;
  { F::Modulus() } -> std::convertible_to<const Nat&>;
  { a.ToNat() } -> std::convertible_to<Nat>;
  { a + b } -> std::convertible_to<F>;
  { a - b } -> std::convertible_to<F>;
  { a * b } -> std::convertible_to<F>;
  { -a } -> std::convertible_to<F>;
  { a == b } -> std::convertible_to<bool>;
  { a.Inverse() } -> std::convertible_to<F>;
};

enum class Wire : uint8_t { kA, kB, kC, kV };

template <class F>
struct Term {
  uint32_t index;
  F coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

// One linear row: <a_row, a> + <b_row, b> + <c_row, c> = <v_row, v> + k.
template <class F>
struct Constraint {
  std::vector<Term<F>> a, b, c, v;
  F k;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

// Arithmetic circuit in the form a o b = c, W_L a + W_R b + W_O c = W_V v + k,
// stored row by row.
template <class F>
struct CircuitSpec {
  size_t n_in = 0;
  size_t m_mul = 0;
  std::vector<Constraint<F>> rows;

  size_t q() const { return rows.size(); }
  friend bool operator==(const CircuitSpec&, const CircuitSpec&) = default;
};

template <class F>
struct Witness {
  std::vector<F> a, b, c;
  friend bool operator==(const Witness&, const Witness&) = default;
};

// Index of the first violated gate or row, or nullopt if satisfied. Gate
// violations are reported as -(gate + 1).
template <class F>
std::optional<long> FirstViolation(const CircuitSpec<F>& ckt,
                                   std::span<const F> v, const Witness<F>& w) {
  WVSS_ENFORCE(v.size() == ckt.n_in && w.a.size() == ckt.m_mul &&
                   w.b.size() == ckt.m_mul && w.c.size() == ckt.m_mul,
               ErrorCode::kDimensionMismatch, "witness shape does not match circuit");
  for (size_t i = 0; i < ckt.m_mul; ++i) {
    if (!(w.a[i] * w.b[i] == w.c[i])) return -static_cast<long>(i) - 1;
  }
  for (size_t r = 0; r < ckt.rows.size(); ++r) {
    const Constraint<F>& row = ckt.rows[r];
    F lhs = F::Zero(), rhs = row.k;
    for (const auto& t : row.a) lhs = lhs + t.coeff * w.a[t.index];
    for (const auto& t : row.b) lhs = lhs + t.coeff * w.b[t.index];
    for (const auto& t : row.c) lhs = lhs + t.coeff * w.c[t.index];
    for (const auto& t : row.v) rhs = rhs + t.coeff * v[t.index];
    if (!(lhs == rhs)) return static_cast<long>(r);
  }
  return std::nullopt;
}

template <class F>
bool IsSatisfied(const CircuitSpec<F>& ckt, std::span<const F> v,
                 const Witness<F>& w) {
  return !FirstViolation(ckt, v, w).has_value();
}

template <class F>
std::string DumpCircuit(const CircuitSpec<F>& ckt) {
  std::ostringstream os;
  os << "circuit n_in=" << ckt.n_in << " m_mul=" << ckt.m_mul
     << " q=" << ckt.rows.size() << "\n";
  auto dump = [&](const char* name, const std::vector<Term<F>>& ts) {
    for (const auto& t : ts) {
      os << " " << name << "[" << t.index << "]*" << t.coeff.ToNat().get_str(10);
    }
  };
  for (size_t r = 0; r < ckt.rows.size(); ++r) {
    const auto& row = ckt.rows[r];
    os << "row " << r << ":";
    dump("a", row.a);
    dump("b", row.b);
    dump("c", row.c);
    os << " =";
    dump("v", row.v);
    os << " + " << row.k.ToNat().get_str(10) << "\n";
  }
  return os.str();
}

// A linear form over wires, inputs and a constant.
template <class F>
struct LinExpr {
  struct Item {
    Wire wire;
    uint32_t index;
    F coeff;
  };
  std::vector<Item> items;
  F constant = F::Zero();

  static LinExpr Constant(const F& c) {
    LinExpr e;
    e.constant = c;
    return e;
  }
  static LinExpr Of(Wire wire, uint32_t index, const F& coeff = F::One()) {
    LinExpr e;
    e.items.push_back({wire, index, coeff});
    return e;
  }

  LinExpr& operator+=(const LinExpr& o) {
    items.insert(items.end(), o.items.begin(), o.items.end());
    constant = constant + o.constant;
    return *this;
  }
  LinExpr& operator-=(const LinExpr& o) { return *this += o * -F::One(); }
  friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
  friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
  friend LinExpr operator*(LinExpr a, const F& s) {
    for (auto& it : a.items) it.coeff = it.coeff * s;
    a.constant = a.constant * s;
    return a;
  }
};

// Contiguous range of multiplication gates.
struct Block {
  uint32_t first = 0;
  uint32_t len = 0;
};

template <class F>
class CircuitBuilder {
 public:
  explicit CircuitBuilder(size_t n_in) { ckt_.n_in = n_in; }

  Block AllocGates(uint32_t count) {
    Block b{static_cast<uint32_t>(ckt_.m_mul), count};
    ckt_.m_mul += count;
    return b;
  }

  // Adds the row lhs = rhs. Rows that cancel to 0 = 0 are dropped.
  void Equal(const LinExpr<F>& lhs, const LinExpr<F>& rhs) {
    LinExpr<F> d = lhs - rhs;
    Constraint<F> row;
    std::vector<typename LinExpr<F>::Item> items = d.items;
    std::stable_sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
      return x.wire != y.wire ? x.wire < y.wire : x.index < y.index;
    });
    for (size_t i = 0; i < items.size();) {
      size_t j = i;
      F sum = F::Zero();
      while (j < items.size() && items[j].wire == items[i].wire &&
             items[j].index == items[i].index) {
        sum = sum + items[j].coeff;
        ++j;
      }
      if (!(sum == F::Zero())) {
        switch (items[i].wire) {
          case Wire::kA: row.a.push_back({items[i].index, sum}); break;
          case Wire::kB: row.b.push_back({items[i].index, sum}); break;
          case Wire::kC: row.c.push_back({items[i].index, sum}); break;
          case Wire::kV: row.v.push_back({items[i].index, -sum}); break;
        }
      }
      i = j;
    }
    row.k = -d.constant;
    if (row.a.empty() && row.b.empty() && row.c.empty() && row.v.empty() &&
        row.k == F::Zero()) {
      return;
    }
    ckt_.rows.push_back(std::move(row));
  }

  // c_i = 0 for every gate allocated so far.
  void ZeroOutputs() {
    for (uint32_t i = 0; i < ckt_.m_mul; ++i) {
      Constraint<F> row;
      row.c.push_back({i, F::One()});
      row.k = F::Zero();
      ckt_.rows.push_back(std::move(row));
    }
  }

  size_t gates() const { return ckt_.m_mul; }
  size_t rows() const { return ckt_.rows.size(); }
  CircuitSpec<F> Finish() && { return std::move(ckt_); }

 private:
  CircuitSpec<F> ckt_;
};

template <class F>
LinExpr<F> Input(uint32_t index) {
  return LinExpr<F>::Of(Wire::kV, index);
}

// sum_i 2^i a_{first+i}
template <class F>
LinExpr<F> BitSum(Block blk) {
  LinExpr<F> e;
  F pow = F::One();
  const F two = F::FromU64(2);
  for (uint32_t i = 0; i < blk.len; ++i) {
    e.items.push_back({Wire::kA, blk.first + i, pow});
    pow = pow * two;
  }
  return e;
}

// a_i - b_i - 1 = 0 on every gate of the block.
template <class F>
void AddBitRows(CircuitBuilder<F>& cb, Block blk) {
  for (uint32_t i = 0; i < blk.len; ++i) {
    cb.Equal(LinExpr<F>::Of(Wire::kA, blk.first + i) -
                 LinExpr<F>::Of(Wire::kB, blk.first + i),
             LinExpr<F>::Constant(F::One()));
  }
}

// sum_i z^i (a_i - b_i - 1)
template <class F>
LinExpr<F> BitPoly(Block blk, const F& z) {
  LinExpr<F> e;
  F pow = F::One();
  for (uint32_t i = 0; i < blk.len; ++i) {
    e.items.push_back({Wire::kA, blk.first + i, pow});
    e.items.push_back({Wire::kB, blk.first + i, -pow});
    e.constant = e.constant - pow;
    pow = pow * z;
  }
  return e;
}

// n gates whose left wires are the bits of `value`: 0 <= value < 2^n.
// With enforce_bits false the a - b - 1 rows are left to a disjunction.
template <class F>
Block RangeSubckt(CircuitBuilder<F>& cb, const LinExpr<F>& value, uint32_t n,
                  bool enforce_bits = true) {
  Block blk = cb.AllocGates(n);
  cb.Equal(BitSum<F>(blk), value);
  if (enforce_bits) AddBitRows(cb, blk);
  return blk;
}

// One extra gate enforcing that at least one of two relaxed range blocks is
// a genuine bit decomposition. Returns the gate index.
template <class F>
uint32_t DisjunctionSubckt(CircuitBuilder<F>& cb, Block left, Block right,
                           const F& z) {
  Block g = cb.AllocGates(1);
  cb.Equal(BitPoly(left, z), LinExpr<F>::Of(Wire::kA, g.first));
  cb.Equal(BitPoly(right, z), LinExpr<F>::Of(Wire::kB, g.first));
  return g.first;
}

// 0 <= v < 2^n on the single input.
template <class F>
CircuitSpec<F> BitRangeCircuit(uint32_t n) {
  CircuitBuilder<F> cb(1);
  RangeSubckt(cb, Input<F>(0), n);
  cb.ZeroOutputs();
  return std::move(cb).Finish();
}

// 0 <= v < u using two n-bit range checks on v and u - 1 - v, u <= 2^n.
template <class F>
CircuitSpec<F> RangeCircuit(const Nat& u, uint32_t n) {
  CircuitBuilder<F> cb(1);
  RangeSubckt(cb, Input<F>(0), n);
  RangeSubckt(cb, LinExpr<F>::Constant(F::FromNat(u - 1)) - Input<F>(0), n);
  cb.ZeroOutputs();
  return std::move(cb).Finish();
}

}  // namespace wvss
