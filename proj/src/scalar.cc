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

#include <cstring>

#include "wvss/errors.h"
#include "wvss/group.h"

namespace wvss {
namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;
using Limbs = std::array<u64, 4>;

constexpr Limbs kL = {0x5812631a5cf5d3edULL, 0x14def9dea2f79cd6ULL, 0x0ULL,
                      0x1000000000000000ULL};
constexpr Limbs kR1 = {0xd6ec31748d98951dULL, 0xc6ef5bf4737dcf70ULL,
                       0xfffffffffffffffeULL, 0x0fffffffffffffffULL};
constexpr Limbs kR2 = {0xa40611e3449c0f01ULL, 0xd00e1ba768859347ULL,
                       0xceec73d217f5be65ULL, 0x0399411b7c309a3dULL};
constexpr Limbs kR3 = {0x2a9e49687b83a2dbULL, 0x278324e6aef7f3ecULL,
                       0x8065dc6c04ec5b65ULL, 0x0e530b773599cec7ULL};
constexpr u64 kNPrime = 0xd2b51da312547e1bULL;

bool GeqL(const Limbs& a) {
  for (int i = 3; i >= 0; --i) {
    if (a[i] != kL[i]) return a[i] > kL[i];
  }
  return true;
}

void SubL(Limbs& a) {
  u64 borrow = 0;
  for (int i = 0; i < 4; ++i) {
    u128 d = (u128)a[i] - kL[i] - borrow;
    a[i] = (u64)d;
    borrow = (u64)(d >> 64) & 1;
  }
}

// a * b * 2^-256 mod l, for a * b < l * 2^256.
Limbs MontMul(const Limbs& a, const Limbs& b) {
  u64 t[5] = {0, 0, 0, 0, 0};
  for (int i = 0; i < 4; ++i) {
    u64 carry = 0;
    for (int j = 0; j < 4; ++j) {
      u128 acc = (u128)a[j] * b[i] + t[j] + carry;
      t[j] = (u64)acc;
      carry = (u64)(acc >> 64);
    }
    u128 top = (u128)t[4] + carry;
    t[4] = (u64)top;
    u64 t5 = (u64)(top >> 64);

    u64 mq = t[0] * kNPrime;
    u128 acc = (u128)mq * kL[0] + t[0];
    carry = (u64)(acc >> 64);
    for (int j = 1; j < 4; ++j) {
      acc = (u128)mq * kL[j] + t[j] + carry;
      t[j - 1] = (u64)acc;
      carry = (u64)(acc >> 64);
    }
    top = (u128)t[4] + carry;
    t[3] = (u64)top;
    t[4] = t5 + (u64)(top >> 64);
  }
  Limbs r = {t[0], t[1], t[2], t[3]};
  if (t[4] != 0 || GeqL(r)) SubL(r);
  return r;
}

Limbs LoadLimbs(const uint8_t* in) {
  Limbs r;
  std::memcpy(r.data(), in, 32);
  return r;
}

}  // namespace

Scalar Scalar::One() {
  Scalar s;
  s.m_ = kR1;
  return s;
}

Scalar Scalar::FromU64(uint64_t x) {
  Scalar s;
  s.m_ = MontMul({x, 0, 0, 0}, kR2);
  return s;
}

Scalar Scalar::FromI64(int64_t x) {
  if (x >= 0) return FromU64(static_cast<uint64_t>(x));
  return -FromU64(static_cast<uint64_t>(-(x + 1)) + 1);
}

Scalar Scalar::FromNat(const Nat& x) {
  Nat r = x % Modulus();
  if (r < 0) r += Modulus();
  std::array<uint8_t, 32> buf{};
  size_t count = 0;
  mpz_export(buf.data(), &count, -1, 1, -1, 0, r.get_mpz_t());
  return FromBytesModOrder(buf);
}

Scalar Scalar::FromBytesModOrder(std::span<const uint8_t, 32> in) {
  Scalar s;
  s.m_ = MontMul(LoadLimbs(in.data()), kR2);
  return s;
}

Scalar Scalar::FromBytesWide(std::span<const uint8_t, 64> in) {
  Scalar lo, hi;
  lo.m_ = MontMul(LoadLimbs(in.data()), kR2);
  hi.m_ = MontMul(LoadLimbs(in.data() + 32), kR3);
  return lo + hi;
}

std::optional<Scalar> Scalar::FromCanonicalBytes(
    std::span<const uint8_t, 32> in) {
  Limbs l = LoadLimbs(in.data());
  if (GeqL(l)) return std::nullopt;
  Scalar s;
  s.m_ = MontMul(l, kR2);
  return s;
}

Scalar Scalar::Random(Rng& rng) {
  std::array<uint8_t, 64> buf;
  rng.Fill(buf);
  return FromBytesWide(buf);
}

const Nat& Scalar::Modulus() {
  static const Nat kModulus(
      "7237005577332262213973186563042994240857116359379907606001950938285454"
      "250989");
  return kModulus;
}

std::array<uint64_t, 4> Scalar::ToLimbs() const {
  return MontMul(m_, {1, 0, 0, 0});
}

std::array<uint8_t, 32> Scalar::ToBytes() const {
  Limbs l = ToLimbs();
  std::array<uint8_t, 32> out;
  std::memcpy(out.data(), l.data(), 32);
  return out;
}

Nat Scalar::ToNat() const {
  auto b = ToBytes();
  Nat r;
  mpz_import(r.get_mpz_t(), 32, -1, 1, -1, 0, b.data());
  return r;
}

std::string Scalar::ToHex() const {
  static const char* kDigits = "0123456789abcdef";
  auto b = ToBytes();
  std::string s;
  for (uint8_t x : b) {
    s.push_back(kDigits[x >> 4]);
    s.push_back(kDigits[x & 15]);
  }
  return s;
}

bool Scalar::IsZero() const {
  return (m_[0] | m_[1] | m_[2] | m_[3]) == 0;
}

Scalar Scalar::Inverse() const {
  // x^(l-2)
  Limbs e = kL;
  e[0] -= 2;
  Scalar result = One();
  for (int i = 255; i >= 0; --i) {
    result = result * result;
    if ((e[i / 64] >> (i % 64)) & 1) result = result * *this;
  }
  return result;
}

Scalar Scalar::Pow(uint64_t e) const {
  Scalar result = One();
  Scalar base = *this;
  while (e != 0) {
    if (e & 1) result *= base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  Scalar r;
  u64 carry = 0;
  for (int i = 0; i < 4; ++i) {
    u128 s = (u128)a.m_[i] + b.m_[i] + carry;
    r.m_[i] = (u64)s;
    carry = (u64)(s >> 64);
  }
  if (GeqL(r.m_)) SubL(r.m_);
  return r;
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  Scalar r;
  u64 borrow = 0;
  for (int i = 0; i < 4; ++i) {
    u128 d = (u128)a.m_[i] - b.m_[i] - borrow;
    r.m_[i] = (u64)d;
    borrow = (u64)(d >> 64) & 1;
  }
  if (borrow) {
    u64 carry = 0;
    for (int i = 0; i < 4; ++i) {
      u128 s = (u128)r.m_[i] + kL[i] + carry;
      r.m_[i] = (u64)s;
      carry = (u64)(s >> 64);
    }
  }
  return r;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar r;
  r.m_ = MontMul(a.m_, b.m_);
  return r;
}

void BatchInvert(std::span<Scalar> xs) {
  std::vector<Scalar> prefix(xs.size());
  Scalar acc = Scalar::One();
  for (size_t i = 0; i < xs.size(); ++i) {
    prefix[i] = acc;
    if (!xs[i].IsZero()) acc *= xs[i];
  }
  Scalar inv = acc.Inverse();
  for (size_t i = xs.size(); i-- > 0;) {
    if (xs[i].IsZero()) continue;
    Scalar next = inv * xs[i];
    xs[i] = inv * prefix[i];
    inv = next;
  }
}

std::vector<Scalar> ScalarPowers(const Scalar& x, size_t n) {
  std::vector<Scalar> out(n);
  Scalar acc = Scalar::One();
  for (size_t i = 0; i < n; ++i) {
    out[i] = acc;
    acc *= x;
  }
  return out;
}

}  // namespace wvss
