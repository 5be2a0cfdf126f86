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

#include "point_internal.h"

namespace wvss {

using namespace internal;

namespace {

Ext Elligator(const Fe& t) {
  const Fe one = kFeOne;
  Fe r = FeMul(kSqrtM1, FeSq(t));
  Fe u = FeMul(FeAdd(r, one), kOneMinusDSq);
  Fe v = FeMul(FeSub(FeNeg(one), FeMul(r, kD)), FeAdd(r, kD));
  Fe s;
  bool was_square = FeSqrtRatioM1(u, v, s);
  Fe s_prime = FeNeg(FeAbs(FeMul(s, t)));
  FeCmov(s, s_prime, !was_square);
  Fe c = FeNeg(one);
  FeCmov(c, r, !was_square);
  Fe n = FeSub(FeMul(FeMul(c, FeSub(r, one)), kDMinusOneSq), v);
  Fe s2 = FeSq(s);
  Fe w0 = FeMul(FeAdd(s, s), v);
  Fe w1 = FeMul(n, kSqrtAdMinusOne);
  Fe w2 = FeSub(one, s2);
  Fe w3 = FeAdd(one, s2);
  return Ext{FeMul(w0, w3), FeMul(w2, w1), FeMul(w1, w3), FeMul(w0, w2)};
}

// Signed radix-16 digits in [-8, 8).
std::array<int8_t, 64> Radix16(const std::array<uint8_t, 32>& b) {
  std::array<int8_t, 64> e;
  for (int i = 0; i < 32; ++i) {
    e[2 * i] = static_cast<int8_t>(b[i] & 15);
    e[2 * i + 1] = static_cast<int8_t>(b[i] >> 4);
  }
  int8_t carry = 0;
  for (int i = 0; i < 63; ++i) {
    e[i] = static_cast<int8_t>(e[i] + carry);
    carry = static_cast<int8_t>((e[i] + 8) >> 4);
    e[i] = static_cast<int8_t>(e[i] - (carry << 4));
  }
  e[63] = static_cast<int8_t>(e[63] + carry);
  return e;
}

void CachedCmov(Cached& r, const Cached& a, bool flag) {
  FeCmov(r.YpX, a.YpX, flag);
  FeCmov(r.YmX, a.YmX, flag);
  FeCmov(r.Z, a.Z, flag);
  FeCmov(r.T2d, a.T2d, flag);
}

Cached SelectCt(const Cached table[8], int8_t d) {
  const int8_t mask = static_cast<int8_t>(d >> 7);
  const uint8_t neg = static_cast<uint8_t>(mask & 1);
  const uint8_t abs = static_cast<uint8_t>((d + mask) ^ mask);
  Cached r = CachedIdentity();
  for (int j = 0; j < 8; ++j) {
    CachedCmov(r, table[j], abs == j + 1);
  }
  CachedCmov(r, CachedNeg(r), neg != 0);
  return r;
}

}  // namespace

Point::Point() : x_{0}, y_{1}, z_{1}, t_{0} {}

Point Point::Generator() {
  static const Point kBase = [] {
    Ext e;
    e.X = Fe{{0x62d608f25d51aULL, 0x412a4b4f6592aULL, 0x75b7171a4b31dULL,
              0x1ff60527118feULL, 0x216936d3cd6e5ULL}};
    e.Y = Fe{{0x6666666666658ULL, 0x4ccccccccccccULL, 0x1999999999999ULL,
              0x3333333333333ULL, 0x6666666666666ULL}};
    e.Z = kFeOne;
    e.T = Fe{{0x68ab3a5b7dda3ULL, 0xeea2a5eadbbULL, 0x2af8df483c27eULL,
              0x332b375274732ULL, 0x67875f0fd78b7ULL}};
    return PointAccess::Make(e);
  }();
  return kBase;
}

Point Point::FromUniformBytes(std::span<const uint8_t, 64> in) {
  uint8_t half[32];
  std::memcpy(half, in.data(), 32);
  half[31] &= 0x7f;
  Ext p1 = Elligator(FeFromBytes(half));
  std::memcpy(half, in.data() + 32, 32);
  half[31] &= 0x7f;
  Ext p2 = Elligator(FeFromBytes(half));
  return PointAccess::Make(ExtAdd(p1, p2));
}

std::optional<Point> Point::Decode(std::span<const uint8_t, 32> in) {
  Fe s = FeFromBytes(in.data());
  auto canon = FeToBytes(s);
  if (std::memcmp(canon.data(), in.data(), 32) != 0) return std::nullopt;
  if (FeIsNegative(s)) return std::nullopt;
  const Fe one = kFeOne;
  Fe ss = FeSq(s);
  Fe u1 = FeSub(one, ss);
  Fe u2 = FeAdd(one, ss);
  Fe u2_sqr = FeSq(u2);
  Fe v = FeSub(FeNeg(FeMul(kD, FeSq(u1))), u2_sqr);
  Fe invsqrt;
  bool was_square = FeSqrtRatioM1(one, FeMul(v, u2_sqr), invsqrt);
  Fe den_x = FeMul(invsqrt, u2);
  Fe den_y = FeMul(FeMul(invsqrt, den_x), v);
  Fe x = FeAbs(FeMul(FeAdd(s, s), den_x));
  Fe y = FeMul(u1, den_y);
  Fe t = FeMul(x, y);
  if (!was_square || FeIsNegative(t) || FeIsZero(y)) return std::nullopt;
  return PointAccess::Make(Ext{x, y, one, t});
}

std::array<uint8_t, 32> Point::Encode() const {
  Ext p = PointAccess::Get(*this);
  Fe u1 = FeMul(FeAdd(p.Z, p.Y), FeSub(p.Z, p.Y));
  Fe u2 = FeMul(p.X, p.Y);
  Fe invsqrt;
  FeSqrtRatioM1(kFeOne, FeMul(u1, FeSq(u2)), invsqrt);
  Fe den1 = FeMul(invsqrt, u1);
  Fe den2 = FeMul(invsqrt, u2);
  Fe z_inv = FeMul(FeMul(den1, den2), p.T);
  Fe ix0 = FeMul(p.X, kSqrtM1);
  Fe iy0 = FeMul(p.Y, kSqrtM1);
  Fe enchanted = FeMul(den1, kInvSqrtAMinusD);
  bool rotate = FeIsNegative(FeMul(p.T, z_inv));
  Fe x = p.X, y = p.Y, den_inv = den2;
  FeCmov(x, iy0, rotate);
  FeCmov(y, ix0, rotate);
  FeCmov(den_inv, enchanted, rotate);
  FeCmov(y, FeNeg(y), FeIsNegative(FeMul(x, z_inv)));
  return FeToBytes(FeAbs(FeMul(den_inv, FeSub(p.Z, y))));
}

bool Point::IsIdentity() const { return *this == Point(); }

Point Point::Double() const {
  return PointAccess::Make(ExtDouble(PointAccess::Get(*this)));
}

Point operator+(const Point& a, const Point& b) {
  return PointAccess::Make(ExtAdd(PointAccess::Get(a), PointAccess::Get(b)));
}

Point operator-(const Point& a, const Point& b) {
  return PointAccess::Make(
      SubCached(PointAccess::Get(a), ToCached(PointAccess::Get(b))));
}

Point Point::operator-() const {
  return PointAccess::Make(ExtNeg(PointAccess::Get(*this)));
}

bool operator==(const Point& a, const Point& b) {
  Ext p = PointAccess::Get(a), q = PointAccess::Get(b);
  bool e1 = FeEq(FeMul(p.X, q.Y), FeMul(p.Y, q.X));
  bool e2 = FeEq(FeMul(p.Y, q.Y), FeMul(p.X, q.X));
  return e1 | e2;
}

Point operator*(const Scalar& k, const Point& p) {
  Ext base = PointAccess::Get(p);
  Cached table[8];
  Ext acc = base;
  table[0] = ToCached(acc);
  for (int j = 1; j < 8; ++j) {
    acc = AddCached(acc, table[0]);
    table[j] = ToCached(acc);
  }
  auto digits = Radix16(k.ToBytes());
  Ext q = AddCached(ExtIdentity(), SelectCt(table, digits[63]));
  for (int i = 62; i >= 0; --i) {
    q = ExtDouble(ExtDouble(ExtDouble(ExtDouble(q))));
    q = AddCached(q, SelectCt(table, digits[i]));
  }
  return PointAccess::Make(q);
}

Point Point::MulVartime(const Scalar& k) const {
  return Msm(std::span<const Scalar>(&k, 1), std::span<const Point>(this, 1));
}

}  // namespace wvss
