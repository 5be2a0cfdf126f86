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

#include <array>
#include <cstdint>
#include <cstring>

// Arithmetic in GF(2^255 - 19), radix 2^51.

namespace wvss::internal {

using u64 = uint64_t;
using u128 = unsigned __int128;

struct Fe {
  u64 v[5];
};

inline constexpr u64 kMask51 = (u64{1} << 51) - 1;

inline constexpr Fe kFeZero{{0, 0, 0, 0, 0}};
inline constexpr Fe kFeOne{{1, 0, 0, 0, 0}};

inline constexpr Fe kD{{0x34dca135978a3ULL, 0x1a8283b156ebdULL, 0x5e7a26001c029ULL,
                        0x739c663a03cbbULL, 0x52036cee2b6ffULL}};
inline constexpr Fe kD2{{0x69b9426b2f159ULL, 0x35050762add7aULL, 0x3cf44c0038052ULL,
                         0x6738cc7407977ULL, 0x2406d9dc56dffULL}};
inline constexpr Fe kSqrtM1{{0x61b274a0ea0b0ULL, 0xd5a5fc8f189dULL, 0x7ef5e9cbd0c60ULL,
                             0x78595a6804c9eULL, 0x2b8324804fc1dULL}};
inline constexpr Fe kSqrtAdMinusOne{{0x7f6a0497b2e1bULL, 0x1836f0a97afd2ULL,
                                     0x7d747f6be7638ULL, 0x456079e7e6498ULL,
                                     0x376931bf2b834ULL}};
inline constexpr Fe kInvSqrtAMinusD{{0xfdaa805d40eaULL, 0x2eb482e57d339ULL,
                                     0x7610274bc58ULL, 0x6510b613dc8ffULL,
                                     0x786c8905cfaffULL}};
inline constexpr Fe kOneMinusDSq{{0x409c1945fc176ULL, 0x719abc6a1fc4fULL,
                                  0x1c37f90b20684ULL, 0x6bccca55eedfULL,
                                  0x29072a8b2b3eULL}};
inline constexpr Fe kDMinusOneSq{{0x55aaa44ed4d20ULL, 0x59603c3332635ULL,
                                  0x26d3baf4a7928ULL, 0x120a66e6997a9ULL,
                                  0x5968b37af66c2ULL}};

inline Fe FeCarry(Fe a) {
  u64 c;
  c = a.v[0] >> 51; a.v[0] &= kMask51; a.v[1] += c;
  c = a.v[1] >> 51; a.v[1] &= kMask51; a.v[2] += c;
  c = a.v[2] >> 51; a.v[2] &= kMask51; a.v[3] += c;
  c = a.v[3] >> 51; a.v[3] &= kMask51; a.v[4] += c;
  c = a.v[4] >> 51; a.v[4] &= kMask51; a.v[0] += c * 19;
  return a;
}

inline Fe FeAdd(const Fe& a, const Fe& b) {
  Fe r;
  for (int i = 0; i < 5; ++i) r.v[i] = a.v[i] + b.v[i];
  return FeCarry(r);
}

inline Fe FeSub(const Fe& a, const Fe& b) {
  Fe r;
  r.v[0] = (a.v[0] + 0x1FFFFFFFFFFFB4ULL) - b.v[0];
  for (int i = 1; i < 5; ++i) r.v[i] = (a.v[i] + 0x1FFFFFFFFFFFFCULL) - b.v[i];
  return FeCarry(r);
}

inline Fe FeNeg(const Fe& a) { return FeSub(kFeZero, a); }

inline Fe FeMul(const Fe& a, const Fe& b) {
  const u64 b1 = b.v[1] * 19, b2 = b.v[2] * 19, b3 = b.v[3] * 19,
            b4 = b.v[4] * 19;
  u128 r0 = (u128)a.v[0] * b.v[0] + (u128)a.v[1] * b4 + (u128)a.v[2] * b3 +
            (u128)a.v[3] * b2 + (u128)a.v[4] * b1;
  u128 r1 = (u128)a.v[0] * b.v[1] + (u128)a.v[1] * b.v[0] + (u128)a.v[2] * b4 +
            (u128)a.v[3] * b3 + (u128)a.v[4] * b2;
  u128 r2 = (u128)a.v[0] * b.v[2] + (u128)a.v[1] * b.v[1] +
            (u128)a.v[2] * b.v[0] + (u128)a.v[3] * b4 + (u128)a.v[4] * b3;
  u128 r3 = (u128)a.v[0] * b.v[3] + (u128)a.v[1] * b.v[2] +
            (u128)a.v[2] * b.v[1] + (u128)a.v[3] * b.v[0] + (u128)a.v[4] * b4;
  u128 r4 = (u128)a.v[0] * b.v[4] + (u128)a.v[1] * b.v[3] +
            (u128)a.v[2] * b.v[2] + (u128)a.v[3] * b.v[1] +
            (u128)a.v[4] * b.v[0];
  Fe r;
  r1 += (u64)(r0 >> 51); r.v[0] = (u64)r0 & kMask51;
  r2 += (u64)(r1 >> 51); r.v[1] = (u64)r1 & kMask51;
  r3 += (u64)(r2 >> 51); r.v[2] = (u64)r2 & kMask51;
  r4 += (u64)(r3 >> 51); r.v[3] = (u64)r3 & kMask51;
  u64 c = (u64)(r4 >> 51); r.v[4] = (u64)r4 & kMask51;
  r.v[0] += c * 19;
  r.v[1] += r.v[0] >> 51;
  r.v[0] &= kMask51;
  return r;
}

inline Fe FeSq(const Fe& a) {
  const u64 d0 = a.v[0] * 2, d1 = a.v[1] * 2, d2 = a.v[2] * 2 * 19,
            d4 = a.v[4] * 19, d3 = a.v[3] * 19;
  u128 r0 = (u128)a.v[0] * a.v[0] + (u128)d1 * d4 + (u128)d2 * a.v[3];
  u128 r1 = (u128)d0 * a.v[1] + (u128)(a.v[2] * 2) * d4 + (u128)a.v[3] * d3;
  u128 r2 = (u128)d0 * a.v[2] + (u128)a.v[1] * a.v[1] + (u128)(a.v[3] * 2) * d4;
  u128 r3 = (u128)d0 * a.v[3] + (u128)d1 * a.v[2] + (u128)a.v[4] * d4;
  u128 r4 = (u128)d0 * a.v[4] + (u128)d1 * a.v[3] + (u128)a.v[2] * a.v[2];
  Fe r;
  r1 += (u64)(r0 >> 51); r.v[0] = (u64)r0 & kMask51;
  r2 += (u64)(r1 >> 51); r.v[1] = (u64)r1 & kMask51;
  r3 += (u64)(r2 >> 51); r.v[2] = (u64)r2 & kMask51;
  r4 += (u64)(r3 >> 51); r.v[3] = (u64)r3 & kMask51;
  u64 c = (u64)(r4 >> 51); r.v[4] = (u64)r4 & kMask51;
  r.v[0] += c * 19;
  r.v[1] += r.v[0] >> 51;
  r.v[0] &= kMask51;
  return r;
}

inline Fe FeSqN(Fe a, int n) {
  for (int i = 0; i < n; ++i) a = FeSq(a);
  return a;
}

inline Fe FeFromBytes(const uint8_t in[32]) {
  auto load = [&](int off) {
    u64 x;
    std::memcpy(&x, in + off, 8);
    return x;
  };
  Fe r;
  r.v[0] = load(0) & kMask51;
  r.v[1] = (load(6) >> 3) & kMask51;
  r.v[2] = (load(12) >> 6) & kMask51;
  r.v[3] = (load(19) >> 1) & kMask51;
  r.v[4] = (load(24) >> 12) & kMask51;
  return r;
}

inline std::array<uint8_t, 32> FeToBytes(const Fe& a) {
  Fe t = FeCarry(a);
  u64 q = (t.v[0] + 19) >> 51;
  q = (t.v[1] + q) >> 51;
  q = (t.v[2] + q) >> 51;
  q = (t.v[3] + q) >> 51;
  q = (t.v[4] + q) >> 51;
  t.v[0] += 19 * q;
  t.v[1] += t.v[0] >> 51; t.v[0] &= kMask51;
  t.v[2] += t.v[1] >> 51; t.v[1] &= kMask51;
  t.v[3] += t.v[2] >> 51; t.v[2] &= kMask51;
  t.v[4] += t.v[3] >> 51; t.v[3] &= kMask51;
  t.v[4] &= kMask51;
  u64 o[4] = {t.v[0] | (t.v[1] << 51), (t.v[1] >> 13) | (t.v[2] << 38),
              (t.v[2] >> 26) | (t.v[3] << 25), (t.v[3] >> 39) | (t.v[4] << 12)};
  std::array<uint8_t, 32> out;
  std::memcpy(out.data(), o, 32);
  return out;
}

inline bool FeIsNegative(const Fe& a) { return FeToBytes(a)[0] & 1; }

inline bool FeIsZero(const Fe& a) {
  auto b = FeToBytes(a);
  uint8_t acc = 0;
  for (uint8_t x : b) acc |= x;
  return acc == 0;
}

inline bool FeEq(const Fe& a, const Fe& b) { return FeIsZero(FeSub(a, b)); }

// Constant-time conditional move: r = flag ? a : r.
inline void FeCmov(Fe& r, const Fe& a, bool flag) {
  const u64 mask = ~(static_cast<u64>(flag) - 1);
  for (int i = 0; i < 5; ++i) r.v[i] ^= mask & (r.v[i] ^ a.v[i]);
}

inline Fe FeAbs(const Fe& a) {
  Fe r = a;
  FeCmov(r, FeNeg(a), FeIsNegative(a));
  return r;
}

// z^(2^252 - 3)
inline Fe FePow22523(const Fe& z) {
  Fe t0 = FeSq(z);
  Fe t1 = FeSqN(t0, 2);
  t1 = FeMul(z, t1);
  t0 = FeMul(t0, t1);
  t0 = FeSq(t0);
  t0 = FeMul(t1, t0);
  t1 = FeSqN(t0, 5);
  t0 = FeMul(t1, t0);
  t1 = FeSqN(t0, 10);
  t1 = FeMul(t1, t0);
  Fe t2 = FeSqN(t1, 20);
  t1 = FeMul(t2, t1);
  t1 = FeSqN(t1, 10);
  t0 = FeMul(t1, t0);
  t1 = FeSqN(t0, 50);
  t1 = FeMul(t1, t0);
  t2 = FeSqN(t1, 100);
  t1 = FeMul(t2, t1);
  t1 = FeSqN(t1, 50);
  t0 = FeMul(t1, t0);
  t0 = FeSqN(t0, 2);
  return FeMul(t0, z);
}

inline Fe FeInvert(const Fe& z) {
  Fe t0 = FeSq(z);
  Fe t1 = FeSqN(t0, 2);
  t1 = FeMul(z, t1);
  t0 = FeMul(t0, t1);
  Fe t2 = FeSq(t0);
  t1 = FeMul(t1, t2);
  t2 = FeSqN(t1, 5);
  t1 = FeMul(t2, t1);
  t2 = FeSqN(t1, 10);
  t2 = FeMul(t2, t1);
  Fe t3 = FeSqN(t2, 20);
  t2 = FeMul(t3, t2);
  t2 = FeSqN(t2, 10);
  t1 = FeMul(t2, t1);
  t2 = FeSqN(t1, 50);
  t2 = FeMul(t2, t1);
  t3 = FeSqN(t2, 100);
  t2 = FeMul(t3, t2);
  t2 = FeSqN(t2, 50);
  t1 = FeMul(t2, t1);
  t1 = FeSqN(t1, 5);
  return FeMul(t1, t0);
}

// Returns (was_square, r) with r = sqrt(u/v) made non-negative.
inline bool FeSqrtRatioM1(const Fe& u, const Fe& v, Fe& out) {
  Fe v3 = FeMul(FeSq(v), v);
  Fe v7 = FeMul(FeSq(v3), v);
  Fe r = FeMul(FeMul(u, v3), FePow22523(FeMul(u, v7)));
  Fe check = FeMul(v, FeSq(r));
  Fe neg_u = FeNeg(u);
  bool correct = FeEq(check, u);
  bool flipped = FeEq(check, neg_u);
  bool flipped_i = FeEq(check, FeMul(neg_u, kSqrtM1));
  FeCmov(r, FeMul(kSqrtM1, r), flipped | flipped_i);
  out = FeAbs(r);
  return correct | flipped;
}

}  // namespace wvss::internal
