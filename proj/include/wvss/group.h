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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wvss/nat.h"
#include "wvss/rng.h"

namespace wvss {

inline constexpr size_t kScalarBytes = 32;
inline constexpr size_t kPointBytes = 32;

// Element of Z_l, l = 2^252 + 27742317777372353535851937790883648493, the
// order of ristretto255. Stored in Montgomery form.
class Scalar {
 public:
  constexpr Scalar() : m_{0, 0, 0, 0} {}

  static Scalar Zero() { return Scalar(); }
  static Scalar One();
  static Scalar FromU64(uint64_t x);
  static Scalar FromI64(int64_t x);
  static Scalar FromNat(const Nat& x);  // reduced mod l
  static Scalar FromBytesModOrder(std::span<const uint8_t, 32> in);
  static Scalar FromBytesWide(std::span<const uint8_t, 64> in);
  // Rejects encodings >= l.
  static std::optional<Scalar> FromCanonicalBytes(std::span<const uint8_t, 32> in);
  static Scalar Random(Rng& rng);

  static const Nat& Modulus();
  static unsigned ModulusBits() { return 253; }

  std::array<uint8_t, 32> ToBytes() const;
  // Canonical little-endian 64-bit limbs.
  std::array<uint64_t, 4> ToLimbs() const;
  Nat ToNat() const;
  std::string ToHex() const;

  bool IsZero() const;
  Scalar Inverse() const;  // zero maps to zero
  Scalar Pow(uint64_t e) const;
  Scalar Square() const { return *this * *this; }

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  Scalar operator-() const { return Zero() - *this; }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.m_ == b.m_;
  }

 private:
  std::array<uint64_t, 4> m_;
};

// Inverts every element in place; zeros stay zero.
void BatchInvert(std::span<Scalar> xs);

// Powers 1, x, x^2, ..., x^(n-1).
std::vector<Scalar> ScalarPowers(const Scalar& x, size_t n);

// Element of the ristretto255 prime-order group.
class Point {
 public:
  Point();  // identity

  static Point Identity() { return Point(); }
  static Point Generator();
  // Ristretto255 one-way map from 64 uniform bytes.
  static Point FromUniformBytes(std::span<const uint8_t, 64> in);
  static std::optional<Point> Decode(std::span<const uint8_t, 32> in);

  std::array<uint8_t, 32> Encode() const;
  bool IsIdentity() const;

  Point Double() const;
  friend Point operator+(const Point& a, const Point& b);
  friend Point operator-(const Point& a, const Point& b);
  Point operator-() const;
  Point& operator+=(const Point& o) { return *this = *this + o; }
  Point& operator-=(const Point& o) { return *this = *this - o; }
  friend bool operator==(const Point& a, const Point& b);

  // Constant-time in the scalar.
  friend Point operator*(const Scalar& k, const Point& p);
  // Variable-time; for public scalars.
  Point MulVartime(const Scalar& k) const;

 private:
  friend struct PointAccess;
  uint64_t x_[5], y_[5], z_[5], t_[5];
};

// sum_i scalars[i] * points[i]. Variable-time in the scalars.
Point Msm(std::span<const Scalar> scalars, std::span<const Point> points);

}  // namespace wvss
