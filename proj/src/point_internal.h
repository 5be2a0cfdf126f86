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

#include <cstring>

#include "fe25519.h"
#include "wvss/group.h"

namespace wvss {

// Extended twisted Edwards coordinates, a = -1.
struct Ext {
  internal::Fe X, Y, Z, T;
};

// (Y+X, Y-X, Z, 2dT), the addend form.
struct Cached {
  internal::Fe YpX, YmX, Z, T2d;
};

struct PointAccess {
  static Ext Get(const Point& p) {
    Ext e;
    std::memcpy(e.X.v, p.x_, 40);
    std::memcpy(e.Y.v, p.y_, 40);
    std::memcpy(e.Z.v, p.z_, 40);
    std::memcpy(e.T.v, p.t_, 40);
    return e;
  }
  static Point Make(const Ext& e) {
    Point p;
    std::memcpy(p.x_, e.X.v, 40);
    std::memcpy(p.y_, e.Y.v, 40);
    std::memcpy(p.z_, e.Z.v, 40);
    std::memcpy(p.t_, e.T.v, 40);
    return p;
  }
};

namespace internal {

inline Ext ExtIdentity() { return Ext{kFeZero, kFeOne, kFeOne, kFeZero}; }

inline Cached ToCached(const Ext& p) {
  return Cached{FeAdd(p.Y, p.X), FeSub(p.Y, p.X), p.Z, FeMul(p.T, kD2)};
}

inline Cached CachedIdentity() { return Cached{kFeOne, kFeOne, kFeOne, kFeZero}; }

inline Ext FromCompleted(const Fe& x, const Fe& y, const Fe& z, const Fe& t) {
  return Ext{FeMul(x, t), FeMul(y, z), FeMul(z, t), FeMul(x, y)};
}

inline Ext AddCached(const Ext& p, const Cached& q) {
  Fe pp = FeMul(FeAdd(p.Y, p.X), q.YpX);
  Fe mm = FeMul(FeSub(p.Y, p.X), q.YmX);
  Fe tt = FeMul(p.T, q.T2d);
  Fe zz = FeMul(p.Z, q.Z);
  Fe zz2 = FeAdd(zz, zz);
  return FromCompleted(FeSub(pp, mm), FeAdd(pp, mm), FeAdd(zz2, tt),
                       FeSub(zz2, tt));
}

inline Ext SubCached(const Ext& p, const Cached& q) {
  Fe pp = FeMul(FeAdd(p.Y, p.X), q.YmX);
  Fe mm = FeMul(FeSub(p.Y, p.X), q.YpX);
  Fe tt = FeMul(p.T, q.T2d);
  Fe zz = FeMul(p.Z, q.Z);
  Fe zz2 = FeAdd(zz, zz);
  return FromCompleted(FeSub(pp, mm), FeAdd(pp, mm), FeSub(zz2, tt),
                       FeAdd(zz2, tt));
}

inline Ext ExtAdd(const Ext& p, const Ext& q) { return AddCached(p, ToCached(q)); }

inline Ext ExtDouble(const Ext& p) {
  Fe xx = FeSq(p.X);
  Fe yy = FeSq(p.Y);
  Fe zz2 = FeSq(p.Z);
  zz2 = FeAdd(zz2, zz2);
  Fe xy2 = FeSq(FeAdd(p.X, p.Y));
  Fe yy_plus_xx = FeAdd(yy, xx);
  Fe yy_minus_xx = FeSub(yy, xx);
  return FromCompleted(FeSub(xy2, yy_plus_xx), yy_plus_xx, yy_minus_xx,
                       FeSub(zz2, yy_minus_xx));
}

// 2^k p. Intermediate doublings skip the T coordinate.
inline Ext ExtDoubleN(Ext p, unsigned k) {
  if (k == 0) return p;
  for (unsigned i = 1; i < k; ++i) {
    Fe xx = FeSq(p.X);
    Fe yy = FeSq(p.Y);
    Fe zz2 = FeSq(p.Z);
    zz2 = FeAdd(zz2, zz2);
    Fe xy2 = FeSq(FeAdd(p.X, p.Y));
    Fe yy_plus_xx = FeAdd(yy, xx);
    Fe yy_minus_xx = FeSub(yy, xx);
    Fe x = FeSub(xy2, yy_plus_xx);
    Fe t = FeSub(zz2, yy_minus_xx);
    p.X = FeMul(x, t);
    p.Y = FeMul(yy_plus_xx, yy_minus_xx);
    p.Z = FeMul(yy_minus_xx, t);
  }
  return ExtDouble(p);
}

inline Ext ExtNeg(const Ext& p) { return Ext{FeNeg(p.X), p.Y, p.Z, FeNeg(p.T)}; }

inline Cached CachedNeg(const Cached& c) {
  return Cached{c.YmX, c.YpX, c.Z, FeNeg(c.T2d)};
}

}  // namespace internal
}  // namespace wvss
