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
#include "wvss/errors.h"

namespace wvss {

using namespace internal;

namespace {

unsigned ChooseWindow(size_t n) {
  unsigned best = 1;
  double best_cost = 1e300;
  for (unsigned c = 1; c <= 16; ++c) {
    double windows = (253 + c) / c;
    double cost = windows * (static_cast<double>(n) + (1u << c));
    if (cost < best_cost) {
      best_cost = cost;
      best = c;
    }
  }
  return best;
}

uint64_t ExtractBits(const std::array<uint64_t, 4>& l, unsigned pos, unsigned len) {
  if (pos >= 256) return 0;
  unsigned limb = pos / 64, off = pos % 64;
  uint64_t v = l[limb] >> off;
  if (off + len > 64 && limb + 1 < 4) v |= l[limb + 1] << (64 - off);
  return v & ((uint64_t{1} << len) - 1);
}

constexpr unsigned kNafWidth = 5;

// Width-5 NAF, least significant digit first.
std::array<int8_t, 256> Naf(const Scalar& k) {
  std::array<int8_t, 256> naf{};
  auto l = k.ToLimbs();
  const int width = 1 << kNafWidth;
  unsigned pos = 0;
  uint64_t carry = 0;
  while (pos < 256) {
    uint64_t bit = ExtractBits(l, pos, 1);
    if (bit == carry) {
      ++pos;
      continue;
    }
    int64_t window = static_cast<int64_t>(carry + ExtractBits(l, pos, kNafWidth));
    if (window < width / 2) {
      carry = 0;
      naf[pos] = static_cast<int8_t>(window);
    } else {
      carry = 1;
      naf[pos] = static_cast<int8_t>(window - width);
    }
    pos += kNafWidth;
  }
  return naf;
}

Point Straus(std::span<const Scalar> scalars, std::span<const Point> points) {
  const size_t n = scalars.size();
  constexpr size_t kTable = size_t{1} << (kNafWidth - 2);
  std::vector<std::array<int8_t, 256>> nafs(n);
  std::vector<Cached> table(n * kTable);
  for (size_t i = 0; i < n; ++i) {
    nafs[i] = Naf(scalars[i]);
    Ext p = PointAccess::Get(points[i]);
    Cached p2 = ToCached(ExtDouble(p));
    table[i * kTable] = ToCached(p);
    for (size_t j = 1; j < kTable; ++j) {
      p = AddCached(p, p2);
      table[i * kTable + j] = ToCached(p);
    }
  }
  Ext acc = ExtIdentity();
  unsigned pending = 0;
  bool started = false;
  for (int pos = 255; pos >= 0; --pos) {
    if (started) ++pending;
    for (size_t i = 0; i < n; ++i) {
      int d = nafs[i][static_cast<size_t>(pos)];
      if (d == 0) continue;
      acc = ExtDoubleN(acc, pending);
      pending = 0;
      started = true;
      if (d > 0) {
        acc = AddCached(acc, table[i * kTable + static_cast<size_t>(d / 2)]);
      } else {
        acc = SubCached(acc, table[i * kTable + static_cast<size_t>(-d / 2)]);
      }
    }
  }
  return PointAccess::Make(ExtDoubleN(acc, pending));
}

}  // namespace

Point Msm(std::span<const Scalar> scalars, std::span<const Point> points) {
  WVSS_ENFORCE(scalars.size() == points.size(), ErrorCode::kDimensionMismatch,
               "msm length mismatch");
  const size_t n = scalars.size();
  if (n == 0) return Point::Identity();

  const unsigned c = ChooseWindow(n);
  const double pippenger = ((253.0 + c) / c) * (static_cast<double>(n) + (1u << c));
  const double straus = static_cast<double>(n) * (4.0 + 253.0 / (kNafWidth + 1));
  if (straus <= pippenger) return Straus(scalars, points);

  const unsigned windows = (253 + c) / c + 1;
  const int64_t half = int64_t{1} << (c - 1);

  std::vector<int16_t> digits(n * windows);
  for (size_t i = 0; i < n; ++i) {
    auto limbs = scalars[i].ToLimbs();
    int64_t carry = 0;
    for (unsigned w = 0; w < windows; ++w) {
      int64_t bits = static_cast<int64_t>(ExtractBits(limbs, w * c, c)) + carry;
      if (bits >= half) {
        digits[i * windows + w] = static_cast<int16_t>(bits - (half << 1));
        carry = 1;
      } else {
        digits[i * windows + w] = static_cast<int16_t>(bits);
        carry = 0;
      }
    }
  }

  std::vector<Cached> cached(n);
  for (size_t i = 0; i < n; ++i) cached[i] = ToCached(PointAccess::Get(points[i]));

  std::vector<Ext> buckets(static_cast<size_t>(half));
  std::vector<uint8_t> used(static_cast<size_t>(half));
  Ext result = ExtIdentity();
  bool result_set = false;
  for (unsigned w = windows; w-- > 0;) {
    if (result_set) {
      result = ExtDoubleN(result, c);
    }
    std::fill(used.begin(), used.end(), 0);
    bool any = false;
    for (size_t i = 0; i < n; ++i) {
      int d = digits[i * windows + w];
      if (d == 0) continue;
      any = true;
      size_t b = static_cast<size_t>(d > 0 ? d - 1 : -d - 1);
      const Cached& q = d > 0 ? cached[i] : CachedNeg(cached[i]);
      if (!used[b]) {
        buckets[b] = AddCached(ExtIdentity(), q);
        used[b] = 1;
      } else {
        buckets[b] = AddCached(buckets[b], q);
      }
    }
    if (!any) continue;
    Ext running = ExtIdentity(), sum = ExtIdentity();
    bool running_set = false;
    for (size_t b = buckets.size(); b-- > 0;) {
      if (used[b]) {
        running = running_set ? ExtAdd(running, buckets[b]) : buckets[b];
        running_set = true;
      }
      if (running_set) sum = ExtAdd(sum, running);
    }
    result = result_set ? ExtAdd(result, sum) : sum;
    result_set = true;
  }
  return PointAccess::Make(result);
}

}  // namespace wvss
