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

#include "wvss/nat.h"

#include <cmath>

#include "wvss/errors.h"

namespace wvss {

Nat NatFromU64(uint64_t x) {
  Nat r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(x), 0, 0, &x);
  return r;
}

uint64_t NatToU64(const Nat& x) {
  WVSS_ENFORCE(x >= 0 && NatBitLength(x) <= 64, ErrorCode::kTooLarge,
               "value does not fit in 64 bits");
  uint64_t r = 0;
  mpz_export(&r, nullptr, -1, sizeof(r), 0, 0, x.get_mpz_t());
  return r;
}

unsigned NatBitLength(const Nat& x) {
  if (x == 0) return 0;
  return static_cast<unsigned>(mpz_sizeinbase(x.get_mpz_t(), 2));
}

double NatLog2(const Nat& x) {
  WVSS_ENFORCE(x > 0, ErrorCode::kBadInput, "log2 of non-positive value");
  signed long exp = 0;
  double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

Nat NatPow2(unsigned bits) {
  Nat r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, bits);
  return r;
}

Nat NatPow(const Nat& base, unsigned long exp) {
  Nat r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Nat NatRandomBelow(Rng& rng, const Nat& bound) {
  WVSS_ENFORCE(bound > 0, ErrorCode::kBadInput, "empty range");
  const unsigned bits = NatBitLength(bound);
  const size_t bytes = (bits + 7) / 8;
  std::vector<uint8_t> buf(bytes);
  while (true) {
    rng.Fill(buf);
    if (bits % 8 != 0) buf[0] &= static_cast<uint8_t>((1u << (bits % 8)) - 1);
    Nat r = NatFromBytesBE(buf.data(), buf.size());
    if (r < bound) return r;
  }
}

std::vector<uint8_t> NatToBytesBE(const Nat& x) {
  WVSS_ENFORCE(x >= 0, ErrorCode::kBadInput, "negative natural");
  std::vector<uint8_t> out((NatBitLength(x) + 7) / 8);
  if (!out.empty()) {
    size_t count = 0;
    mpz_export(out.data(), &count, 1, 1, 1, 0, x.get_mpz_t());
  }
  return out;
}

Nat NatFromBytesBE(const uint8_t* data, size_t len) {
  Nat r;
  if (len > 0) mpz_import(r.get_mpz_t(), len, 1, 1, 1, 0, data);
  return r;
}

std::string NatToDec(const Nat& x) { return x.get_str(10); }

Nat NatFromDec(const std::string& s) {
  WVSS_ENFORCE(!s.empty() && s.size() < 100000, ErrorCode::kBadInput,
               "empty decimal");
  for (char ch : s) {
    WVSS_ENFORCE(ch >= '0' && ch <= '9', ErrorCode::kBadInput,
                 "not a decimal natural: " + s);
  }
  return Nat(s, 10);
}

}  // namespace wvss
