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

#include "wvss/crt.h"

#include <set>
#include <string>

#include "wvss/errors.h"

namespace wvss {
namespace {

constexpr int kMillerRabinRounds = 50;

}  // namespace

SharingPrime GenPrime(unsigned bits, Rng& rng, unsigned max_bits) {
  WVSS_ENFORCE(bits >= 2 && bits <= max_bits, ErrorCode::kWeightOutOfRange,
               "prime bit length " + std::to_string(bits) +
                   " outside [2, " + std::to_string(max_bits) + "]");
  const Nat top = NatPow2(bits);
  const Nat floor = NatPow2(bits - 1);
  Nat lo = floor + 1;
  if (bits >= 12) lo = top - NatPow2(bits - 4);
  const Nat span = top - lo;
  while (true) {
    Nat c = lo + NatRandomBelow(rng, span);
    if (c <= floor) continue;
    if (mpz_probab_prime_p(c.get_mpz_t(), kMillerRabinRounds) > 0) {
      return SharingPrime{c, bits};
    }
  }
}

std::vector<SharingPrime> GenPrimes(std::span<const unsigned> bits, Rng& rng,
                                    unsigned max_bits) {
  std::vector<SharingPrime> out;
  std::set<Nat> seen;
  out.reserve(bits.size());
  for (unsigned b : bits) {
    // Small bit lengths have few primes; give up rather than loop forever.
    for (int attempt = 0;; ++attempt) {
      WVSS_ENFORCE(attempt < 10000, ErrorCode::kInfeasible,
                   "not enough distinct primes of " + std::to_string(b) + " bits");
      SharingPrime sp = GenPrime(b, rng, max_bits);
      if (seen.insert(sp.p).second) {
        out.push_back(sp);
        break;
      }
    }
  }
  return out;
}

Nat CrtSolve(std::span<const Nat> residues, std::span<const Nat> moduli) {
  WVSS_ENFORCE(residues.size() == moduli.size() && !moduli.empty(),
               ErrorCode::kDimensionMismatch, "residue/modulus count mismatch");
  for (size_t i = 0; i < moduli.size(); ++i) {
    WVSS_ENFORCE(moduli[i] >= 2, ErrorCode::kBadInput, "modulus below 2");
    for (size_t j = i + 1; j < moduli.size(); ++j) {
      Nat g;
      mpz_gcd(g.get_mpz_t(), moduli[i].get_mpz_t(), moduli[j].get_mpz_t());
      WVSS_ENFORCE(g == 1, ErrorCode::kNotCoprime,
                   "moduli " + std::to_string(i) + " and " + std::to_string(j) +
                       " share a factor");
    }
  }
  Nat prod = 1;
  for (const Nat& m : moduli) prod *= m;
  Nat s = 0;
  for (size_t i = 0; i < moduli.size(); ++i) {
    Nat pi = prod / moduli[i];
    Nat inv;
    mpz_invert(inv.get_mpz_t(), pi.get_mpz_t(), moduli[i].get_mpz_t());
    Nat r = residues[i] % moduli[i];
    if (r < 0) r += moduli[i];
    s += r * pi * inv;
  }
  return Nat(s % prod);
}

std::vector<Nat> DecomposeBase(const Nat& s, const Nat& p0, unsigned m) {
  WVSS_ENFORCE(s >= 0 && p0 >= 2, ErrorCode::kBadInput, "bad decomposition input");
  WVSS_ENFORCE(s < NatPow(p0, m + 1), ErrorCode::kTooLarge,
               "value does not fit in " + std::to_string(m + 1) + " digits");
  std::vector<Nat> digits(m + 1);
  Nat rest = s;
  for (unsigned j = 0; j <= m; ++j) {
    digits[j] = rest % p0;
    rest /= p0;
  }
  return digits;
}

Nat ComposeBase(std::span<const Nat> digits, const Nat& p0) {
  Nat s = 0;
  for (size_t j = digits.size(); j-- > 0;) s = s * p0 + digits[j];
  return s;
}

Nat ModSmall(const Nat& s, const Nat& p) {
  WVSS_ENFORCE(p > 0, ErrorCode::kBadInput, "modulus must be positive");
  Nat r = s % p;
  if (r < 0) r += p;
  return r;
}

}  // namespace wvss
