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

#include "wvss/rng.h"

#include <openssl/evp.h>
#include <openssl/rand.h>

#include <climits>
#include <cstring>
#include <string>

#include "wvss/errors.h"

namespace wvss {

uint64_t Rng::NextU64() {
  uint8_t b[8];
  Fill(b);
  uint64_t x;
  std::memcpy(&x, b, 8);
  return x;
}

uint64_t Rng::Uniform(uint64_t bound) {
  WVSS_ENFORCE(bound > 0, ErrorCode::kBadInput, "empty range");
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t x;
  do {
    x = NextU64();
  } while (x >= limit);
  return x % bound;
}

void SystemRng::Fill(std::span<uint8_t> out) {
  size_t done = 0;
  while (done < out.size()) {
    int chunk = static_cast<int>(std::min<size_t>(out.size() - done, INT_MAX));
    if (RAND_bytes(out.data() + done, chunk) != 1) {
      throw Error(ErrorCode::kIo, "RAND_bytes failed");
    }
    done += static_cast<size_t>(chunk);
  }
}

struct SeededRng::State {
  std::string seed;
  uint64_t counter = 0;
  uint8_t block[136];
  size_t used = sizeof(block);
};

SeededRng::SeededRng(uint64_t seed)
    : SeededRng(std::string_view("u64:" + std::to_string(seed))) {}

SeededRng::SeededRng(std::string_view seed) : st_(new State) {
  st_->seed.assign(seed.begin(), seed.end());
}

SeededRng::~SeededRng() = default;

void SeededRng::Fill(std::span<uint8_t> out) {
  size_t pos = 0;
  while (pos < out.size()) {
    if (st_->used == sizeof(st_->block)) {
      EVP_MD_CTX* ctx = EVP_MD_CTX_new();
      uint8_t ctr[8];
      for (int i = 0; i < 8; ++i) ctr[i] = static_cast<uint8_t>(st_->counter >> (8 * i));
      int ok = ctx != nullptr && EVP_DigestInit_ex(ctx, EVP_shake256(), nullptr) == 1 &&
               EVP_DigestUpdate(ctx, "wvss-seeded-rng", 15) == 1 &&
               EVP_DigestUpdate(ctx, st_->seed.data(), st_->seed.size()) == 1 &&
               EVP_DigestUpdate(ctx, ctr, 8) == 1 &&
               EVP_DigestFinalXOF(ctx, st_->block, sizeof(st_->block)) == 1;
      EVP_MD_CTX_free(ctx);
      if (!ok) throw Error(ErrorCode::kIo, "shake256 failure");
      ++st_->counter;
      st_->used = 0;
    }
    size_t take = std::min(out.size() - pos, sizeof(st_->block) - st_->used);
    std::memcpy(out.data() + pos, st_->block + st_->used, take);
    st_->used += take;
    pos += take;
  }
}

}  // namespace wvss
