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

#include "wvss/transcript.h"

#include <openssl/evp.h>

#include <array>
#include <vector>

#include "wvss/errors.h"

namespace wvss {
namespace {

constexpr uint8_t kTagAbsorb = 0x01;
constexpr uint8_t kTagChallenge = 0x02;

void Check(int ok) {
  if (ok != 1) throw Error(ErrorCode::kIo, "openssl shake256 failure");
}

void PutU64(EVP_MD_CTX* ctx, uint64_t x) {
  uint8_t b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<uint8_t>(x >> (8 * i));
  Check(EVP_DigestUpdate(ctx, b, 8));
}

void Frame(EVP_MD_CTX* ctx, uint8_t tag, std::string_view label,
           std::span<const uint8_t> data) {
  Check(EVP_DigestUpdate(ctx, &tag, 1));
  PutU64(ctx, label.size());
  Check(EVP_DigestUpdate(ctx, label.data(), label.size()));
  PutU64(ctx, data.size());
  if (!data.empty()) Check(EVP_DigestUpdate(ctx, data.data(), data.size()));
}

}  // namespace

struct Transcript::Impl {
  EVP_MD_CTX* ctx = nullptr;
  ~Impl() { EVP_MD_CTX_free(ctx); }
};

Transcript::Transcript(std::string_view domain) : impl_(new Impl) {
  impl_->ctx = EVP_MD_CTX_new();
  if (impl_->ctx == nullptr) throw Error(ErrorCode::kIo, "EVP_MD_CTX_new");
  Check(EVP_DigestInit_ex(impl_->ctx, EVP_shake256(), nullptr));
  Frame(impl_->ctx, 0x00, "domain",
        {reinterpret_cast<const uint8_t*>(domain.data()), domain.size()});
}

Transcript::~Transcript() = default;

Transcript::Transcript(const Transcript& other) : impl_(new Impl) {
  impl_->ctx = EVP_MD_CTX_new();
  Check(EVP_MD_CTX_copy_ex(impl_->ctx, other.impl_->ctx));
}

Transcript& Transcript::operator=(const Transcript& other) {
  if (this != &other) Check(EVP_MD_CTX_copy_ex(impl_->ctx, other.impl_->ctx));
  return *this;
}

void Transcript::Absorb(std::string_view label, std::span<const uint8_t> data) {
  Frame(impl_->ctx, kTagAbsorb, label, data);
}

void Transcript::AbsorbU64(std::string_view label, uint64_t x) {
  uint8_t b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<uint8_t>(x >> (8 * i));
  Absorb(label, b);
}

void Transcript::AbsorbScalar(std::string_view label, const Scalar& x) {
  Absorb(label, x.ToBytes());
}

void Transcript::AbsorbPoint(std::string_view label, const Point& p) {
  Absorb(label, p.Encode());
}

void Transcript::AbsorbNat(std::string_view label, const Nat& x) {
  Absorb(label, NatToBytesBE(x));
}

void Transcript::ChallengeBytes(std::string_view label, std::span<uint8_t> out) {
  Frame(impl_->ctx, kTagChallenge, label, {});
  PutU64(impl_->ctx, out.size());
  EVP_MD_CTX* fork = EVP_MD_CTX_new();
  if (fork == nullptr) throw Error(ErrorCode::kIo, "EVP_MD_CTX_new");
  int ok = EVP_MD_CTX_copy_ex(fork, impl_->ctx);
  if (ok == 1) ok = EVP_DigestFinalXOF(fork, out.data(), out.size());
  EVP_MD_CTX_free(fork);
  Check(ok);
  Frame(impl_->ctx, kTagChallenge, "ratchet", out);
}

Scalar Transcript::ChallengeScalar(std::string_view label) {
  std::array<uint8_t, 64> buf;
  ChallengeBytes(label, buf);
  return Scalar::FromBytesWide(buf);
}

Point HashToGroup(std::string_view label, uint64_t index) {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) throw Error(ErrorCode::kIo, "EVP_MD_CTX_new");
  std::array<uint8_t, 64> buf;
  int ok = EVP_DigestInit_ex(ctx, EVP_shake256(), nullptr);
  if (ok == 1) {
    try {
      Frame(ctx, 0x03, "hash-to-group",
            {reinterpret_cast<const uint8_t*>(label.data()), label.size()});
      PutU64(ctx, index);
    } catch (...) {
      EVP_MD_CTX_free(ctx);
      throw;
    }
    ok = EVP_DigestFinalXOF(ctx, buf.data(), buf.size());
  }
  EVP_MD_CTX_free(ctx);
  Check(ok);
  return Point::FromUniformBytes(buf);
}

}  // namespace wvss
