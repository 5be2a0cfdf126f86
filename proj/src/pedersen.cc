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

#include "wvss/pedersen.h"

#include "wvss/errors.h"
#include "wvss/transcript.h"

namespace wvss {

PedersenParams PedersenParams::Setup(size_t width, const std::string& label) {
  PedersenParams pp;
  pp.label_ = label;
  pp.g_ = HashToGroup(label + "/g", 0);
  pp.h_ = HashToGroup(label + "/h", 0);
  pp.g_vec_.reserve(width);
  for (size_t i = 0; i < width; ++i) {
    pp.g_vec_.push_back(HashToGroup(label + "/vec", i));
  }
  return pp;
}

Point PedersenParams::Commit(const Scalar& x, const Scalar& r) const {
  return x * g_ + r * h_;
}

Point PedersenParams::CommitVec(std::span<const Scalar> x,
                                const Scalar& r) const {
  WVSS_ENFORCE(x.size() <= g_vec_.size(), ErrorCode::kVectorTooWide,
               "vector of length " + std::to_string(x.size()) +
                   " exceeds commitment width " +
                   std::to_string(g_vec_.size()));
  std::vector<Scalar> s(x.begin(), x.end());
  std::vector<Point> p(g_vec_.begin(), g_vec_.begin() + x.size());
  s.push_back(r);
  p.push_back(h_);
  return Msm(s, p);
}

}  // namespace wvss
