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

#include <span>
#include <string>
#include <vector>

#include "wvss/group.h"

namespace wvss {

// Pedersen commitment key: value base g, blinding base h and a vector of
// independent bases. All derived by HashToGroup from the label.
class PedersenParams {
 public:
  static PedersenParams Setup(size_t width, const std::string& label);

  const Point& g() const { return g_; }
  const Point& h() const { return h_; }
  const std::vector<Point>& g_vec() const { return g_vec_; }
  size_t width() const { return g_vec_.size(); }
  const std::string& label() const { return label_; }

  // g^x h^r, constant time.
  Point Commit(const Scalar& x, const Scalar& r) const;
  // h^r prod g_vec[i]^x[i]. Throws kVectorTooWide if x exceeds width.
  Point CommitVec(std::span<const Scalar> x, const Scalar& r) const;

 private:
  std::string label_;
  Point g_, h_;
  std::vector<Point> g_vec_;
};

}  // namespace wvss
