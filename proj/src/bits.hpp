//
// Copyright 2026 The obdax Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace obdax {

// Fixed-width bitset sized at runtime; used for concept sets ("types").
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t width() const { return n_; }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }
  // Returns true if the bit was newly set.
  bool set(std::size_t i) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (w_[i >> 6] & m) return false;
    w_[i >> 6] |= m;
    return true;
  }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool merge(const Bits& o) {
    bool changed = false;
    for (std::size_t k = 0; k < w_.size(); ++k) {
      const std::uint64_t v = w_[k] | o.w_[k];
      changed |= v != w_[k];
      w_[k] = v;
    }
    return changed;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }
  bool none() const {
    for (auto v : w_)
      if (v) return false;
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto v : w_) c += static_cast<std::size_t>(__builtin_popcountll(v));
    return c;
  }
  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }
  std::size_t hash() const {
    std::size_t h = n_;
    for (auto v : w_) h = h * 1000003U ^ std::hash<std::uint64_t>{}(v);
    return h;
  }

  bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const Bits& o) const { return !(*this == o); }
  bool operator<(const Bits& o) const { return n_ != o.n_ ? n_ < o.n_ : w_ < o.w_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const { return b.hash(); }
};

}  // namespace obdax
