// Copyright 2026 The AQST Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "aqst/error.hpp"

namespace aqst {

struct Mode {
  std::string label;
  std::size_t dim = 2;

  bool operator==(const Mode&) const = default;
};

// Ordered list of labeled modes. The first mode is the most significant
// tensor factor: flat index = ((d0 * n1 + d1) * n2 + d2) ...
class HilbertLayout {
 public:
  static constexpr std::size_t kMaxDim = 1024;

  explicit HilbertLayout(std::vector<Mode> modes) : modes_(std::move(modes)) {
    if (modes_.empty()) throw LayoutError("layout needs at least one mode");
    total_ = 1;
    for (std::size_t i = 0; i < modes_.size(); ++i) {
      const auto& m = modes_[i];
      if (m.label.empty()) throw LayoutError("mode label must not be empty");
      if (m.dim < 2) throw LayoutError("mode '" + m.label + "' has dim < 2");
      for (std::size_t j = 0; j < i; ++j)
        if (modes_[j].label == m.label) throw LayoutError("duplicate mode label '" + m.label + "'");
      total_ *= m.dim;
      if (total_ > kMaxDim)
        throw LayoutError("total dimension exceeds " + std::to_string(kMaxDim));
    }
  }

  HilbertLayout(std::initializer_list<Mode> modes) : HilbertLayout(std::vector<Mode>(modes)) {}

  const std::vector<Mode>& modes() const noexcept { return modes_; }
  std::size_t size() const noexcept { return modes_.size(); }
  std::size_t total_dim() const noexcept { return total_; }

  bool contains(const std::string& label) const {
    return std::any_of(modes_.begin(), modes_.end(), [&](const Mode& m) { return m.label == label; });
  }

  std::size_t position(const std::string& label) const {
    for (std::size_t i = 0; i < modes_.size(); ++i)
      if (modes_[i].label == label) return i;
    throw LayoutError("unknown mode label '" + label + "'");
  }

  std::size_t dim_of(const std::string& label) const { return modes_[position(label)].dim; }

  // Product of dims of modes to the right of position i.
  std::size_t stride(std::size_t i) const {
    std::size_t s = 1;
    for (std::size_t j = i + 1; j < modes_.size(); ++j) s *= modes_[j].dim;
    return s;
  }

  std::size_t index(const std::vector<std::size_t>& digits) const {
    if (digits.size() != modes_.size()) throw LayoutError("digit count does not match layout");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < modes_.size(); ++i) {
      if (digits[i] >= modes_[i].dim)
        throw LayoutError("level " + std::to_string(digits[i]) + " out of range for mode '" +
                          modes_[i].label + "'");
      idx = idx * modes_[i].dim + digits[i];
    }
    return idx;
  }

  std::vector<std::size_t> digits(std::size_t flat) const {
    std::vector<std::size_t> d(modes_.size());
    for (std::size_t i = modes_.size(); i-- > 0;) {
      d[i] = flat % modes_[i].dim;
      flat /= modes_[i].dim;
    }
    return d;
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& m : modes_) out.push_back(m.label);
    return out;
  }

  bool operator==(const HilbertLayout& o) const { return modes_ == o.modes_; }

  static HilbertLayout concat(const HilbertLayout& a, const HilbertLayout& b) {
    for (const auto& ma : a.modes_)
      for (const auto& mb : b.modes_)
        if (ma.label == mb.label)
          throw LayoutError("label collision: '" + ma.label + "' (left) vs '" + mb.label + "' (right)");
    std::vector<Mode> m = a.modes_;
    m.insert(m.end(), b.modes_.begin(), b.modes_.end());
    return HilbertLayout(std::move(m));
  }

 private:
  std::vector<Mode> modes_;
  std::size_t total_ = 1;
};

using LayoutPtr = std::shared_ptr<const HilbertLayout>;

inline LayoutPtr make_layout(std::vector<Mode> modes) {
  return std::make_shared<const HilbertLayout>(std::move(modes));
}

inline bool same_layout(const LayoutPtr& a, const LayoutPtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace aqst
