// Copyright 2026 The ctlcheck Authors
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

#include <cmath>
#include <limits>
#include <string>

#include "ctlcheck/errors.hpp"

namespace ctlcheck {

/// A nonnegative real extended with a distinguished infinity.
///
/// Reward-reachability values live in this type: totals are finite and
/// nonnegative while the goal is reachable, infinite otherwise.
class ExtendedReal {
public:
  ExtendedReal() : value_(0.0) {}

  static ExtendedReal finite(double v) {
    if (!std::isfinite(v)) {
      throw InputError("ExtendedReal::finite called with non-finite value");
    }
    if (v < 0.0) {
      throw InputError("ExtendedReal::finite called with negative value " +
                       std::to_string(v));
    }
    return ExtendedReal(v);
  }

  static ExtendedReal infinity() {
    return ExtendedReal(std::numeric_limits<double>::infinity());
  }

  bool is_infinite() const { return std::isinf(value_); }
  bool is_finite() const { return !is_infinite(); }

  /// Finite payload; infinity is returned as the IEEE infinity.
  double value() const { return value_; }

  ExtendedReal operator+(const ExtendedReal& o) const {
    if (is_infinite() || o.is_infinite()) return infinity();
    return finite(value_ + o.value_);
  }

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.value_ == b.value_;
  }
  friend bool operator!=(const ExtendedReal& a, const ExtendedReal& b) {
    return !(a == b);
  }
  friend bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
    return a.value_ < b.value_;
  }
  friend bool operator<=(const ExtendedReal& a, const ExtendedReal& b) {
    return a.value_ <= b.value_;
  }

  std::string str() const {
    return is_infinite() ? "inf" : std::to_string(value_);
  }

private:
  explicit ExtendedReal(double v) : value_(v) {}
  double value_;
};

}  // namespace ctlcheck
