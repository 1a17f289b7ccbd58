// Copyright 2026 The optpuf Authors
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

#include "optpuf/bigint.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace optpuf {

namespace {
constexpr std::uint64_t kBase = 1000000000ULL;  // 10^9 per limb
}

BigUint::BigUint(std::uint64_t value) {
  limbs_.clear();
  do {
    limbs_.push_back(static_cast<std::uint32_t>(value % kBase));
    value /= kBase;
  } while (value != 0);
}

BigUint BigUint::from_decimal(const std::string& digits) {
  if (digits.empty()) throw std::invalid_argument("empty decimal string");
  BigUint out(0);
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("non-digit character in decimal string");
    }
    out.mul_small(10);
    // add a single digit
    std::uint64_t carry = static_cast<std::uint64_t>(c - '0');
    for (std::size_t i = 0; i < out.limbs_.size() && carry; ++i) {
      const std::uint64_t v = out.limbs_[i] + carry;
      out.limbs_[i] = static_cast<std::uint32_t>(v % kBase);
      carry = v / kBase;
    }
    if (carry) out.limbs_.push_back(static_cast<std::uint32_t>(carry));
  }
  out.trim();
  return out;
}

BigUint& BigUint::mul_small(std::uint64_t factor) {
  if (factor >= kBase) throw std::invalid_argument("mul_small factor too large");
  std::uint64_t carry = 0;
  for (auto& limb : limbs_) {
    const std::uint64_t v = static_cast<std::uint64_t>(limb) * factor + carry;
    limb = static_cast<std::uint32_t>(v % kBase);
    carry = v / kBase;
  }
  while (carry) {
    limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
    carry /= kBase;
  }
  trim();
  return *this;
}

BigUint& BigUint::div_exact_small(std::uint64_t divisor) {
  if (divisor == 0) throw std::domain_error("division by zero");
  std::uint64_t rem = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    const std::uint64_t v = rem * kBase + limbs_[i];
    limbs_[i] = static_cast<std::uint32_t>(v / divisor);
    rem = v % divisor;
  }
  if (rem != 0) throw std::domain_error("division was not exact");
  trim();
  return *this;
}

BigUint& BigUint::add(const BigUint& other) {
  const std::size_t n = std::max(limbs_.size(), other.limbs_.size());
  limbs_.resize(n, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t v = static_cast<std::uint64_t>(limbs_[i]) + carry;
    if (i < other.limbs_.size()) v += other.limbs_[i];
    limbs_[i] = static_cast<std::uint32_t>(v % kBase);
    carry = v / kBase;
  }
  if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
  return *this;
}

std::string BigUint::to_string() const {
  std::string out = std::to_string(limbs_.back());
  char buf[10];
  for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
    std::snprintf(buf, sizeof(buf), "%09u", limbs_[i]);
    out += buf;
  }
  return out;
}

void BigUint::trim() {
  while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
}

}  // namespace optpuf
