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

#ifndef OPTPUF_BIGINT_HPP
#define OPTPUF_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace optpuf {

// Unsigned big integer, base 10^9 limbs, little-endian. Supports just what
// capacity bookkeeping needs: small-factor multiply, exact small divide, and
// decimal round-trips.
class BigUint {
 public:
  BigUint() : limbs_{0} {}
  explicit BigUint(std::uint64_t value);

  static BigUint from_decimal(const std::string& digits);

  BigUint& mul_small(std::uint64_t factor);
  // Exact division by a small divisor; throws std::domain_error on remainder.
  BigUint& div_exact_small(std::uint64_t divisor);
  BigUint& add(const BigUint& other);

  bool is_zero() const { return limbs_.size() == 1 && limbs_[0] == 0; }
  std::string to_string() const;

  friend bool operator==(const BigUint& a, const BigUint& b) {
    return a.limbs_ == b.limbs_;
  }
  friend bool operator!=(const BigUint& a, const BigUint& b) { return !(a == b); }

 private:
  void trim();
  std::vector<std::uint32_t> limbs_;
};

}  // namespace optpuf

#endif  // OPTPUF_BIGINT_HPP
