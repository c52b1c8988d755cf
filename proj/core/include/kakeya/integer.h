// Copyright 2026 The kakeya-lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KAKEYA_INTEGER_H_
#define KAKEYA_INTEGER_H_

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>

namespace kakeya {

// Arbitrary-precision signed integer. Values that fit in int64 are held
// inline; larger values spill to a heap-allocated mpz_class. The
// representation is canonical: a value is big only if it does not fit.
class Integer {
 public:
  Integer() noexcept = default;
  template <std::signed_integral T>
  Integer(T v) noexcept : small_(static_cast<std::int64_t>(v)) {}  // NOLINT
  template <std::unsigned_integral T>
  Integer(T v) {  // NOLINT
    if (static_cast<std::uint64_t>(v) <= INT64_MAX) {
      small_ = static_cast<std::int64_t>(v);
    } else {
      big_ = std::make_unique<mpz_class>();
      mpz_import(big_->get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &v);
    }
  }
  explicit Integer(const mpz_class& z);

  Integer(const Integer& other);
  Integer(Integer&& other) noexcept = default;
  Integer& operator=(const Integer& other);
  Integer& operator=(Integer&& other) noexcept = default;
  ~Integer() = default;

  // Parses an optionally signed decimal string. Throws std::invalid_argument.
  static Integer FromString(std::string_view text);

  bool is_small() const { return big_ == nullptr; }
  std::int64_t small_value() const { return small_; }
  int sign() const;
  bool is_zero() const { return !big_ && small_ == 0; }
  bool is_odd() const;

  // Throws std::overflow_error if the value does not fit.
  std::int64_t ToInt64() const;
  mpz_class ToMpz() const;
  double ToDouble() const;
  std::string ToString() const;

  // Number of trailing zero bits. Requires a nonzero value.
  unsigned TrailingZeros() const;
  // Bit length of the absolute value; zero has length 0.
  std::size_t BitLength() const;

  // Multiplication by 2^s.
  Integer ShiftLeft(unsigned s) const;
  // Division by 2^s rounding toward negative infinity.
  Integer FloorShiftRight(unsigned s) const;
  // Division by 2^s rounding toward positive infinity.
  Integer CeilShiftRight(unsigned s) const;

  Integer operator-() const;
  Integer Abs() const { return sign() < 0 ? -*this : *this; }
  friend Integer operator+(const Integer& a, const Integer& b);
  friend Integer operator-(const Integer& a, const Integer& b);
  friend Integer operator*(const Integer& a, const Integer& b);
  Integer& operator+=(const Integer& b) { return *this = *this + b; }
  Integer& operator-=(const Integer& b) { return *this = *this - b; }
  Integer& operator*=(const Integer& b) { return *this = *this * b; }

  friend bool operator==(const Integer& a, const Integer& b);
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b);

 private:
  static Integer FromMpz(mpz_class&& z);

  std::int64_t small_ = 0;
  std::unique_ptr<mpz_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Integer& v);

}  // namespace kakeya

#endif  // KAKEYA_INTEGER_H_
