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

#ifndef KAKEYA_DYADIC_H_
#define KAKEYA_DYADIC_H_

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "kakeya/integer.h"

namespace kakeya {

// An exact dyadic rational mantissa / 2^exponent with exponent >= 0.
//
// Normal form: either the exponent is zero (an integer, any mantissa) or the
// mantissa is odd. Zero is stored as 0 / 2^0. Ring operations are closed and
// exact; division is only offered by powers of two.
class Dyadic {
 public:
  Dyadic() = default;
  template <std::integral T>
  Dyadic(T v) : mantissa_(v) {}  // NOLINT
  Dyadic(Integer mantissa, std::uint32_t exponent);

  // 2^k for any integer k.
  static Dyadic Pow2(int k);
  // Parses "p", "-p", "p/q" (q a power of two), "p*2^-k", or a finite binary
  // decimal such as "0.375". Throws std::invalid_argument.
  static Dyadic Parse(std::string_view text);
  // Exact conversion of a finite double.
  static Dyadic FromDouble(double v);

  const Integer& mantissa() const { return mantissa_; }
  std::uint32_t exponent() const { return exponent_; }

  int sign() const { return mantissa_.sign(); }
  bool is_zero() const { return mantissa_.is_zero(); }
  bool is_integer() const { return exponent_ == 0; }

  Dyadic operator-() const { return Dyadic(-mantissa_, exponent_, kRaw); }
  Dyadic Abs() const { return sign() < 0 ? -*this : *this; }
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  Dyadic& operator+=(const Dyadic& b) { return *this = *this + b; }
  Dyadic& operator-=(const Dyadic& b) { return *this = *this - b; }
  Dyadic& operator*=(const Dyadic& b) { return *this = *this * b; }

  // this * 2^k.
  Dyadic MulPow2(int k) const;
  // Exact quotient a / b when it is dyadic, otherwise nullopt. Throws
  // std::domain_error when b is zero.
  static std::optional<Dyadic> TryDivide(const Dyadic& a, const Dyadic& b);

  Integer Floor() const;
  Integer Ceil() const;

  double ToDouble() const;
  mpq_class ToMpq() const;
  // "p" for integers, "p/2^e" rendered as "p/q" otherwise.
  std::string ToString() const;

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  struct RawTag {};
  static constexpr RawTag kRaw{};
  Dyadic(Integer mantissa, std::uint32_t exponent, RawTag)
      : mantissa_(std::move(mantissa)), exponent_(exponent) {}
  void Normalize();

  Integer mantissa_;
  std::uint32_t exponent_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Dyadic& d);

inline const Dyadic& Min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
inline const Dyadic& Max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

// Closed interval [lo, hi] with lo <= hi.
struct DyadicInterval {
  Dyadic lo;
  Dyadic hi;

  Dyadic Length() const { return hi - lo; }
  bool Contains(const Dyadic& x) const { return lo <= x && x <= hi; }
  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
};

// Sorts and merges intervals; touching intervals are merged.
std::vector<DyadicInterval> MergeIntervals(std::vector<DyadicInterval> intervals);

// The closed dyadic square [ix, ix+1] x [iy, iy+1] scaled by 2^-k.
struct DyadicSquare {
  int k = 0;
  Integer ix;
  Integer iy;

  Dyadic Side() const { return Dyadic::Pow2(-k); }
  Dyadic XLo() const { return Dyadic(ix, static_cast<std::uint32_t>(k)); }
  Dyadic XHi() const { return Dyadic(ix + 1, static_cast<std::uint32_t>(k)); }
  Dyadic YLo() const { return Dyadic(iy, static_cast<std::uint32_t>(k)); }
  Dyadic YHi() const { return Dyadic(iy + 1, static_cast<std::uint32_t>(k)); }

  // The four children in the order (0,0), (1,0), (0,1), (1,1).
  std::array<DyadicSquare, 4> Children() const;
  // The ancestor at scale j <= k.
  DyadicSquare Ancestor(int j) const;
  // True if other is this square or one of its descendants.
  bool ContainsSquare(const DyadicSquare& other) const;

  friend bool operator==(const DyadicSquare&, const DyadicSquare&) = default;
  friend auto operator<=>(const DyadicSquare& a, const DyadicSquare& b) {
    if (auto c = a.k <=> b.k; c != 0) return c;
    if (auto c = a.ix <=> b.ix; c != 0) return c;
    return a.iy <=> b.iy;
  }
};

// The dyadic square of scale k containing the point (x, y) in its half-open
// lower-left quadrant.
DyadicSquare SquareContaining(const Dyadic& x, const Dyadic& y, int k);

}  // namespace kakeya

#endif  // KAKEYA_DYADIC_H_
