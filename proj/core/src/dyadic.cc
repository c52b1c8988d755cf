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

#include "kakeya/dyadic.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kakeya {

Dyadic::Dyadic(Integer mantissa, std::uint32_t exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {
  Normalize();
}

void Dyadic::Normalize() {
  if (mantissa_.is_zero()) {
    exponent_ = 0;
    return;
  }
  if (exponent_ == 0) return;
  unsigned tz = mantissa_.TrailingZeros();
  unsigned s = std::min<unsigned>(tz, exponent_);
  if (s == 0) return;
  mantissa_ = mantissa_.FloorShiftRight(s);
  exponent_ -= s;
}

Dyadic Dyadic::Pow2(int k) {
  if (k >= 0) return Dyadic(Integer(1).ShiftLeft(static_cast<unsigned>(k)), 0, kRaw);
  return Dyadic(Integer(1), static_cast<std::uint32_t>(-k), kRaw);
}

Dyadic Dyadic::FromDouble(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite double");
  if (v == 0.0) return Dyadic();
  int e = 0;
  double frac = std::frexp(v, &e);  // v = frac * 2^e, 0.5 <= |frac| < 1
  auto m = static_cast<std::int64_t>(std::ldexp(frac, 53));
  return Dyadic(Integer(m), 0).MulPow2(e - 53);
}

Dyadic Dyadic::Parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty dyadic literal");

  if (auto pos = s.find("*2^"); pos != std::string_view::npos) {
    Dyadic base = Parse(s.substr(0, pos));
    std::string exp_text(trim(s.substr(pos + 3)));
    std::size_t used = 0;
    int k = 0;
    try {
      k = std::stoi(exp_text, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed exponent in: " + std::string(text));
    }
    if (used != exp_text.size()) {
      throw std::invalid_argument("malformed exponent in: " + std::string(text));
    }
    return base.MulPow2(k);
  }
  if (auto pos = s.find('/'); pos != std::string_view::npos) {
    Integer p = Integer::FromString(trim(s.substr(0, pos)));
    Integer q = Integer::FromString(trim(s.substr(pos + 1)));
    if (q.sign() <= 0) throw std::invalid_argument("denominator must be positive");
    unsigned tz = q.TrailingZeros();
    if (q.FloorShiftRight(tz) != Integer(1)) {
      throw std::invalid_argument("denominator is not a power of two: " +
                                  std::string(text));
    }
    return Dyadic(p, tz);
  }
  if (auto pos = s.find('.'); pos != std::string_view::npos) {
    bool neg = s.front() == '-';
    std::string_view int_part = s.substr(0, pos);
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      int_part.remove_prefix(1);
    }
    std::string_view frac_part = s.substr(pos + 1);
    std::string digits = std::string(int_part) + std::string(frac_part);
    if (digits.empty()) throw std::invalid_argument("malformed decimal: " + std::string(text));
    for (char c : digits) {
      if (c < '0' || c > '9') throw std::invalid_argument("malformed decimal: " + std::string(text));
    }
    // value = digits / 10^n, which is dyadic iff 5^n divides digits.
    mpz_class num(digits, 10);
    mpz_class pow5;
    mpz_ui_pow_ui(pow5.get_mpz_t(), 5, frac_part.size());
    if (!mpz_divisible_p(num.get_mpz_t(), pow5.get_mpz_t())) {
      throw std::invalid_argument("decimal is not dyadic: " + std::string(text));
    }
    mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), pow5.get_mpz_t());
    if (neg) num = -num;
    return Dyadic(Integer(num), static_cast<std::uint32_t>(frac_part.size()));
  }
  return Dyadic(Integer::FromString(s), 0);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.exponent_ == b.exponent_) return Dyadic(a.mantissa_ + b.mantissa_, a.exponent_);
  if (a.exponent_ > b.exponent_) {
    return Dyadic(a.mantissa_ + b.mantissa_.ShiftLeft(a.exponent_ - b.exponent_), a.exponent_);
  }
  return Dyadic(a.mantissa_.ShiftLeft(b.exponent_ - a.exponent_) + b.mantissa_, b.exponent_);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
}

Dyadic Dyadic::MulPow2(int k) const {
  if (is_zero()) return *this;
  if (k >= 0) {
    auto uk = static_cast<std::uint32_t>(k);
    if (uk <= exponent_) return Dyadic(mantissa_, exponent_ - uk, kRaw);
    return Dyadic(mantissa_.ShiftLeft(uk - exponent_), 0, kRaw);
  }
  return Dyadic(mantissa_, exponent_ + static_cast<std::uint32_t>(-k));
}

std::optional<Dyadic> Dyadic::TryDivide(const Dyadic& a, const Dyadic& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_zero()) return Dyadic();
  // b = bm / 2^be with bm = odd * 2^t.
  unsigned t = b.mantissa_.TrailingZeros();
  mpz_class odd = b.mantissa_.FloorShiftRight(t).ToMpz();
  mpz_class num = a.mantissa_.ToMpz();
  if (!mpz_divisible_p(num.get_mpz_t(), odd.get_mpz_t())) return std::nullopt;
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), odd.get_mpz_t());
  // a / b = q * 2^(be - ae - t).
  long shift = static_cast<long>(b.exponent_) - static_cast<long>(a.exponent_) -
               static_cast<long>(t);
  return Dyadic(Integer(q), 0).MulPow2(static_cast<int>(shift));
}

Integer Dyadic::Floor() const { return mantissa_.FloorShiftRight(exponent_); }
Integer Dyadic::Ceil() const { return mantissa_.CeilShiftRight(exponent_); }

double Dyadic::ToDouble() const {
  if (mantissa_.is_small()) {
    return std::ldexp(static_cast<double>(mantissa_.small_value()), -static_cast<int>(exponent_));
  }
  long e = 0;
  double d = mpz_get_d_2exp(&e, mantissa_.ToMpz().get_mpz_t());
  return std::ldexp(d, static_cast<int>(e) - static_cast<int>(exponent_));
}

mpq_class Dyadic::ToMpq() const {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, exponent_);
  mpq_class q(mantissa_.ToMpz(), den);
  q.canonicalize();
  return q;
}

std::string Dyadic::ToString() const {
  if (exponent_ == 0) return mantissa_.ToString();
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, exponent_);
  return mantissa_.ToString() + "/" + den.get_str(10);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  int sa = a.sign();
  int sb = b.sign();
  if (sa != sb) return sa <=> sb;
  if (a.exponent_ == b.exponent_) return a.mantissa_ <=> b.mantissa_;
  if (a.exponent_ > b.exponent_) {
    return a.mantissa_ <=> b.mantissa_.ShiftLeft(a.exponent_ - b.exponent_);
  }
  return a.mantissa_.ShiftLeft(b.exponent_ - a.exponent_) <=> b.mantissa_;
}

std::ostream& operator<<(std::ostream& os, const Dyadic& d) { return os << d.ToString(); }

std::vector<DyadicInterval> MergeIntervals(std::vector<DyadicInterval> intervals) {
  std::sort(intervals.begin(), intervals.end(),
            [](const DyadicInterval& a, const DyadicInterval& b) { return a.lo < b.lo; });
  std::vector<DyadicInterval> out;
  for (auto& iv : intervals) {
    if (iv.hi < iv.lo) throw std::invalid_argument("interval with hi < lo");
    if (!out.empty() && iv.lo <= out.back().hi) {
      if (out.back().hi < iv.hi) out.back().hi = std::move(iv.hi);
    } else {
      out.push_back(std::move(iv));
    }
  }
  return out;
}

std::array<DyadicSquare, 4> DyadicSquare::Children() const {
  Integer x2 = ix.ShiftLeft(1);
  Integer y2 = iy.ShiftLeft(1);
  return {DyadicSquare{k + 1, x2, y2}, DyadicSquare{k + 1, x2 + 1, y2},
          DyadicSquare{k + 1, x2, y2 + 1}, DyadicSquare{k + 1, x2 + 1, y2 + 1}};
}

DyadicSquare DyadicSquare::Ancestor(int j) const {
  if (j > k) throw std::invalid_argument("ancestor scale finer than square");
  auto s = static_cast<unsigned>(k - j);
  return DyadicSquare{j, ix.FloorShiftRight(s), iy.FloorShiftRight(s)};
}

bool DyadicSquare::ContainsSquare(const DyadicSquare& other) const {
  if (other.k < k) return false;
  return other.Ancestor(k) == *this;
}

DyadicSquare SquareContaining(const Dyadic& x, const Dyadic& y, int k) {
  return DyadicSquare{k, x.MulPow2(k).Floor(), y.MulPow2(k).Floor()};
}

}  // namespace kakeya
