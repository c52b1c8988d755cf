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

#include "kakeya/integer.h"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace kakeya {

namespace {

mpz_class MpzFromInt64(std::int64_t v) {
  mpz_class z;
  if (v >= 0) {
    std::uint64_t u = static_cast<std::uint64_t>(v);
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(u), 0, 0, &u);
  } else {
    std::uint64_t u = ~static_cast<std::uint64_t>(v) + 1;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(u), 0, 0, &u);
    z = -z;
  }
  return z;
}

}  // namespace

Integer::Integer(const mpz_class& z) {
  if (mpz_fits_slong_p(z.get_mpz_t())) {
    small_ = mpz_get_si(z.get_mpz_t());
  } else {
    big_ = std::make_unique<mpz_class>(z);
  }
}

Integer::Integer(const Integer& other) : small_(other.small_) {
  if (other.big_) big_ = std::make_unique<mpz_class>(*other.big_);
}

Integer& Integer::operator=(const Integer& other) {
  if (this == &other) return *this;
  small_ = other.small_;
  if (other.big_) {
    big_ = std::make_unique<mpz_class>(*other.big_);
  } else {
    big_.reset();
  }
  return *this;
}

Integer Integer::FromMpz(mpz_class&& z) {
  Integer r;
  if (mpz_fits_slong_p(z.get_mpz_t())) {
    r.small_ = mpz_get_si(z.get_mpz_t());
  } else {
    r.big_ = std::make_unique<mpz_class>(std::move(z));
  }
  return r;
}

Integer Integer::FromString(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw std::invalid_argument("malformed integer: " + s);
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') {
      throw std::invalid_argument("malformed integer: " + s);
    }
  }
  if (s[0] == '+') s.erase(0, 1);
  return FromMpz(mpz_class(s, 10));
}

int Integer::sign() const {
  if (big_) return sgn(*big_);
  return (small_ > 0) - (small_ < 0);
}

bool Integer::is_odd() const {
  if (big_) return mpz_odd_p(big_->get_mpz_t());
  return (small_ & 1) != 0;
}

std::int64_t Integer::ToInt64() const {
  if (big_) throw std::overflow_error("integer does not fit in int64");
  return small_;
}

mpz_class Integer::ToMpz() const {
  if (big_) return *big_;
  return MpzFromInt64(small_);
}

double Integer::ToDouble() const {
  if (big_) return big_->get_d();
  return static_cast<double>(small_);
}

std::string Integer::ToString() const {
  if (big_) return big_->get_str(10);
  return std::to_string(small_);
}

unsigned Integer::TrailingZeros() const {
  if (big_) return static_cast<unsigned>(mpz_scan1(big_->get_mpz_t(), 0));
  if (small_ == 0) throw std::domain_error("trailing zeros of zero");
  return static_cast<unsigned>(std::countr_zero(static_cast<std::uint64_t>(small_)));
}

std::size_t Integer::BitLength() const {
  if (big_) return mpz_sizeinbase(big_->get_mpz_t(), 2);
  if (small_ == 0) return 0;
  std::uint64_t mag = small_ < 0 ? ~static_cast<std::uint64_t>(small_) + 1
                                 : static_cast<std::uint64_t>(small_);
  return 64 - std::countl_zero(mag);
}

Integer Integer::ShiftLeft(unsigned s) const {
  if (!big_) {
    if (small_ == 0) return Integer();
    if (s < 63 && BitLength() + s <= 62) {
      return Integer(static_cast<std::int64_t>(
          static_cast<std::uint64_t>(small_) << s));
    }
  }
  mpz_class z = ToMpz();
  mpz_mul_2exp(z.get_mpz_t(), z.get_mpz_t(), s);
  return FromMpz(std::move(z));
}

Integer Integer::FloorShiftRight(unsigned s) const {
  if (!big_) {
    if (s >= 63) return Integer(small_ < 0 ? -1 : 0);
    return Integer(small_ >> s);  // arithmetic shift floors
  }
  mpz_class z;
  mpz_fdiv_q_2exp(z.get_mpz_t(), big_->get_mpz_t(), s);
  return FromMpz(std::move(z));
}

Integer Integer::CeilShiftRight(unsigned s) const {
  if (!big_) {
    if (s >= 63) return Integer(small_ > 0 ? 1 : 0);
    std::int64_t q = small_ >> s;
    if ((q << s) != small_) ++q;
    return Integer(q);
  }
  mpz_class z;
  mpz_cdiv_q_2exp(z.get_mpz_t(), big_->get_mpz_t(), s);
  return FromMpz(std::move(z));
}

Integer Integer::operator-() const {
  if (!big_) {
    std::int64_t r;
    if (!__builtin_sub_overflow(std::int64_t{0}, small_, &r)) return Integer(r);
  }
  return FromMpz(-ToMpz());
}

Integer operator+(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) {
    std::int64_t r;
    if (!__builtin_add_overflow(a.small_, b.small_, &r)) return Integer(r);
  }
  return Integer::FromMpz(a.ToMpz() + b.ToMpz());
}

Integer operator-(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) {
    std::int64_t r;
    if (!__builtin_sub_overflow(a.small_, b.small_, &r)) return Integer(r);
  }
  return Integer::FromMpz(a.ToMpz() - b.ToMpz());
}

Integer operator*(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) {
    std::int64_t r;
    if (!__builtin_mul_overflow(a.small_, b.small_, &r)) return Integer(r);
  }
  return Integer::FromMpz(a.ToMpz() * b.ToMpz());
}

bool operator==(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) return a.small_ == b.small_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical form: a big value never equals a small one
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
  int c = cmp(a.ToMpz(), b.ToMpz());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.ToString(); }

}  // namespace kakeya
