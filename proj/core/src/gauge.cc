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

#include "kakeya/gauge.h"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kakeya {

bool LeqWithSlack(double lhs, double rhs) { return lhs <= rhs + kCheckSlack * std::fabs(rhs); }
bool GeqWithSlack(double lhs, double rhs) { return lhs >= rhs - kCheckSlack * std::fabs(rhs); }

namespace {

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

Dyadic DyadicFromMpfr(mpfr_ptr v) {
  if (mpfr_zero_p(v)) return Dyadic();
  mpz_class z;
  mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), v);
  return Dyadic(Integer(z), 0).MulPow2(static_cast<int>(e));
}

}  // namespace

LogEnclosure ClampedLog2(const Dyadic& r, int precision_bits) {
  if (r.sign() <= 0) throw std::domain_error("log of a nonpositive value");
  // Powers of two have exact logs.
  if (r.mantissa() == Integer(1) || (r.is_integer() && r.mantissa().BitLength() ==
                                                           r.mantissa().TrailingZeros() + 1)) {
    int e = r.is_integer() ? static_cast<int>(r.mantissa().TrailingZeros())
                           : -static_cast<int>(r.exponent());
    Dyadic v(std::max(e, 1));
    return {v, v};
  }
  if (Dyadic(2) >= r) return {Dyadic(1), Dyadic(1)};
  auto bits = static_cast<mpfr_prec_t>(std::max<std::size_t>(r.mantissa().BitLength(), 2));
  Mpfr x(bits);
  mpz_class mant = r.mantissa().ToMpz();
  mpfr_set_z(x.get(), mant.get_mpz_t(), MPFR_RNDN);  // exact at this precision
  mpfr_div_2ui(x.get(), x.get(), r.exponent(), MPFR_RNDN);
  Mpfr lo(precision_bits), hi(precision_bits);
  mpfr_log2(lo.get(), x.get(), MPFR_RNDD);
  mpfr_log2(hi.get(), x.get(), MPFR_RNDU);
  Dyadic dlo = DyadicFromMpfr(lo.get());
  Dyadic dhi = DyadicFromMpfr(hi.get());
  return {Max(dlo, Dyadic(1)), Max(dhi, Dyadic(1))};
}

int CompareScaledLog(const Dyadic& a, const Dyadic& r, const Dyadic& b) {
  for (int prec = 64; prec <= (1 << 16); prec *= 2) {
    LogEnclosure e = ClampedLog2(r, prec);
    Dyadic p = a * e.lo, q = a * e.hi;
    const Dyadic& lo = Min(p, q);
    const Dyadic& hi = Max(p, q);
    if (lo > b) return 1;
    if (hi < b) return -1;
    if (e.lo == e.hi) return (lo > b) - (lo < b);
  }
  throw std::runtime_error("log comparison undecided at maximum precision");
}

Phi Phi::One() { return Phi(); }

Phi Phi::LogLogPower(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("exponent must be positive");
  Phi p;
  p.kind_ = Kind::kLogLogPower;
  p.eps_ = eps;
  return p;
}

Phi Phi::LogLogLog() {
  Phi p;
  p.kind_ = Kind::kLogLogLog;
  return p;
}

Phi Phi::Table(std::map<int, double> values) {
  if (values.empty()) throw std::invalid_argument("empty phi table");
  for (const auto& [k, v] : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("phi table values must be positive and finite");
    }
  }
  Phi p;
  p.kind_ = Kind::kTable;
  p.table_ = std::move(values);
  return p;
}

Phi Phi::TableFromCsv(std::string_view path) {
  std::ifstream in{std::string(path)};
  if (!in) throw std::runtime_error("cannot open phi table " + std::string(path));
  std::map<int, double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    int k;
    double v;
    if (!(row >> k >> v)) {
      if (values.empty()) continue;  // header
      throw std::invalid_argument("malformed phi table row: " + line);
    }
    values[k] = v;
  }
  return Table(std::move(values));
}

std::string Phi::Name() const {
  switch (kind_) {
    case Kind::kOne:
      return "one";
    case Kind::kLogLogPower: {
      std::ostringstream s;
      s << "llog2e:" << eps_;
      return s.str();
    }
    case Kind::kLogLogLog:
      return "llog3";
    case Kind::kTable:
      return "table";
  }
  return "";
}

double Phi::operator()(int k) const {
  auto clog = [](double v) { return std::max(std::log2(v), 1.0); };
  double log1 = ClampedLog2Scale(k);
  switch (kind_) {
    case Kind::kOne:
      return 1.0;
    case Kind::kLogLogPower:
      return std::pow(clog(log1), eps_);
    case Kind::kLogLogLog:
      return clog(clog(log1));
    case Kind::kTable: {
      auto it = table_.upper_bound(k);
      if (it == table_.begin()) return it->second;
      return std::prev(it)->second;
    }
  }
  return 1.0;
}

bool Phi::IsMonotone(int kmin, int kmax) const {
  for (int k = kmin; k < kmax; ++k) {
    if ((*this)(k + 1) < (*this)(k)) return false;
  }
  return true;
}

DoublingMargin PhiDoublingMargin(const Phi& phi, int kmin, int kmax, double c_phi) {
  DoublingMargin d;
  d.margin = -INFINITY;
  for (int k = kmin; k <= kmax; ++k) {
    double m = phi(2 * k) - phi(k);
    if (m > d.margin) {
      d.margin = m;
      d.argmax_k = k;
    }
  }
  if (kmin > kmax) d.margin = 0.0;
  d.violated = !LeqWithSlack(d.margin, c_phi);
  return d;
}

Gauge Gauge::H() { return Gauge(); }

Gauge Gauge::H1(Phi phi) {
  Gauge g;
  g.h1_ = true;
  g.phi_ = std::move(phi);
  return g;
}

Gauge Gauge::Parse(std::string_view text) {
  if (text == "h") return H();
  if (text.substr(0, 3) != "h1:") throw std::invalid_argument("unknown gauge: " + std::string(text));
  std::string_view rest = text.substr(3);
  if (rest == "one") return H1(Phi::One());
  if (rest == "llog3") return H1(Phi::LogLogLog());
  if (rest.substr(0, 7) == "llog2e:") {
    std::string eps(rest.substr(7));
    std::size_t used = 0;
    double e = 0.0;
    try {
      e = std::stod(eps, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != eps.size()) throw std::invalid_argument("malformed exponent: " + eps);
    return H1(Phi::LogLogPower(e));
  }
  if (rest.substr(0, 6) == "table:") return H1(Phi::TableFromCsv(rest.substr(6)));
  throw std::invalid_argument("unknown phi: " + std::string(rest));
}

std::string Gauge::Name() const { return h1_ ? "h1:" + phi_.Name() : "h"; }

Dyadic Gauge::HPart(int k) {
  if (k < 0) throw std::invalid_argument("scale index must be nonnegative");
  return Dyadic(Integer(ClampedLog2Scale(k)), static_cast<std::uint32_t>(2 * k));
}

double Gauge::Value(int k) const { return HPart(k).ToDouble() * phi_(k); }

bool Gauge::RefinementMonotone(int kmin, int kmax) const {
  for (int k = std::max(kmin, 0); k < kmax; ++k) {
    if (ClampedLog2Scale(k + 1) * phi_(k + 1) < ClampedLog2Scale(k) * phi_(k)) return false;
  }
  return true;
}

void CompensatedSum::Add(double v) {
  double t = sum_ + v;
  if (std::fabs(sum_) >= std::fabs(v)) {
    comp_ += (sum_ - t) + v;
  } else {
    comp_ += (v - t) + sum_;
  }
  sum_ = t;
}

}  // namespace kakeya
