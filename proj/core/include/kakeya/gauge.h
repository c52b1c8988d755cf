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

#ifndef KAKEYA_GAUGE_H_
#define KAKEYA_GAUGE_H_

#include <map>
#include <string>
#include <string_view>

#include "kakeya/dyadic.h"

namespace kakeya {

// Relative slack applied to every inequality that involves a numeric phi.
inline constexpr double kCheckSlack = 0x1p-20;

// lhs <= rhs up to kCheckSlack relative to |rhs|.
bool LeqWithSlack(double lhs, double rhs);
bool GeqWithSlack(double lhs, double rhs);

// max(k, 1): the clamped base-2 log of 2^k.
inline int ClampedLog2Scale(int k) { return k > 1 ? k : 1; }

// Certified enclosure [lo, hi] of max(log2 r, 1) for a positive dyadic r.
// Exact (lo == hi) when r is a power of two.
struct LogEnclosure {
  Dyadic lo;
  Dyadic hi;
};
LogEnclosure ClampedLog2(const Dyadic& r, int precision_bits);

// Sign of a * log(r) - b for positive dyadic r, where log is the clamped
// base-2 log, decided exactly. The precision is raised until the enclosure
// separates the two sides, which always terminates unless the sides are
// equal, which can only happen at powers of two where the log is exact.
int CompareScaledLog(const Dyadic& a, const Dyadic& r, const Dyadic& b);

// A positive nonincreasing function of r, evaluated at r = 2^-k.
class Phi {
 public:
  enum class Kind { kOne, kLogLogPower, kLogLogLog, kTable };

  static Phi One();
  // (log log (1/r))^eps with clamped logs.
  static Phi LogLogPower(double eps);
  // log log log (1/r) with clamped logs.
  static Phi LogLogLog();
  // Values at listed scales; constant beyond the first and last entries and
  // nondecreasing in k required between them only by Validate.
  static Phi Table(std::map<int, double> values);
  // Reads CSV rows "k,value"; a header row is allowed.
  static Phi TableFromCsv(std::string_view path);

  Kind kind() const { return kind_; }
  double eps() const { return eps_; }
  const std::map<int, double>& table() const { return table_; }
  bool is_one() const { return kind_ == Kind::kOne; }
  std::string Name() const;

  double operator()(int k) const;

  // phi is nondecreasing in k (nonincreasing in r) on [kmin, kmax].
  bool IsMonotone(int kmin, int kmax) const;

 private:
  Kind kind_ = Kind::kOne;
  double eps_ = 0.0;
  std::map<int, double> table_;
};

struct DoublingMargin {
  double margin = 0.0;  // max over k of phi(2^-2k) - phi(2^-k)
  int argmax_k = 0;
  bool violated = false;  // margin exceeds the declared constant
};

// Scans k in [kmin, kmax].
DoublingMargin PhiDoublingMargin(const Phi& phi, int kmin, int kmax, double c_phi);

// h(r) = r^2 log(1/r) or h1(r) = h(r) phi(r), at dyadic scales r = 2^-k.
class Gauge {
 public:
  static Gauge H();
  static Gauge H1(Phi phi);
  // "h", "h1:llog3", "h1:llog2e:<eps>", "h1:table:<file>", "h1:one".
  static Gauge Parse(std::string_view text);

  bool is_h() const { return !h1_; }
  const Phi& phi() const { return phi_; }
  // True when every value is an exact dyadic (phi identically 1).
  bool exact() const { return phi_.is_one(); }
  std::string Name() const;

  // 2^-2k max(k, 1).
  static Dyadic HPart(int k);
  double PhiPart(int k) const { return phi_(k); }
  double Value(int k) const;

  // Refining a full square into its four children never lowers the cost,
  // which holds when k phi(2^-k) is nondecreasing on [kmin, kmax].
  bool RefinementMonotone(int kmin, int kmax) const;

 private:
  bool h1_ = false;
  Phi phi_;
};

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void Add(double v);
  double Total() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace kakeya

#endif  // KAKEYA_GAUGE_H_
