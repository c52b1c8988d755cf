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

#ifndef KAKEYA_HARNESS_H_
#define KAKEYA_HARNESS_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "kakeya/dyadic.h"
#include "kakeya/io.h"

namespace kakeya {

// Seeded generator with platform-independent draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n) for n >= 1.
  std::uint64_t Below(std::uint64_t n);
  // Uniform in [lo, hi].
  std::int64_t Between(std::int64_t lo, std::int64_t hi);
  // Uniform on the grid of spacing (hi - lo) / 2^bits in [lo, hi].
  Dyadic DyadicIn(const Dyadic& lo, const Dyadic& hi, int bits);

 private:
  std::mt19937_64 engine_;
};

// A summable sequence eta_n, given by a closed form:
//   geometric: eta_n = c * q^n      (summable iff q < 1)
//   power:     eta_n = c * n^-p     (summable iff p > 1)
struct EtaSequence {
  enum class Form { kGeometric, kPower };
  Form form = Form::kGeometric;
  double c = 1.0;
  double q = 0.5;
  double p = 2.0;

  double operator()(int n) const;
  bool Summable() const;
  // eta_n >= 2^-n and eta_n < 1 for 1 <= n <= n_max.
  bool Admissible(int n_max) const;

  Json ToJson() const;
  static EtaSequence FromJson(const Json& j);
};

// Suite parameters. Zero or empty fields select per-suite defaults.
//
// JSON schema (all keys optional):
//   {"spec": "2,2,4", "eta": {"form": "geometric", "c": 1, "q": 0.5},
//    "phi": "llog3", "trials": 500, "seed": 7, "sizes": [2, 3],
//    "n0": 1, "windows": 20, "node_budget": 1000000}
struct ExperimentConfig {
  std::string spec;
  EtaSequence eta;
  std::string phi = "llog3";  // a Gauge::Parse suffix after "h1:"
  int trials = 0;
  std::uint64_t seed = 7;
  std::vector<int> sizes;  // m values (M = 2^m) for single-set suites
  int n0 = 1;              // first level of the iteration
  int windows = 0;
  std::uint64_t node_budget = 1'000'000;

  // Throws std::invalid_argument on bad values.
  void Validate() const;
  Json ToJson() const;
  static ExperimentConfig FromJson(const Json& j);
};

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
  Json measured = Json::object();
  Json witness;  // exact inputs of the first failure, null when passing
};

struct VerdictReport {
  std::string suite;
  Json config;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  // Set when the configuration was refused; no checks ran.
  std::optional<std::string> infeasible;

  bool passed() const;
  const Check* Find(std::string_view name) const;
  Json ToJson() const;
  // One row per check: suite,check,status,detail.
  std::string ToCsv() const;
};

std::vector<std::string> SuiteNames();

// Runs a suite. Throws std::invalid_argument for an unknown name or an
// invalid configuration; an infeasible configuration yields a report with
// `infeasible` set.
VerdictReport VerifySuite(std::string_view name, const ExperimentConfig& config);

}  // namespace kakeya

#endif  // KAKEYA_HARNESS_H_
