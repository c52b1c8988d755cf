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

// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Exits nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kakeya/cover.h"
#include "kakeya/harness.h"
#include "kakeya/kakeya.h"
#include "oracle/brute_force.h"
#include "oracle/cover_enumeration.h"
#include "oracle/pixel_mask.h"

namespace kakeya {
namespace {

struct Outcome {
  bool passed = true;
  std::vector<std::string> notes;

  void Require(bool ok, const std::string& what) {
    if (!ok) passed = false;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void Note(const std::string& what) { notes.push_back("note " + what); }
};

ExperimentConfig Sizes(std::vector<int> sizes) {
  ExperimentConfig c;
  c.sizes = std::move(sizes);
  return c;
}

// Requires the named checks of a suite run and records their measurements.
void RequireChecks(Outcome& o, const VerdictReport& r, const std::vector<std::string>& names) {
  if (r.infeasible) o.Require(false, r.suite + " refused: " + *r.infeasible);
  for (const std::string& n : names) {
    const Check* c = r.Find(n);
    if (c == nullptr) {
      o.Require(false, r.suite + "/" + n + " missing");
      continue;
    }
    std::string what = r.suite + "/" + n + ": " + c->detail;
    if (!c->measured.empty()) what += " " + c->measured.dump();
    if (!c->passed && !c->witness.is_null()) what += " witness " + c->witness.dump();
    o.Require(c->passed, what);
  }
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

std::string Fixed(double v, int digits = 2) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << v;
  return s.str();
}

void RequireTime(Outcome& o, double seconds, double limit) {
  o.Require(seconds < limit, "runtime " + Fixed(seconds) + " s < " + Fixed(limit, 0) + " s");
}

Outcome ConstructionEquivalence() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  VerdictReport r = VerifySuite("prop31", Sizes({1, 2, 3, 4}));
  RequireTime(o, Seconds(t0), 10);
  RequireChecks(o, r, {"construction_equivalence"});
  return o;
}

Outcome AdaptiveSumIdentity() {
  Outcome o;
  VerdictReport r = VerifySuite("adaptive_sum", Sizes({2, 3}));
  RequireChecks(o, r, {"nominal_sum_identity", "counted_within_factor_4"});
  return o;
}

Outcome SliceStructure() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  VerdictReport r = VerifySuite("slices", Sizes({2, 3, 4}));
  RequireTime(o, Seconds(t0), 30);
  RequireChecks(o, r, {"component_count", "component_length", "gap_sequence"});
  return o;
}

Outcome InterceptDifference() {
  Outcome o;
  VerdictReport r = VerifySuite("prop32", Sizes({2, 3}));
  RequireChecks(o, r, {"intercept_difference"});
  std::vector<Line> l = BuildLines(2);
  o.Require(l[8].beta - l[7].beta == Dyadic::Parse("11/64"), "M=4 slopes 7/16, 8/16 gap 11/64");
  return o;
}

Outcome IntervalConstants() {
  Outcome o;
  ExperimentConfig c = Sizes({2, 3, 4});
  c.trials = 500;
  c.seed = 7;
  VerdictReport r = VerifySuite("prop33", c);
  RequireChecks(o, r, {"lower_constant_1_8", "upper_constant_16"});
  if (const Check* m = r.Find("band_monotonicity"); m != nullptr && !m->passed) {
    o.Note("band_monotonicity (outside this criterion) fails: " + m->detail);
  }
  return o;
}

Outcome AreaBound() {
  Outcome o;
  VerdictReport r = VerifySuite("area", Sizes({1, 2, 3, 4}));
  RequireChecks(o, r, {"area_below_1_over_M", "area_at_least_half_of_1_over_M"});
  return o;
}

Outcome CoverOptimality() {
  Outcome o;
  KakeyaSet k = KakeyaSet::Build(1);
  std::vector<Trapezoid> tri;
  for (const Line& l : k.lines()) {
    tri.push_back({Dyadic(0), Dyadic(1), {l.alpha + k.delta(), l.beta - k.delta()}, l.Fn()});
  }
  PieceOracle pieces(k.pieces());
  int ranges = 0, agree = 0;
  for (int k_max = 0; k_max <= 4; ++k_max) {
    for (int k_min = 0; k_min <= k_max; ++k_min) {
      oracle::CoverEnumerator e([&](const DyadicSquare& q) { return oracle::AnyMeets(tri, q); },
                                k_min, k_max);
      CoverOptions opts;
      opts.k_min = k_min;
      opts.k_max = k_max;
      CoverResult r = OptimalCover(pieces, Gauge::H(), opts);
      ++ranges;
      if (r.exact_total && *r.exact_total == e.Minimum(DomainSquares(k_min))) ++agree;
    }
  }
  o.Require(agree == ranges, "E_2: " + std::to_string(agree) + "/" + std::to_string(ranges) +
                                 " scale ranges with k_max <= 4 equal enumeration");

  std::mt19937_64 rng(2026);
  int masks = 0;
  for (int t = 0; t < 10; ++t) {
    oracle::PixelMask mask(rng, 0.15 + 0.07 * t);
    PredicateOracle p([&](const DyadicSquare& q) { return mask.Classify(q); });
    oracle::CoverEnumerator e([&](const DyadicSquare& q) { return mask.Meets(q); }, 0, 4);
    CoverOptions opts;
    opts.k_min = 0;
    opts.k_max = 4;
    opts.window = {{0, 0, 0}};
    CoverResult r = OptimalCover(p, Gauge::H(), opts);
    if (r.exact_total && *r.exact_total == e.Minimum(opts.window)) ++masks;
  }
  o.Require(masks == 10, std::to_string(masks) + "/10 random targets equal enumeration at depth 4");
  return o;
}

Outcome Sandwich() {
  Outcome o;
  ExperimentConfig c = Sizes({3});
  c.trials = 200;
  VerdictReport r = VerifySuite("prop34", c);
  RequireChecks(o, r, {"regime_a_upper", "regime_b_lower_3U", "regime_b_upper"});
  return o;
}

Outcome LocalizedLowerBound() {
  Outcome o;
  ExperimentConfig c = Sizes({3, 4});
  c.windows = 20;
  auto t0 = std::chrono::steady_clock::now();
  VerdictReport r = VerifySuite("lemma51", c);
  RequireTime(o, Seconds(t0), 300);
  RequireChecks(o, r, {"localized_lower_bound"});
  for (const std::string& n : r.notes) o.Note(n);
  return o;
}

Outcome MinkowskiEnvelope() {
  Outcome o;
  ExperimentConfig c;
  c.spec = "2,2,4";
  VerdictReport r = VerifySuite("prop41", c);
  RequireChecks(o, r, {"minkowski_product_at_most_8"});
  return o;
}

Outcome MeasureStep() {
  Outcome o;
  VerdictReport r = VerifySuite("lemma52_53_surrogate", ExperimentConfig{});
  RequireChecks(o, r, {"measure_step_monotone"});
  for (const std::string& n : r.notes) o.Note(n);
  return o;
}

Outcome MinimalityDecay() {
  Outcome o;
  ExperimentConfig c;
  c.spec = "2,4,8";
  VerdictReport r = VerifySuite("thm61", c);
  RequireChecks(o, r, {"below_slab_bound", "strictly_decreasing", "full_measure_lines"});
  return o;
}

int Run() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"construction equivalence", ConstructionEquivalence},
      {"adaptive sum identity", AdaptiveSumIdentity},
      {"slice structure", SliceStructure},
      {"intercept difference", InterceptDifference},
      {"interval count constants", IntervalConstants},
      {"area below 1/M", AreaBound},
      {"optimal cover vs enumeration", CoverOptimality},
      {"adaptive measure sandwich", Sandwich},
      {"localized lower bound", LocalizedLowerBound},
      {"Minkowski product envelope", MinkowskiEnvelope},
      {"single-step measure monotonicity", MeasureStep},
      {"minimality decay", MinimalityDecay},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.Require(false, std::string("exception: ") + e.what());
    }
    const double s = Seconds(t0);
    if (!o.passed) ++failed;
    std::printf("%s criterion %2zu: %s (%.1f s)\n", o.passed ? "PASS" : "FAIL", i + 1,
                criteria[i].name, s);
    for (const std::string& n : o.notes) std::printf("       %s\n", n.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace kakeya

int main() { return kakeya::Run(); }
