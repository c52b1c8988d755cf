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

// Geometric replay of the cut-and-slide construction. Each line keeps its
// slope; only intercepts change, by the vertical slides of each step.

#include <stdexcept>
#include <string>

#include "kakeya/kakeya.h"

namespace kakeya {

namespace {

struct PendingRecord {
  std::size_t step;
  std::size_t group_first;
  Dyadic intercept_then;
};

}  // namespace

Construction SimulateConstruction(int m) {
  if (m < 1 || m > 5) throw std::out_of_range("m must lie in [1, 5], got " + std::to_string(m));
  if (m > kMaxBuildM) throw std::length_error("construction too large to simulate");
  const int M = 1 << m;
  const std::size_t n = std::size_t{1} << M;
  const Dyadic delta = Dyadic::Pow2(-M);

  // Step 0: triangle i has vertex (1, 0) and upper side of slope i * delta.
  std::vector<LinearFn> pos(n);
  for (std::size_t i = 0; i < n; ++i) {
    Dyadic a = Dyadic(Integer(i), static_cast<std::uint32_t>(M));
    pos[i] = {a, -a};
  }
  auto lower_edge = [&](std::size_t i) {
    return LinearFn{pos[i].slope + delta, pos[i].intercept - delta};
  };

  Construction out;
  out.m = m;
  std::vector<PendingRecord> pending;
  Dyadic prev_cut(1);
  for (int j = 1; j <= M; ++j) {
    ConstructionStep step;
    step.j = j;
    step.cut_x = Dyadic(1) - Dyadic(j).MulPow2(-m);
    const std::size_t g = std::size_t{1} << (j - 1);
    for (std::size_t first1 = 0; first1 < n; first1 += 2 * g) {
      const std::size_t first2 = first1 + g;
      const std::size_t last2 = first2 + g - 1;
      // Slide the upper trapezoid so the two first lines meet at the cut.
      Dyadic s = pos[first1](step.cut_x) - pos[first2](step.cut_x);
      for (std::size_t t = first2; t <= last2; ++t) pos[t].intercept += s;
      step.slides.push_back(s);

      step.trapezoids.push_back({Dyadic(0), step.cut_x, lower_edge(last2), pos[first1]});
      step.parallelograms.push_back({step.cut_x, prev_cut, lower_edge(first2 - 1), pos[first2]});
      LinearFn below = pos[first1];
      LinearFn above = lower_edge(last2);
      auto apex = Dyadic::TryDivide(below.intercept - above.intercept, above.slope - below.slope);
      if (!apex) throw std::logic_error("triangle apex is not dyadic");
      step.notches.push_back({*apex, prev_cut, below, above});
      pending.push_back({out.steps.size(), first1, pos[first1].intercept});
    }
    out.steps.push_back(std::move(step));
    prev_cut = out.steps.back().cut_x;
  }

  // Later slides move whole groups; carry each record to the final position.
  std::vector<std::size_t> next_in_step(out.steps.size(), 0);
  for (const auto& rec : pending) {
    Dyadic offset = pos[rec.group_first].intercept - rec.intercept_then;
    auto& step = out.steps[rec.step];
    std::size_t idx = next_in_step[rec.step]++;
    LinearFn shift{Dyadic(0), offset};
    step.trapezoids[idx] = step.trapezoids[idx].Transformed(Dyadic(1), shift);
    step.parallelograms[idx] = step.parallelograms[idx].Transformed(Dyadic(1), shift);
    step.notches[idx] = step.notches[idx].Transformed(Dyadic(1), shift);
  }

  out.lines.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Line l;
    l.alpha = pos[i].slope;
    l.beta = pos[i].intercept;
    l.digits.resize(M);
    for (int k = 1; k <= M; ++k) l.digits[k - 1] = (i >> (M - k)) & 1;
    out.lines.push_back(std::move(l));
  }
  return out;
}

}  // namespace kakeya
