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

#ifndef KAKEYA_COVER_H_
#define KAKEYA_COVER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kakeya/dyadic.h"
#include "kakeya/gauge.h"
#include "kakeya/kakeya.h"
#include "kakeya/region.h"

namespace kakeya {

// How a closed dyadic square relates to a target set. A square is empty
// when its interior misses the interior of the target, and full when the
// square lies inside the target. Full is allowed to be conservative.
enum class Overlap { kEmpty, kPartial, kFull };

// Classifies squares against a target. Candidates are oracle-defined
// indices passed from a square to its descendants to narrow later tests.
class SetOracle {
 public:
  using Candidates = std::vector<std::uint32_t>;

  virtual ~SetOracle() = default;

  virtual Candidates RootCandidates() const = 0;
  // Candidates of q are written to `out`; `parent` holds those of an
  // ancestor of q (or the root candidates).
  virtual Overlap Classify(const DyadicSquare& q, const Candidates& parent,
                           Candidates* out) const = 0;
  // A lower bound on the area of the target inside q.
  virtual Dyadic AreaLowerBound(const DyadicSquare& q, const Candidates& c) const;
};

// Target given as a union of trapezoids.
class PieceOracle : public SetOracle {
 public:
  // `disjoint` states that the pieces have pairwise disjoint interiors, which
  // lets area bounds add up across pieces.
  explicit PieceOracle(PieceSet pieces, bool disjoint = true);

  Candidates RootCandidates() const override;
  Overlap Classify(const DyadicSquare& q, const Candidates& parent, Candidates* out) const override;
  Dyadic AreaLowerBound(const DyadicSquare& q, const Candidates& c) const override;

  const PieceSet& pieces() const { return pieces_; }

 private:
  PieceSet pieces_;
  bool disjoint_;
};

// Target given by a classification function.
class PredicateOracle : public SetOracle {
 public:
  explicit PredicateOracle(std::function<Overlap(const DyadicSquare&)> classify)
      : classify_(std::move(classify)) {}

  Candidates RootCandidates() const override { return {}; }
  Overlap Classify(const DyadicSquare& q, const Candidates&, Candidates* out) const override {
    out->clear();
    return classify_(q);
  }

 private:
  std::function<Overlap(const DyadicSquare&)> classify_;
};

// The squares of scale k tiling [0, 1] x [-1, 1].
std::vector<DyadicSquare> DomainSquares(int k);
// The squares of scale k tiling the square w (k >= w.k).
std::vector<DyadicSquare> TileSquare(const DyadicSquare& w, int k);

struct CoverOptions {
  int k_min = 0;
  int k_max = 0;
  // Roots of the search, each at scale k_min; empty means DomainSquares.
  std::vector<DyadicSquare> window;
  // Zero runs the exact recursion down to k_max. Otherwise the recursion
  // stops at the deepest scale whose predicted node count fits the budget,
  // and unresolved squares contribute certified lower bounds.
  std::uint64_t node_budget = 0;
  // Evaluates roots concurrently; results are identical to sequential runs.
  bool parallel = false;
};

struct ScaleSummary {
  int k = 0;
  std::uint64_t count = 0;
  Dyadic h;      // 2^-2k max(k, 1)
  double phi = 1.0;
  double contribution = 0.0;
};

struct CoverResult {
  std::vector<DyadicSquare> squares;  // sorted, pairwise interior-disjoint
  int k_min = 0;
  int k_max = 0;
  std::string gauge;
  // Sum of gauge values over `squares`; exact when the gauge is.
  double total = 0.0;
  std::optional<Dyadic> exact_total;
  // Certified lower bound on the optimum; equal to the total when exact.
  double lower_bound = 0.0;
  std::optional<Dyadic> exact_lower_bound;
  bool exact = true;
  int depth_reached = 0;  // deepest scale examined
  std::uint64_t nodes = 0;
  std::vector<ScaleSummary> per_scale;
};

// Minimum of sum gauge(r(Q)) over disjoint dyadic covers by squares of
// scales in [k_min, k_max]. Ties keep the coarser square. Throws
// std::invalid_argument for k_min > k_max or misplaced roots.
CoverResult OptimalCover(const SetOracle& oracle, const Gauge& gauge, const CoverOptions& opts);

// Totals and per-scale summary for an explicit square list.
CoverResult SummarizeCover(std::vector<DyadicSquare> squares, const Gauge& gauge, int k_min,
                           int k_max);

// Vertical translates q + e (0, r(q)) for e in {0, +-1} (factor 3) or
// {0, +-1, +-2} (factor 5), bottom to top.
std::vector<DyadicSquare> Neighborhood(const DyadicSquare& q, int factor);

// Per band j, the squares of side r_j in the band strip whose interior
// meets the interior of the band.
class AdaptiveCover {
 public:
  struct Column {
    Integer ix;
    std::vector<std::pair<Integer, Integer>> rows;  // inclusive, sorted, disjoint
  };
  struct BandCover {
    int j = 0;
    int k = 0;  // scale index of r_j
    std::vector<Column> columns;
    std::uint64_t count = 0;
  };

  // Throws std::length_error above a work limit (M = 16 is out of reach).
  static AdaptiveCover Build(const KakeyaSet& k);

  const std::vector<BandCover>& bands() const { return bands_; }
  std::uint64_t count() const;
  // sum_j count_j h(r_j), exact.
  Dyadic Total() const;
  double Total(const Gauge& g) const;
  std::vector<DyadicSquare> Squares() const;
  CoverResult ToCoverResult(const Gauge& g) const;

  // Number of adaptive squares of each band meeting the interior of the
  // union of f.
  std::vector<std::uint64_t> CountMeeting(const std::vector<DyadicSquare>& f) const;
  // sum_j #{adaptive squares of band j meeting f} h(r_j), exact.
  Dyadic Measure(const std::vector<DyadicSquare>& f) const;
  double Measure(const std::vector<DyadicSquare>& f, const Gauge& g) const;

 private:
  std::vector<BandCover> bands_;
};

// sum_j 2 * 2^(M-j) * ((1/M) / r_j) * h(r_j), evaluated term by term.
Dyadic AdaptiveNominalSum(int m);
// 1 + (2m - 1) / 2^m.
Dyadic AdaptiveNominalClosedForm(int m);

struct QuasiOptimality {
  double adaptive_total = 0.0;
  double optimal_total = 0.0;
  double ratio = 0.0;
  std::optional<Dyadic> exact_adaptive;
  std::optional<Dyadic> exact_optimal;
};
// Adaptive total over the optimal total at scales [1, 2^-k_max] on the
// domain squares.
QuasiOptimality QuasiOptimalityRatio(const KakeyaSet& k, const Gauge& g, int k_max);

}  // namespace kakeya

#endif  // KAKEYA_COVER_H_
