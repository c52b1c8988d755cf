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

#ifndef KAKEYA_KAKEYA_H_
#define KAKEYA_KAKEYA_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "kakeya/dyadic.h"
#include "kakeya/region.h"

namespace kakeya {

// The line y = alpha * x + beta. For lines of a single triangle family,
// `digits` holds the binary digits of alpha, most significant first.
struct Line {
  Dyadic alpha;
  Dyadic beta;
  std::vector<std::uint8_t> digits;

  Dyadic At(const Dyadic& x) const { return alpha * x + beta; }
  LinearFn Fn() const { return {alpha, beta}; }
  friend bool operator==(const Line&, const Line&) = default;
};

// Largest supported m for building the 2^(2^m) lines explicitly.
inline constexpr int kMaxBuildM = 4;

// The intercept -sum_k ((k-1)/M) eps_k 2^-k for slope digits eps_1..eps_M.
Dyadic InterceptForDigits(const std::vector<std::uint8_t>& digits, int M);

// The 2^M lines of the triangle family with M = 2^m, ordered by slope.
// Throws std::out_of_range unless 1 <= m <= 5 and std::length_error when the
// family is too large to enumerate (m = 5).
std::vector<Line> BuildLines(int m);

// One step of the cut-and-slide construction. Records are translated to
// their positions in the final configuration.
struct ConstructionStep {
  int j = 0;
  Dyadic cut_x;
  // Vertical slide applied to the upper group of each pair.
  std::vector<Dyadic> slides;
  // New trapezoids on [0, cut_x].
  std::vector<Trapezoid> trapezoids;
  // Parallelograms on [cut_x, previous cut].
  std::vector<Trapezoid> parallelograms;
  // Removed triangles; the lower and upper edges meet at x_lo.
  std::vector<Trapezoid> notches;
};

struct Construction {
  int m = 0;
  std::vector<Line> lines;
  std::vector<ConstructionStep> steps;
};

// Performs the construction geometrically, sliding trapezoids step by step.
Construction SimulateConstruction(int m);

class KakeyaSet {
 public:
  // Throws like BuildLines.
  static KakeyaSet Build(int m, bool restricted = false);

  int m() const { return m_; }
  int M() const { return M_; }
  const Dyadic& delta() const { return delta_; }
  bool restricted() const { return restricted_; }
  const std::vector<Line>& lines() const { return lines_; }
  // Domain in x: [0, 1], or [1/2, 3/4] when restricted.
  const Dyadic& x_min() const { return x_min_; }
  const Dyadic& x_max() const { return x_max_; }
  // Bands whose strip has positive width inside the domain.
  int first_band() const;
  int last_band() const;

  // The closed thin triangle below line i, clipped to the domain.
  Trapezoid Triangle(std::size_t i) const;
  PieceSet Triangles() const;
  // Interior-disjoint trapezoids whose union is the set, grouped by band.
  const PieceSet& pieces() const { return *pieces_; }

 private:
  KakeyaSet() = default;

  int m_ = 0;
  int M_ = 0;
  Dyadic delta_;
  bool restricted_ = false;
  Dyadic x_min_;
  Dyadic x_max_;
  std::vector<Line> lines_;
  std::shared_ptr<const PieceSet> pieces_;
};

// Band j strip: [1 - j/M, 1 - (j-1)/M].
Dyadic BandLeft(int M, int j);
Dyadic BandRight(int M, int j);
// r_j = 2^j / (M 2^M) and its scale index m + M - j.
Dyadic BandScale(int m, int j);
int BandScaleIndex(int m, int j);

struct Parallelogram {
  Dyadic slope;
  Dyadic top_left;  // upper side at the band's left edge
  Dyadic width;     // vertical side length

  LinearFn Upper(const Dyadic& x_left) const { return {slope, top_left - slope * x_left}; }
};

struct Notch {
  Dyadic apex_x;
  LinearFn lower;
  LinearFn upper;
  Dyadic right_side;  // vertical side at the band's right edge
};

struct Band {
  int j = 0;
  Dyadic r;
  Dyadic x_lo;
  Dyadic x_hi;
  std::vector<Parallelogram> parallelograms;
  std::vector<Notch> notches;

  // Three interior-disjoint pieces per parallelogram: the part left of the
  // notch apex, and the parts below and above the notch.
  std::vector<Trapezoid> Pieces() const;
};

// Band j of the unrestricted set.
Band ComputeBand(const KakeyaSet& k, int j);
// All bands 1..M (unrestricted data, independent of the restriction flag).
std::vector<Band> Bands(const KakeyaSet& k);

struct SliceSet {
  Dyadic x;
  std::vector<DyadicInterval> components;

  // Lengths of the bounded gaps between consecutive components.
  std::vector<Dyadic> Gaps() const;
  Dyadic Length() const;
};

// Throws std::out_of_range when x is outside the domain.
SliceSet Slice(const KakeyaSet& k, const Dyadic& x);

// Gap lengths of the slice at x = 1 - j/M, in order, from the doubling
// recursion W_k = {W_{k-1}, g_k, W_{k-1}}.
std::vector<Dyadic> GapSequence(int m, int j);

// Number of components C with |C cap I| > 0, plus degenerate point
// components inside I.
std::int64_t CountComponents(const SliceSet& s, const DyadicInterval& i);

// Length of the largest gap whose interior meets I; nullopt when one of the
// two unbounded gaps meets I.
std::optional<Dyadic> LargestGapMeeting(const SliceSet& s, const DyadicInterval& i);

// Exact area, integrating the slice length, which is linear between the
// band edges and the notch apexes.
Dyadic Area(const KakeyaSet& k);

// True iff the interior of q meets the interior of some thin triangle.
bool SquareIntersects(const KakeyaSet& k, const DyadicSquare& q);

}  // namespace kakeya

#endif  // KAKEYA_KAKEYA_H_
