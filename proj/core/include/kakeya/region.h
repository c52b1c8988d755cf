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

#ifndef KAKEYA_REGION_H_
#define KAKEYA_REGION_H_

#include <optional>
#include <vector>

#include "kakeya/dyadic.h"

namespace kakeya {

// y = slope * x + intercept.
struct LinearFn {
  Dyadic slope;
  Dyadic intercept;

  Dyadic operator()(const Dyadic& x) const { return slope * x + intercept; }
  LinearFn operator+(const LinearFn& o) const {
    return {slope + o.slope, intercept + o.intercept};
  }
  LinearFn operator-(const LinearFn& o) const {
    return {slope - o.slope, intercept - o.intercept};
  }
  LinearFn Scaled(const Dyadic& c) const { return {slope * c, intercept * c}; }
  friend bool operator==(const LinearFn&, const LinearFn&) = default;
};

struct Point {
  Dyadic x;
  Dyadic y;
  friend bool operator==(const Point&, const Point&) = default;
};

// Axis-aligned closed box. Used for squares and windows.
struct Box {
  Dyadic x0, x1, y0, y1;

  static Box Of(const DyadicSquare& q) { return {q.XLo(), q.XHi(), q.YLo(), q.YHi()}; }
};

// The closed convex set {x_lo <= x <= x_hi, lower(x) <= y <= upper(x)}
// with lower <= upper on [x_lo, x_hi].
struct Trapezoid {
  Dyadic x_lo;
  Dyadic x_hi;
  LinearFn lower;
  LinearFn upper;

  // Interior of this set meets the interior of b.
  bool MeetsInterior(const Box& b) const;
  // b is contained in this set.
  bool ContainsBox(const Box& b) const;
  // Closed membership.
  bool ContainsPoint(const Dyadic& x, const Dyadic& y) const;
  // Exact area of the intersection with b.
  mpq_class AreaIn(const Box& b) const;
  // Fast lower bound on AreaIn(b): floating-point clipping in coordinates
  // local to b, minus a bound on the accumulated rounding error.
  Dyadic AreaLowerBoundIn(const Box& b) const;
  Dyadic Area() const;
  // The restriction to x in [lo, hi]; nullopt when the overlap has no length.
  std::optional<Trapezoid> ClipX(const Dyadic& lo, const Dyadic& hi) const;
  // Slice at x as a closed interval; nullopt when x is outside [x_lo, x_hi].
  std::optional<DyadicInterval> SliceAt(const Dyadic& x) const;
  // Bounding box.
  Box Bounds() const;
  // Boundary polygon, counter-clockwise, with repeated vertices removed.
  std::vector<Point> Vertices() const;

  Trapezoid Transformed(const Dyadic& scale, const LinearFn& shift) const;
  friend bool operator==(const Trapezoid&, const Trapezoid&) = default;
};

// A finite union of trapezoids with cached bounding boxes.
class PieceSet {
 public:
  PieceSet() = default;
  explicit PieceSet(std::vector<Trapezoid> pieces);

  std::size_t size() const { return pieces_.size(); }
  const Trapezoid& operator[](std::size_t i) const { return pieces_[i]; }
  const std::vector<Trapezoid>& pieces() const { return pieces_; }
  const Box& bounds(std::size_t i) const { return bounds_[i]; }

  // Cheap rejection on bounding boxes; exact test otherwise.
  bool PieceMeets(std::size_t i, const Box& b) const;
  bool MeetsInterior(const Box& b) const;
  // Merged closed slice of the union at x.
  std::vector<DyadicInterval> Slice(const Dyadic& x) const;
  // Sum of piece areas; equals the union area when interiors are disjoint.
  Dyadic TotalArea() const;

 private:
  std::vector<Trapezoid> pieces_;
  std::vector<Box> bounds_;
};

}  // namespace kakeya

#endif  // KAKEYA_REGION_H_
