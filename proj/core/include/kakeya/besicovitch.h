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

#ifndef KAKEYA_BESICOVITCH_H_
#define KAKEYA_BESICOVITCH_H_

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "kakeya/dyadic.h"
#include "kakeya/kakeya.h"
#include "kakeya/region.h"

namespace kakeya {

// Block sizes M_1 <= M_2 <= ... (each a power of two, at least 2) of the
// iterated family, with delta_n = 2^-(M_1 + ... + M_n).
class SequenceSpec {
 public:
  explicit SequenceSpec(std::vector<int> block_sizes);
  // "2,2,4".
  static SequenceSpec Parse(std::string_view text);

  int levels() const { return static_cast<int>(M_.size()); }
  // 1-based.
  int M(int j) const;
  int m(int j) const;
  // M_1 + ... + M_n; delta_n = 2^-DigitCount(n).
  int DigitCount(int n) const;
  Dyadic Delta(int n) const { return Dyadic::Pow2(-DigitCount(n)); }
  const std::vector<int>& block_sizes() const { return M_; }
  std::string ToString() const;

 private:
  std::vector<int> M_;
};

// Per-level slope numerators: entry j - 1 selects alpha_j = path[j-1] / 2^M_j.
using DigitPath = std::vector<std::uint64_t>;

// Binary digits of a slope in [0, 1]; position p >= 1 returns digit p.
using DigitStream = std::function<int(std::size_t)>;

// Digits of a dyadic a in [0, 1]; a = 1 maps to the all-ones expansion.
DigitStream DigitsOf(const Dyadic& a);

// Level line alpha x + beta of the triangle family with block size M.
Line LevelLine(int M, std::uint64_t index);

// The line sum_j delta_{j-1} (alpha_j x + beta_j). Throws std::out_of_range
// for an index outside [0, 2^M_j) or a path longer than the spec.
Line LineFromPath(const SequenceSpec& spec, const DigitPath& path);

// Truncation of b(a) to the first n_terms blocks.
Dyadic BOfA(const SequenceSpec& spec, const DigitStream& a, int n_terms);
Dyadic BOfA(const SequenceSpec& spec, const Dyadic& a, int n_terms);
// Left limit of the truncated b at a: b of a minus one unit in the last
// digit when a lies on the level grid, and b(a) otherwise. b~(0) = 0.
Dyadic TildeB(const SequenceSpec& spec, const Dyadic& a, int n_terms);

// Every line of the level-n family, ordered by slope. Throws
// std::length_error above 2^20 lines.
std::vector<Line> EnumerateLines(const SequenceSpec& spec, int n);

// The closed tube {l(x) + delta (x - 1) <= y <= l(x) + delta x, 0 <= x <= 1}.
Trapezoid Tube(const Line& l, const Dyadic& delta);

// The level-n region as a union of tubes, queried by descending the digit
// tree and keeping only prefixes whose coarser tube meets the query.
class FnApprox {
 public:
  FnApprox(SequenceSpec spec, int n);

  const SequenceSpec& spec() const { return spec_; }
  int n() const { return n_; }
  Dyadic delta() const { return spec_.Delta(n_); }

  bool MeetsInterior(const Box& b) const;
  bool SquareIntersects(const DyadicSquare& q) const { return MeetsInterior(Box::Of(q)); }
  bool ContainsPoint(const Dyadic& x, const Dyadic& y) const;
  // Merged slice at x inside the closed window.
  SliceSet Slice(const Dyadic& x, const DyadicInterval& window) const;
  // Lines of the level-n family whose tube meets b.
  std::vector<Line> LinesMeeting(const Box& b) const;
  // All tubes, for enumeration-scale specs.
  PieceSet Tubes() const;

  // Depth-first walk over the digit tree. keep(line, level) decides whether
  // to descend below a prefix line; leaf(line) sees each surviving level-n
  // line and returns true to stop. Returns true if stopped.
  using KeepFn = std::function<bool(const Line&, int)>;
  using LeafFn = std::function<bool(const Line&)>;
  bool Walk(const KeepFn& keep, const LeafFn& leaf) const;

 private:
  bool Descend(int level, const Line& prefix, const KeepFn& keep, const LeafFn& leaf) const;

  SequenceSpec spec_;
  int n_;
  std::vector<std::vector<Line>> level_lines_;
};

// Number of level-n grid squares of side delta_n whose interior meets the
// region interior.
Integer CountGridSquares(const FnApprox& f);
// N delta_n^2 log(1/delta_n), exact.
Dyadic MinkowskiProduct(const FnApprox& f);

// Exact measure of {x in [0, 1] : (x, l(x)) in region}.
mpq_class LineSlabMeasure(const FnApprox& f, const Line& l);

// Bound on the slab measure of a line at level n from the slope gap
// between the line and the slope ranges of the pieces it meets.
struct SlabBound {
  mpq_class gap;    // zero when some piece admits the slope
  mpq_class bound;  // (2 / M_n) / gap, meaningful only when gap > 0
  bool vacuous = false;
};
SlabBound LineSlabBound(const FnApprox& f, const Line& l);

}  // namespace kakeya

#endif  // KAKEYA_BESICOVITCH_H_
