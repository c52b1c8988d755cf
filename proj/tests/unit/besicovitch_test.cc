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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "kakeya/besicovitch.h"
#include "oracle/brute_force.h"

namespace kakeya {
namespace {

using oracle::BigInt;
using oracle::Rational;
using oracle::RInterval;
using oracle::ToRational;

Dyadic D(std::string_view s) { return Dyadic::Parse(s); }

// The tube of l built from its definition, independent of the library.
Trapezoid TubeOf(const Line& l, const Dyadic& delta) {
  return {Dyadic(0), Dyadic(1), {l.alpha + delta, l.beta - delta}, {l.alpha + delta, l.beta}};
}

std::vector<Trapezoid> TubesOf(const SequenceSpec& spec, int n) {
  std::vector<Trapezoid> out;
  for (const Line& l : EnumerateLines(spec, n)) out.push_back(TubeOf(l, spec.Delta(n)));
  return out;
}

// b(a) from the first n blocks of binary digits of a, in rationals.
Rational ReferenceB(const SequenceSpec& spec, const Rational& a, int n) {
  Rational b = 0, scale = 1, rest = a;
  for (int j = 1; j <= n; ++j) {
    const int M = spec.M(j);
    for (int k = 1; k <= M; ++k) {
      rest *= 2;
      if (rest >= 1) {
        rest -= 1;
        b -= scale * Rational(k - 1, M) / (BigInt(1) << k);
      }
    }
    scale /= BigInt(1) << M;
  }
  return b;
}

TEST(PathTest, Examples) {
  SequenceSpec one({2}), two({2, 2});
  Line zero = LineFromPath(two, {0, 0});
  EXPECT_EQ(zero.alpha, Dyadic(0));
  EXPECT_EQ(zero.beta, Dyadic(0));
  Line l1 = LineFromPath(one, {3});
  EXPECT_EQ(l1.alpha, D("3/4"));
  EXPECT_EQ(l1.beta, D("-1/8"));
  Line l2 = LineFromPath(two, {3, 3});
  EXPECT_EQ(l2.alpha, D("15/16"));
  EXPECT_EQ(l2.beta, D("-5/32"));
  EXPECT_THROW(LineFromPath(two, {4, 0}), std::out_of_range);
  EXPECT_THROW(LineFromPath(one, {1, 1}), std::out_of_range);
}

TEST(PathTest, InterceptMatchesReference) {
  SequenceSpec spec({2, 4, 4});
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    DigitPath p{rng() % 4, rng() % 16, rng() % 16};
    Line l = LineFromPath(spec, p);
    ASSERT_EQ(ToRational(l.beta), ReferenceB(spec, ToRational(l.alpha), 3));
    ASSERT_EQ(BOfA(spec, l.alpha, 3), l.beta);
  }
}

TEST(SpecTest, ParseAndDelta) {
  SequenceSpec s = SequenceSpec::Parse("2,2,4");
  EXPECT_EQ(s.levels(), 3);
  EXPECT_EQ(s.DigitCount(3), 8);
  EXPECT_EQ(s.Delta(2), D("1/16"));
  EXPECT_EQ(s.m(3), 2);
  EXPECT_EQ(s.ToString(), "2,2,4");
  EXPECT_THROW(SequenceSpec::Parse("2,3"), std::invalid_argument);
  EXPECT_THROW(SequenceSpec::Parse("4,2"), std::invalid_argument);
}

TEST(EnumerateTest, SlopeGridAndNesting) {
  SequenceSpec spec({2, 2});
  std::vector<Line> f2 = EnumerateLines(spec, 2);
  ASSERT_EQ(f2.size(), 16u);
  for (std::size_t i = 0; i < 16; ++i) EXPECT_EQ(f2[i].alpha, Dyadic(Integer(i), 4));
  for (const Line& l : EnumerateLines(spec, 1)) {
    EXPECT_NE(std::find_if(f2.begin(), f2.end(),
                           [&](const Line& o) { return o.alpha == l.alpha && o.beta == l.beta; }),
              f2.end());
  }
  std::vector<Line> f3 = EnumerateLines(SequenceSpec({2, 2, 4}), 3);
  ASSERT_EQ(f3.size(), 256u);
  std::set<Dyadic> slopes;
  for (const Line& l : f3) slopes.insert(l.alpha);
  EXPECT_EQ(slopes.size(), 256u);
  EXPECT_EQ(*slopes.rbegin(), D("255/256"));
}

TEST(BTest, TildeAgreesOffTheGrid) {
  SequenceSpec spec({2, 2});
  EXPECT_EQ(BOfA(spec, Dyadic(0), 2), Dyadic(0));
  EXPECT_EQ(BOfA(SequenceSpec({2}), D("3/4"), 1), D("-1/8"));
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    // Odd numerators over 2^5..2^30 are off the level-2 grid.
    const unsigned e = 5 + static_cast<unsigned>(rng() % 26);
    Dyadic a(Integer(static_cast<std::int64_t>((rng() % (std::uint64_t{1} << (e - 1))) * 2 + 1)), e);
    ASSERT_EQ(TildeB(spec, a, 2), BOfA(spec, a, 2)) << a;
    ASSERT_EQ(ToRational(BOfA(spec, a, 2)), ReferenceB(spec, ToRational(a), 2)) << a;
  }
}

TEST(BTest, TildeDiffersAtGridDyadics) {
  SequenceSpec spec({2, 2});
  for (int j = 1; j < 16; ++j) {
    Dyadic a(Integer(j), 4);
    EXPECT_NE(TildeB(spec, a, 2), BOfA(spec, a, 2)) << a;
  }
  EXPECT_EQ(TildeB(spec, Dyadic(0), 2), Dyadic(0));
}

TEST(FnTest, PrunedMatchesBruteForce) {
  std::mt19937_64 rng(4);
  for (const char* text : {"2,2", "2,2,4"}) {
    SequenceSpec spec = SequenceSpec::Parse(text);
    const int n = spec.levels();
    FnApprox f(spec, n);
    std::vector<Trapezoid> tubes = TubesOf(spec, n);
    std::vector<Line> lines = EnumerateLines(spec, n);
    const int p = spec.DigitCount(n);
    for (int t = 0; t < 500; ++t) {
      const int k = static_cast<int>(rng() % (p + 3));
      Dyadic x(Integer(static_cast<std::int64_t>(rng() % (1 << 20))), 20);
      DyadicSquare q = SquareContaining(x, lines[rng() % lines.size()].At(x), k);
      q.iy = q.iy + Integer(static_cast<std::int64_t>(rng() % 5) - 2);
      ASSERT_EQ(f.SquareIntersects(q), oracle::AnyMeets(tubes, q))
          << text << " k=" << q.k << " ix=" << q.ix.ToString() << " iy=" << q.iy.ToString();
    }
  }
}

TEST(FnTest, RegionsNest) {
  SequenceSpec spec({2, 2, 4});
  std::vector<FnApprox> levels;
  for (int n = 1; n <= 3; ++n) levels.emplace_back(spec, n);
  std::mt19937_64 rng(6);
  std::vector<Line> lines = EnumerateLines(spec, 3);
  for (int t = 0; t < 300; ++t) {
    const int k = static_cast<int>(rng() % 11);
    Dyadic x(Integer(static_cast<std::int64_t>(rng() % 1024)), 10);
    DyadicSquare q = SquareContaining(x, lines[rng() % lines.size()].At(x), k);
    for (int n = 1; n < 3; ++n) {
      if (levels[n].SquareIntersects(q)) {
        ASSERT_TRUE(levels[n - 1].SquareIntersects(q));
      }
    }
  }
}

TEST(FnTest, LinesInsideRegion) {
  SequenceSpec spec({2, 4});
  FnApprox f(spec, 2);
  for (const Line& l : EnumerateLines(spec, 2)) {
    for (const char* xs : {"0", "3/8", "5/8", "1"}) {
      Dyadic x = D(xs);
      ASSERT_TRUE(f.ContainsPoint(x, l.At(x)));
    }
  }
}

TEST(FnTest, SliceMatchesTubeUnion) {
  SequenceSpec spec({2, 2});
  FnApprox f(spec, 2);
  const Rational delta = ToRational(spec.Delta(2));
  std::vector<Line> lines = EnumerateLines(spec, 2);
  DyadicInterval window{D("-1/2"), D("1/2")};
  std::mt19937_64 rng(12);
  for (int t = 0; t < 50; ++t) {
    Dyadic x(Integer(static_cast<std::int64_t>(rng() % 4097)), 12);
    const Rational rx = ToRational(x);
    std::vector<RInterval> parts;
    for (const Line& l : lines) {
      Rational top = ToRational(l.At(x)) + delta * rx;
      Rational lo = std::max(top - delta, Rational(-1, 2)), hi = std::min(top, Rational(1, 2));
      if (lo <= hi) parts.push_back({lo, hi});
    }
    auto want = oracle::Union(parts);
    SliceSet s = f.Slice(x, window);
    ASSERT_EQ(s.components.size(), want.size()) << x;
    for (std::size_t i = 0; i < want.size(); ++i) {
      ASSERT_EQ(ToRational(s.components[i].lo), want[i].lo);
      ASSERT_EQ(ToRational(s.components[i].hi), want[i].hi);
    }
  }
}

// Grid squares of side delta_n meeting the tubes, by testing every square.
std::int64_t BruteGridCount(const SequenceSpec& spec, int n) {
  std::vector<Trapezoid> tubes = TubesOf(spec, n);
  const int p = spec.DigitCount(n);
  std::int64_t count = 0;
  for (std::int64_t ix = 0; ix < (1 << p); ++ix) {
    for (std::int64_t iy = -(2 << p); iy < (2 << p); ++iy) {
      if (oracle::AnyMeets(tubes, {p, ix, iy})) ++count;
    }
  }
  return count;
}

TEST(MinkowskiTest, GridCountMatchesBruteForce) {
  SequenceSpec one({2});
  const std::int64_t n1 = BruteGridCount(one, 1);
  FnApprox f1(one, 1);
  EXPECT_EQ(CountGridSquares(f1), Integer(n1));
  EXPECT_EQ(MinkowskiProduct(f1), Dyadic(n1) * D("1/16") * Dyadic(2));

  SequenceSpec two({2, 2});
  FnApprox f2(two, 2);
  EXPECT_EQ(CountGridSquares(f2), Integer(BruteGridCount(two, 2)));
}

// Measure of {x in [0,1] : (x, l(x)) in some tube}, by solving the two
// linear inequalities per tube.
Rational BruteSlab(const std::vector<Line>& lines, const Rational& delta, const Rational& s,
                   const Rational& c) {
  std::vector<RInterval> parts;
  for (const Line& t : lines) {
    // (a + delta) x + b - delta <= s x + c <= (a + delta) x + b.
    const Rational d = s - ToRational(t.alpha) - delta, b = ToRational(t.beta);
    Rational lo = 0, hi = 1;
    auto half = [&](const Rational& coef, const Rational& rhs) {  // coef x <= rhs
      if (coef > 0) hi = std::min(hi, rhs / coef);
      else if (coef < 0) lo = std::max(lo, rhs / coef);
      else if (rhs < 0) hi = lo - 1;
    };
    half(d, b - c);
    half(-d, c - b + delta);
    if (lo < hi) parts.push_back({lo, hi});
  }
  Rational total = 0;
  for (const RInterval& i : oracle::Union(parts)) total += i.hi - i.lo;
  return total;
}

TEST(SlabTest, MatchesBruteForce) {
  SequenceSpec spec({2, 2});
  std::vector<Line> lines = EnumerateLines(spec, 2);
  FnApprox f(spec, 2);
  const Rational delta = ToRational(spec.Delta(2));
  std::mt19937_64 rng(2);
  for (int t = 0; t < 60; ++t) {
    Line l{Dyadic(Integer(static_cast<std::int64_t>(rng() % 96) - 16), 5),
           Dyadic(Integer(static_cast<std::int64_t>(rng() % 64) - 48), 6), {}};
    mpq_class got = LineSlabMeasure(f, l);
    Rational want = BruteSlab(lines, delta, ToRational(l.alpha), ToRational(l.beta));
    ASSERT_EQ(Rational(BigInt(got.get_num().get_str()), BigInt(got.get_den().get_str())), want)
        << l.alpha << " " << l.beta;
  }
}

TEST(SlabTest, PathLinesHaveFullMeasure) {
  SequenceSpec spec({2, 4});
  for (int n = 1; n <= 2; ++n) {
    FnApprox f(spec, n);
    for (const DigitPath& p : {DigitPath{1, 5}, DigitPath{3, 15}, DigitPath{0, 9}}) {
      EXPECT_EQ(LineSlabMeasure(f, LineFromPath(spec, p)), 1) << n;
    }
  }
}

TEST(SlabTest, SteepLineBelowBound) {
  SequenceSpec spec({2, 4});
  Line steep{Dyadic(2), Dyadic(-1), {}};
  mpq_class prev = 2;
  for (int n = 1; n <= 2; ++n) {
    FnApprox f(spec, n);
    mpq_class m = LineSlabMeasure(f, steep);
    SlabBound b = LineSlabBound(f, steep);
    EXPECT_GT(b.gap, 0);
    EXPECT_FALSE(b.vacuous);
    EXPECT_LE(m, b.bound) << n;
    EXPECT_LT(m, prev) << n;
    prev = m;
  }
}

}  // namespace
}  // namespace kakeya
