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

#include "kakeya/kakeya.h"
#include "oracle/brute_force.h"

namespace kakeya {
namespace {

using oracle::Rational;
using oracle::ToRational;

Dyadic D(std::string_view s) { return Dyadic::Parse(s); }

TEST(LinesTest, TwoBlockFamily) {
  std::vector<Line> l = BuildLines(1);
  ASSERT_EQ(l.size(), 4u);
  const char* want[4][2] = {{"0", "0"}, {"1/4", "-1/8"}, {"1/2", "0"}, {"3/4", "-1/8"}};
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(l[i].alpha, D(want[i][0])) << i;
    EXPECT_EQ(l[i].beta, D(want[i][1])) << i;
  }
}

TEST(LinesTest, SlopeGridAndInterceptRange) {
  for (int m = 1; m <= 3; ++m) {
    const int M = 1 << m;
    std::vector<Line> lines = BuildLines(m);
    ASSERT_EQ(lines.size(), std::size_t{1} << M);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const Line& l = lines[i];
      ASSERT_EQ(l.alpha, Dyadic(Integer(i), static_cast<std::uint32_t>(M)));
      ASSERT_LT(-Dyadic::Pow2(-m), l.beta);
      ASSERT_LE(l.beta, Dyadic(0));
      // beta = -sum ((k - 1) / M) eps_k 2^-k from the digits.
      Dyadic b;
      for (int k = 1; k <= M; ++k) {
        if (l.digits[k - 1]) b -= Dyadic(k - 1) * Dyadic::Pow2(-m - k);
      }
      ASSERT_EQ(l.beta, b);
      ASSERT_EQ(InterceptForDigits(l.digits, M), l.beta);
    }
  }
}

TEST(LinesTest, LastInterceptClosedForm) {
  // alpha = 1 - 2^-M has beta = -(1/M)(1 - (M + 1) 2^-M).
  for (int m = 1; m <= 3; ++m) {
    const int M = 1 << m;
    Dyadic want = -Dyadic::Pow2(-m) * (Dyadic(1) - Dyadic(M + 1) * Dyadic::Pow2(-M));
    EXPECT_EQ(BuildLines(m).back().beta, want);
  }
}

TEST(ConstructionTest, MatchesClosedForm) {
  for (int m = 1; m <= 3; ++m) {
    Construction c = SimulateConstruction(m);
    EXPECT_EQ(c.lines, BuildLines(m)) << "m=" << m;
    EXPECT_EQ(static_cast<int>(c.steps.size()), 1 << m);
  }
}

TEST(ConstructionTest, SlideSizes) {
  const int m = 2, M = 4;
  for (const ConstructionStep& s : SimulateConstruction(m).steps) {
    Dyadic want = Dyadic(s.j) * Dyadic::Pow2(-m) * Dyadic::Pow2(s.j - 1 - M);
    for (const Dyadic& d : s.slides) EXPECT_EQ(d, want) << "j=" << s.j;
    EXPECT_EQ(s.cut_x, Dyadic(1) - Dyadic(s.j) * Dyadic::Pow2(-m));
  }
}

TEST(BandTest, FourBlockBandTwo) {
  KakeyaSet k = KakeyaSet::Build(2);
  Band b = ComputeBand(k, 2);
  ASSERT_EQ(b.parallelograms.size(), 4u);
  for (const Parallelogram& p : b.parallelograms) EXPECT_EQ(p.width, D("3/64"));
  EXPECT_EQ(b.r, BandScale(2, 2));
  EXPECT_EQ(b.x_lo, D("1/2"));
  EXPECT_EQ(b.x_hi, D("3/4"));
}

TEST(BandTest, CountsAndOrdering) {
  for (int m = 1; m <= 3; ++m) {
    const int M = 1 << m;
    KakeyaSet k = KakeyaSet::Build(m);
    std::vector<Band> bands = Bands(k);
    ASSERT_EQ(static_cast<int>(bands.size()), M);
    for (const Band& b : bands) {
      ASSERT_EQ(b.parallelograms.size(), std::size_t{1} << (M - b.j));
      for (std::size_t i = 1; i < b.parallelograms.size(); ++i) {
        ASSERT_LT(b.parallelograms[i - 1].slope, b.parallelograms[i].slope);
        // Disjoint at the left edge.
        ASSERT_LT(b.parallelograms[i - 1].top_left,
                  b.parallelograms[i].top_left - b.parallelograms[i].width);
      }
    }
  }
}

TEST(BandTest, AdjacentInterceptGap) {
  // Slopes 7/16 and 8/16 at M = 4: 7 = 0111 has its lowest zero first.
  std::vector<Line> l = BuildLines(2);
  EXPECT_EQ(l[8].beta - l[7].beta, D("11/64"));
}

TEST(SliceTest, FirstBandEdge) {
  KakeyaSet k = KakeyaSet::Build(2);
  SliceSet s = Slice(k, D("3/4"));
  ASSERT_EQ(s.components.size(), 8u);
  for (const DyadicInterval& c : s.components) EXPECT_EQ(c.Length(), D("1/64"));
}

TEST(SliceTest, RightEndDegeneratesToPoints) {
  KakeyaSet k = KakeyaSet::Build(1);
  SliceSet s = Slice(k, D("1"));
  ASSERT_EQ(s.components.size(), 4u);
  std::vector<Line> lines = BuildLines(1);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(s.components[i].lo, s.components[i].hi);
    EXPECT_EQ(s.components[i].hi, lines[i].At(D("1")));
  }
  EXPECT_EQ(s.Length(), Dyadic());
}

TEST(SliceTest, MatchesBruteForceUnion) {
  std::mt19937_64 rng(17);
  for (int m = 1; m <= 3; ++m) {
    KakeyaSet k = KakeyaSet::Build(m);
    const Rational delta = ToRational(k.delta());
    std::uniform_int_distribution<std::int64_t> u(0, 1 << 20);
    for (int t = 0; t < 40; ++t) {
      Dyadic x(Integer(u(rng)), 20);
      SliceSet s = Slice(k, x);
      auto want = oracle::SliceOfLines(k.lines(), delta, ToRational(x));
      ASSERT_EQ(s.components.size(), want.size()) << "m=" << m << " x=" << x;
      for (std::size_t i = 0; i < want.size(); ++i) {
        ASSERT_EQ(ToRational(s.components[i].lo), want[i].lo);
        ASSERT_EQ(ToRational(s.components[i].hi), want[i].hi);
      }
      ASSERT_LT(s.Length(), Dyadic::Pow2(-m));
    }
  }
}

TEST(SliceTest, OutsideDomainThrows) {
  KakeyaSet k = KakeyaSet::Build(2, true);
  EXPECT_THROW(Slice(k, D("1/4")), std::out_of_range);
  EXPECT_NO_THROW(Slice(k, D("5/8")));
  EXPECT_THROW(Slice(KakeyaSet::Build(2), D("9/8")), std::out_of_range);
}

TEST(GapTest, FourBlockFirstBand) {
  std::vector<Dyadic> want;
  for (const char* s : {"1/64", "5/64", "1/64", "13/64", "1/64", "5/64", "1/64"}) want.push_back(D(s));
  EXPECT_EQ(GapSequence(2, 1), want);
  EXPECT_EQ(Slice(KakeyaSet::Build(2), D("3/4")).Gaps(), want);
}

TEST(GapTest, PalindromeAndLargest) {
  for (int m = 1; m <= 3; ++m) {
    const int M = 1 << m;
    for (int j = 1; j <= M; ++j) {
      std::vector<Dyadic> g = GapSequence(m, j);
      ASSERT_EQ(g.size(), (std::size_t{1} << (M - j)) - 1);
      ASSERT_TRUE(std::equal(g.begin(), g.end(), g.rbegin()));
      if (j < M) {
        Dyadic want = Dyadic(Integer(1).ShiftLeft(M) - Integer(1).ShiftLeft(j + 1) + 1, 0) *
                      Dyadic::Pow2(-m - M);
        ASSERT_EQ(*std::max_element(g.begin(), g.end()), want);
      }
    }
  }
}

TEST(CountTest, AnchoredIntervalsAndDisjoint) {
  const int m = 3, M = 8;
  KakeyaSet k = KakeyaSet::Build(m);
  for (int j = 1; j <= M; ++j) {
    SliceSet s = Slice(k, BandLeft(M, j));
    const Dyadic lo = s.components.front().lo;
    for (int kk = 1; kk <= M - j + 1; ++kk) {
      Dyadic len = Dyadic(kk) * Dyadic::Pow2(kk - 1) * BandScale(m, j);
      if (lo + len > s.components.back().hi) break;
      EXPECT_EQ(CountComponents(s, {lo, lo + len}), std::int64_t{1} << (kk - 1))
          << "j=" << j << " k=" << kk;
    }
    EXPECT_EQ(CountComponents(s, {D("1"), D("2")}), 0);
  }
}

TEST(CountTest, GapQueries) {
  KakeyaSet k = KakeyaSet::Build(2);
  SliceSet s = Slice(k, D("3/4"));
  const DyadicInterval whole{s.components.front().lo, s.components.back().hi};
  EXPECT_EQ(*LargestGapMeeting(s, whole), D("13/64"));
  EXPECT_FALSE(LargestGapMeeting(s, {whole.lo - D("1"), whole.hi}).has_value());
  EXPECT_EQ(CountComponents(s, whole), 8);
}

TEST(AreaTest, BelowOneOverM) {
  for (int m = 1; m <= 3; ++m) {
    Dyadic am = Area(KakeyaSet::Build(m)) * Dyadic(1 << m);
    EXPECT_LT(am, Dyadic(1)) << m;
    if (m >= 2) {
      EXPECT_GE(am, D("1/2")) << m;
    }
  }
}

TEST(AreaTest, MatchesPixelCount) {
  // Cells whose center lies in the set, at 2^-12. A boundary curve of length
  // L meets at most 4 (L / cell + 1) cells, which bounds the error.
  const int m = 2, bits = 12;
  KakeyaSet k = KakeyaSet::Build(m);
  const Rational delta = ToRational(k.delta()), cell(1, oracle::BigInt(1) << bits);
  Rational est = oracle::PixelArea(k.lines(), delta, 0, 1, bits);
  Rational perimeter = 0;
  for (const Line& l : k.lines()) perimeter += 2 * (1 + ToRational(l.alpha) + delta) + delta;
  Rational tol = 4 * (perimeter / cell + static_cast<int>(k.lines().size())) * cell * cell;
  Rational exact = ToRational(Area(k));
  EXPECT_LE(abs(est - exact), tol) << "estimate " << est << " exact " << exact;
}

TEST(IntersectTest, Examples) {
  KakeyaSet k = KakeyaSet::Build(2);
  EXPECT_TRUE(SquareIntersects(k, {0, 0, -1}));
  EXPECT_FALSE(SquareIntersects(k, {1, 0, 1}));   // [0,1/2] x [1/2,1]
  EXPECT_FALSE(SquareIntersects(k, {3, 0, 1}));   // [0,1/8] x [1/8,1/4]
  EXPECT_FALSE(SquareIntersects(k, {2, 0, -3}));  // [0,1/4] x [-3/4,-1/2]
}

TEST(IntersectTest, MatchesBruteForce) {
  std::mt19937_64 rng(3);
  for (int m = 1; m <= 3; ++m) {
    KakeyaSet k = KakeyaSet::Build(m);
    std::vector<Trapezoid> tri;
    for (const Line& l : k.lines()) {
      tri.push_back({Dyadic(0), Dyadic(1), {l.alpha + k.delta(), l.beta - k.delta()}, l.Fn()});
    }
    std::uniform_int_distribution<int> scale(0, 2 * (1 << m) + 2);
    std::uniform_int_distribution<std::size_t> pick(0, k.lines().size() - 1);
    std::uniform_int_distribution<std::int64_t> pos(0, (1 << 24) - 1), jitter(-2, 2);
    for (int t = 0; t < 1000; ++t) {
      const int kk = scale(rng);
      Dyadic x(Integer(pos(rng)), 24);
      DyadicSquare q = SquareContaining(x, k.lines()[pick(rng)].At(x), kk);
      q.iy = q.iy + jitter(rng);
      ASSERT_EQ(SquareIntersects(k, q), oracle::AnyMeets(tri, q))
          << "m=" << m << " k=" << q.k << " ix=" << q.ix.ToString() << " iy=" << q.iy.ToString();
    }
  }
}

}  // namespace
}  // namespace kakeya
