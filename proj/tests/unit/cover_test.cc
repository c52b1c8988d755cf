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

#include "kakeya/cover.h"
#include "oracle/brute_force.h"
#include "oracle/cover_enumeration.h"
#include "oracle/pixel_mask.h"

namespace kakeya {
namespace {

using oracle::Rational;
using oracle::ToRational;

Dyadic D(std::string_view s) { return Dyadic::Parse(s); }

CoverOptions Scales(int k_min, int k_max) {
  CoverOptions o;
  o.k_min = k_min;
  o.k_max = k_max;
  return o;
}

// The thin triangles of K, built from the lines.
std::vector<Trapezoid> TrianglesOf(const KakeyaSet& k) {
  std::vector<Trapezoid> out;
  for (const Line& l : k.lines()) {
    out.push_back({Dyadic(0), Dyadic(1), {l.alpha + k.delta(), l.beta - k.delta()}, l.Fn()});
  }
  return out;
}

TEST(CoverTest, EmptyTarget) {
  PredicateOracle none([](const DyadicSquare&) { return Overlap::kEmpty; });
  CoverResult r = OptimalCover(none, Gauge::H(), Scales(0, 4));
  EXPECT_TRUE(r.squares.empty());
  EXPECT_EQ(*r.exact_total, Dyadic(0));
  EXPECT_EQ(r.total, 0.0);
}

TEST(CoverTest, UnitSquareTieKeepsCoarse) {
  PredicateOracle unit([](const DyadicSquare& q) {
    return q.Ancestor(0) == DyadicSquare{0, 0, 0} ? Overlap::kFull : Overlap::kEmpty;
  });
  CoverOptions o = Scales(0, 3);
  o.window = {{0, 0, 0}};
  CoverResult r = OptimalCover(unit, Gauge::H(), o);
  ASSERT_EQ(r.squares.size(), 1u);
  EXPECT_EQ(r.squares[0], (DyadicSquare{0, 0, 0}));
  EXPECT_EQ(*r.exact_total, Dyadic(1));
}

TEST(CoverTest, InvalidOptions) {
  PredicateOracle none([](const DyadicSquare&) { return Overlap::kEmpty; });
  EXPECT_THROW(OptimalCover(none, Gauge::H(), Scales(3, 2)), std::invalid_argument);
  CoverOptions o = Scales(1, 2);
  o.window = {{0, 0, 0}};
  EXPECT_THROW(OptimalCover(none, Gauge::H(), o), std::invalid_argument);
}

TEST(CoverTest, MatchesEnumerationOnTriangleFamilies) {
  for (int m : {1, 2}) {
    KakeyaSet k = KakeyaSet::Build(m);
    std::vector<Trapezoid> tri = TrianglesOf(k);
    PieceOracle o(k.pieces());
    for (auto [k_min, k_max] : {std::pair{1, 3}, std::pair{1, 4}, std::pair{0, 4}, std::pair{2, 4}}) {
      oracle::CoverEnumerator e([&](const DyadicSquare& q) { return oracle::AnyMeets(tri, q); },
                                k_min, k_max);
      CoverResult r = OptimalCover(o, Gauge::H(), Scales(k_min, k_max));
      ASSERT_TRUE(r.exact);
      EXPECT_EQ(*r.exact_total, e.Minimum(DomainSquares(k_min)))
          << "m=" << m << " scales " << k_min << ".." << k_max;
      // The reported squares realize the total and cover every meeting square.
      EXPECT_EQ(*SummarizeCover(r.squares, Gauge::H(), k_min, k_max).exact_total, *r.exact_total);
      for (const DyadicSquare& leaf : DomainSquares(k_max)) {
        if (!oracle::AnyMeets(tri, leaf)) continue;
        ASSERT_TRUE(std::any_of(r.squares.begin(), r.squares.end(),
                                [&](const DyadicSquare& s) { return s.ContainsSquare(leaf); }));
      }
    }
  }
}

TEST(CoverTest, MatchesEnumerationOnPixelMasks) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 10; ++t) {
    oracle::PixelMask mask(rng, 0.1 + 0.08 * t);
    PredicateOracle o([&](const DyadicSquare& q) { return mask.Classify(q); });
    oracle::CoverEnumerator e([&](const DyadicSquare& q) { return mask.Meets(q); }, 0, 5);
    CoverOptions opts = Scales(0, 5);
    opts.window = {{0, 0, 0}};
    CoverResult r = OptimalCover(o, Gauge::H(), opts);
    EXPECT_EQ(*r.exact_total, e.Minimum(opts.window)) << "mask " << t;
  }
}

TEST(CoverTest, MonotoneInScales) {
  KakeyaSet k = KakeyaSet::Build(2);
  PieceOracle o(k.pieces());
  Dyadic prev;
  for (int k_max = 1; k_max <= 6; ++k_max) {
    Dyadic t = *OptimalCover(o, Gauge::H(), Scales(1, k_max)).exact_total;
    if (k_max > 1) {
      EXPECT_LE(t, prev) << k_max;
    }
    prev = t;
  }
  for (int k_min = 0; k_min <= 5; ++k_min) {
    Dyadic t = *OptimalCover(o, Gauge::H(), Scales(k_min, 6)).exact_total;
    if (k_min > 0) {
      EXPECT_GE(t, prev) << k_min;
    }
    prev = t;
  }
}

TEST(CoverTest, SubadditiveOverWindows) {
  KakeyaSet k = KakeyaSet::Build(2);
  PieceOracle o(k.pieces());
  std::vector<DyadicSquare> all = DomainSquares(2);
  std::vector<DyadicSquare> left(all.begin(), all.begin() + all.size() / 2),
      right(all.begin() + all.size() / 2, all.end());
  auto total = [&](std::vector<DyadicSquare> w) {
    CoverOptions opts = Scales(2, 7);
    opts.window = std::move(w);
    return *OptimalCover(o, Gauge::H(), opts).exact_total;
  };
  EXPECT_LE(total(all), total(left) + total(right));
}

TEST(CoverTest, ParallelMatchesSequential) {
  KakeyaSet k = KakeyaSet::Build(3);
  PieceOracle o(k.pieces());
  CoverOptions opts = Scales(1, 7);
  CoverResult seq = OptimalCover(o, Gauge::H1(Phi::LogLogLog()), opts);
  opts.parallel = true;
  CoverResult par = OptimalCover(o, Gauge::H1(Phi::LogLogLog()), opts);
  EXPECT_EQ(seq.squares, par.squares);
  EXPECT_EQ(seq.total, par.total);
  EXPECT_EQ(seq.nodes, par.nodes);
}

TEST(CoverTest, BudgetGivesLowerBound) {
  KakeyaSet k = KakeyaSet::Build(2);
  PieceOracle o(k.pieces());
  Dyadic exact = *OptimalCover(o, Gauge::H(), Scales(2, 9)).exact_total;
  CoverOptions opts = Scales(2, 9);
  opts.node_budget = 300;
  CoverResult r = OptimalCover(o, Gauge::H(), opts);
  EXPECT_FALSE(r.exact);
  EXPECT_LT(r.depth_reached, 9);
  ASSERT_TRUE(r.exact_lower_bound.has_value());
  EXPECT_LE(*r.exact_lower_bound, exact);
  EXPECT_GE(r.total, exact.ToDouble());
}

TEST(NeighborhoodTest, VerticalTranslates) {
  std::vector<DyadicSquare> n3 = Neighborhood({0, 0, 0}, 3);
  ASSERT_EQ(n3.size(), 3u);
  EXPECT_EQ(n3[0], (DyadicSquare{0, 0, -1}));
  EXPECT_EQ(n3[1], (DyadicSquare{0, 0, 0}));
  EXPECT_EQ(n3[2], (DyadicSquare{0, 0, 1}));
  DyadicSquare q{3, 2, -5};
  std::vector<DyadicSquare> n5 = Neighborhood(q, 5);
  Dyadic area;
  for (const DyadicSquare& s : n5) {
    EXPECT_EQ(s.ix, q.ix);
    area += s.Side() * s.Side();
  }
  EXPECT_EQ(area, Dyadic(5) * q.Side() * q.Side());
  EXPECT_THROW(Neighborhood(q, 4), std::invalid_argument);
}

TEST(AdaptiveTest, NominalSums) {
  EXPECT_EQ(AdaptiveNominalSum(1), D("3/2"));
  EXPECT_EQ(AdaptiveNominalSum(2), D("7/4"));
  for (int m = 1; m <= 5; ++m) EXPECT_EQ(AdaptiveNominalSum(m), AdaptiveNominalClosedForm(m));
}

TEST(AdaptiveTest, MeasureOfDomainAndDisjointRegion) {
  for (int m = 1; m <= 3; ++m) {
    KakeyaSet k = KakeyaSet::Build(m);
    AdaptiveCover a = AdaptiveCover::Build(k);
    EXPECT_EQ(a.Measure(DomainSquares(0)), a.Total());
    EXPECT_EQ(a.Measure({{0, 3, 3}}), Dyadic(0));
    EXPECT_EQ(a.Measure({{0, 0, 0}, {0, 0, -1}}, Gauge::H()), a.Total(Gauge::H()));
    EXPECT_EQ(a.Squares().size(), a.count());
    if (m >= 2) {
      Dyadic nominal = AdaptiveNominalClosedForm(m);
      EXPECT_LE(a.Total(), nominal * Dyadic(4));
      EXPECT_GE(a.Total() * Dyadic(4), nominal);
    }
  }
}

TEST(AdaptiveTest, BandSquaresMeetBand) {
  KakeyaSet k = KakeyaSet::Build(2);
  AdaptiveCover a = AdaptiveCover::Build(k);
  ASSERT_EQ(a.bands().size(), 4u);
  std::vector<Trapezoid> tri = TrianglesOf(k);
  for (const AdaptiveCover::BandCover& b : a.bands()) {
    EXPECT_EQ(b.k, BandScaleIndex(2, b.j));
    std::uint64_t n = 0;
    for (const AdaptiveCover::Column& c : b.columns) {
      for (const auto& [lo, hi] : c.rows) {
        for (Integer y = lo; y <= hi; y += 1) {
          ++n;
          ASSERT_TRUE(oracle::AnyMeets(tri, {b.k, c.ix, y}));
        }
      }
    }
    EXPECT_EQ(n, b.count);
  }
}

TEST(AreaBoundTest, BelowExactClippedArea) {
  std::mt19937_64 rng(77);
  auto rd = [&](int bits, std::int64_t range) {
    return Dyadic(Integer(static_cast<std::int64_t>(rng() % (2 * range + 1)) - range),
                  static_cast<std::uint32_t>(bits));
  };
  int positive = 0;
  for (int t = 0; t < 400; ++t) {
    Dyadic s1 = rd(6, 128), i1 = rd(8, 64), s2 = s1 + rd(10, 32).Abs(), i2 = i1 + rd(12, 256).Abs();
    Trapezoid tr{Dyadic(0), Dyadic(1), {s1, i1}, {s2, i2}};
    const int k = 1 + static_cast<int>(rng() % 8);
    Dyadic x = rd(20, 1 << 19).Abs();
    DyadicSquare q = SquareContaining(x, tr.lower(x), k);
    Box b = Box::Of(q);
    mpq_class exact = tr.AreaIn(b);
    Dyadic lb = tr.AreaLowerBoundIn(b);
    ASSERT_LE(lb.ToMpq(), exact) << t;
    const double side2 = q.Side().ToDouble() * q.Side().ToDouble();
    ASSERT_LE(exact.get_d() - lb.ToDouble(), 1e-9 * side2) << t;
    if (exact > 0) ++positive;
  }
  EXPECT_GT(positive, 100);
}

TEST(AreaBoundTest, ExactAreaMatchesPixelCount) {
  // Closed-form area of a single clipped trapezoid against a fine cell count.
  Trapezoid tr{D("1/8"), D("7/8"), {D("1/4"), D("-1/8")}, {D("3/4"), D("1/16")}};
  Box b{Dyadic(0), D("1/2"), Dyadic(0), D("1/2")};
  const int bits = 9;
  const Rational cell(1, oracle::BigInt(1) << bits);
  oracle::BigInt count = 0;
  for (int i = 0; i < (1 << (bits - 1)); ++i) {
    for (int j = 0; j < (1 << (bits - 1)); ++j) {
      Rational x = (Rational(i) + Rational(1, 2)) * cell, y = (Rational(j) + Rational(1, 2)) * cell;
      if (x >= ToRational(tr.x_lo) && x <= ToRational(tr.x_hi) &&
          y >= ToRational(tr.lower.slope) * x + ToRational(tr.lower.intercept) &&
          y <= ToRational(tr.upper.slope) * x + ToRational(tr.upper.intercept)) {
        ++count;
      }
    }
  }
  const double est = static_cast<double>(count) / (1 << (2 * bits));
  // Boundary length under 3; each boundary cell contributes at most cell^2.
  EXPECT_NEAR(tr.AreaIn(b).get_d(), est, 4 * (3.0 * (1 << bits) + 4) / (1 << (2 * bits)));
}

}  // namespace
}  // namespace kakeya
