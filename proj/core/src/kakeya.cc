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

#include "kakeya/kakeya.h"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace kakeya {

namespace {

int Log2Exact(int M) {
  if (M <= 0 || !std::has_single_bit(static_cast<unsigned>(M))) {
    throw std::invalid_argument("M must be a power of two, got " + std::to_string(M));
  }
  return std::countr_zero(static_cast<unsigned>(M));
}

// 1 - j/M.
Dyadic Cut(int M, int j) { return Dyadic(1) - Dyadic(j).MulPow2(-Log2Exact(M)); }

LinearFn LowerEdge(const Line& l, const Dyadic& delta) {
  return {l.alpha + delta, l.beta - delta};
}

}  // namespace

Dyadic InterceptForDigits(const std::vector<std::uint8_t>& digits, int M) {
  int m = Log2Exact(M);
  if (static_cast<int>(digits.size()) != M) {
    throw std::invalid_argument("digit count must equal M");
  }
  // -(1/M) sum (k-1) eps_k 2^-k, accumulated over the common denominator 2^M.
  Integer acc;
  for (int k = 1; k <= M; ++k) {
    if (digits[k - 1]) acc += Integer(k - 1).ShiftLeft(static_cast<unsigned>(M - k));
  }
  return Dyadic(-acc, static_cast<std::uint32_t>(M + m));
}

std::vector<Line> BuildLines(int m) {
  if (m < 1 || m > 5) throw std::out_of_range("m must lie in [1, 5], got " + std::to_string(m));
  if (m > kMaxBuildM) {
    throw std::length_error("2^" + std::to_string(1 << m) + " lines exceed the enumeration limit");
  }
  const int M = 1 << m;
  const std::uint64_t count = std::uint64_t{1} << M;
  std::vector<Line> lines;
  lines.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    Line l;
    l.digits.resize(M);
    for (int k = 1; k <= M; ++k) l.digits[k - 1] = (i >> (M - k)) & 1;
    l.alpha = Dyadic(Integer(i), static_cast<std::uint32_t>(M));
    l.beta = InterceptForDigits(l.digits, M);
    lines.push_back(std::move(l));
  }
  return lines;
}

KakeyaSet KakeyaSet::Build(int m, bool restricted) {
  KakeyaSet k;
  k.lines_ = BuildLines(m);
  k.m_ = m;
  k.M_ = 1 << m;
  k.delta_ = Dyadic::Pow2(-k.M_);
  k.restricted_ = restricted;
  if (restricted) {
    if (k.M_ < 4) throw std::invalid_argument("the restricted set needs M >= 4");
    k.x_min_ = Dyadic::Pow2(-1);
    k.x_max_ = Dyadic(3).MulPow2(-2);
  } else {
    k.x_min_ = Dyadic(0);
    k.x_max_ = Dyadic(1);
  }
  std::vector<Trapezoid> pieces;
  for (int j = k.first_band(); j <= k.last_band(); ++j) {
    for (auto& t : ComputeBand(k, j).Pieces()) {
      if (auto c = t.ClipX(k.x_min_, k.x_max_)) pieces.push_back(std::move(*c));
    }
  }
  k.pieces_ = std::make_shared<const PieceSet>(std::move(pieces));
  return k;
}

int KakeyaSet::first_band() const { return restricted_ ? M_ / 4 + 1 : 1; }
int KakeyaSet::last_band() const { return restricted_ ? M_ / 2 : M_; }

Trapezoid KakeyaSet::Triangle(std::size_t i) const {
  const Line& l = lines_.at(i);
  return {x_min_, x_max_, LowerEdge(l, delta_), l.Fn()};
}

PieceSet KakeyaSet::Triangles() const {
  std::vector<Trapezoid> t;
  t.reserve(lines_.size());
  for (std::size_t i = 0; i < lines_.size(); ++i) t.push_back(Triangle(i));
  return PieceSet(std::move(t));
}

Dyadic BandLeft(int M, int j) { return Cut(M, j); }
Dyadic BandRight(int M, int j) { return Cut(M, j - 1); }

Dyadic BandScale(int m, int j) { return Dyadic::Pow2(-BandScaleIndex(m, j)); }
int BandScaleIndex(int m, int j) { return m + (1 << m) - j; }

std::vector<Trapezoid> Band::Pieces() const {
  std::vector<Trapezoid> out;
  out.reserve(3 * parallelograms.size());
  for (std::size_t g = 0; g < parallelograms.size(); ++g) {
    const Parallelogram& p = parallelograms[g];
    const Notch& n = notches[g];
    LinearFn top = p.Upper(x_lo);
    LinearFn bottom{top.slope, top.intercept - p.width};
    out.push_back({x_lo, n.apex_x, bottom, top});
    out.push_back({n.apex_x, x_hi, bottom, n.lower});
    out.push_back({n.apex_x, x_hi, n.upper, top});
  }
  return out;
}

Band ComputeBand(const KakeyaSet& k, int j) {
  const int M = k.M();
  if (j < 1 || j > M) throw std::out_of_range("band index out of range");
  const auto& lines = k.lines();
  const std::size_t group = std::size_t{1} << j;
  const std::size_t half = group / 2;
  Band b;
  b.j = j;
  b.r = BandScale(k.m(), j);
  b.x_lo = BandLeft(M, j);
  b.x_hi = BandRight(M, j);
  for (std::size_t base = 0; base < lines.size(); base += group) {
    const Line& top = lines[base + half];
    LinearFn bottom = LowerEdge(lines[base + half - 1], k.delta());
    Parallelogram p;
    p.slope = top.alpha;
    p.top_left = top.At(b.x_lo);
    p.width = p.top_left - bottom(b.x_lo);
    Notch n;
    n.lower = lines[base].Fn();
    n.upper = LowerEdge(lines[base + group - 1], k.delta());
    auto apex = Dyadic::TryDivide(n.lower.intercept - n.upper.intercept,
                                  n.upper.slope - n.lower.slope);
    if (!apex) throw std::logic_error("notch apex is not dyadic");
    n.apex_x = *apex;
    n.right_side = n.upper(b.x_hi) - n.lower(b.x_hi);
    b.parallelograms.push_back(std::move(p));
    b.notches.push_back(std::move(n));
  }
  return b;
}

std::vector<Band> Bands(const KakeyaSet& k) {
  std::vector<Band> out;
  for (int j = 1; j <= k.M(); ++j) out.push_back(ComputeBand(k, j));
  return out;
}

std::vector<Dyadic> SliceSet::Gaps() const {
  std::vector<Dyadic> g;
  for (std::size_t i = 1; i < components.size(); ++i) {
    g.push_back(components[i].lo - components[i - 1].hi);
  }
  return g;
}

Dyadic SliceSet::Length() const {
  Dyadic total;
  for (const auto& c : components) total += c.Length();
  return total;
}

SliceSet Slice(const KakeyaSet& k, const Dyadic& x) {
  if (x < k.x_min() || k.x_max() < x) {
    throw std::out_of_range("x = " + x.ToString() + " is outside the domain");
  }
  Dyadic drop = k.delta() * (x - Dyadic(1));  // <= 0
  std::vector<DyadicInterval> parts;
  parts.reserve(k.lines().size());
  for (const auto& l : k.lines()) {
    Dyadic top = l.At(x);
    parts.push_back({top + drop, top});
  }
  return SliceSet{x, MergeIntervals(std::move(parts))};
}

std::vector<Dyadic> GapSequence(int m, int j) {
  if (m < 1 || m > 5) throw std::out_of_range("m must lie in [1, 5]");
  const int M = 1 << m;
  if (j < 1 || j > M) throw std::out_of_range("band index out of range");
  std::vector<Dyadic> w;
  for (int k = 1; k <= M - j; ++k) {
    Integer num = Integer(1).ShiftLeft(static_cast<unsigned>(j + k)) -
                  Integer(1).ShiftLeft(static_cast<unsigned>(j + 1)) + Integer(1);
    Dyadic g(num, static_cast<std::uint32_t>(m + M));
    std::vector<Dyadic> next = w;
    next.push_back(g);
    next.insert(next.end(), w.begin(), w.end());
    w = std::move(next);
  }
  return w;
}

std::int64_t CountComponents(const SliceSet& s, const DyadicInterval& iv) {
  std::int64_t n = 0;
  // Components are sorted; skip those entirely below iv.
  auto it = std::lower_bound(s.components.begin(), s.components.end(), iv.lo,
                             [](const DyadicInterval& c, const Dyadic& v) { return c.hi < v; });
  for (; it != s.components.end() && it->lo <= iv.hi; ++it) {
    if (it->lo == it->hi) {
      ++n;  // point component inside iv
    } else if (Max(it->lo, iv.lo) < Min(it->hi, iv.hi)) {
      ++n;
    }
  }
  return n;
}

std::optional<Dyadic> LargestGapMeeting(const SliceSet& s, const DyadicInterval& iv) {
  const auto& c = s.components;
  if (c.empty()) return std::nullopt;
  if (iv.lo < c.front().lo || c.back().hi < iv.hi) return std::nullopt;
  std::optional<Dyadic> best;
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i - 1].hi < iv.hi && iv.lo < c[i].lo) {
      Dyadic g = c[i].lo - c[i - 1].hi;
      if (!best || *best < g) best = std::move(g);
    }
  }
  return best.value_or(Dyadic(0));
}

Dyadic Area(const KakeyaSet& k) {
  std::vector<Dyadic> xs;
  const int M = k.M();
  for (int j = k.first_band(); j <= k.last_band(); ++j) {
    Dyadic left = BandLeft(M, j);
    Dyadic right = BandRight(M, j);
    // The notch apexes of band j sit 1 / (M 2^j) left of the right edge.
    Dyadic apex = right - Dyadic::Pow2(-(k.m() + j));
    for (const Dyadic* x : {&left, &apex, &right}) {
      if (k.x_min() <= *x && *x <= k.x_max()) xs.push_back(*x);
    }
  }
  xs.push_back(k.x_min());
  xs.push_back(k.x_max());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  Dyadic area;
  Dyadic prev_len = Slice(k, xs.front()).Length();
  for (std::size_t i = 1; i < xs.size(); ++i) {
    Dyadic len = Slice(k, xs[i]).Length();
    area += ((prev_len + len) * (xs[i] - xs[i - 1])).MulPow2(-1);
    prev_len = std::move(len);
  }
  return area;
}

namespace {

struct DigitTreeSearch {
  const KakeyaSet& k;
  const Box& box;
  std::vector<Dyadic> tails;  // tails[t] = sum_{s > t} ((s-1)/M) 2^-s

  bool Visit(int t, const Dyadic& alpha, const Dyadic& beta) const {
    const int M = k.M();
    const Dyadic& delta = k.delta();
    if (t == M) {
      Trapezoid tri{k.x_min(), k.x_max(), {alpha + delta, beta - delta}, {alpha, beta}};
      return tri.MeetsInterior(box);
    }
    // Every triangle below this prefix lies in the hull.
    Trapezoid hull{k.x_min(), k.x_max(),
                   {alpha + delta, beta - tails[t] - delta},
                   {alpha + Dyadic::Pow2(-t) - delta, beta}};
    if (!hull.MeetsInterior(box)) return false;
    if (Visit(t + 1, alpha, beta)) return true;
    // Digit eps_{t+1} = 1 adds 2^-(t+1) to alpha and -(t/M) 2^-(t+1) to beta.
    Dyadic step = Dyadic::Pow2(-(t + 1));
    Dyadic dbeta = (Dyadic(t) * step).MulPow2(-k.m());
    return Visit(t + 1, alpha + step, beta - dbeta);
  }
};

}  // namespace

bool SquareIntersects(const KakeyaSet& k, const DyadicSquare& q) {
  Box box = Box::Of(q);
  DigitTreeSearch search{k, box, {}};
  const int M = k.M();
  search.tails.assign(M + 1, Dyadic());
  for (int t = M - 1; t >= 0; --t) {
    int s = t + 1;
    search.tails[t] = search.tails[t + 1] + (Dyadic(s - 1) * Dyadic::Pow2(-s)).MulPow2(-k.m());
  }
  return search.Visit(0, Dyadic(0), Dyadic(0));
}

}  // namespace kakeya
