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

#include "kakeya/cover.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>
#include <type_traits>

namespace kakeya {

Dyadic SetOracle::AreaLowerBound(const DyadicSquare&, const Candidates&) const { return Dyadic(); }

PieceOracle::PieceOracle(PieceSet pieces, bool disjoint)
    : pieces_(std::move(pieces)), disjoint_(disjoint) {}

SetOracle::Candidates PieceOracle::RootCandidates() const {
  Candidates c(pieces_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<std::uint32_t>(i);
  return c;
}

Overlap PieceOracle::Classify(const DyadicSquare& q, const Candidates& parent,
                              Candidates* out) const {
  Box b = Box::Of(q);
  out->clear();
  bool full = false;
  for (std::uint32_t i : parent) {
    if (!pieces_.PieceMeets(i, b)) continue;
    out->push_back(i);
    if (!full && pieces_[i].ContainsBox(b)) full = true;
  }
  if (out->empty()) return Overlap::kEmpty;
  return full ? Overlap::kFull : Overlap::kPartial;
}

Dyadic PieceOracle::AreaLowerBound(const DyadicSquare& q, const Candidates& c) const {
  Box b = Box::Of(q);
  Dyadic total;
  for (std::uint32_t i : c) {
    Dyadic a = pieces_[i].AreaLowerBoundIn(b);
    total = disjoint_ ? total + a : Max(total, a);
  }
  return total;
}

std::vector<DyadicSquare> TileSquare(const DyadicSquare& w, int k) {
  if (k < w.k) throw std::invalid_argument("tiling scale coarser than the square");
  unsigned s = static_cast<unsigned>(k - w.k);
  if (s > 20) throw std::length_error("tiling too fine");
  std::int64_t n = std::int64_t{1} << s;
  Integer x0 = w.ix.ShiftLeft(s), y0 = w.iy.ShiftLeft(s);
  std::vector<DyadicSquare> out;
  out.reserve(static_cast<std::size_t>(n * n));
  for (std::int64_t a = 0; a < n; ++a) {
    for (std::int64_t b = 0; b < n; ++b) out.push_back({k, x0 + a, y0 + b});
  }
  return out;
}

std::vector<DyadicSquare> DomainSquares(int k) {
  std::vector<DyadicSquare> out = TileSquare({0, 0, -1}, k);
  std::vector<DyadicSquare> top = TileSquare({0, 0, 0}, k);
  out.insert(out.end(), top.begin(), top.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Cost arithmetic: exact dyadics for phi = 1, doubles otherwise.
template <class C>
struct CostTable {
  int k_min = 0;
  std::vector<C> g;       // gauge at scale k
  std::vector<C> factor;  // min over k' in [k, k_max] of max(k', 1) phi(k')

  const C& G(int k) const { return g[k - k_min]; }
  const C& Factor(int k) const { return factor[k - k_min]; }
};

template <class C>
C FromArea(const Dyadic& a);
template <>
Dyadic FromArea<Dyadic>(const Dyadic& a) {
  return a;
}
template <>
double FromArea<double>(const Dyadic& a) {
  // Round down by a margin well above one ulp.
  return a.ToDouble() * (1.0 - 0x1p-40);
}

template <class C>
CostTable<C> MakeCosts(const Gauge& gauge, int k_min, int k_max) {
  CostTable<C> t;
  t.k_min = k_min;
  for (int k = k_min; k <= k_max; ++k) {
    if constexpr (std::is_same_v<C, Dyadic>) {
      t.g.push_back(Gauge::HPart(k));
      t.factor.push_back(Dyadic(ClampedLog2Scale(k)));
    } else {
      t.g.push_back(gauge.Value(k));
      t.factor.push_back(ClampedLog2Scale(k) * gauge.PhiPart(k));
    }
  }
  for (int i = static_cast<int>(t.factor.size()) - 2; i >= 0; --i) {
    if (t.factor[i + 1] < t.factor[i]) t.factor[i] = t.factor[i + 1];
  }
  return t;
}

template <class C>
struct Bounds {
  C lo;
  C hi;
};

template <class C>
class Search {
 public:
  Search(const SetOracle& oracle, const CostTable<C>& costs, int k_cut, int k_max,
         bool full_shortcut)
      : oracle_(oracle),
        costs_(costs),
        k_cut_(k_cut),
        k_max_(k_max),
        full_shortcut_(full_shortcut) {}

  Bounds<C> Eval(const DyadicSquare& q, const SetOracle::Candidates& parent) {
    ++nodes;
    depth = std::max(depth, q.k);
    SetOracle::Candidates cand;
    Overlap o = oracle_.Classify(q, parent, &cand);
    if (o == Overlap::kEmpty) return {C{}, C{}};
    const C& g = costs_.G(q.k);
    if ((o == Overlap::kFull && full_shortcut_) || q.k == k_max_) {
      squares.push_back(q);
      return {g, g};
    }
    if (q.k == k_cut_) {
      cut = true;
      squares.push_back(q);
      C lb = FromArea<C>(oracle_.AreaLowerBound(q, cand)) * costs_.Factor(q.k);
      return {lb < g ? lb : g, g};
    }
    std::size_t mark = squares.size();
    C lo{}, hi{};
    for (const DyadicSquare& c : q.Children()) {
      Bounds<C> b = Eval(c, cand);
      lo = lo + b.lo;
      hi = hi + b.hi;
    }
    if (g < lo) lo = g;
    if (hi < g) return {lo, hi};
    squares.resize(mark);
    squares.push_back(q);
    return {lo, g};
  }

  std::vector<DyadicSquare> squares;
  std::uint64_t nodes = 0;
  int depth = 0;
  bool cut = false;

 private:
  const SetOracle& oracle_;
  const CostTable<C>& costs_;
  int k_cut_;
  int k_max_;
  bool full_shortcut_;
};

template <class C>
struct RunResult {
  std::vector<DyadicSquare> squares;
  C lo{};
  C hi{};
  std::uint64_t nodes = 0;
  int depth = 0;
  bool cut = false;
};

template <class C>
RunResult<C> Run(const SetOracle& oracle, const CostTable<C>& costs,
                 const std::vector<DyadicSquare>& roots, int k_cut, int k_max,
                 bool full_shortcut, bool parallel) {
  SetOracle::Candidates root_cand = oracle.RootCandidates();
  std::vector<RunResult<C>> per_root(roots.size());
  auto eval_root = [&](std::size_t i) {
    Search<C> s(oracle, costs, k_cut, k_max, full_shortcut);
    Bounds<C> b = s.Eval(roots[i], root_cand);
    per_root[i] = {std::move(s.squares), b.lo, b.hi, s.nodes, s.depth, s.cut};
  };
  unsigned threads = parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1u;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(roots.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < roots.size(); ++i) eval_root(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < roots.size(); i += threads) eval_root(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  // Combine in root order so the result does not depend on scheduling.
  RunResult<C> r;
  for (auto& p : per_root) {
    r.squares.insert(r.squares.end(), p.squares.begin(), p.squares.end());
    r.lo = r.lo + p.lo;
    r.hi = r.hi + p.hi;
    r.nodes += p.nodes;
    r.depth = std::max(r.depth, p.depth);
    r.cut = r.cut || p.cut;
  }
  return r;
}

template <class C>
CoverResult Solve(const SetOracle& oracle, const Gauge& gauge, const CoverOptions& opts,
                  const std::vector<DyadicSquare>& roots) {
  CostTable<C> costs = MakeCosts<C>(gauge, opts.k_min, opts.k_max);
  bool full_shortcut = gauge.RefinementMonotone(opts.k_min, opts.k_max);
  RunResult<C> best;
  if (opts.node_budget == 0) {
    best = Run(oracle, costs, roots, opts.k_max, opts.k_max, full_shortcut, opts.parallel);
  } else {
    std::uint64_t prev_nodes = 0;
    for (int k_cut = opts.k_min; k_cut <= opts.k_max; ++k_cut) {
      RunResult<C> r = Run(oracle, costs, roots, k_cut, opts.k_max, full_shortcut, opts.parallel);
      if (k_cut > opts.k_min && r.nodes > opts.node_budget) break;
      best = std::move(r);
      if (!best.cut) break;
      double growth = prev_nodes ? static_cast<double>(best.nodes) / prev_nodes : 4.0;
      prev_nodes = best.nodes;
      if (static_cast<double>(best.nodes) * std::max(growth, 1.0) > opts.node_budget) break;
    }
  }
  CoverResult res = SummarizeCover(std::move(best.squares), gauge, opts.k_min, opts.k_max);
  res.exact = !best.cut;
  res.depth_reached = best.depth;
  res.nodes = best.nodes;
  if constexpr (std::is_same_v<C, Dyadic>) {
    res.exact_lower_bound = best.lo;
    res.lower_bound = best.lo.ToDouble();
  } else {
    res.lower_bound = best.lo;
  }
  if (res.exact) {
    res.exact_lower_bound = res.exact_total;
    res.lower_bound = res.total;
  }
  return res;
}

}  // namespace

CoverResult OptimalCover(const SetOracle& oracle, const Gauge& gauge, const CoverOptions& opts) {
  if (opts.k_min < 0 || opts.k_min > opts.k_max) {
    throw std::invalid_argument("need 0 <= k_min <= k_max");
  }
  std::vector<DyadicSquare> roots = opts.window.empty() ? DomainSquares(opts.k_min) : opts.window;
  for (const DyadicSquare& r : roots) {
    if (r.k != opts.k_min) throw std::invalid_argument("window squares must have scale k_min");
  }
  if (gauge.exact()) return Solve<Dyadic>(oracle, gauge, opts, roots);
  return Solve<double>(oracle, gauge, opts, roots);
}

CoverResult SummarizeCover(std::vector<DyadicSquare> squares, const Gauge& gauge, int k_min,
                           int k_max) {
  std::sort(squares.begin(), squares.end());
  CoverResult res;
  res.k_min = k_min;
  res.k_max = k_max;
  res.gauge = gauge.Name();
  std::map<int, std::uint64_t> counts;
  for (const DyadicSquare& q : squares) ++counts[q.k];
  CompensatedSum total;
  Dyadic exact_total;
  for (const auto& [k, n] : counts) {
    ScaleSummary s;
    s.k = k;
    s.count = n;
    s.h = Gauge::HPart(k);
    s.phi = gauge.PhiPart(k);
    s.contribution = static_cast<double>(n) * gauge.Value(k);
    total.Add(s.contribution);
    exact_total += s.h * Dyadic(Integer(n), 0);
    res.per_scale.push_back(s);
  }
  res.squares = std::move(squares);
  res.total = total.Total();
  if (gauge.exact()) {
    res.exact_total = exact_total;
    res.total = exact_total.ToDouble();
  }
  res.lower_bound = res.total;
  res.exact_lower_bound = res.exact_total;
  res.depth_reached = k_max;
  return res;
}

std::vector<DyadicSquare> Neighborhood(const DyadicSquare& q, int factor) {
  if (factor != 3 && factor != 5) throw std::invalid_argument("factor must be 3 or 5");
  int reach = factor / 2;
  std::vector<DyadicSquare> out;
  for (int e = -reach; e <= reach; ++e) out.push_back({q.k, q.ix, q.iy + e});
  return out;
}

// ---------------------------------------------------------------------------
// Adaptive cover.

namespace {

using Range = std::pair<Integer, Integer>;

std::vector<Range> MergeRanges(std::vector<Range> v) {
  std::sort(v.begin(), v.end());
  std::vector<Range> out;
  for (auto& r : v) {
    if (!out.empty() && r.first <= out.back().second + 1) {
      if (out.back().second < r.second) out.back().second = r.second;
    } else {
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::uint64_t CountOverlap(const std::vector<Range>& a, const std::vector<Range>& b) {
  std::uint64_t n = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const Integer& lo = std::max(a[i].first, b[j].first);
    const Integer& hi = std::min(a[i].second, b[j].second);
    if (lo <= hi) n += static_cast<std::uint64_t>((hi - lo + 1).ToInt64());
    if (a[i].second < b[j].second) {
      ++i;
    } else {
      ++j;
    }
  }
  return n;
}

// Cells of scale k whose interior meets the interior of q, as index ranges.
std::pair<Range, Range> CellsMeeting(const DyadicSquare& q, int k) {
  if (q.k <= k) {
    unsigned s = static_cast<unsigned>(k - q.k);
    Integer x0 = q.ix.ShiftLeft(s), y0 = q.iy.ShiftLeft(s);
    Integer n = Integer(1).ShiftLeft(s) - 1;
    return {{x0, x0 + n}, {y0, y0 + n}};
  }
  unsigned s = static_cast<unsigned>(q.k - k);
  Integer x = q.ix.FloorShiftRight(s), y = q.iy.FloorShiftRight(s);
  return {{x, x}, {y, y}};
}

constexpr double kAdaptiveWorkLimit = 1e8;

}  // namespace

AdaptiveCover AdaptiveCover::Build(const KakeyaSet& kset) {
  AdaptiveCover cover;
  const int m = kset.m(), M = kset.M();
  for (int j = kset.first_band(); j <= kset.last_band(); ++j) {
    Band band = ComputeBand(kset, j);
    double work = 3.0 * static_cast<double>(band.parallelograms.size()) *
                  std::ldexp(1.0, M - j);
    if (work > kAdaptiveWorkLimit) throw std::length_error("adaptive cover too large");
    Dyadic xl = Max(band.x_lo, kset.x_min()), xr = Min(band.x_hi, kset.x_max());
    std::vector<Trapezoid> pieces;
    for (const Trapezoid& t : band.Pieces()) {
      if (auto c = t.ClipX(xl, xr)) pieces.push_back(*c);
    }
    BandCover bc;
    bc.j = j;
    bc.k = BandScaleIndex(m, j);
    const Dyadic r = BandScale(m, j);
    const int k = bc.k;
    Integer c0 = xl.MulPow2(k).Floor(), c1 = xr.MulPow2(k).Ceil();
    for (Integer ix = c0; ix < c1; ix += 1) {
      Dyadic cx0 = Dyadic(ix, static_cast<std::uint32_t>(k));
      Dyadic cx1 = cx0 + r;
      std::vector<Range> rows;
      for (const Trapezoid& t : pieces) {
        Dyadic p = Max(cx0, t.x_lo), q = Min(cx1, t.x_hi);
        if (!(p < q)) continue;
        Dyadic lo = Min(t.lower(p), t.lower(q)), hi = Max(t.upper(p), t.upper(q));
        if (!(lo < hi)) continue;
        rows.emplace_back(lo.MulPow2(k).Floor(), hi.MulPow2(k).Ceil() - 1);
      }
      Column col{ix, MergeRanges(std::move(rows))};
      for (const Range& rg : col.rows) {
        bc.count += static_cast<std::uint64_t>((rg.second - rg.first + 1).ToInt64());
      }
      if (!col.rows.empty()) bc.columns.push_back(std::move(col));
    }
    cover.bands_.push_back(std::move(bc));
  }
  return cover;
}

std::uint64_t AdaptiveCover::count() const {
  std::uint64_t n = 0;
  for (const BandCover& b : bands_) n += b.count;
  return n;
}

Dyadic AdaptiveCover::Total() const {
  Dyadic t;
  for (const BandCover& b : bands_) t += Gauge::HPart(b.k) * Dyadic(Integer(b.count), 0);
  return t;
}

double AdaptiveCover::Total(const Gauge& g) const {
  if (g.exact()) return Total().ToDouble();
  CompensatedSum s;
  for (const BandCover& b : bands_) s.Add(static_cast<double>(b.count) * g.Value(b.k));
  return s.Total();
}

std::vector<DyadicSquare> AdaptiveCover::Squares() const {
  std::vector<DyadicSquare> out;
  out.reserve(count());
  for (const BandCover& b : bands_) {
    for (const Column& c : b.columns) {
      for (const Range& r : c.rows) {
        for (Integer iy = r.first; iy <= r.second; iy += 1) out.push_back({b.k, c.ix, iy});
      }
    }
  }
  return out;
}

CoverResult AdaptiveCover::ToCoverResult(const Gauge& g) const {
  int k_min = bands_.empty() ? 0 : bands_.back().k;
  int k_max = bands_.empty() ? 0 : bands_.front().k;
  return SummarizeCover(Squares(), g, k_min, k_max);
}

std::vector<std::uint64_t> AdaptiveCover::CountMeeting(const std::vector<DyadicSquare>& f) const {
  std::vector<std::uint64_t> out;
  for (const BandCover& b : bands_) {
    std::vector<std::pair<Range, Range>> cells;
    for (const DyadicSquare& q : f) cells.push_back(CellsMeeting(q, b.k));
    std::uint64_t n = 0;
    for (const Column& c : b.columns) {
      std::vector<Range> rows;
      for (const auto& [xr, yr] : cells) {
        if (xr.first <= c.ix && c.ix <= xr.second) rows.push_back(yr);
      }
      if (rows.empty()) continue;
      n += CountOverlap(c.rows, MergeRanges(std::move(rows)));
    }
    out.push_back(n);
  }
  return out;
}

Dyadic AdaptiveCover::Measure(const std::vector<DyadicSquare>& f) const {
  std::vector<std::uint64_t> n = CountMeeting(f);
  Dyadic t;
  for (std::size_t i = 0; i < bands_.size(); ++i) {
    t += Gauge::HPart(bands_[i].k) * Dyadic(Integer(n[i]), 0);
  }
  return t;
}

double AdaptiveCover::Measure(const std::vector<DyadicSquare>& f, const Gauge& g) const {
  if (g.exact()) return Measure(f).ToDouble();
  std::vector<std::uint64_t> n = CountMeeting(f);
  CompensatedSum s;
  for (std::size_t i = 0; i < bands_.size(); ++i) {
    s.Add(static_cast<double>(n[i]) * g.Value(bands_[i].k));
  }
  return s.Total();
}

Dyadic AdaptiveNominalSum(int m) {
  if (m < 1 || m > 5) throw std::out_of_range("m must lie in [1, 5]");
  const int M = 1 << m;
  Dyadic sum;
  for (int j = 1; j <= M; ++j) {
    Dyadic per_column = *Dyadic::TryDivide(Dyadic::Pow2(-m), BandScale(m, j));
    sum += Dyadic(2) * Dyadic::Pow2(M - j) * per_column * Gauge::HPart(BandScaleIndex(m, j));
  }
  return sum;
}

Dyadic AdaptiveNominalClosedForm(int m) {
  return Dyadic(1) + Dyadic(Integer(2 * m - 1), static_cast<std::uint32_t>(m));
}

QuasiOptimality QuasiOptimalityRatio(const KakeyaSet& k, const Gauge& g, int k_max) {
  AdaptiveCover a = AdaptiveCover::Build(k);
  PieceOracle oracle(k.pieces());
  CoverOptions opts;
  opts.k_min = 0;
  opts.k_max = k_max;
  CoverResult opt = OptimalCover(oracle, g, opts);
  QuasiOptimality q;
  q.adaptive_total = a.Total(g);
  q.optimal_total = opt.total;
  if (g.exact()) {
    q.exact_adaptive = a.Total();
    q.exact_optimal = opt.exact_total;
  }
  q.ratio = q.adaptive_total / q.optimal_total;
  return q;
}

}  // namespace kakeya
