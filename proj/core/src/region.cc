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

#include "kakeya/region.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace kakeya {

bool Trapezoid::MeetsInterior(const Box& b) const {
  const Dyadic& p = Max(x_lo, b.x0);
  const Dyadic& q = Min(x_hi, b.x1);
  if (!(p < q)) return false;
  Dyadic lp = lower(p), lq = lower(q), up = upper(p), uq = upper(q);
  // The set must have interior over (p, q).
  if (!(lp < up) && !(lq < uq)) return false;
  // f = upper - y0 and g = y1 - lower; need min(f, g) > 0 somewhere.
  Dyadic fp = up - b.y0, fq = uq - b.y0;
  Dyadic gp = b.y1 - lp, gq = b.y1 - lq;
  if (fp.sign() > 0 && gp.sign() > 0) return true;
  if (fq.sign() > 0 && gq.sign() > 0) return true;
  Dyadic dp = fp - gp, dq = fq - gq;
  if (dp.sign() * dq.sign() >= 0) return false;
  // Value of f at the crossing f = g is (fp*gq - gp*fq) / (dp - dq).
  Dyadic num = fp * gq - gp * fq;
  Dyadic den = dp - dq;
  return num.sign() * den.sign() > 0;
}

bool Trapezoid::ContainsBox(const Box& b) const {
  if (b.x0 < x_lo || x_hi < b.x1) return false;
  if (b.y0 < lower(b.x0) || b.y0 < lower(b.x1)) return false;
  if (upper(b.x0) < b.y1 || upper(b.x1) < b.y1) return false;
  return true;
}

bool Trapezoid::ContainsPoint(const Dyadic& x, const Dyadic& y) const {
  return x_lo <= x && x <= x_hi && lower(x) <= y && y <= upper(x);
}

mpq_class Trapezoid::AreaIn(const Box& b) const {
  const mpq_class p = Max(x_lo, b.x0).ToMpq(), q = Min(x_hi, b.x1).ToMpq();
  if (!(p < q)) return 0;
  const mpq_class ls = lower.slope.ToMpq(), li = lower.intercept.ToMpq();
  const mpq_class us = upper.slope.ToMpq(), ui = upper.intercept.ToMpq();
  const mpq_class y0 = b.y0.ToMpq(), y1 = b.y1.ToMpq();
  // The clipped height is linear between consecutive breakpoints.
  std::vector<mpq_class> xs{p, q};
  auto root = [&](const mpq_class& slope, const mpq_class& offset) {
    if (sgn(slope) == 0) return;
    mpq_class x = -offset / slope;
    if (p < x && x < q) xs.push_back(x);
  };
  for (const mpq_class* y : {&y0, &y1}) {
    root(ls, li - *y);
    root(us, ui - *y);
  }
  root(us - ls, ui - li);
  std::sort(xs.begin(), xs.end());
  auto height = [&](const mpq_class& x) -> mpq_class {
    mpq_class hi = us * x + ui, lo = ls * x + li;
    if (y1 < hi) hi = y1;
    if (lo < y0) lo = y0;
    return lo < hi ? mpq_class(hi - lo) : mpq_class(0);
  };
  mpq_class total = 0;
  mpq_class h0 = height(xs.front());
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] == xs[i - 1]) continue;
    mpq_class h1 = height(xs[i]);
    total += (h0 + h1) * (xs[i] - xs[i - 1]) / 2;
    h0 = h1;
  }
  return total;
}

Dyadic Trapezoid::AreaLowerBoundIn(const Box& b) const {
  const Dyadic& px = Max(x_lo, b.x0);
  const Dyadic& qx = Min(x_hi, b.x1);
  if (!(px < qx)) return Dyadic();
  // Offsets are exact dyadics before rounding, so every double below carries
  // a relative error of a few ulps against values of size (1 + |slope|) * side.
  const double p = (px - b.x0).ToDouble(), q = (qx - b.x0).ToDouble();
  const double h = (b.y1 - b.y0).ToDouble();
  const double ls = lower.slope.ToDouble(), us = upper.slope.ToDouble();
  const double lc = (lower(b.x0) - b.y0).ToDouble(), uc = (upper(b.x0) - b.y0).ToDouble();
  double xs[7] = {p, q};
  int n = 2;
  auto root = [&](double slope, double offset) {
    if (slope == 0.0) return;
    double x = -offset / slope;
    if (p < x && x < q) xs[n++] = x;
  };
  root(ls, lc);
  root(ls, lc - h);
  root(us, uc);
  root(us, uc - h);
  root(us - ls, uc - lc);
  std::sort(xs, xs + n);
  auto height = [&](double x) {
    double hi = std::min(us * x + uc, h), lo = std::max(ls * x + lc, 0.0);
    return std::max(hi - lo, 0.0);
  };
  double area = 0.0, h0 = height(xs[0]);
  for (int i = 1; i < n; ++i) {
    double h1 = height(xs[i]);
    area += 0.5 * (h0 + h1) * (xs[i] - xs[i - 1]);
    h0 = h1;
  }
  const double side = std::max((b.x1 - b.x0).ToDouble(), h);
  const double scale = 1.0 + std::abs(ls) + std::abs(us);
  const double slack = std::ldexp(side * side * scale * scale, -44);
  return area > slack ? Dyadic::FromDouble(area - slack) : Dyadic();
}

Dyadic Trapezoid::Area() const {
  Dyadic h0 = upper(x_lo) - lower(x_lo);
  Dyadic h1 = upper(x_hi) - lower(x_hi);
  return ((h0 + h1) * (x_hi - x_lo)).MulPow2(-1);
}

std::optional<Trapezoid> Trapezoid::ClipX(const Dyadic& lo, const Dyadic& hi) const {
  const Dyadic& p = Max(x_lo, lo);
  const Dyadic& q = Min(x_hi, hi);
  if (!(p < q)) return std::nullopt;
  return Trapezoid{p, q, lower, upper};
}

std::optional<DyadicInterval> Trapezoid::SliceAt(const Dyadic& x) const {
  if (x < x_lo || x_hi < x) return std::nullopt;
  return DyadicInterval{lower(x), upper(x)};
}

Box Trapezoid::Bounds() const {
  Dyadic l0 = lower(x_lo), l1 = lower(x_hi), u0 = upper(x_lo), u1 = upper(x_hi);
  return {x_lo, x_hi, Min(l0, l1), Max(u0, u1)};
}

std::vector<Point> Trapezoid::Vertices() const {
  std::vector<Point> pts = {{x_lo, lower(x_lo)},
                            {x_hi, lower(x_hi)},
                            {x_hi, upper(x_hi)},
                            {x_lo, upper(x_lo)}};
  std::vector<Point> out;
  for (auto& p : pts) {
    if (out.empty() || !(out.back() == p)) out.push_back(p);
  }
  if (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

Trapezoid Trapezoid::Transformed(const Dyadic& scale, const LinearFn& shift) const {
  if (scale.sign() <= 0) throw std::invalid_argument("scale must be positive");
  return {x_lo, x_hi, lower.Scaled(scale) + shift, upper.Scaled(scale) + shift};
}

PieceSet::PieceSet(std::vector<Trapezoid> pieces) : pieces_(std::move(pieces)) {
  bounds_.reserve(pieces_.size());
  for (const auto& p : pieces_) bounds_.push_back(p.Bounds());
}

bool PieceSet::PieceMeets(std::size_t i, const Box& b) const {
  const Box& bb = bounds_[i];
  if (!(bb.x0 < b.x1) || !(b.x0 < bb.x1) || !(bb.y0 < b.y1) || !(b.y0 < bb.y1)) {
    return false;
  }
  return pieces_[i].MeetsInterior(b);
}

bool PieceSet::MeetsInterior(const Box& b) const {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (PieceMeets(i, b)) return true;
  }
  return false;
}

std::vector<DyadicInterval> PieceSet::Slice(const Dyadic& x) const {
  std::vector<DyadicInterval> parts;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (x < bounds_[i].x0 || bounds_[i].x1 < x) continue;
    if (auto s = pieces_[i].SliceAt(x)) parts.push_back(std::move(*s));
  }
  return MergeIntervals(std::move(parts));
}

Dyadic PieceSet::TotalArea() const {
  Dyadic a;
  for (const auto& p : pieces_) a += p.Area();
  return a;
}

}  // namespace kakeya
