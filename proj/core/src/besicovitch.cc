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

#include "kakeya/besicovitch.h"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

namespace kakeya {

namespace {

constexpr int kMaxEnumerationDigits = 20;
constexpr int kMaxLevelDigits = 16;

mpq_class Mpq(const Dyadic& d) { return d.ToMpq(); }

}  // namespace

SequenceSpec::SequenceSpec(std::vector<int> block_sizes) : M_(std::move(block_sizes)) {
  if (M_.empty()) throw std::invalid_argument("sequence spec needs at least one block");
  for (std::size_t i = 0; i < M_.size(); ++i) {
    int M = M_[i];
    if (M < 2 || M > 32 || !std::has_single_bit(static_cast<unsigned>(M))) {
      throw std::invalid_argument("block sizes must be powers of two in [2, 32]");
    }
    if (i > 0 && M < M_[i - 1]) throw std::invalid_argument("block sizes must be nondecreasing");
  }
}

SequenceSpec SequenceSpec::Parse(std::string_view text) {
  std::vector<int> sizes;
  std::string s(text);
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  int v;
  while (in >> v) sizes.push_back(v);
  if (!in.eof()) throw std::invalid_argument("malformed sequence: " + std::string(text));
  return SequenceSpec(std::move(sizes));
}

int SequenceSpec::M(int j) const {
  if (j < 1 || j > levels()) throw std::out_of_range("level out of range");
  return M_[j - 1];
}

int SequenceSpec::m(int j) const { return std::countr_zero(static_cast<unsigned>(M(j))); }

int SequenceSpec::DigitCount(int n) const {
  if (n < 0 || n > levels()) throw std::out_of_range("level out of range");
  int total = 0;
  for (int j = 0; j < n; ++j) total += M_[j];
  return total;
}

std::string SequenceSpec::ToString() const {
  std::string s;
  for (std::size_t i = 0; i < M_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(M_[i]);
  }
  return s;
}

DigitStream DigitsOf(const Dyadic& a) {
  if (a < Dyadic(0) || Dyadic(1) < a) throw std::out_of_range("slope must lie in [0, 1]");
  if (a == Dyadic(1)) return [](std::size_t) { return 1; };
  // a = mant / 2^e with 0 <= mant < 2^e.
  Integer mant = a.mantissa();
  std::uint32_t e = a.exponent();
  return [mant, e](std::size_t p) {
    if (p == 0) throw std::out_of_range("digit positions start at 1");
    if (p > e) return 0;
    return mant.FloorShiftRight(static_cast<unsigned>(e - p)).is_odd() ? 1 : 0;
  };
}

Line LevelLine(int M, std::uint64_t index) {
  if (M < 1 || M > 62) throw std::out_of_range("block size out of range");
  if (index >> M) throw std::out_of_range("line index out of range");
  Line l;
  l.digits.resize(M);
  for (int k = 1; k <= M; ++k) l.digits[k - 1] = (index >> (M - k)) & 1;
  l.alpha = Dyadic(Integer(index), static_cast<std::uint32_t>(M));
  l.beta = InterceptForDigits(l.digits, M);
  return l;
}

Line LineFromPath(const SequenceSpec& spec, const DigitPath& path) {
  if (static_cast<int>(path.size()) > spec.levels()) {
    throw std::out_of_range("path longer than the sequence");
  }
  Line out;
  out.alpha = Dyadic(0);
  out.beta = Dyadic(0);
  for (std::size_t j = 0; j < path.size(); ++j) {
    const int M = spec.M(static_cast<int>(j) + 1);
    Line l = LevelLine(M, path[j]);
    const int shift = -spec.DigitCount(static_cast<int>(j));
    out.alpha += l.alpha.MulPow2(shift);
    out.beta += l.beta.MulPow2(shift);
    out.digits.insert(out.digits.end(), l.digits.begin(), l.digits.end());
  }
  return out;
}

Dyadic BOfA(const SequenceSpec& spec, const DigitStream& a, int n_terms) {
  if (n_terms < 0 || n_terms > spec.levels()) throw std::out_of_range("too many terms");
  Dyadic b;
  std::size_t pos = 1;
  for (int j = 1; j <= n_terms; ++j) {
    const int M = spec.M(j);
    std::vector<std::uint8_t> digits(M);
    for (int k = 0; k < M; ++k) digits[k] = static_cast<std::uint8_t>(a(pos++));
    b += InterceptForDigits(digits, M).MulPow2(-spec.DigitCount(j - 1));
  }
  return b;
}

Dyadic BOfA(const SequenceSpec& spec, const Dyadic& a, int n_terms) {
  return BOfA(spec, DigitsOf(a), n_terms);
}

Dyadic TildeB(const SequenceSpec& spec, const Dyadic& a, int n_terms) {
  if (a < Dyadic(0) || Dyadic(1) < a) throw std::out_of_range("slope must lie in [0, 1]");
  if (a.is_zero()) return Dyadic(0);
  const int p = spec.DigitCount(n_terms);
  if (static_cast<int>(a.exponent()) <= p) {
    return BOfA(spec, a - Dyadic::Pow2(-p), n_terms);
  }
  return BOfA(spec, a, n_terms);
}

std::vector<Line> EnumerateLines(const SequenceSpec& spec, int n) {
  if (n < 0 || n > spec.levels()) throw std::out_of_range("level out of range");
  if (spec.DigitCount(n) > kMaxEnumerationDigits) {
    throw std::length_error("2^" + std::to_string(spec.DigitCount(n)) +
                            " lines exceed the enumeration limit of 2^20");
  }
  std::vector<Line> lines{Line{Dyadic(0), Dyadic(0), {}}};
  for (int j = 1; j <= n; ++j) {
    const int M = spec.M(j);
    const int shift = -spec.DigitCount(j - 1);
    std::vector<Line> level;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << M); ++i) {
      Line l = LevelLine(M, i);
      l.alpha = l.alpha.MulPow2(shift);
      l.beta = l.beta.MulPow2(shift);
      level.push_back(std::move(l));
    }
    std::vector<Line> next;
    next.reserve(lines.size() * level.size());
    for (const auto& p : lines) {
      for (const auto& l : level) {
        Line c{p.alpha + l.alpha, p.beta + l.beta, p.digits};
        c.digits.insert(c.digits.end(), l.digits.begin(), l.digits.end());
        next.push_back(std::move(c));
      }
    }
    lines = std::move(next);
  }
  std::sort(lines.begin(), lines.end(),
            [](const Line& a, const Line& b) { return a.alpha < b.alpha; });
  return lines;
}

Trapezoid Tube(const Line& l, const Dyadic& delta) {
  return {Dyadic(0), Dyadic(1), {l.alpha + delta, l.beta - delta}, {l.alpha + delta, l.beta}};
}

FnApprox::FnApprox(SequenceSpec spec, int n) : spec_(std::move(spec)), n_(n) {
  if (n < 1 || n > spec_.levels()) throw std::out_of_range("level out of range");
  level_lines_.resize(n + 1);
  for (int j = 1; j <= n; ++j) {
    const int M = spec_.M(j);
    if (M > kMaxLevelDigits) throw std::length_error("block size too large for the digit tree");
    const int shift = -spec_.DigitCount(j - 1);
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << M); ++i) {
      Line l = LevelLine(M, i);
      l.alpha = l.alpha.MulPow2(shift);
      l.beta = l.beta.MulPow2(shift);
      l.digits.clear();
      level_lines_[j].push_back(std::move(l));
    }
  }
}

bool FnApprox::Descend(int level, const Line& prefix, const KeepFn& keep,
                       const LeafFn& leaf) const {
  if (level == n_) return leaf(prefix);
  for (const auto& l : level_lines_[level + 1]) {
    Line child{prefix.alpha + l.alpha, prefix.beta + l.beta, {}};
    if (!keep(child, level + 1)) continue;
    if (Descend(level + 1, child, keep, leaf)) return true;
  }
  return false;
}

bool FnApprox::Walk(const KeepFn& keep, const LeafFn& leaf) const {
  return Descend(0, Line{Dyadic(0), Dyadic(0), {}}, keep, leaf);
}

bool FnApprox::MeetsInterior(const Box& b) const {
  bool found = false;
  Walk(
      [&](const Line& l, int level) { return Tube(l, spec_.Delta(level)).MeetsInterior(b); },
      [&](const Line&) { return found = true; });
  return found;
}

bool FnApprox::ContainsPoint(const Dyadic& x, const Dyadic& y) const {
  bool found = false;
  Walk(
      [&](const Line& l, int level) { return Tube(l, spec_.Delta(level)).ContainsPoint(x, y); },
      [&](const Line&) { return found = true; });
  return found;
}

SliceSet FnApprox::Slice(const Dyadic& x, const DyadicInterval& window) const {
  if (x < Dyadic(0) || Dyadic(1) < x) throw std::out_of_range("x outside [0, 1]");
  std::vector<DyadicInterval> parts;
  Walk(
      [&](const Line& l, int level) {
        auto s = Tube(l, spec_.Delta(level)).SliceAt(x);
        return s && s->lo <= window.hi && window.lo <= s->hi;
      },
      [&](const Line& l) {
        auto s = *Tube(l, delta()).SliceAt(x);
        parts.push_back({Max(s.lo, window.lo), Min(s.hi, window.hi)});
        return false;
      });
  return SliceSet{x, MergeIntervals(std::move(parts))};
}

std::vector<Line> FnApprox::LinesMeeting(const Box& b) const {
  std::vector<Line> out;
  Walk(
      [&](const Line& l, int level) { return Tube(l, spec_.Delta(level)).MeetsInterior(b); },
      [&](const Line& l) {
        out.push_back(l);
        return false;
      });
  return out;
}

PieceSet FnApprox::Tubes() const {
  if (spec_.DigitCount(n_) > kMaxEnumerationDigits) {
    throw std::length_error("too many tubes to enumerate");
  }
  std::vector<Trapezoid> tubes;
  Dyadic d = delta();
  Walk([](const Line&, int) { return true; },
      [&](const Line& l) {
        tubes.push_back(Tube(l, d));
        return false;
      });
  return PieceSet(std::move(tubes));
}

Integer CountGridSquares(const FnApprox& f) {
  const int p = f.spec().DigitCount(f.n());
  if (p > 12) throw std::length_error("grid too large for exact counting");
  PieceSet tubes = f.Tubes();
  const std::int64_t columns = std::int64_t{1} << p;
  Integer total;
  for (std::int64_t ix = 0; ix < columns; ++ix) {
    Dyadic x0(Integer(ix), static_cast<std::uint32_t>(p));
    Dyadic x1(Integer(ix + 1), static_cast<std::uint32_t>(p));
    std::vector<std::pair<Integer, Integer>> rows;
    for (const auto& t : tubes.pieces()) {
      // Open strip: the interior projects onto (min lower, max upper).
      Dyadic lo = Min(t.lower(x0), t.lower(x1));
      Dyadic hi = Max(t.upper(x0), t.upper(x1));
      rows.emplace_back(lo.MulPow2(p).Floor(), hi.MulPow2(p).Ceil() - Integer(1));
    }
    std::sort(rows.begin(), rows.end());
    Integer covered_to;
    bool first = true;
    for (const auto& [a, b] : rows) {
      if (first || covered_to < a) {
        total += b - a + Integer(1);
        covered_to = b;
        first = false;
      } else if (covered_to < b) {
        total += b - covered_to;
        covered_to = b;
      }
    }
  }
  return total;
}

Dyadic MinkowskiProduct(const FnApprox& f) {
  const int p = f.spec().DigitCount(f.n());
  return Dyadic(CountGridSquares(f), 0).MulPow2(-2 * p) * Dyadic(std::max(p, 1));
}

namespace {

// {x in [0, 1] : l(x) in tube(t, delta)} as [lo, hi]; empty when lo > hi.
std::pair<mpq_class, mpq_class> SlabInterval(const Line& l, const Line& t, const Dyadic& delta) {
  // d(x) = l(x) - t(x) = s x + c must satisfy -delta - c <= (s - delta) x <= -c.
  mpq_class u = Mpq(l.alpha - t.alpha - delta);
  mpq_class c = Mpq(l.beta - t.beta);
  mpq_class d = Mpq(delta);
  mpq_class lo = 0, hi = 1;
  if (sgn(u) == 0) {
    if (!(-d - c <= 0 && 0 <= -c)) return {1, 0};
  } else {
    mpq_class a = (-d - c) / u, b = -c / u;
    if (sgn(u) < 0) std::swap(a, b);
    if (a > lo) lo = a;
    if (b < hi) hi = b;
  }
  return {lo, hi};
}

mpq_class UnionLength(std::vector<std::pair<mpq_class, mpq_class>> parts) {
  std::sort(parts.begin(), parts.end());
  mpq_class total = 0;
  bool open = false;
  mpq_class cur_lo, cur_hi;
  for (auto& [a, b] : parts) {
    if (open && a <= cur_hi) {
      if (b > cur_hi) cur_hi = b;
    } else {
      if (open) total += cur_hi - cur_lo;
      cur_lo = a;
      cur_hi = b;
      open = true;
    }
  }
  if (open) total += cur_hi - cur_lo;
  return total;
}

}  // namespace

mpq_class LineSlabMeasure(const FnApprox& f, const Line& l) {
  std::vector<std::pair<mpq_class, mpq_class>> parts;
  const Dyadic d = f.delta();
  f.Walk(
      // Sub-tubes lie in the coarser tube, so a null overlap prunes.
      [&](const Line& t, int level) {
        auto [lo, hi] = SlabInterval(l, t, f.spec().Delta(level));
        return lo < hi;
      },
      [&](const Line& t) {
        auto iv = SlabInterval(l, t, d);
        if (iv.first < iv.second) parts.push_back(std::move(iv));
        return false;
      });
  return UnionLength(std::move(parts));
}

SlabBound LineSlabBound(const FnApprox& f, const Line& l) {
  const int n = f.n();
  const Dyadic dn = f.spec().Delta(n);
  const Dyadic dprev = f.spec().Delta(n - 1);
  std::vector<Line> components =
      n == 1 ? std::vector<Line>{Line{Dyadic(0), Dyadic(0), {}}}
             : EnumerateLines(f.spec(), n - 1);
  const int M = f.spec().M(n);
  const int shift = -f.spec().DigitCount(n - 1);
  std::vector<Line> level;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << M); ++i) {
    Line e = LevelLine(M, i);
    level.push_back({e.alpha.MulPow2(shift), e.beta.MulPow2(shift), {}});
  }
  SlabBound out;
  bool any = false;
  mpq_class a = Mpq(l.alpha);
  for (const auto& c : components) {
    auto [clo, chi] = SlabInterval(l, c, dprev);
    if (!(clo < chi)) continue;
    bool meets = false;
    for (const auto& e : level) {
      Line t{c.alpha + e.alpha, c.beta + e.beta, {}};
      auto [lo, hi] = SlabInterval(l, t, dn);
      if (lo < hi) {
        meets = true;
        break;
      }
    }
    if (!meets) continue;
    // Tube slopes of this component span [a' + delta_n, a' + delta_{n-1}].
    mpq_class slo = Mpq(c.alpha + dn), shi = Mpq(c.alpha + dprev);
    mpq_class gap = a < slo ? slo - a : (a > shi ? a - shi : mpq_class(0));
    if (!any || gap < out.gap) out.gap = gap;
    any = true;
  }
  if (!any) {
    out.gap = 0;
    out.bound = 0;
    return out;
  }
  if (sgn(out.gap) == 0) {
    out.vacuous = true;
    out.bound = 0;
    return out;
  }
  out.bound = mpq_class(2, M) / out.gap;
  out.bound.canonicalize();
  return out;
}

}  // namespace kakeya
