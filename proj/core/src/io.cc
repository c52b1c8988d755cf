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

#include "kakeya/io.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kakeya {

namespace {

const Json& Field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw std::invalid_argument(std::string("missing field \"") + name + "\"");
  }
  return j.at(name);
}

template <class T, class F>
Json Array(const std::vector<T>& v, F f) {
  Json a = Json::array();
  for (const T& x : v) a.push_back(f(x));
  return a;
}

std::string Fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

}  // namespace

Json ToJson(const Dyadic& d) {
  return Json{{"num", d.mantissa().ToString()}, {"exp", d.exponent()}};
}

Dyadic DyadicFromJson(const Json& j) {
  const Json& num = Field(j, "num");
  const Json& exp = Field(j, "exp");
  if (!num.is_string() || !exp.is_number_integer()) {
    throw std::invalid_argument("dyadic needs a string \"num\" and an integer \"exp\"");
  }
  Integer m = Integer::FromString(num.get<std::string>());
  std::int64_t e = exp.get<std::int64_t>();
  if (e > (1 << 30) || e < -(1 << 30)) throw std::invalid_argument("dyadic exponent out of range");
  return Dyadic(std::move(m), 0).MulPow2(-static_cast<int>(e));
}

Json ToJson(const DyadicInterval& i) { return Json{{"lo", ToJson(i.lo)}, {"hi", ToJson(i.hi)}}; }

DyadicInterval IntervalFromJson(const Json& j) {
  DyadicInterval i{DyadicFromJson(Field(j, "lo")), DyadicFromJson(Field(j, "hi"))};
  if (i.hi < i.lo) throw std::invalid_argument("interval with hi < lo");
  return i;
}

Json ToJson(const DyadicSquare& q) {
  return Json{{"x", ToJson(q.XLo())}, {"y", ToJson(q.YLo())}, {"side", ToJson(q.Side())}};
}

DyadicSquare SquareFromJson(const Json& j) {
  Dyadic x = DyadicFromJson(Field(j, "x"));
  Dyadic y = DyadicFromJson(Field(j, "y"));
  Dyadic side = DyadicFromJson(Field(j, "side"));
  if (side.sign() <= 0 || side > Dyadic(1) || !(side.mantissa() == Integer(1))) {
    throw std::invalid_argument("square side must be 2^-k with k >= 0");
  }
  int k = static_cast<int>(side.exponent());
  Dyadic sx = x.MulPow2(k), sy = y.MulPow2(k);
  if (!sx.is_integer() || !sy.is_integer()) {
    throw std::invalid_argument("square corner off the dyadic grid");
  }
  return {k, sx.mantissa(), sy.mantissa()};
}

Json ToJson(const LinearFn& f) {
  return Json{{"slope", ToJson(f.slope)}, {"intercept", ToJson(f.intercept)}};
}

LinearFn LinearFnFromJson(const Json& j) {
  return {DyadicFromJson(Field(j, "slope")), DyadicFromJson(Field(j, "intercept"))};
}

Json ToJson(const Trapezoid& t) {
  return Json{{"x_lo", ToJson(t.x_lo)},
              {"x_hi", ToJson(t.x_hi)},
              {"lower", ToJson(t.lower)},
              {"upper", ToJson(t.upper)}};
}

Trapezoid TrapezoidFromJson(const Json& j) {
  return {DyadicFromJson(Field(j, "x_lo")), DyadicFromJson(Field(j, "x_hi")),
          LinearFnFromJson(Field(j, "lower")), LinearFnFromJson(Field(j, "upper"))};
}

Json ToJson(const Line& l) {
  Json digits = Json::array();
  for (std::uint8_t d : l.digits) digits.push_back(static_cast<int>(d));
  return Json{{"alpha", ToJson(l.alpha)}, {"beta", ToJson(l.beta)}, {"digits", digits}};
}

Line LineFromJson(const Json& j) {
  Line l{DyadicFromJson(Field(j, "alpha")), DyadicFromJson(Field(j, "beta")), {}};
  if (j.contains("digits")) {
    for (const Json& d : j.at("digits")) {
      int v = d.get<int>();
      if (v != 0 && v != 1) throw std::invalid_argument("digits must be 0 or 1");
      l.digits.push_back(static_cast<std::uint8_t>(v));
    }
  }
  return l;
}

Json ToJson(const Band& b) {
  Json par = Json::array();
  for (const Parallelogram& p : b.parallelograms) {
    par.push_back(Json{{"slope", ToJson(p.slope)},
                       {"top_left", ToJson(p.top_left)},
                       {"width", ToJson(p.width)}});
  }
  Json notches = Json::array();
  for (const Notch& n : b.notches) {
    notches.push_back(Json{{"apex_x", ToJson(n.apex_x)},
                           {"lower", ToJson(n.lower)},
                           {"upper", ToJson(n.upper)},
                           {"right_side", ToJson(n.right_side)}});
  }
  return Json{{"j", b.j},
              {"r", ToJson(b.r)},
              {"x_lo", ToJson(b.x_lo)},
              {"x_hi", ToJson(b.x_hi)},
              {"parallelograms", par},
              {"notches", notches}};
}

Json ToJson(const SliceSet& s) {
  Json comps = Array(s.components, [](const DyadicInterval& i) { return ToJson(i); });
  Json gaps = Array(s.Gaps(), [](const Dyadic& d) { return ToJson(d); });
  return Json{{"x", ToJson(s.x)},
              {"components", comps},
              {"gaps", gaps},
              {"length", ToJson(s.Length())}};
}

Json ToJson(const KakeyaSet& k) {
  Json bands = Json::array();
  for (int j = k.first_band(); j <= k.last_band(); ++j) bands.push_back(ToJson(ComputeBand(k, j)));
  return Json{{"m", k.m()},
              {"M", k.M()},
              {"restricted", k.restricted()},
              {"delta", ToJson(k.delta())},
              {"x_min", ToJson(k.x_min())},
              {"x_max", ToJson(k.x_max())},
              {"area", ToJson(Area(k))},
              {"lines", Array(k.lines(), [](const Line& l) { return ToJson(l); })},
              {"bands", bands},
              {"pieces", Array(k.pieces().pieces(), [](const Trapezoid& t) { return ToJson(t); })}};
}

Json ToJson(const CoverResult& r) {
  Json scales = Json::array();
  for (const ScaleSummary& s : r.per_scale) {
    scales.push_back(Json{{"k", s.k},
                          {"count", s.count},
                          {"h", ToJson(s.h)},
                          {"phi", s.phi},
                          {"contribution", s.contribution}});
  }
  Json j{{"gauge", r.gauge},
         {"k_min", r.k_min},
         {"k_max", r.k_max},
         {"exact", r.exact},
         {"depth_reached", r.depth_reached},
         {"nodes", r.nodes},
         {"total", r.total},
         {"lower_bound", r.lower_bound}};
  if (r.exact_total) {
    j["exact_total"] = ToJson(*r.exact_total);
    j["exact_total_rational"] = r.exact_total->ToString();
  }
  if (r.exact_lower_bound) j["exact_lower_bound"] = ToJson(*r.exact_lower_bound);
  j["per_scale"] = scales;
  j["squares"] = Array(r.squares, [](const DyadicSquare& q) { return ToJson(q); });
  return j;
}

Json BesicovitchExport(const SequenceSpec& spec, int n) {
  Json levels = Json::array();
  for (int level = 1; level <= n; ++level) {
    FnApprox f(spec, level);
    levels.push_back(Json{{"level", level},
                          {"delta", ToJson(f.delta())},
                          {"grid_squares", CountGridSquares(f).ToString()},
                          {"minkowski_product", ToJson(MinkowskiProduct(f))}});
  }
  return Json{{"spec", spec.ToString()},
              {"level", n},
              {"lines", Array(EnumerateLines(spec, n), [](const Line& l) { return ToJson(l); })},
              {"levels", levels}};
}

std::string CoverScaleCsv(const CoverResult& r) {
  std::ostringstream s;
  s << "k,count,h,phi,contribution\n";
  for (const ScaleSummary& p : r.per_scale) {
    s << p.k << ',' << p.count << ',' << p.h.ToString() << ',' << Fmt(p.phi) << ','
      << Fmt(p.contribution) << '\n';
  }
  return s.str();
}

std::string BandCsv(const KakeyaSet& k) {
  std::ostringstream s;
  s << "j,x_lo,x_hi,r,parallelograms,left_components,left_length\n";
  for (int j = k.first_band(); j <= k.last_band(); ++j) {
    Band b = ComputeBand(k, j);
    Dyadic x = Max(b.x_lo, k.x_min());
    SliceSet sl = Slice(k, x);
    s << j << ',' << b.x_lo.ToString() << ',' << b.x_hi.ToString() << ',' << b.r.ToString() << ','
      << b.parallelograms.size() << ',' << sl.components.size() << ','
      << sl.Length().ToString() << '\n';
  }
  return s.str();
}

void WriteFile(std::string_view path, std::string_view content) {
  std::ofstream out{std::string(path), std::ios::binary};
  if (!out) throw std::runtime_error("cannot write " + std::string(path));
  out << content;
  if (!out) throw std::runtime_error("write failed: " + std::string(path));
}

std::string ReadFile(std::string_view path) {
  std::ifstream in{std::string(path), std::ios::binary};
  if (!in) throw std::runtime_error("cannot read " + std::string(path));
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace kakeya
