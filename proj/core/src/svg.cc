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

#include "kakeya/svg.h"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace kakeya {

namespace {

constexpr double kWidth = 800.0;
constexpr double kMargin = 20.0;

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// Maps the box [x0, x1] x [y0, y1] onto the canvas, y pointing up.
class Canvas {
 public:
  Canvas(double x0, double x1, double y0, double y1) : x0_(x0), y1_(y1) {
    double w = std::max(x1 - x0, 1e-12), h = std::max(y1 - y0, 1e-12);
    scale_ = (kWidth - 2 * kMargin) / std::max(w, h);
    width_ = w * scale_ + 2 * kMargin;
    height_ = h * scale_ + 2 * kMargin;
  }

  double X(double x) const { return kMargin + (x - x0_) * scale_; }
  double Y(double y) const { return kMargin + (y1_ - y) * scale_; }

  void Polygon(const std::vector<Point>& pts, const char* fill, double opacity) {
    if (pts.size() < 2) return;
    out_ += "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out_ += ' ';
      out_ += Num(X(pts[i].x.ToDouble())) + "," + Num(Y(pts[i].y.ToDouble()));
    }
    out_ += "\" fill=\"" + std::string(fill) + "\" fill-opacity=\"" + Num(opacity) +
            "\" stroke=\"#000\" stroke-width=\"0.2\"/>\n";
  }

  void Segment(double xa, double ya, double xb, double yb, const char* color) {
    out_ += "<line x1=\"" + Num(X(xa)) + "\" y1=\"" + Num(Y(ya)) + "\" x2=\"" + Num(X(xb)) +
            "\" y2=\"" + Num(Y(yb)) + "\" stroke=\"" + color + "\" stroke-width=\"0.5\"/>\n";
  }

  void Rect(const Box& b) {
    double x = X(b.x0.ToDouble()), y = Y(b.y1.ToDouble());
    double w = (b.x1 - b.x0).ToDouble() * scale_, h = (b.y1 - b.y0).ToDouble() * scale_;
    out_ += "<rect x=\"" + Num(x) + "\" y=\"" + Num(y) + "\" width=\"" + Num(w) + "\" height=\"" +
            Num(h) + "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"0.3\"/>\n";
  }

  std::string Finish() const {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           Num(width_) + "\" height=\"" + Num(height_) + "\" viewBox=\"0 0 " + Num(width_) + " " +
           Num(height_) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n" + out_ +
           "</svg>\n";
  }

 private:
  double x0_, y1_;
  double scale_, width_, height_;
  std::string out_;
};

Box Union(const std::vector<Trapezoid>& ts) {
  Box b = ts.front().Bounds();
  for (const Trapezoid& t : ts) {
    Box c = t.Bounds();
    b = {Min(b.x0, c.x0), Max(b.x1, c.x1), Min(b.y0, c.y0), Max(b.y1, c.y1)};
  }
  return b;
}

Canvas CanvasFor(const Box& b) {
  return Canvas(b.x0.ToDouble(), b.x1.ToDouble(), b.y0.ToDouble(), b.y1.ToDouble());
}

}  // namespace

RenderStyle ParseRenderStyle(std::string_view name) {
  if (name == "triangles") return RenderStyle::kTriangles;
  if (name == "pieces") return RenderStyle::kPieces;
  if (name == "lines") return RenderStyle::kLines;
  throw std::invalid_argument("unknown render style: " + std::string(name));
}

std::string RenderKakeya(const KakeyaSet& k, RenderStyle style) {
  std::vector<Trapezoid> triangles = k.Triangles().pieces();
  Canvas c = CanvasFor(Union(triangles));
  switch (style) {
    case RenderStyle::kTriangles:
      for (std::size_t i = 0; i < triangles.size(); ++i) {
        c.Polygon(triangles[i].Vertices(), kPalette[i % 8], 0.35);
      }
      break;
    case RenderStyle::kPieces: {
      for (int j = k.first_band(); j <= k.last_band(); ++j) {
        for (const Trapezoid& t : ComputeBand(k, j).Pieces()) {
          if (auto clipped = t.ClipX(k.x_min(), k.x_max())) {
            c.Polygon(clipped->Vertices(), kPalette[j % 8], 0.5);
          }
        }
      }
      break;
    }
    case RenderStyle::kLines: {
      double x0 = k.x_min().ToDouble(), x1 = k.x_max().ToDouble();
      for (const Line& l : k.lines()) {
        c.Segment(x0, l.At(k.x_min()).ToDouble(), x1, l.At(k.x_max()).ToDouble(), "#000");
      }
      break;
    }
  }
  return c.Finish();
}

std::string RenderFn(const FnApprox& f, RenderStyle style) {
  PieceSet tubes = f.Tubes();
  std::vector<Trapezoid> ts = tubes.pieces();
  Canvas c = CanvasFor(Union(ts));
  if (style == RenderStyle::kLines) {
    for (const Line& l : EnumerateLines(f.spec(), f.n())) {
      c.Segment(0.0, l.beta.ToDouble(), 1.0, (l.alpha + l.beta).ToDouble(), "#000");
    }
  } else {
    for (std::size_t i = 0; i < ts.size(); ++i) c.Polygon(ts[i].Vertices(), kPalette[i % 8], 0.4);
  }
  return c.Finish();
}

std::string RenderPieces(const PieceSet& pieces, const std::vector<DyadicSquare>& squares) {
  if (pieces.size() == 0) throw std::invalid_argument("nothing to render");
  Canvas c = CanvasFor(Union(pieces.pieces()));
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    c.Polygon(pieces[i].Vertices(), kPalette[i % 8], 0.4);
  }
  for (const DyadicSquare& q : squares) c.Rect(Box::Of(q));
  return c.Finish();
}

}  // namespace kakeya
