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

#ifndef KAKEYA_SVG_H_
#define KAKEYA_SVG_H_

#include <string>
#include <string_view>
#include <vector>

#include "kakeya/besicovitch.h"
#include "kakeya/dyadic.h"
#include "kakeya/kakeya.h"
#include "kakeya/region.h"

namespace kakeya {

enum class RenderStyle {
  kTriangles,  // the thin triangles below each line
  kPieces,     // the interior-disjoint band pieces, shaded by band
  kLines,      // the lines only
};

// "triangles", "pieces", "lines".
RenderStyle ParseRenderStyle(std::string_view name);

// Deterministic SVG: fixed number formatting and element order.
std::string RenderKakeya(const KakeyaSet& k, RenderStyle style);
// Tubes of the level-n family, or their lines for kLines.
std::string RenderFn(const FnApprox& f, RenderStyle style);
// Polygons plus optional square outlines.
std::string RenderPieces(const PieceSet& pieces, const std::vector<DyadicSquare>& squares = {});

}  // namespace kakeya

#endif  // KAKEYA_SVG_H_
