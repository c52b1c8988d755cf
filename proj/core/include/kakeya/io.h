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

#ifndef KAKEYA_IO_H_
#define KAKEYA_IO_H_

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "kakeya/besicovitch.h"
#include "kakeya/cover.h"
#include "kakeya/dyadic.h"
#include "kakeya/kakeya.h"
#include "kakeya/region.h"

namespace kakeya {

using Json = nlohmann::ordered_json;

// Dyadic m / 2^e as {"num": "<m>", "exp": e}. Parsing accepts any exponent
// and renormalizes; malformed input throws std::invalid_argument.
Json ToJson(const Dyadic& d);
Dyadic DyadicFromJson(const Json& j);

// {"lo": dyadic, "hi": dyadic}.
Json ToJson(const DyadicInterval& i);
DyadicInterval IntervalFromJson(const Json& j);

// {"x": dyadic, "y": dyadic, "side": dyadic} with the lower-left corner.
Json ToJson(const DyadicSquare& q);
DyadicSquare SquareFromJson(const Json& j);

Json ToJson(const LinearFn& f);
LinearFn LinearFnFromJson(const Json& j);
Json ToJson(const Trapezoid& t);
Trapezoid TrapezoidFromJson(const Json& j);
Json ToJson(const Line& l);
Line LineFromJson(const Json& j);

Json ToJson(const Band& b);
Json ToJson(const SliceSet& s);
// Parameters, lines, bands, pieces and the exact area.
Json ToJson(const KakeyaSet& k);
Json ToJson(const CoverResult& r);

// Lines of the level-n family and the per-level Minkowski products.
Json BesicovitchExport(const SequenceSpec& spec, int n);

// CSV tables.
std::string CoverScaleCsv(const CoverResult& r);
std::string BandCsv(const KakeyaSet& k);

// Writes a file; throws std::runtime_error when the path is unwritable.
void WriteFile(std::string_view path, std::string_view content);
std::string ReadFile(std::string_view path);

}  // namespace kakeya

#endif  // KAKEYA_IO_H_
