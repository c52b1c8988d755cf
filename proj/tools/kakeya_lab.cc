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

// Command line front end: construction, slices, covers and verification.

#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "kakeya/besicovitch.h"
#include "kakeya/cover.h"
#include "kakeya/gauge.h"
#include "kakeya/harness.h"
#include "kakeya/io.h"
#include "kakeya/kakeya.h"
#include "kakeya/svg.h"

namespace {

using namespace kakeya;

void Emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    WriteFile(out, text);
  }
}

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string p;
  while (std::getline(in, p, sep)) parts.push_back(p);
  return parts;
}

// "em:<m>" or "fn:<spec>".
struct Target {
  std::unique_ptr<PieceOracle> oracle;
  std::string label;
};

Target ParseTarget(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("target must be em:<m> or fn:<spec>");
  std::string kind = text.substr(0, colon), arg = text.substr(colon + 1);
  if (kind == "em") {
    KakeyaSet k = KakeyaSet::Build(std::stoi(arg));
    return {std::make_unique<PieceOracle>(k.pieces()), text};
  }
  if (kind == "fn") {
    SequenceSpec spec = SequenceSpec::Parse(arg);
    FnApprox f(spec, spec.levels());
    return {std::make_unique<PieceOracle>(f.Tubes(), false), text};
  }
  throw std::invalid_argument("unknown target kind: " + kind);
}

DyadicSquare ParseWindow(const std::string& text) {
  std::vector<std::string> p = Split(text, ',');
  if (p.size() != 3) throw std::invalid_argument("window must be x0,y0,k");
  const int k = std::stoi(p[2]);
  DyadicSquare q = SquareContaining(Dyadic::Parse(p[0]), Dyadic::Parse(p[1]), k);
  if (!(q.XLo() == Dyadic::Parse(p[0])) || !(q.YLo() == Dyadic::Parse(p[1]))) {
    throw std::invalid_argument("window corner is not on the 2^-k grid");
  }
  return q;
}

int Run(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic Kakeya and Besicovitch set laboratory"};
  app.require_subcommand(1);

  // build
  int m = 2;
  bool restricted = false;
  std::string out, svg, style = "pieces";
  auto* build = app.add_subcommand("build", "Construct E_M and export it as JSON");
  build->add_option("--m", m, "M = 2^m")->required()->check(CLI::Range(1, kMaxBuildM));
  build->add_flag("--restricted", restricted, "Keep only x in [1/2, 3/4]");
  build->add_option("--out", out, "Output file (default stdout)");
  build->add_option("--svg", svg, "Also render an SVG figure");
  build->add_option("--style", style, "triangles|pieces|lines")->capture_default_str();
  build->callback([&] {
    KakeyaSet k = KakeyaSet::Build(m, restricted);
    Emit(out, ToJson(k).dump(2));
    if (!svg.empty()) WriteFile(svg, RenderKakeya(k, ParseRenderStyle(style)));
  });

  // slice
  std::string x_text;
  auto* slice = app.add_subcommand("slice", "Vertical slice of E_M as merged intervals");
  slice->add_option("--m", m, "M = 2^m")->required()->check(CLI::Range(1, kMaxBuildM));
  slice->add_option("--x", x_text, "Dyadic abscissa")->required();
  slice->add_flag("--restricted", restricted, "Restrict to x in [1/2, 3/4]");
  slice->add_option("--out", out, "Output file");
  slice->callback([&] {
    KakeyaSet k = KakeyaSet::Build(m, restricted);
    Emit(out, ToJson(Slice(k, Dyadic::Parse(x_text))).dump(2));
  });

  // gaps
  int j = 1;
  auto* gaps = app.add_subcommand("gaps", "Gap sequence at the left edge of band j");
  gaps->add_option("--m", m, "M = 2^m")->required()->check(CLI::Range(1, kMaxBuildM));
  gaps->add_option("--j", j, "Band index in [1, M]")->required();
  gaps->add_option("--out", out, "Output file");
  gaps->callback([&] {
    const int M = 1 << m;
    if (j < 1 || j > M) throw std::invalid_argument("j must lie in [1, M]");
    KakeyaSet k = KakeyaSet::Build(m);
    SliceSet s = Slice(k, BandLeft(M, j));
    Json observed = Json::array(), recursion = Json::array();
    for (const Dyadic& g : s.Gaps()) observed.push_back(ToJson(g));
    for (const Dyadic& g : GapSequence(m, j)) recursion.push_back(ToJson(g));
    Json r{{"M", M},
           {"j", j},
           {"x", ToJson(s.x)},
           {"observed", observed},
           {"recursion", recursion},
           {"match", observed == recursion}};
    Emit(out, r.dump(2));
  });

  // besicovitch
  std::string seq = "2,2,4";
  int level = 0;
  std::string slope_text, intercept_text, lo_text = "-2", hi_text = "2";
  auto* bes = app.add_subcommand("besicovitch", "Iterated approximations F_n");
  bes->add_option("--seq", seq, "Block sizes M_1,M_2,...")->capture_default_str();
  bes->add_option("--level", level, "Level n (default: last)");
  bes->add_option("--out", out, "Output file");
  bes->require_subcommand(1);
  auto fn_level = [&] {
    SequenceSpec spec = SequenceSpec::Parse(seq);
    const int n = level > 0 ? level : spec.levels();
    if (n > spec.levels()) throw std::invalid_argument("level exceeds the spec");
    return FnApprox(spec, n);
  };
  bes->add_subcommand("lines", "Line family as JSON")->callback([&] {
    SequenceSpec spec = SequenceSpec::Parse(seq);
    Emit(out, BesicovitchExport(spec, level > 0 ? level : spec.levels()).dump(2));
  });
  auto* bslice = bes->add_subcommand("slice", "Vertical slice of F_n");
  bslice->add_option("--x", x_text, "Dyadic abscissa")->required();
  bslice->add_option("--lo", lo_text, "Window bottom")->capture_default_str();
  bslice->add_option("--hi", hi_text, "Window top")->capture_default_str();
  bslice->callback([&] {
    FnApprox f = fn_level();
    Emit(out, ToJson(f.Slice(Dyadic::Parse(x_text), {Dyadic::Parse(lo_text),
                                                       Dyadic::Parse(hi_text)}))
                  .dump(2));
  });
  bes->add_subcommand("minkowski", "Grid-square counts and Minkowski products per level")
      ->callback([&] {
        SequenceSpec spec = SequenceSpec::Parse(seq);
        Json rows = Json::array();
        for (int n = 1; n <= spec.levels(); ++n) {
          FnApprox f(spec, n);
          Dyadic p = MinkowskiProduct(f);
          rows.push_back(Json{{"level", n},
                              {"delta", ToJson(f.delta())},
                              {"squares", CountGridSquares(f).ToString()},
                              {"product", ToJson(p)},
                              {"value", p.ToDouble()}});
        }
        Emit(out, rows.dump(2));
      });
  auto* slab = bes->add_subcommand("slab", "Measure of a line's parameter set inside F_n");
  slab->add_option("--slope", slope_text, "Line slope")->required();
  slab->add_option("--intercept", intercept_text, "Line intercept")->required();
  slab->callback([&] {
    SequenceSpec spec = SequenceSpec::Parse(seq);
    Line l{Dyadic::Parse(slope_text), Dyadic::Parse(intercept_text), {}};
    Json rows = Json::array();
    const int top = level > 0 ? level : spec.levels();
    for (int n = 1; n <= top; ++n) {
      FnApprox f(spec, n);
      SlabBound b = LineSlabBound(f, l);
      rows.push_back(Json{{"level", n},
                          {"measure", LineSlabMeasure(f, l).get_str()},
                          {"gap", b.gap.get_str()},
                          {"bound", b.vacuous ? Json("vacuous") : Json(b.bound.get_str())}});
    }
    Emit(out, rows.dump(2));
  });

  // cover
  std::string target, gauge_text = "h", window_text;
  int kmin = 0, kmax = 6;
  std::uint64_t budget = 0;
  bool csv = false, parallel = false;
  auto* cover = app.add_subcommand("cover", "Optimal dyadic gauge cover");
  cover->add_option("--target", target, "em:<m> or fn:<spec>")->required();
  cover->add_option("--gauge", gauge_text, "h|h1:llog3|h1:llog2e:<eps>|h1:table:<file>")
      ->capture_default_str();
  cover->add_option("--kmin", kmin, "Coarsest scale index")->capture_default_str();
  cover->add_option("--kmax", kmax, "Finest scale index")->capture_default_str();
  cover->add_option("--window", window_text, "Restrict to the square x0,y0,k");
  cover->add_option("--node-budget", budget, "Bound the search and report certified bounds");
  cover->add_flag("--parallel", parallel, "Evaluate root squares concurrently");
  cover->add_flag("--csv", csv, "Per-scale CSV summary instead of JSON");
  cover->add_option("--out", out, "Output file");
  cover->callback([&] {
    Target t = ParseTarget(target);
    CoverOptions opts;
    opts.k_min = kmin;
    opts.k_max = kmax;
    opts.node_budget = budget;
    opts.parallel = parallel;
    if (!window_text.empty()) opts.window = {ParseWindow(window_text)};
    CoverResult r = OptimalCover(*t.oracle, Gauge::Parse(gauge_text), opts);
    Emit(out, csv ? CoverScaleCsv(r) : ToJson(r).dump(2));
  });

  // adaptive
  auto* adaptive = app.add_subcommand("adaptive", "Per-band adaptive cover of E_M");
  adaptive->add_option("--m", m, "M = 2^m")->required()->check(CLI::Range(1, 3));
  adaptive->add_flag("--restricted", restricted, "Restrict to x in [1/2, 3/4]");
  adaptive->add_option("--gauge", gauge_text, "Gauge")->capture_default_str();
  adaptive->add_flag("--csv", csv, "Per-scale CSV summary instead of JSON");
  adaptive->add_option("--out", out, "Output file");
  adaptive->callback([&] {
    AdaptiveCover a = AdaptiveCover::Build(KakeyaSet::Build(m, restricted));
    CoverResult r = a.ToCoverResult(Gauge::Parse(gauge_text));
    Emit(out, csv ? CoverScaleCsv(r) : ToJson(r).dump(2));
  });

  // verify
  std::string suite, config_path;
  std::int64_t seed = -1;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite, "Suite name or 'all'")->required();
  verify->add_option("--config", config_path, "Experiment config JSON");
  verify->add_option("--seed", seed, "Overrides the config seed");
  verify->add_option("--out", out, "Report file (default stdout)");
  verify->add_flag("--csv", csv, "CSV report instead of JSON");
  int status = 0;
  verify->callback([&] {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = ExperimentConfig::FromJson(Json::parse(ReadFile(config_path)));
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    std::vector<std::string> names = suite == "all" ? SuiteNames() : std::vector{suite};
    Json reports = Json::array();
    std::string table;
    for (const std::string& name : names) {
      VerdictReport r = VerifySuite(name, cfg);
      if (!r.passed()) status = 1;
      for (const Check& c : r.checks) {
        std::cerr << (c.passed ? "PASS " : "FAIL ") << name << '/' << c.name << ": " << c.detail
                  << '\n';
      }
      if (r.infeasible) std::cerr << "INFEASIBLE " << name << ": " << *r.infeasible << '\n';
      reports.push_back(r.ToJson());
      std::string rows = r.ToCsv();
      table += table.empty() ? rows : rows.substr(rows.find('\n') + 1);
    }
    if (csv) {
      Emit(out, table);
    } else {
      Emit(out, (names.size() == 1 ? reports[0] : reports).dump(2));
    }
  });

  // render
  auto* render = app.add_subcommand("render", "SVG figure of E_M or F_n");
  render->add_option("--target", target, "em:<m> or fn:<spec>")->required();
  render->add_option("--style", style, "triangles|pieces|lines")->capture_default_str();
  render->add_option("--out", out, "Output file")->required();
  render->callback([&] {
    auto colon = target.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("target must be em:<m> or fn:<spec>");
    std::string kind = target.substr(0, colon), arg = target.substr(colon + 1);
    if (kind == "em") {
      WriteFile(out, RenderKakeya(KakeyaSet::Build(std::stoi(arg)), ParseRenderStyle(style)));
    } else if (kind == "fn") {
      SequenceSpec spec = SequenceSpec::Parse(arg);
      WriteFile(out, RenderFn(FnApprox(spec, spec.levels()), ParseRenderStyle(style)));
    } else {
      throw std::invalid_argument("unknown target kind: " + kind);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
