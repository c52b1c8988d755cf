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

#include "kakeya/harness.h"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "kakeya/besicovitch.h"
#include "kakeya/gauge.h"
#include "suites.h"

namespace kakeya {

std::uint64_t Rng::Below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("empty range");
  // Rejection keeps draws uniform and identical across standard libraries.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

std::int64_t Rng::Between(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("empty range");
  return lo + static_cast<std::int64_t>(Below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Dyadic Rng::DyadicIn(const Dyadic& lo, const Dyadic& hi, int bits) {
  if (bits < 0 || bits > 62) throw std::invalid_argument("bits must lie in [0, 62]");
  std::uint64_t u = Below((std::uint64_t{1} << bits) + 1);
  return lo + (hi - lo) * Dyadic(Integer(u), static_cast<std::uint32_t>(bits));
}

double EtaSequence::operator()(int n) const {
  return form == Form::kGeometric ? c * std::pow(q, n) : c * std::pow(n, -p);
}

bool EtaSequence::Summable() const {
  if (!(c > 0.0)) return false;
  return form == Form::kGeometric ? (q > 0.0 && q < 1.0) : p > 1.0;
}

bool EtaSequence::Admissible(int n_max) const {
  for (int n = 1; n <= n_max; ++n) {
    double e = (*this)(n);
    if (!(e >= std::ldexp(1.0, -n)) || !(e < 1.0)) return false;
  }
  return true;
}

Json EtaSequence::ToJson() const {
  if (form == Form::kGeometric) return Json{{"form", "geometric"}, {"c", c}, {"q", q}};
  return Json{{"form", "power"}, {"c", c}, {"p", p}};
}

EtaSequence EtaSequence::FromJson(const Json& j) {
  EtaSequence e;
  std::string form = j.value("form", std::string("geometric"));
  if (form == "geometric") {
    e.form = Form::kGeometric;
  } else if (form == "power") {
    e.form = Form::kPower;
  } else {
    throw std::invalid_argument("eta form must be geometric or power");
  }
  e.c = j.value("c", 1.0);
  e.q = j.value("q", 0.5);
  e.p = j.value("p", 2.0);
  return e;
}

void ExperimentConfig::Validate() const {
  if (!spec.empty()) SequenceSpec::Parse(spec);
  Gauge::Parse("h1:" + phi);
  if (!eta.Summable()) throw std::invalid_argument("eta sequence is not summable");
  if (!eta.Admissible(8)) throw std::invalid_argument("eta_n must satisfy 2^-n <= eta_n < 1");
  if (trials < 0) throw std::invalid_argument("trials must be nonnegative");
  if (windows < 0) throw std::invalid_argument("windows must be nonnegative");
  if (n0 < 1) throw std::invalid_argument("n0 must be at least 1");
  for (int m : sizes) {
    if (m < 1 || m > 5) throw std::invalid_argument("sizes are m values in [1, 5]");
  }
}

Json ExperimentConfig::ToJson() const {
  Json j{{"spec", spec},   {"eta", eta.ToJson()}, {"phi", phi},     {"trials", trials},
         {"seed", seed},   {"sizes", sizes},      {"n0", n0},       {"windows", windows},
         {"node_budget", node_budget}};
  return j;
}

ExperimentConfig ExperimentConfig::FromJson(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  static const char* const kKeys[] = {"spec", "eta",     "phi",     "trials",     "seed",
                                      "sizes", "n0",     "windows", "node_budget"};
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : kKeys) known = known || key == k;
    if (!known) throw std::invalid_argument("unknown config key: " + key);
  }
  ExperimentConfig c;
  c.spec = j.value("spec", c.spec);
  if (j.contains("eta")) c.eta = EtaSequence::FromJson(j.at("eta"));
  c.phi = j.value("phi", c.phi);
  c.trials = j.value("trials", c.trials);
  c.seed = j.value("seed", c.seed);
  if (j.contains("sizes")) c.sizes = j.at("sizes").get<std::vector<int>>();
  c.n0 = j.value("n0", c.n0);
  c.windows = j.value("windows", c.windows);
  c.node_budget = j.value("node_budget", c.node_budget);
  c.Validate();
  return c;
}

bool VerdictReport::passed() const {
  if (infeasible) return false;
  for (const Check& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

const Check* VerdictReport::Find(std::string_view name) const {
  for (const Check& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

Json VerdictReport::ToJson() const {
  Json cs = Json::array();
  for (const Check& c : checks) {
    cs.push_back(Json{{"name", c.name},
                      {"status", c.passed ? "pass" : "fail"},
                      {"detail", c.detail},
                      {"measured", c.measured},
                      {"witness", c.witness}});
  }
  Json j{{"suite", suite}, {"status", passed() ? "pass" : "fail"}, {"config", config}};
  if (infeasible) j["infeasible"] = *infeasible;
  j["checks"] = cs;
  j["notes"] = notes;
  return j;
}

std::string VerdictReport::ToCsv() const {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  std::ostringstream s;
  s << "suite,check,status,detail\n";
  if (infeasible) s << suite << ",config,infeasible," << quote(*infeasible) << '\n';
  for (const Check& c : checks) {
    s << suite << ',' << c.name << ',' << (c.passed ? "pass" : "fail") << ',' << quote(c.detail)
      << '\n';
  }
  return s.str();
}

namespace {

using SuiteFn = void (*)(const ExperimentConfig&, VerdictReport&);

struct SuiteEntry {
  const char* name;
  SuiteFn fn;
};

constexpr SuiteEntry kSuites[] = {
    {"prop31", suites::Prop31},
    {"prop32", suites::Prop32},
    {"slices", suites::Slices},
    {"area", suites::AreaSuite},
    {"prop33", suites::Prop33},
    {"prop34", suites::Prop34},
    {"adaptive_sum", suites::AdaptiveSum},
    {"prop41", suites::Prop41},
    {"lemma51", suites::Lemma51},
    {"lemma52_53_surrogate", suites::Lemma5253Surrogate},
    {"thm61", suites::Thm61},
};

}  // namespace

std::vector<std::string> SuiteNames() {
  std::vector<std::string> out;
  for (const SuiteEntry& e : kSuites) out.emplace_back(e.name);
  return out;
}

VerdictReport VerifySuite(std::string_view name, const ExperimentConfig& config) {
  config.Validate();
  for (const SuiteEntry& e : kSuites) {
    if (name != e.name) continue;
    VerdictReport r;
    r.suite = e.name;
    r.config = config.ToJson();
    e.fn(config, r);
    return r;
  }
  throw std::invalid_argument("unknown suite: " + std::string(name));
}

}  // namespace kakeya
