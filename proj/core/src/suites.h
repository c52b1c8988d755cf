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

#ifndef KAKEYA_SRC_SUITES_H_
#define KAKEYA_SRC_SUITES_H_

#include "kakeya/harness.h"

namespace kakeya::suites {

void Prop31(const ExperimentConfig& cfg, VerdictReport& r);
void Prop32(const ExperimentConfig& cfg, VerdictReport& r);
void Slices(const ExperimentConfig& cfg, VerdictReport& r);
void AreaSuite(const ExperimentConfig& cfg, VerdictReport& r);
void Prop33(const ExperimentConfig& cfg, VerdictReport& r);
void Prop34(const ExperimentConfig& cfg, VerdictReport& r);
void AdaptiveSum(const ExperimentConfig& cfg, VerdictReport& r);
void Prop41(const ExperimentConfig& cfg, VerdictReport& r);
void Lemma51(const ExperimentConfig& cfg, VerdictReport& r);
void Lemma5253Surrogate(const ExperimentConfig& cfg, VerdictReport& r);
void Thm61(const ExperimentConfig& cfg, VerdictReport& r);

}  // namespace kakeya::suites

#endif  // KAKEYA_SRC_SUITES_H_
