// Copyright 2026 The ncmarkov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>

namespace ncm {

// Every numerical threshold used by the library lives here.
struct Tolerances {
  // Model axioms: unitarity, vacuum condition, vacuum norms.
  double validation = 1e-8;
  // Relative singular-value threshold for numerical rank.
  double rank = 1e-9;
  // Verdict thresholds (observable, stable); looser than arithmetic.
  double verdict = 1e-6;
  // Above this Gramian defect a system is confidently non-observable.
  double verdict_reject = 1e-4;
  // A stability radius estimate above 1 - this is confidently unstable.
  double unstable_margin = 1e-9;
  // Stopping rule for the monotone Stein / fixed-point iterations.
  double iteration = 1e-13;
  std::size_t max_iterations = 200000;
  // Largest power 2^m used by the repeated-squaring radius estimate.
  int radius_power = 64;
  // Gramian vs. compression of the fixed point.
  double gramian_fixed_point = 1e-6;
  // Slack on the inner-defect tail bound.
  double tail_bound = 1e-9;
};

inline constexpr std::size_t kMaxWords = 100'000'000;
inline constexpr std::size_t kMaxAmplitudes = 10'000'000;
inline constexpr std::size_t kMaxToeplitzDim = 8192;

}  // namespace ncm
