// Copyright 2026 The petrigame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Random game descriptions and parametric families.

#ifndef PETRIGAME_GEN_H_
#define PETRIGAME_GEN_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "petrigame/gdl.h"

namespace petrigame {

struct GenParams {
  std::size_t players = 2;
  std::size_t places = 4;
  std::size_t transitions = 4;
  std::uint32_t horizon = 3;
  std::uint32_t max_bound = 2;
  std::size_t chance_groups = 0;
  std::uint64_t seed = 1;

  // Players move in turns and every place is visible to everybody.
  bool perfect_information = false;
  // Payoffs sum to zero at every marking.
  bool constant_sum = false;
  // The description must unfold within this many nodes.
  std::uint64_t node_budget = 10'000;
};

// Throws std::invalid_argument for out-of-range counts.
void CheckGenParams(const GenParams& params);

// Deterministic in `params`. The result validates without diagnostics,
// unfolds within params.node_budget, has at least one decision node and at
// least one leaf where the terminal predicate holds. Throws Error if no attempt succeeds.
GameDescription Generate(const GenParams& params);

// Two-player Nim; the player who takes the last token wins (+1/-1).
GameDescription NimDescription(const std::vector<TokenCount>& heaps);

}  // namespace petrigame

#endif  // PETRIGAME_GEN_H_
