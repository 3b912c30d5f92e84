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

// Exact rational linear programming: two-phase primal simplex on a dense
// tableau with Bland's anti-cycling rule.

#ifndef PETRIGAME_LP_H_
#define PETRIGAME_LP_H_

#include <cstddef>
#include <utility>
#include <vector>

#include "petrigame/rational.h"

namespace petrigame {

// maximize objective . z  subject to rows; every variable is >= 0 unless
// marked free.
struct LinearProgram {
  enum class Sense { kLessEqual, kEqual, kGreaterEqual };
  struct Row {
    std::vector<std::pair<std::size_t, Rational>> terms;
    Sense sense = Sense::kLessEqual;
    Rational rhs;
  };

  std::size_t num_vars = 0;
  std::vector<Rational> objective;
  std::vector<bool> free;
  std::vector<Row> rows;

  std::size_t AddVariable(bool is_free = false);
};

struct LpSolution {
  enum class Status { kOptimal, kInfeasible, kUnbounded };
  Status status = Status::kInfeasible;
  Rational objective;
  std::vector<Rational> values;
  std::size_t pivots = 0;
};

LpSolution SolveExact(const LinearProgram& lp);

}  // namespace petrigame

#endif  // PETRIGAME_LP_H_
