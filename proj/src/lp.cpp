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

#include "petrigame/lp.h"

#include <limits>
#include <stdexcept>

namespace petrigame {

std::size_t LinearProgram::AddVariable(bool is_free) {
  objective.emplace_back(0);
  free.push_back(is_free);
  return num_vars++;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : cols_(cols), t_(rows, std::vector<Rational>(cols + 1)),
        obj_(cols + 1), basis_(rows, kNone), allowed_(cols, true) {}

  Rational& at(std::size_t i, std::size_t j) { return t_[i][j]; }
  Rational& rhs(std::size_t i) { return t_[i][cols_]; }
  std::vector<Rational>& obj() { return obj_; }
  std::size_t rows() const { return t_.size(); }
  std::size_t cols() const { return cols_; }
  std::size_t& basis(std::size_t i) { return basis_[i]; }
  void Forbid(std::size_t j) { allowed_[j] = false; }

  void Pivot(std::size_t r, std::size_t e) {
    std::vector<Rational>& pr = t_[r];
    const Rational inv = 1 / pr[e];
    nonzero_.clear();
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (sgn(pr[j]) != 0) {
        pr[j] *= inv;
        nonzero_.push_back(j);
      }
    }
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i != r) Eliminate(t_[i], pr, e);
    }
    Eliminate(obj_, pr, e);
    basis_[r] = e;
    ++pivots_;
  }

  // Adds `factor` times row r to the objective row.
  void AddRowToObjective(std::size_t r, const Rational& factor) {
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (sgn(t_[r][j]) != 0) obj_[j] += factor * t_[r][j];
    }
  }

  // Maximizes with the current objective row; false when unbounded.
  bool Optimize() {
    while (true) {
      std::size_t e = kNone;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (allowed_[j] && sgn(obj_[j]) < 0) {
          e = j;
          break;
        }
      }
      if (e == kNone) return true;
      std::size_t r = kNone;
      Rational best;
      for (std::size_t i = 0; i < t_.size(); ++i) {
        if (sgn(t_[i][e]) <= 0) continue;
        Rational ratio = t_[i][cols_] / t_[i][e];
        if (r == kNone || ratio < best ||
            (ratio == best && basis_[i] < basis_[r])) {
          r = i;
          best = std::move(ratio);
        }
      }
      if (r == kNone) return false;
      Pivot(r, e);
    }
  }

  void RemoveRow(std::size_t i) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
  }

  std::size_t pivots() const { return pivots_; }

 private:
  void Eliminate(std::vector<Rational>& row, const std::vector<Rational>& pr,
                 std::size_t e) {
    if (sgn(row[e]) == 0) return;
    const Rational f = row[e];
    for (std::size_t j : nonzero_) {
      mpq_mul(scratch_.get_mpq_t(), f.get_mpq_t(), pr[j].get_mpq_t());
      mpq_sub(row[j].get_mpq_t(), row[j].get_mpq_t(), scratch_.get_mpq_t());
    }
  }

  std::size_t cols_;
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> obj_;
  std::vector<std::size_t> basis_;
  std::vector<bool> allowed_;
  std::vector<std::size_t> nonzero_;
  Rational scratch_;
  std::size_t pivots_ = 0;
};

}  // namespace

LpSolution SolveExact(const LinearProgram& lp) {
  if (lp.objective.size() != lp.num_vars || lp.free.size() != lp.num_vars) {
    throw std::invalid_argument("linear program sizes disagree");
  }
  // Structural columns: one per variable, plus a negative part for free ones.
  std::vector<std::size_t> positive(lp.num_vars), negative(lp.num_vars, kNone);
  std::size_t cols = 0;
  for (std::size_t v = 0; v < lp.num_vars; ++v) {
    positive[v] = cols++;
    if (lp.free[v]) negative[v] = cols++;
  }
  std::vector<int> row_sign(lp.rows.size(), 1);
  std::vector<std::size_t> slack(lp.rows.size(), kNone);
  std::vector<std::size_t> artificial(lp.rows.size(), kNone);
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const auto& row = lp.rows[i];
    auto sense = row.sense;
    if (sgn(row.rhs) < 0) {
      row_sign[i] = -1;
      if (sense == LinearProgram::Sense::kLessEqual) {
        sense = LinearProgram::Sense::kGreaterEqual;
      } else if (sense == LinearProgram::Sense::kGreaterEqual) {
        sense = LinearProgram::Sense::kLessEqual;
      }
    }
    if (sense != LinearProgram::Sense::kEqual) slack[i] = cols++;
    if (sense != LinearProgram::Sense::kLessEqual) artificial[i] = cols++;
  }

  Tableau tab(lp.rows.size(), cols);
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const auto& row = lp.rows[i];
    for (const auto& [v, coeff] : row.terms) {
      if (v >= lp.num_vars) throw std::invalid_argument("unknown LP variable");
      tab.at(i, positive[v]) += row_sign[i] * coeff;
      if (negative[v] != kNone) tab.at(i, negative[v]) -= row_sign[i] * coeff;
    }
    tab.rhs(i) = row_sign[i] * row.rhs;
    const bool surplus = artificial[i] != kNone && slack[i] != kNone;
    if (slack[i] != kNone) tab.at(i, slack[i]) = surplus ? -1 : 1;
    if (artificial[i] != kNone) {
      tab.at(i, artificial[i]) = 1;
      tab.basis(i) = artificial[i];
    } else {
      tab.basis(i) = slack[i];
    }
  }

  LpSolution solution;
  // Phase 1: maximize minus the sum of artificials.
  bool any_artificial = false;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    if (artificial[i] == kNone) continue;
    any_artificial = true;
    tab.obj()[artificial[i]] = 1;
  }
  if (any_artificial) {
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
      if (artificial[i] != kNone) tab.AddRowToObjective(i, -1);
    }
    tab.Optimize();
    if (sgn(tab.obj()[tab.cols()]) != 0) {
      solution.status = LpSolution::Status::kInfeasible;
      solution.pivots = tab.pivots();
      return solution;
    }
    std::vector<bool> is_artificial(cols, false);
    for (std::size_t a : artificial) {
      if (a != kNone) is_artificial[a] = true;
    }
    for (std::size_t i = tab.rows(); i-- > 0;) {
      if (!is_artificial[tab.basis(i)]) continue;
      std::size_t e = kNone;
      for (std::size_t j = 0; j < cols; ++j) {
        if (!is_artificial[j] && sgn(tab.at(i, j)) != 0) {
          e = j;
          break;
        }
      }
      if (e == kNone) {
        tab.RemoveRow(i);  // redundant constraint
      } else {
        tab.Pivot(i, e);
      }
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (is_artificial[j]) tab.Forbid(j);
    }
  }

  // Phase 2.
  for (auto& x : tab.obj()) x = 0;
  for (std::size_t v = 0; v < lp.num_vars; ++v) {
    tab.obj()[positive[v]] = -lp.objective[v];
    if (negative[v] != kNone) tab.obj()[negative[v]] = lp.objective[v];
  }
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    const Rational c = tab.obj()[tab.basis(i)];
    if (sgn(c) != 0) tab.AddRowToObjective(i, -c);
  }
  if (!tab.Optimize()) {
    solution.status = LpSolution::Status::kUnbounded;
    solution.pivots = tab.pivots();
    return solution;
  }

  std::vector<Rational> column_value(cols);
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    column_value[tab.basis(i)] = tab.rhs(i);
  }
  solution.status = LpSolution::Status::kOptimal;
  solution.objective = tab.obj()[tab.cols()];
  solution.values.resize(lp.num_vars);
  for (std::size_t v = 0; v < lp.num_vars; ++v) {
    solution.values[v] = column_value[positive[v]];
    if (negative[v] != kNone) solution.values[v] -= column_value[negative[v]];
  }
  solution.pivots = tab.pivots();
  return solution;
}

}  // namespace petrigame
