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

#ifndef PETRIGAME_RATIONAL_H_
#define PETRIGAME_RATIONAL_H_

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace petrigame {

// All game arithmetic (chance weights, payoffs, probabilities, LP pivots) is
// exact. Values are kept canonical (reduced, positive denominator).
using Rational = mpq_class;

// Parses "p/q", "-p/q" or an integer. Returns nullopt on malformed input or a
// zero denominator. The result is canonicalized.
std::optional<Rational> ParseRational(std::string_view text);

// Canonical "p/q" form; integers are written without a denominator.
std::string ToString(const Rational& value);

// Decimal form when the value has a terminating decimal expansion
// (denominator of the form 2^a 5^b), otherwise the "p/q" form.
std::string ToDecimalOrFraction(const Rational& value);

// Conversion for statistics and display only; never used in solver paths.
double ToDouble(const Rational& value);

std::string ToString(const std::vector<Rational>& values);

struct RationalVectorHash {
  std::size_t operator()(const std::vector<Rational>& values) const;
};

}  // namespace petrigame

#endif  // PETRIGAME_RATIONAL_H_
