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

#ifndef PETRIGAME_ERROR_H_
#define PETRIGAME_ERROR_H_

#include <stdexcept>
#include <string>

namespace petrigame {

// Base of every error the library reports. Rejections that are part of a
// protocol (late or illegal submissions) are values, not exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PETRIGAME_DEFINE_ERROR(Name)      \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

PETRIGAME_DEFINE_ERROR(NotEnabled);
PETRIGAME_DEFINE_ERROR(UnknownPlayer);
PETRIGAME_DEFINE_ERROR(BudgetExceeded);
PETRIGAME_DEFINE_ERROR(ImperfectInformation);
PETRIGAME_DEFINE_ERROR(NotTwoPlayer);
PETRIGAME_DEFINE_ERROR(NotConstantSum);
PETRIGAME_DEFINE_ERROR(InvalidDescription);
PETRIGAME_DEFINE_ERROR(CorruptLog);
PETRIGAME_DEFINE_ERROR(VersionMismatch);

#undef PETRIGAME_DEFINE_ERROR

}  // namespace petrigame

#endif  // PETRIGAME_ERROR_H_
