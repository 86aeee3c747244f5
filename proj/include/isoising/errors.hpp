// Copyright 2026 The isoising Authors.
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

#include <stdexcept>
#include <string>

namespace isoising {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ISOISING_DEFINE_ERROR(Name)        \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

ISOISING_DEFINE_ERROR(SchemaError);
ISOISING_DEFINE_ERROR(IsoradialityError);
ISOISING_DEFINE_ERROR(DegenerateAngle);
ISOISING_DEFINE_ERROR(DomainError);
ISOISING_DEFINE_ERROR(NotAContour);
ISOISING_DEFINE_ERROR(OrientationFailure);
ISOISING_DEFINE_ERROR(OddSize);
ISOISING_DEFINE_ERROR(NotDisjoint);
ISOISING_DEFINE_ERROR(InterpolationResidual);
ISOISING_DEFINE_ERROR(ZeroPolynomial);
ISOISING_DEFINE_ERROR(NonConvergent);
ISOISING_DEFINE_ERROR(PoleHit);
ISOISING_DEFINE_ERROR(TooLarge);
ISOISING_DEFINE_ERROR(BudgetExceeded);
ISOISING_DEFINE_ERROR(UsageError);

#undef ISOISING_DEFINE_ERROR

/// A certified identity failed its tolerance.
class IdentityViolation : public Error {
 public:
  IdentityViolation(std::string which, double residual)
      : Error("identity " + which + " violated, residual " + std::to_string(residual)),
        which_(std::move(which)),
        residual_(residual) {}

  const std::string& which() const { return which_; }
  double residual() const { return residual_; }

 private:
  std::string which_;
  double residual_;
};

}  // namespace isoising
