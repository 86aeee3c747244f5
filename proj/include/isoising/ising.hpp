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

#include <utility>
#include <vector>

#include "isoising/isoradial.hpp"
#include "isoising/types.hpp"

namespace isoising {

/// Complete elliptic integral of the first kind, modulus k in [0, 1).
double complete_elliptic_K(double k);

/// Jacobi sn(u|k) and cn(u|k) by descending AGM.
std::pair<double, double> jacobi_sn_cn(double u, double k);

/// Z-invariant coupling for half-angle theta; k = 0 is the critical point.
double coupling(double theta, double k = 0.0);

/// k* = ik / sqrt(1 - k^2); purely imaginary for real k.
Complex dual_parameter(double k);

struct CouplingAssignment {
  double k = 0.0;
  std::vector<double> J;  // per edge of G_1
};

CouplingAssignment couplings(const PeriodicIsoradialGraph& g, double k = 0.0);

}  // namespace isoising
