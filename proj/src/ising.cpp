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

#include "isoising/ising.hpp"

#include <cmath>

#include "isoising/errors.hpp"

namespace isoising {
namespace {

void check_modulus(double k) {
  if (!(k >= 0.0 && k < 1.0)) throw DomainError("elliptic modulus must lie in [0, 1)");
}

void check_angle(double theta) {
  if (!(theta > 0.0 && theta < kPi / 2)) throw DomainError("theta must lie in (0, pi/2)");
}

}  // namespace

double complete_elliptic_K(double k) {
  check_modulus(k);
  double a = 1.0;
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-15 * a; ++i) {
    double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return kPi / (a + b);
}

std::pair<double, double> jacobi_sn_cn(double u, double k) {
  check_modulus(k);
  if (k == 0.0) return {std::sin(u), std::cos(u)};
  constexpr int kMaxSteps = 40;
  double a[kMaxSteps + 1];
  double c[kMaxSteps + 1];
  a[0] = 1.0;
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  c[0] = k;
  int n = 0;
  while (std::abs(c[n]) > 1e-16 && n < kMaxSteps) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int i = n; i > 0; --i) phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));
  return {std::sin(phi), std::cos(phi)};
}

double coupling(double theta, double k) {
  check_angle(theta);
  check_modulus(k);
  if (k == 0.0) return 0.5 * std::log((1.0 + std::sin(theta)) / std::cos(theta));
  auto [sn, cn] = jacobi_sn_cn(2.0 * complete_elliptic_K(k) / kPi * theta, k);
  return 0.5 * std::asinh(sn / cn);
}

Complex dual_parameter(double k) {
  check_modulus(k);
  return {0.0, k / std::sqrt((1.0 - k) * (1.0 + k))};
}

CouplingAssignment couplings(const PeriodicIsoradialGraph& g, double k) {
  CouplingAssignment c;
  c.k = k;
  for (int e = 0; e < g.num_edges(); ++e) c.J.push_back(coupling(g.theta(e), k));
  return c;
}

}  // namespace isoising
