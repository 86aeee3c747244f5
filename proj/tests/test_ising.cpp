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

#include <cmath>
#include <functional>

#include <gtest/gtest.h>

#include "isoising/errors.hpp"
#include "isoising/ising.hpp"

using namespace isoising;

namespace {

// Composite 5-point Gauss-Legendre, independent of the AGM code paths.
double integrate(const std::function<double(double)>& f, double a, double b) {
  static const double x[5] = {0.0, 0.5384693101056831, -0.5384693101056831,
                              0.9061798459386640, -0.9061798459386640};
  static const double w[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                              0.2369268850561891, 0.2369268850561891};
  const int panels = 4000;
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    double mid = a + (p + 0.5) * h;
    for (int i = 0; i < 5; ++i) sum += w[i] * f(mid + 0.5 * h * x[i]);
  }
  return 0.5 * h * sum;
}

double incomplete_F(double phi, double k) {
  return integrate([k](double t) { return 1.0 / std::sqrt(1 - k * k * std::sin(t) * std::sin(t)); },
                   0.0, phi);
}

}  // namespace

TEST(Elliptic, CompleteIntegral) {
  EXPECT_DOUBLE_EQ(complete_elliptic_K(0.0), kPi / 2);
  for (double k : {0.1, 0.5, 0.8, 0.99}) {
    EXPECT_GE(complete_elliptic_K(k), kPi / 2);
    EXPECT_NEAR(complete_elliptic_K(k), incomplete_F(kPi / 2, k), 1e-10 * complete_elliptic_K(k));
  }
  EXPECT_THROW(complete_elliptic_K(1.0), DomainError);
  EXPECT_THROW(complete_elliptic_K(-0.1), DomainError);
}

TEST(Elliptic, SnCn) {
  for (double u : {-2.0, 0.0, 0.3, 1.7, 5.0}) {
    auto [s, c] = jacobi_sn_cn(u, 0.0);
    EXPECT_DOUBLE_EQ(s, std::sin(u));
    EXPECT_DOUBLE_EQ(c, std::cos(u));
  }
  for (double k : {0.2, 0.6, 0.95}) {
    auto [s0, c0] = jacobi_sn_cn(0.0, k);
    EXPECT_EQ(s0, 0.0);
    EXPECT_EQ(c0, 1.0);
    EXPECT_NEAR(jacobi_sn_cn(complete_elliptic_K(k), k).first, 1.0, 1e-10);
    for (double phi : {0.2, 0.7, 1.3}) {
      auto [s, c] = jacobi_sn_cn(incomplete_F(phi, k), k);
      EXPECT_NEAR(s, std::sin(phi), 1e-10);
      EXPECT_NEAR(c, std::cos(phi), 1e-10);
      EXPECT_NEAR(s * s + c * c, 1.0, 1e-12);
    }
  }
  EXPECT_THROW(jacobi_sn_cn(0.5, 1.2), DomainError);
}

TEST(Coupling, CriticalValues) {
  EXPECT_NEAR(coupling(kPi / 4), std::log(std::sqrt(1 + std::sqrt(2.0))), 1e-12);
  EXPECT_NEAR(coupling(kPi / 3), std::log(std::sqrt(2 + std::sqrt(3.0))), 1e-12);
  EXPECT_NEAR(coupling(kPi / 6), 0.25 * std::log(3.0), 1e-12);
  EXPECT_THROW(coupling(0.0), DomainError);
  EXPECT_THROW(coupling(kPi / 2), DomainError);
}

TEST(Coupling, GridIdentities) {
  for (int i = 1; i <= 100; ++i) {
    double theta = (kPi / 2) * i / 101.0;
    double J = coupling(theta);
    EXPECT_NEAR(std::sinh(2 * J), std::tan(theta), 1e-12 * std::max(1.0, std::tan(theta)));
    EXPECT_NEAR(1 / std::tanh(J), 1 / std::tan(theta / 2), 1e-12 / std::tan(theta / 2) * 10);
    EXPECT_NEAR(coupling(theta, 1e-300), J, 1e-12);
  }
}

TEST(Coupling, MonotoneInTheta) {
  for (double k : {0.0, 0.3, 0.7}) {
    double prev = -1;
    for (int i = 1; i <= 100; ++i) {
      double J = coupling((kPi / 2) * i / 101.0, k);
      EXPECT_GT(J, 0.0);
      EXPECT_GT(J, prev);
      prev = J;
    }
  }
}

TEST(Coupling, DualParameter) {
  EXPECT_EQ(dual_parameter(0.0), Complex(0.0, 0.0));
  Complex ks = dual_parameter(0.6);
  EXPECT_NEAR((ks * ks).real(), -0.5625, 1e-15);
  EXPECT_NEAR((ks * ks).imag(), 0.0, 1e-15);
  for (double k : {0.1, 0.5, 0.9})
    EXPECT_NEAR((dual_parameter(k) * dual_parameter(k)).real(), -k * k / (1 - k * k), 1e-12);
}
