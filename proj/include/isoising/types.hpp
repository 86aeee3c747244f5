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

#include <compare>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace isoising {

using Complex = std::complex<double>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXd = MatrixX<double>;
using MatrixXc = MatrixX<Complex>;
using VectorXc = VectorX<Complex>;
using Vec2 = Eigen::Vector2d;

inline constexpr double kPi = std::numbers::pi;

/// Integer translation of the fundamental domain, i.e. an element of Z^2.
struct Cell {
  int x = 0;
  int y = 0;

  friend constexpr Cell operator+(Cell a, Cell b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Cell operator-(Cell a, Cell b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Cell operator-(Cell a) { return {-a.x, -a.y}; }
  friend constexpr Cell operator*(int k, Cell a) { return {k * a.x, k * a.y}; }
  friend constexpr bool operator==(Cell, Cell) = default;
  friend constexpr auto operator<=>(Cell, Cell) = default;
};

inline constexpr int floor_div(int a, int n) {
  int q = a / n;
  if ((a % n != 0) && ((a < 0) != (n < 0))) --q;
  return q;
}

inline constexpr int mod(int a, int n) { return a - n * floor_div(a, n); }

/// z^a w^b for integer exponents.
inline Complex monomial(Complex z, Complex w, Cell exponent) {
  return std::pow(z, exponent.x) * std::pow(w, exponent.y);
}

}  // namespace isoising
