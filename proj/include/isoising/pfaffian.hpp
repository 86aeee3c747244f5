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

#include <cmath>
#include <complex>
#include <utility>

#include "isoising/errors.hpp"
#include "isoising/types.hpp"

namespace isoising {

/// Pfaffian stored as phase * exp(log_abs); phase is 0 for a singular matrix.
template <typename Scalar>
struct LogPfaffian {
  Scalar phase = Scalar(1);
  double log_abs = 0.0;

  Scalar value() const { return phase == Scalar(0) ? Scalar(0) : phase * std::exp(log_abs); }
  bool is_zero() const { return phase == Scalar(0); }
};

/// Pfaffian of a skew-symmetric matrix by elimination with pivoting.
/// Only the strict upper triangle is read.
template <typename Derived>
LogPfaffian<typename Derived::Scalar> log_pfaffian(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = input.rows();
  if (input.cols() != n) throw OddSize("pfaffian of a non-square matrix");
  if (n % 2 != 0) throw OddSize("pfaffian of odd-dimensional matrix");
  MatrixX<Scalar> a = input;
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = Scalar(0);
    for (Eigen::Index j = i + 1; j < n; ++j) a(j, i) = -a(i, j);
  }
  LogPfaffian<Scalar> pf;
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index p = k + 1;
    double best = std::abs(a(k, p));
    for (Eigen::Index i = k + 2; i < n; ++i) {
      if (std::abs(a(k, i)) > best) {
        best = std::abs(a(k, i));
        p = i;
      }
    }
    if (best == 0.0) return {Scalar(0), 0.0};
    if (p != k + 1) {
      a.row(k + 1).swap(a.row(p));
      a.col(k + 1).swap(a.col(p));
      pf.phase = -pf.phase;
    }
    const Scalar pivot = a(k, k + 1);
    pf.phase *= pivot / std::abs(pivot);
    pf.log_abs += std::log(std::abs(pivot));
    const Eigen::Index m = n - k - 2;
    if (m == 0) break;
    VectorX<Scalar> t = a.row(k).tail(m).transpose() / pivot;
    VectorX<Scalar> v = a.row(k + 1).tail(m).transpose();
    a.bottomRightCorner(m, m) += v * t.transpose() - t * v.transpose();
  }
  return pf;
}

template <typename Derived>
typename Derived::Scalar pfaffian(const Eigen::MatrixBase<Derived>& a) {
  return log_pfaffian(a).value();
}

}  // namespace isoising
