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

#include <map>
#include <vector>

#include "isoising/periodic_graph.hpp"
#include "isoising/types.hpp"

namespace isoising {

/// One translation block entry: row, column, and the exponent of z^x w^y.
struct SymbolTerm {
  int row = 0;
  int col = 0;
  Cell exponent;
  Complex value;
};

/// Matrix-valued Laurent polynomial sum_{(x,y)} A(x,y) z^x w^y.
class TorusSymbol {
 public:
  TorusSymbol() = default;
  TorusSymbol(int size, std::vector<SymbolTerm> terms);
  TorusSymbol(int rows, int cols, std::vector<SymbolTerm> terms);

  int size() const { return size_; }
  int rows() const { return size_; }
  int cols() const { return cols_; }
  const std::vector<SymbolTerm>& terms() const { return terms_; }
  /// Largest |x| and |y| among exponents.
  Cell bounds() const { return bounds_; }

  MatrixXc operator()(Complex z, Complex w) const;

 private:
  int size_ = 0;
  int cols_ = 0;
  std::vector<SymbolTerm> terms_;
  Cell bounds_;
};

/// Symbol of the skew operator with entries +-weights[e] on a periodic graph.
/// An entry between row u (cell 0) and column v (cell d) carries z^{-dx} w^{-dy}.
TorusSymbol skew_symbol(const PeriodicGraph& g, const std::vector<char>& forward,
                        const std::vector<double>& weights);

class LaurentPoly2 {
 public:
  LaurentPoly2() = default;
  explicit LaurentPoly2(std::map<Cell, Complex> coefficients);

  const std::map<Cell, Complex>& coefficients() const { return coeffs_; }
  Complex coefficient(Cell c) const;
  bool is_zero() const { return coeffs_.empty(); }
  double max_abs() const;
  double l1_norm() const;

  Complex operator()(Complex z, Complex w) const;

  /// Drops coefficients below relative * max_abs().
  void prune(double relative);
  /// Scales by a unit complex so the largest coefficient is positive real.
  LaurentPoly2 phase_normalized() const;

  LaurentPoly2 operator*(Complex s) const;

 private:
  std::map<Cell, Complex> coeffs_;
};

/// det S(z, w) recovered by DFT interpolation on roots of unity.
/// Throws InterpolationResidual if the round trip is off by more than 1e-8.
LaurentPoly2 characteristic_polynomial(const TorusSymbol& s);

struct NewtonPolygon {
  std::vector<Cell> vertices;  // counter-clockwise, no collinear points

  bool contains(Cell c) const;
  std::vector<Cell> lattice_points() const;
  friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) = default;
};

NewtonPolygon newton_polygon(const LaurentPoly2& p);

struct ZeroReport {
  Complex value;
  Complex grad_z;  // z dP/dz at (1,1)
  Complex grad_w;
  // Quadratic form in the chart z = e^{i pi x}, w = e^{i pi y}.
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  bool definite = false;
};

ZeroReport zero_at_one_one(const LaurentPoly2& p);

struct TorusScan {
  int m = 0;
  int argmin_j = 0;
  int argmin_k = 0;
  double minimum = 0.0;
  double margin = 0.0;  // min of |P| away from the cells adjacent to (1,1)
  bool adjacent_to_one() const;
};

/// |P| on the grid z = e^{2 pi i j/m}, w = e^{2 pi i k/m}.
TorusScan scan_torus(const LaurentPoly2& p, int m = 200);

struct FreeEnergy {
  double value = 0.0;
  double error = 0.0;
  std::vector<int> resolutions;
  std::vector<double> sums;
  std::vector<double> extrapolated;
};

/// -1/2 mean of log|P| over the torus: Riemann sums on the grid shifted by
/// half a step in z, then Richardson extrapolation in h^2.
/// Throws NonConvergent if successive differences do not shrink.
FreeEnergy free_energy(const LaurentPoly2& p, std::vector<int> ladder = {64, 128, 256});

/// Mean of log|P| on the shifted grid of size m.
double shifted_log_mean(const LaurentPoly2& p, int m);

struct AmoebaPoint {
  double log_abs_z;
  double log_abs_w;
};

/// Samples of the zero set: for z on circles |z| = e^s, s in [-radius, radius],
/// solves P(z, .) = 0 in w.
std::vector<AmoebaPoint> amoeba_samples(const LaurentPoly2& p, int samples, double radius = 3.0,
                                        unsigned seed = 1);

}  // namespace isoising
