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

#include <array>
#include <string>
#include <vector>

#include "isoising/isoradial.hpp"
#include "isoising/oracle.hpp"
#include "isoising/spectral.hpp"
#include "isoising/types.hpp"

namespace isoising {

/// Critical Laplacian with conductances tan(theta_e), stored as D - A so that
/// it factors as M^dagger M.
struct LaplacianOperator {
  int size = 0;
  std::vector<PeriodicEdge> edges;
  std::vector<double> conductance;

  TorusSymbol symbol() const;
};

LaplacianOperator laplacian(const PeriodicIsoradialGraph& g);
/// Laplacian of G* with vertices in the face gauge used by double_graph().
LaplacianOperator dual_laplacian(const PeriodicIsoradialGraph& g);

/// P_Delta(z,w) = det of the Laplacian symbol.
LaurentPoly2 laplacian_polynomial(const PeriodicIsoradialGraph& g);

struct DoubleEdge {
  int white = 0;
  int black = 0;  // columns: vertices of G, then faces of G
  Cell cell;      // cell of the black vertex relative to the white one
  double theta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;  // beta - alpha = 2 theta
  Complex value;      // (e^{i beta} - e^{i alpha}) / i
};

struct DoubleGraph {
  int num_primal = 0;
  int num_dual = 0;
  std::vector<DoubleEdge> edges;  // four per white vertex, in order u, v, left, right
  std::vector<double> psi;        // direction of each edge of G
  std::vector<double> theta;      // half-angle of each edge of G

  int num_white() const { return static_cast<int>(psi.size()); }
  int num_black() const { return num_primal + num_dual; }
  int degree(int white) const;
};

DoubleGraph double_graph(const PeriodicIsoradialGraph& g);

/// Bipartite Kasteleyn symbol, white rows by black columns.
TorusSymbol kasteleyn_symbol(const DoubleGraph& d);
/// Diagonal of A: e^{-i psi} / (2 sqrt(sin theta cos theta)).
VectorXc gauge_diagonal(const DoubleGraph& d);

struct Incidence {
  TorusSymbol primal;  // M^G, edges by vertices
  TorusSymbol dual;    // M^{G*}, edges by faces
};

/// Edge e is oriented u -> v unless reversed[e]; dual edges follow, right face to left face.
Incidence incidence(const PeriodicIsoradialGraph& g, const std::vector<char>& reversed = {});

struct SuiteOptions {
  double tolerance = 1e-7;
  int torus_samples = 20;
  int ratio_samples = 100;
  unsigned seed = 7;
  std::vector<int> items = {1, 2, 3, 4, 5, 6, 7};
  bool throw_on_violation = true;
};

struct IdentityReport {
  static constexpr std::array<const char*, 7> kNames = {"i", "ii", "iii", "iv", "v", "vi", "vii"};

  std::array<double, 7> residuals{};
  std::array<bool, 7> ran{};
  double tan_product = 0.0;
  Complex zeta;             // det Delta_G * prod(2 cos) / det K_double
  Complex c;                // P / P_Delta
  double c_conjugate_gap = 0.0;
  LaurentPoly2 p;           // Fisher dimer polynomial, phase normalized
  LaurentPoly2 p_delta;
  NewtonPolygon newton_p;
  NewtonPolygon newton_p_delta;

  double max_residual() const;
};

/// Evaluates the factorization identities relating Delta, M, the double
/// graph and the Fisher dimer polynomial. Throws IdentityViolation.
IdentityReport identity_suite(const PeriodicIsoradialGraph& g, const SuiteOptions& options = {});

/// Sum over cycle-rooted spanning forests of prod tan(theta) (2 - z^x w^y - z^-x w^-y).
/// Throws TooLarge beyond 6 vertices or 14 edges.
LaurentPoly2 crsf_polynomial(const PeriodicIsoradialGraph& g);

struct DiscreteExponential {
  Complex z;
  Complex w;
  VectorXc values;  // on the vertices of cell (0,0), normalized at vertex 0
};

/// Throws PoleHit when lambda is within 1e-12 of a pole +-e^{i alpha}.
DiscreteExponential discrete_exponential(const PeriodicIsoradialGraph& g, Complex lambda);

inline std::pair<Complex, Complex> discrete_exponential_point(const PeriodicIsoradialGraph& g,
                                                             Complex lambda) {
  auto e = discrete_exponential(g, lambda);
  return {e.z, e.w};
}

}  // namespace isoising
