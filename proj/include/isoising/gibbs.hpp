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
#include <mutex>
#include <shared_mutex>
#include <tuple>
#include <vector>

#include "isoising/fisher.hpp"
#include "isoising/kasteleyn.hpp"
#include "isoising/spectral.hpp"
#include "isoising/types.hpp"

namespace isoising {

/// A vertex of the infinite Fisher graph: base vertex v in cell (x, y).
struct LatticeVertex {
  int v = 0;
  Cell cell;
};

/// Edge e of F_1 translated to a cell.
struct LatticeEdge {
  int edge = 0;
  Cell cell;
};

struct GibbsOptions {
  int base_resolution = 64;   // ladder m, 2m, 4m
  int max_resolution = 1024;  // the ladder doubles until converged
  double tolerance = 1e-6;
  int cache_range = 16;       // displacements with larger |dx|, |dy| are not cached
};

struct EdgeProbability {
  double value = 0.0;
  double raw = 0.0;        // before clamping
  double imaginary = 0.0;  // should vanish
  bool clamped = false;
};

struct ConvergenceRow {
  int n = 0;
  double finite = 0.0;  // P_n
  double gap = 0.0;     // |P_n - P_infinity|
};

struct ConvergenceReport {
  double limit = 0.0;
  std::vector<ConvergenceRow> rows;
  bool strictly_decreasing = false;
};

/// Inverse Kasteleyn operator of the critical periodic Fisher graph by torus
/// integrals, and edge probabilities of the infinite-volume Gibbs measure.
class GibbsCorrelator {
 public:
  explicit GibbsCorrelator(const FisherGraph& f, GibbsOptions options = {});

  const FisherGraph& fisher() const { return fisher_; }
  const TorusSymbol& symbol() const { return symbol_; }
  const KasteleynOrientation& orientation() const { return orientation_; }

  /// K^{-1}_{a,b}. Throws NonConvergent.
  Complex inverse_coefficient(LatticeVertex a, LatticeVertex b) const;

  /// Entry of the periodic Kasteleyn matrix for edge e, oriented u -> v.
  double kasteleyn_entry(int e) const;

  /// Throws NotDisjoint or NonConvergent.
  EdgeProbability edge_probability(const std::vector<LatticeEdge>& edges) const;

  /// Error estimate of the last block computed for displacement d.
  double quadrature_error(Cell d) const;

  ConvergenceReport convergence_report(const std::vector<LatticeEdge>& edges,
                                       const std::vector<int>& n_list) const;

 private:
  struct Block {
    MatrixXc value;
    double error = 0.0;
  };
  Block compute_block(Cell d) const;
  Block block(Cell d) const;

  FisherGraph fisher_;
  GibbsOptions options_;
  KasteleynOrientation orientation_;
  std::vector<double> weights_;
  TorusSymbol symbol_;
  mutable std::shared_mutex cache_mutex_;
  mutable std::map<Cell, Block> cache_;
};

/// Riemann sum of S(z,w)^{-1} z^{dx} w^{dy} on the grid shifted by half a step in z.
MatrixXc inverse_block_sum(const TorusSymbol& s, Cell d, int m);

}  // namespace isoising
