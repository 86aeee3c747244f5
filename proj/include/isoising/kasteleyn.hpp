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

#include "isoising/fisher.hpp"
#include "isoising/periodic_graph.hpp"
#include "isoising/pfaffian.hpp"
#include "isoising/spectral.hpp"
#include "isoising/types.hpp"

namespace isoising {

struct FaceParity {
  int face = 0;
  int length = 0;
  int clockwise = 0;  // edges oriented against the ccw boundary walk

  bool odd() const { return clockwise % 2 == 1; }
};

struct KasteleynOrientation {
  std::vector<char> forward;  // per edge of the periodic graph: u -> v
  std::vector<FaceParity> certificate;

  bool valid() const;
};

std::vector<FaceParity> face_parities(const PeriodicGraph& g, const std::vector<char>& forward);

/// Clockwise-odd orientation of every face of a periodic graph, built along a
/// spanning tree of the dual. Throws OddSize or OrientationFailure.
KasteleynOrientation orient(const PeriodicGraph& g);

/// Reverses edges of odd x (resp. y) offset so that, among the four twisted
/// matrices of the single cell, the untwisted one has the smallest |Pf|.
/// At criticality this places the torus zero of the characteristic polynomial
/// at (1, 1). Returns the twist that was moved to (0, 0).
int normalize_at_one(KasteleynOrientation& k, const PeriodicGraph& g,
                     const std::vector<double>& weights);

/// Orientation of a quotient induced from the periodic one.
std::vector<char> periodic_orientation(const ToroidalGraph& t, const std::vector<char>& base);

/// K_n^{theta tau}: entries on edges wrapping in x (resp. y) an odd number of
/// times are multiplied by (-1)^theta (resp. (-1)^tau).
MatrixXd twisted_matrix(const ToroidalGraph& t, const std::vector<char>& forward,
                        const std::vector<double>& weights, int theta, int tau);

inline int twist_index(int theta, int tau) { return theta + 2 * tau; }

struct PartitionResult {
  double log_z = 0.0;
  double z = 0.0;
  std::array<LogPfaffian<double>, 4> pfaffians;  // order 00, 10, 01, 11
  std::array<double, 4> coefficients{};           // Z = sum coefficients[i] * Pf_i
  Eigen::Matrix4d class_signs;  // row: twist, column: homology class of the matching

  std::string sign_pattern() const;
};

/// Orientation of F_1 built by orient() and moved by normalize_at_one().
KasteleynOrientation critical_orientation(const FisherGraph& f);
/// K-hat(z,w) of the Fisher graph at critical weights.
TorusSymbol critical_symbol(const FisherGraph& f);

class ToroidalDimerModel {
 public:
  ToroidalDimerModel(const FisherGraph& f, int n);
  ToroidalDimerModel(const FisherGraph& f, int n, std::vector<double> weights,
                     KasteleynOrientation orientation);

  int n() const { return n_; }
  const FisherGraph& fisher() const { return fisher_; }
  const ToroidalGraph& torus() const { return torus_; }
  const std::vector<double>& weights() const { return weights_; }
  const KasteleynOrientation& orientation() const { return orientation_; }
  const MatrixXd& matrix(int theta, int tau) const { return matrices_[twist_index(theta, tau)]; }
  const PartitionResult& partition() const { return partition_; }

  /// Weight of edge i of F_n.
  double weight(int i) const { return weights_[torus_.base_edge(i)]; }

  /// Probability under the Boltzmann measure that all given edges of F_n
  /// belong to the matching. Throws NotDisjoint.
  double boltzmann_probability(const std::vector<int>& edges) const;

 private:
  void compute();

  FisherGraph fisher_;
  int n_;
  std::vector<double> weights_;
  KasteleynOrientation orientation_;
  ToroidalGraph torus_;
  std::array<MatrixXd, 4> matrices_;
  PartitionResult partition_;
};

}  // namespace isoising
