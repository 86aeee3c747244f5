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

#include <cstdint>
#include <vector>

#include "isoising/periodic_graph.hpp"
#include "isoising/types.hpp"

namespace isoising {

// Exhaustive ground truth. Offsets of PeriodicGraph edges are ignored except
// where homology is needed (low-temperature contours, CRSFs).

struct EnumerationBudget {
  int max_matching_vertices = 40;
  int max_spins = 20;
  int max_contour_edges = 20;
  int max_crsf_edges = 14;
};

struct MatchingSummary {
  std::uint64_t count = 0;
  double weighted_sum = 0.0;
  std::vector<double> marginals;  // per edge, filled on request
};

MatchingSummary enumerate_matchings(const PeriodicGraph& g, const std::vector<double>& weights,
                                    bool with_marginals = false,
                                    const EnumerationBudget& budget = {});

/// Every perfect matching as a list of edge indices, in search order.
std::vector<std::vector<int>> list_matchings(const PeriodicGraph& g,
                                             const EnumerationBudget& budget = {});

/// Sum over spin configurations of exp(sum_e J_e s_u s_v).
double ising_partition(const PeriodicGraph& g, const std::vector<double>& J,
                       const EnumerationBudget& budget = {});

/// Sum over even-degree edge subsets of prod x_e.
double even_subgraph_sum(const PeriodicGraph& g, const std::vector<double>& x,
                         const EnumerationBudget& budget = {});

/// Z^J from the low-temperature expansion on the toroidal dual: domain walls
/// are even subgraphs with trivial mod-2 homology. J is indexed like the
/// dual edges.
double low_temperature_partition(const PeriodicGraph& dual, const std::vector<double>& J,
                                 const EnumerationBudget& budget = {});

struct CrsfComponent {
  std::vector<int> vertices;
  std::vector<int> edges;
  Cell homology;  // of the unique cycle, normalized up to sign
};

struct Crsf {
  std::vector<int> edges;
  std::vector<CrsfComponent> components;
};

/// All cycle-rooted spanning forests of the torus graph G_1 whose cycles are
/// non-contractible, in lexicographic edge-subset order.
std::vector<Crsf> enumerate_crsf(const PeriodicGraph& g, const EnumerationBudget& budget = {});

}  // namespace isoising
