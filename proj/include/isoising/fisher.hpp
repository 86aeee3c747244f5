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
#include <string>
#include <vector>

#include "isoising/isoradial.hpp"
#include "isoising/periodic_graph.hpp"

namespace isoising {

enum class FisherRole { kTriangle, kLink, kLong };

/// Fisher decoration of G. Vertex 3i, 3i+1, 3i+2 of a decoration are the
/// tip, left and right corners of the triangle on the i-th half-edge (ccw).
struct FisherGraph {
  PeriodicGraph graph;
  std::vector<FisherRole> role;  // per edge
  std::vector<int> g_edge;       // per edge; -1 on decoration edges
  std::vector<int> g_vertex;     // per vertex: the vertex of G it decorates
  std::vector<int> first_vertex;  // per vertex of G
  std::vector<int> tip;           // per half-edge id of G
  std::vector<int> long_edge;     // per edge of G
  std::vector<double> theta;      // per edge of G
  int num_g_vertices = 0;
  int num_g_edges = 0;

  int decoration_size(int v) const {
    int next = v + 1 < num_g_vertices ? first_vertex[v + 1] : graph.num_vertices();
    return next - first_vertex[v];
  }
};

FisherGraph fisher_graph(const PeriodicIsoradialGraph& g);

/// cot(theta/2) on long edges, 1 on decoration edges.
std::vector<double> critical_weights(const FisherGraph& f);

/// Graph-spec document with a "role" tag per edge.
std::string to_document(const FisherGraph& f);

/// Index of the long edge of F_n carrying edge i of G_n (same cell layout).
inline int long_edge_of(const FisherGraph& f, int n_edge_of_gn) {
  int cell = n_edge_of_gn / f.num_g_edges;
  return cell * f.graph.num_edges() + f.long_edge[n_edge_of_gn % f.num_g_edges];
}

/// Completions of a contour of G_n (one flag per edge of G_n) into a perfect
/// matching of F_n: long edges present exactly off the contour.
struct ContourCompletion {
  double count = 0;            // 2^{|V(G_n)|} when the contour is valid (exact)
  std::vector<int> matching;   // one completion, as edges of F_n
  bool enumerated = false;     // count confirmed by exhaustive search on F_n
};

ContourCompletion matchings_of_contour(const FisherGraph& f, int n,
                                       const std::vector<char>& contour,
                                       int enumeration_limit = 40);

}  // namespace isoising
