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

#include <string>
#include <vector>

#include "isoising/types.hpp"

namespace isoising {

/// Edge of a Z^2-periodic graph: `v` lives in cell `offset` relative to `u`.
struct PeriodicEdge {
  int u = 0;
  int v = 0;
  Cell offset;
};

/// Fundamental domain of a Z^2-periodic planar graph together with a
/// straight-line embedding. The same type stores toroidal quotients, in which
/// case `offset` counts how many times an edge wraps around the torus.
struct PeriodicGraph {
  Eigen::Matrix2d basis = Eigen::Matrix2d::Identity();  // period vectors as columns
  std::vector<std::string> ids;
  std::vector<Vec2> positions;
  std::vector<PeriodicEdge> edges;

  int num_vertices() const { return static_cast<int>(positions.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }

  Vec2 translation(Cell c) const { return basis * Vec2(c.x, c.y); }
  Vec2 lift(int v, Cell c) const { return positions[v] + translation(c); }

  /// Cell containing a point, using a 1e-9 tolerance on the lower boundary.
  Cell cell_of(const Vec2& p) const;
};

/// Half-edges are numbered 2*e (u -> v) and 2*e + 1 (v -> u).
struct HalfEdge {
  int id;

  int edge() const { return id / 2; }
  bool forward() const { return id % 2 == 0; }
  HalfEdge twin() const { return {id ^ 1}; }
};

int origin(const PeriodicGraph& g, HalfEdge h);
int target(const PeriodicGraph& g, HalfEdge h);
/// Cell of the target relative to the cell of the origin.
Cell step(const PeriodicGraph& g, HalfEdge h);
Vec2 direction(const PeriodicGraph& g, HalfEdge h);

/// Boundary walk of one face, counter-clockwise (face on the left).
struct FaceWalk {
  std::vector<HalfEdge> half_edges;
  std::vector<Cell> origin_cells;  // cell of each origin, relative to the first
};

/// Combinatorial map induced by the straight-line embedding.
struct Embedding {
  std::vector<std::vector<HalfEdge>> rotation;  // outgoing half-edges, ccw
  std::vector<FaceWalk> faces;
  std::vector<int> face_of;           // per half-edge id: face on its left
  std::vector<int> position_in_face;  // per half-edge id: index in the walk
};

/// Traces all faces of the periodic embedding. Throws SchemaError when a
/// face walk does not close in the plane (non-planar or invalid input).
Embedding trace_faces(const PeriodicGraph& g);

/// Toroidal quotient G / nZ^2 of a periodic graph.
///
/// Vertex (v, x, y) gets index (y * n + x) * |V| + v and the copy of edge e
/// based in cell (x, y) gets index (y * n + x) * |E| + e. Edge offsets of the
/// result are wrap counts across the torus seams, so the quotient is itself a
/// PeriodicGraph with basis n * basis. `seam` translates the cell labelling,
/// which moves the reference cycles the wraps are counted against.
struct ToroidalGraph {
  int n = 1;
  int base_vertices = 0;
  int base_edges = 0;
  Cell seam;
  PeriodicGraph graph;

  int vertex(int v, Cell c) const {
    return (mod(c.y, n) * n + mod(c.x, n)) * base_vertices + v;
  }
  int base_vertex(int i) const { return i % base_vertices; }
  Cell vertex_cell(int i) const {
    int c = i / base_vertices;
    return {c % n, c / n};
  }
  int base_edge(int i) const { return i % base_edges; }
  Cell edge_cell(int i) const {
    int c = i / base_edges;
    return {c % n, c / n};
  }
  /// Number of times edge i crosses the vertical (x) and horizontal (y) seams.
  Cell wraps(int i) const { return graph.edges[i].offset; }
};

ToroidalGraph quotient(const PeriodicGraph& g, int n, Cell seam = {});

/// Same periodic graph with vertex v represented in cell shift[v]. Changes the
/// offsets, hence which edges of a quotient cross the seams.
PeriodicGraph reanchor(const PeriodicGraph& g, const std::vector<Cell>& shift);

}  // namespace isoising
