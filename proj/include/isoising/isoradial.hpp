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
#include <string_view>
#include <vector>

#include "isoising/periodic_graph.hpp"
#include "isoising/types.hpp"

namespace isoising {

inline constexpr double kIsoradialTolerance = 1e-9;

/// Rhombus of the diamond graph containing edge e = (u, v).
///
/// Centers are absolute coordinates of the two face circumcenters, taken
/// relative to u in cell (0, 0); cells locate the face representatives
/// (dual vertices) relative to the cell of u.
struct Rhombus {
  double theta = 0.0;  // half-angle at u and v
  int left_face = -1;
  int right_face = -1;
  Cell left_cell;
  Cell right_cell;
  Vec2 left_center = Vec2::Zero();
  Vec2 right_center = Vec2::Zero();
};

/// Z^2-periodic isoradial graph: every face is inscribed in a unit circle.
/// Immutable once built.
class PeriodicIsoradialGraph {
 public:
  /// Validates isoradiality and derives all rhombus data.
  /// Throws IsoradialityError or DegenerateAngle.
  static PeriodicIsoradialGraph build(PeriodicGraph graph);

  const PeriodicGraph& graph() const { return graph_; }
  const Embedding& embedding() const { return embedding_; }
  const std::vector<Rhombus>& rhombi() const { return rhombi_; }
  const Rhombus& rhombus(int e) const { return rhombi_[e]; }
  double theta(int e) const { return rhombi_[e].theta; }

  int num_vertices() const { return graph_.num_vertices(); }
  int num_edges() const { return graph_.num_edges(); }
  int num_faces() const { return static_cast<int>(face_centers_.size()); }

  /// Circumcenter of each face, reduced into the fundamental cell.
  const std::vector<Vec2>& face_centers() const { return face_centers_; }

  /// The four rhombus vertices u, c_left, v, c_right (absolute, u in cell 0).
  std::array<Vec2, 4> rhombus_vertices(int e) const;

 private:
  PeriodicGraph graph_;
  Embedding embedding_;
  std::vector<Vec2> face_centers_;
  std::vector<Rhombus> rhombi_;
};

enum class LatticeKind { kSquare, kTriangular, kHoneycomb };

/// Canonical critical embedding with circumradius 1.
PeriodicIsoradialGraph standard_lattice(LatticeKind kind);

/// Triangular lattice spanned by two vectors of an acute triangle with
/// angles (a, b, pi - a - b) at its three corners; scaled to circumradius 1.
PeriodicIsoradialGraph acute_triangular_lattice(double a, double b);

/// Dual graph: vertices at circumcenters, dual edge i crosses edge i and runs
/// from its right face to its left face. theta(e*) = pi/2 - theta(e).
PeriodicIsoradialGraph dual(const PeriodicIsoradialGraph& g);

/// Quotient G / nZ^2 with wrap counts against the two seams.
ToroidalGraph quotient(const PeriodicIsoradialGraph& g, int n, Cell seam = {});

/// Parses the graph-spec document
/// { "basis": [[..],[..]], "vertices": [{"id", "pos"}], "edges": [{"u","v","offset"}] }.
/// Throws SchemaError on malformed input.
PeriodicIsoradialGraph load_graph(std::string_view document);
std::string to_document(const PeriodicGraph& g);

}  // namespace isoising
