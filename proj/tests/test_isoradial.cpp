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

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "isoising/errors.hpp"
#include "isoising/isoradial.hpp"

using namespace isoising;

namespace {

const char* kSquareDoc = R"({
  "basis": [[1.4142135623730951, 0], [0, 1.4142135623730951]],
  "vertices": [{"id": "a", "pos": [0, 0]}],
  "edges": [{"u": "a", "v": "a", "offset": [1, 0]}, {"u": "a", "v": "a", "offset": [0, 1]}]
})";

void expect_all_theta(const PeriodicIsoradialGraph& g, double theta) {
  for (int e = 0; e < g.num_edges(); ++e) EXPECT_NEAR(g.theta(e), theta, 1e-12) << "edge " << e;
}

}  // namespace

TEST(Isoradial, LoadSquare) {
  auto g = load_graph(kSquareDoc);
  EXPECT_EQ(g.num_vertices(), 1);
  EXPECT_EQ(g.num_faces(), 1);
  expect_all_theta(g, kPi / 4);
}

TEST(Isoradial, PerturbedTwoVertexRejected) {
  // Square lattice with two vertices per cell; moving one breaks the circles.
  const double s = std::sqrt(2.0);
  auto doc = [&](double shift) {
    return R"({"basis": [[)" + std::to_string(2 * s) + R"(, 0], [0, )" + std::to_string(s) +
           R"(]], "vertices": [{"id": "a", "pos": [0, 0]}, {"id": "b", "pos": [)" +
           std::to_string(s + shift) +
           R"(, 0]}], "edges": [{"u": "a", "v": "b", "offset": [0, 0]},
             {"u": "b", "v": "a", "offset": [1, 0]}, {"u": "a", "v": "a", "offset": [0, 1]},
             {"u": "b", "v": "b", "offset": [0, 1]}]})";
  };
  EXPECT_THROW(load_graph(doc(0.3)), IsoradialityError);
}

TEST(Isoradial, SchemaErrors) {
  EXPECT_THROW(load_graph("{"), SchemaError);
  EXPECT_THROW(load_graph(R"({"basis": [[1,0],[0,1]], "vertices": []})"), SchemaError);
  EXPECT_THROW(load_graph(R"({"basis": [[1,0],[0,1]],
    "vertices": [{"id": "a", "pos": [0,0]}, {"id": "a", "pos": [0.5,0]}], "edges": []})"),
               SchemaError);
  EXPECT_THROW(load_graph(R"({"basis": [[1.4142135623730951,0],[0,1.4142135623730951]],
    "vertices": [{"id": "a", "pos": [0,0]}],
    "edges": [{"u": "a", "v": "a", "offset": [1,0]}, {"u": "a", "v": "a", "offset": [-1,0]}]})"),
               SchemaError);
}

TEST(Isoradial, StandardLattices) {
  auto sq = standard_lattice(LatticeKind::kSquare);
  EXPECT_EQ(sq.num_vertices(), 1);
  expect_all_theta(sq, kPi / 4);
  auto tri = standard_lattice(LatticeKind::kTriangular);
  EXPECT_EQ(tri.num_edges(), 3);
  EXPECT_EQ(tri.num_faces(), 2);
  expect_all_theta(tri, kPi / 6);
  auto hex = standard_lattice(LatticeKind::kHoneycomb);
  EXPECT_EQ(hex.num_vertices(), 2);
  EXPECT_EQ(hex.num_edges(), 3);
  EXPECT_EQ(hex.num_faces(), 1);
  expect_all_theta(hex, kPi / 3);
}

TEST(Isoradial, RoundTripDocument) {
  auto hex = standard_lattice(LatticeKind::kHoneycomb);
  auto again = load_graph(to_document(hex.graph()));
  ASSERT_EQ(again.num_edges(), hex.num_edges());
  for (int e = 0; e < hex.num_edges(); ++e) EXPECT_NEAR(again.theta(e), hex.theta(e), 1e-12);
}

TEST(Isoradial, RhombiHaveUnitSides) {
  for (const auto& g : {standard_lattice(LatticeKind::kSquare),
                        standard_lattice(LatticeKind::kTriangular),
                        standard_lattice(LatticeKind::kHoneycomb),
                        acute_triangular_lattice(0.9, 1.05)}) {
    for (int e = 0; e < g.num_edges(); ++e) {
      auto r = g.rhombus_vertices(e);
      for (int i = 0; i < 4; ++i) EXPECT_NEAR((r[(i + 1) % 4] - r[i]).norm(), 1.0, 1e-9);
    }
  }
}

TEST(Isoradial, DualAngles) {
  auto tri = standard_lattice(LatticeKind::kTriangular);
  auto d = dual(tri);
  EXPECT_EQ(d.num_vertices(), 2);
  expect_all_theta(d, kPi / 3);

  auto sq = dual(standard_lattice(LatticeKind::kSquare));
  EXPECT_EQ(sq.num_vertices(), 1);
  expect_all_theta(sq, kPi / 4);

  auto generic = acute_triangular_lattice(0.9, 1.05);
  auto gd = dual(generic);
  for (int e = 0; e < generic.num_edges(); ++e)
    EXPECT_NEAR(gd.theta(e) + generic.theta(e), kPi / 2, 1e-12);
  auto back = dual(gd);
  EXPECT_EQ(back.num_vertices(), generic.num_vertices());
  EXPECT_EQ(back.num_edges(), generic.num_edges());
  EXPECT_EQ(back.num_faces(), generic.num_faces());
  for (int e = 0; e < generic.num_edges(); ++e)
    EXPECT_NEAR(back.theta(e), generic.theta(e), 1e-12);
}

TEST(Isoradial, Quotient) {
  auto sq = standard_lattice(LatticeKind::kSquare);
  auto q1 = quotient(sq, 1);
  EXPECT_EQ(q1.graph.num_vertices(), 1);
  ASSERT_EQ(q1.graph.num_edges(), 2);
  EXPECT_EQ(q1.wraps(0), (Cell{1, 0}));
  EXPECT_EQ(q1.wraps(1), (Cell{0, 1}));
  auto q2 = quotient(sq, 2);
  EXPECT_EQ(q2.graph.num_vertices(), 4);
  EXPECT_EQ(q2.graph.num_edges(), 8);

  for (const auto& g : {sq, standard_lattice(LatticeKind::kHoneycomb),
                        standard_lattice(LatticeKind::kTriangular)}) {
    auto base = quotient(g, 1);
    int bx = 0, by = 0;
    for (int i = 0; i < base.graph.num_edges(); ++i) {
      bx += std::abs(base.wraps(i).x);
      by += std::abs(base.wraps(i).y);
    }
    for (int n = 1; n <= 4; ++n) {
      auto q = quotient(g, n);
      EXPECT_EQ(q.graph.num_vertices(), n * n * g.num_vertices());
      EXPECT_EQ(q.graph.num_edges(), n * n * g.num_edges());
      int cx = 0, cy = 0;
      for (int i = 0; i < q.graph.num_edges(); ++i) {
        cx += std::abs(q.wraps(i).x);
        cy += std::abs(q.wraps(i).y);
      }
      EXPECT_EQ(cx, n * bx);
      EXPECT_EQ(cy, n * by);
      // The quotient is itself an isoradial periodic graph with the same angles.
      auto iso = PeriodicIsoradialGraph::build(q.graph);
      for (int i = 0; i < q.graph.num_edges(); ++i)
        EXPECT_NEAR(iso.theta(i), g.theta(q.base_edge(i)), 1e-12);
    }
  }
}
