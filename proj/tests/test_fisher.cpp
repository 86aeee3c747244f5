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

#include <gtest/gtest.h>

#include "isoising/errors.hpp"
#include "isoising/fisher.hpp"
#include "isoising/ising.hpp"
#include "isoising/oracle.hpp"

using namespace isoising;

TEST(Fisher, DecorationSizes) {
  auto sq = fisher_graph(standard_lattice(LatticeKind::kSquare));
  EXPECT_EQ(sq.graph.num_vertices(), 12);
  auto hex = fisher_graph(standard_lattice(LatticeKind::kHoneycomb));
  EXPECT_EQ(hex.graph.num_vertices(), 18);
  EXPECT_EQ(hex.decoration_size(0), 9);
  auto tri = fisher_graph(standard_lattice(LatticeKind::kTriangular));
  EXPECT_EQ(tri.graph.num_vertices(), 18);
}

TEST(Fisher, EveryVertexHasDegreeThree) {
  for (auto kind : {LatticeKind::kSquare, LatticeKind::kTriangular, LatticeKind::kHoneycomb}) {
    auto f = fisher_graph(standard_lattice(kind));
    for (int n = 1; n <= 2; ++n) {
      auto t = quotient(f.graph, n);
      std::vector<int> degree(t.graph.num_vertices(), 0);
      for (const auto& e : t.graph.edges) {
        ++degree[e.u];
        ++degree[e.v];
      }
      for (int d : degree) EXPECT_EQ(d, 3);
    }
    // The decorated embedding is itself a valid periodic plane graph.
    EXPECT_NO_THROW(trace_faces(f.graph));
  }
}

TEST(Fisher, CriticalWeights) {
  auto sq = fisher_graph(standard_lattice(LatticeKind::kSquare));
  auto w = critical_weights(sq);
  for (int e = 0; e < sq.graph.num_edges(); ++e) {
    if (sq.role[e] == FisherRole::kLong)
      EXPECT_NEAR(w[e], 1 + std::sqrt(2.0), 1e-14);
    else
      EXPECT_EQ(w[e], 1.0);
  }
  auto tri = fisher_graph(standard_lattice(LatticeKind::kTriangular));
  for (int e : tri.long_edge) EXPECT_NEAR(critical_weights(tri)[e], 2 + std::sqrt(3.0), 1e-13);
  auto hex = fisher_graph(standard_lattice(LatticeKind::kHoneycomb));
  for (int e = 0; e < hex.num_g_edges; ++e) {
    double nu = critical_weights(hex)[hex.long_edge[e]];
    EXPECT_GT(nu, 1.0);
    EXPECT_NEAR(nu, 1 / std::tanh(coupling(hex.theta[e])), 1e-12);
  }
}

TEST(Fisher, ContourCompletions) {
  auto sq = fisher_graph(standard_lattice(LatticeKind::kSquare));
  auto empty = matchings_of_contour(sq, 1, {0, 0});
  EXPECT_EQ(empty.count, 2.0);
  EXPECT_TRUE(empty.enumerated);
  for (std::vector<char> c : {std::vector<char>{1, 0}, {0, 1}, {1, 1}}) {
    auto r = matchings_of_contour(sq, 1, c);
    EXPECT_EQ(r.count, 2.0);
    EXPECT_TRUE(r.enumerated);
    EXPECT_EQ(static_cast<int>(r.matching.size()) * 2, sq.graph.num_vertices());
  }
  auto two = matchings_of_contour(sq, 2, std::vector<char>(8, 0));
  EXPECT_EQ(two.count, 16.0);
  EXPECT_FALSE(two.enumerated);

  auto hex = fisher_graph(standard_lattice(LatticeKind::kHoneycomb));
  EXPECT_THROW(matchings_of_contour(hex, 1, {1, 0, 0}), NotAContour);
  auto cycle = matchings_of_contour(hex, 1, {1, 1, 0});
  EXPECT_EQ(cycle.count, 4.0);
  EXPECT_TRUE(cycle.enumerated);
}

TEST(Fisher, MatchingsBijectWithContours) {
  // Total number of matchings of F_1 is 2^{|V|} times the number of contours.
  for (auto kind : {LatticeKind::kSquare, LatticeKind::kHoneycomb}) {
    auto g = standard_lattice(kind);
    auto f = fisher_graph(g);
    auto all = enumerate_matchings(f.graph, std::vector<double>(f.graph.edges.size(), 1.0));
    double contours = even_subgraph_sum(g.graph(), std::vector<double>(g.num_edges(), 1.0));
    EXPECT_EQ(static_cast<double>(all.count), std::pow(2.0, g.num_vertices()) * contours);
  }
}

TEST(Fisher, Document) {
  auto f = fisher_graph(standard_lattice(LatticeKind::kSquare));
  auto doc = to_document(f);
  EXPECT_NE(doc.find("\"role\": \"long\""), std::string::npos);
  EXPECT_NE(doc.find("\"role\": \"link\""), std::string::npos);
}
