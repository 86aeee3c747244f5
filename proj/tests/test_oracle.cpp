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
#include "isoising/ising.hpp"
#include "isoising/isoradial.hpp"
#include "isoising/oracle.hpp"

using namespace isoising;

namespace {

PeriodicGraph cycle_graph(int n) {
  PeriodicGraph g;
  for (int i = 0; i < n; ++i) {
    g.ids.push_back(std::to_string(i));
    g.positions.push_back(Vec2(i, 0));
  }
  for (int i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n, {}});
  return g;
}

std::vector<double> torus_couplings(const PeriodicIsoradialGraph& g, const ToroidalGraph& t) {
  std::vector<double> J;
  for (int i = 0; i < t.graph.num_edges(); ++i) J.push_back(coupling(g.theta(t.base_edge(i))));
  return J;
}

}  // namespace

TEST(Matchings, FourCycle) {
  auto g = cycle_graph(4);
  auto m = enumerate_matchings(g, std::vector<double>(4, 1.0), true);
  EXPECT_EQ(m.count, 2u);
  EXPECT_DOUBLE_EQ(m.weighted_sum, 2.0);
  for (double p : m.marginals) EXPECT_DOUBLE_EQ(p, 0.5);
  EXPECT_EQ(list_matchings(g).size(), 2u);
}

TEST(Matchings, WeightedMarginalsSumToOne) {
  auto g = cycle_graph(6);
  g.edges.push_back({0, 3, {}});
  std::vector<double> w{1.0, 2.0, 0.5, 3.0, 1.5, 0.7, 2.2};
  auto m = enumerate_matchings(g, w, true);
  for (int v = 0; v < g.num_vertices(); ++v) {
    double s = 0.0;
    for (int e = 0; e < g.num_edges(); ++e)
      if (g.edges[e].u == v || g.edges[e].v == v) s += m.marginals[e];
    EXPECT_NEAR(s, 1.0, 1e-14);
  }
}

TEST(Matchings, Budget) {
  auto g = cycle_graph(42);
  EXPECT_THROW(enumerate_matchings(g, std::vector<double>(42, 1.0)), BudgetExceeded);
  EnumerationBudget big;
  big.max_matching_vertices = 42;
  EXPECT_EQ(enumerate_matchings(g, std::vector<double>(42, 1.0), false, big).count, 2u);
}

TEST(Spins, SmallCases) {
  PeriodicGraph one;
  one.ids = {"a"};
  one.positions = {Vec2::Zero()};
  EXPECT_DOUBLE_EQ(ising_partition(one, {}), 2.0);
  PeriodicGraph pair = one;
  pair.ids.push_back("b");
  pair.positions.push_back(Vec2(1, 0));
  pair.edges = {{0, 1, {}}};
  EXPECT_NEAR(ising_partition(pair, {0.37}), 4 * std::cosh(0.37), 1e-14);
  EXPECT_THROW(ising_partition(cycle_graph(21), std::vector<double>(21, 0.1)), BudgetExceeded);
}

TEST(Contours, HighTemperatureExpansion) {
  EXPECT_DOUBLE_EQ(even_subgraph_sum(PeriodicGraph{}, {}), 1.0);
  for (auto kind : {LatticeKind::kSquare, LatticeKind::kHoneycomb, LatticeKind::kTriangular}) {
    auto g = standard_lattice(kind);
    for (int n = 1; n <= 3; ++n) {
      auto t = quotient(g, n);
      if (t.graph.num_edges() > 20) continue;
      auto J = torus_couplings(g, t);
      std::vector<double> x;
      double prefactor = std::pow(2.0, t.graph.num_vertices());
      for (double j : J) {
        x.push_back(std::tanh(j));
        prefactor *= std::cosh(j);
      }
      double z = ising_partition(t.graph, J);
      EXPECT_NEAR(prefactor * even_subgraph_sum(t.graph, x), z, 1e-12 * z);
    }
  }
}

TEST(Contours, LowTemperatureExpansion) {
  for (auto kind : {LatticeKind::kSquare, LatticeKind::kHoneycomb, LatticeKind::kTriangular}) {
    auto g = standard_lattice(kind);
    auto d = dual(g);
    for (int n = 1; n <= 2; ++n) {
      auto t = quotient(g, n);
      auto td = quotient(d, n);
      if (td.graph.num_edges() > 20) continue;
      double z = ising_partition(t.graph, torus_couplings(g, t));
      double low = low_temperature_partition(td.graph, torus_couplings(g, td));
      EXPECT_NEAR(low, z, 1e-12 * z);
    }
  }
}

TEST(Crsf, SquareCell) {
  auto g = standard_lattice(LatticeKind::kSquare);
  auto forests = enumerate_crsf(g.graph());
  ASSERT_EQ(forests.size(), 2u);
  EXPECT_EQ(forests[0].components[0].homology, (Cell{1, 0}));
  EXPECT_EQ(forests[1].components[0].homology, (Cell{0, 1}));
}

TEST(Crsf, ComponentsAreUnicyclicAndParallel) {
  for (auto kind : {LatticeKind::kHoneycomb, LatticeKind::kTriangular}) {
    auto g = standard_lattice(kind);
    auto t = quotient(g, 2);
    auto forests = enumerate_crsf(t.graph);
    EXPECT_FALSE(forests.empty());
    for (const auto& f : forests) {
      for (const auto& c : f.components) {
        EXPECT_EQ(c.edges.size(), c.vertices.size());
        EXPECT_NE(c.homology, Cell{});
        EXPECT_EQ(c.homology, f.components[0].homology);
      }
    }
  }
}
