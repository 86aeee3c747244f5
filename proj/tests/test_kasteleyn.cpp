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

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "isoising/errors.hpp"
#include "isoising/fisher.hpp"
#include "isoising/ising.hpp"
#include "isoising/kasteleyn.hpp"
#include "isoising/oracle.hpp"

using namespace isoising;

namespace {

double oracle_z(const ToroidalDimerModel& m) {
  std::vector<double> w;
  for (int i = 0; i < m.torus().graph.num_edges(); ++i) w.push_back(m.weight(i));
  return enumerate_matchings(m.torus().graph, w).weighted_sum;
}

}  // namespace

TEST(Orientation, CertifiedOnStandardLattices) {
  for (auto kind : {LatticeKind::kSquare, LatticeKind::kTriangular, LatticeKind::kHoneycomb}) {
    auto f = fisher_graph(standard_lattice(kind));
    auto k = orient(f.graph);
    EXPECT_TRUE(k.valid());
    EXPECT_EQ(k.certificate.size(), 3u * f.num_g_edges);
    for (int n = 1; n <= 2; ++n) {
      auto t = quotient(f.graph, n);
      auto parities = face_parities(t.graph, periodic_orientation(t, k.forward));
      EXPECT_EQ(parities.size(), static_cast<std::size_t>(n * n) * k.certificate.size());
      for (const auto& p : parities) EXPECT_TRUE(p.odd());
    }
  }
}

TEST(Orientation, FlipChangesIncidentFaces) {
  auto f = fisher_graph(standard_lattice(LatticeKind::kSquare));
  auto k = orient(f.graph);
  auto emb = trace_faces(f.graph);
  for (int e = 0; e < f.graph.num_edges(); ++e) {
    auto flipped = k.forward;
    flipped[e] ^= 1;
    auto parities = face_parities(f.graph, flipped);
    int left = emb.face_of[2 * e], right = emb.face_of[2 * e + 1];
    for (const auto& p : parities) {
      // An edge seen from both sides of one face leaves its parity alone.
      bool touched = (p.face == left) != (p.face == right);
      EXPECT_EQ(p.odd(), !touched);
    }
  }
}

TEST(Partition, MatchesEnumerationOnOneCell) {
  for (auto kind : {LatticeKind::kSquare, LatticeKind::kHoneycomb, LatticeKind::kTriangular}) {
    auto f = fisher_graph(standard_lattice(kind));
    ToroidalDimerModel m(f, 1);
    double z = oracle_z(m);
    EXPECT_NEAR(m.partition().z, z, 1e-9 * z);
  }
  // Closed form on the square cell: 2 (nu + 1)^2 with nu = 1 + sqrt 2.
  ToroidalDimerModel sq(fisher_graph(standard_lattice(LatticeKind::kSquare)), 1);
  EXPECT_NEAR(sq.partition().z, 12 + 8 * std::sqrt(2.0), 1e-12);
}

TEST(Partition, FisherIdentity) {
  for (auto kind : {LatticeKind::kSquare, LatticeKind::kHoneycomb, LatticeKind::kTriangular}) {
    auto g = standard_lattice(kind);
    auto f = fisher_graph(g);
    for (int n = 1; n <= 3; ++n) {
      auto t = quotient(g, n);
      if (t.graph.num_vertices() > 20) continue;
      std::vector<double> J;
      double sinh_product = 1.0;
      for (int i = 0; i < t.graph.num_edges(); ++i) {
        J.push_back(coupling(g.theta(t.base_edge(i))));
        sinh_product *= std::sinh(J.back());
      }
      double spins = ising_partition(t.graph, J);
      ToroidalDimerModel m(f, n);
      EXPECT_NEAR(sinh_product * m.partition().z, spins, 1e-9 * spins)
          << "n=" << n << " kind=" << static_cast<int>(kind);
    }
  }
}

TEST(Partition, TwistedDeterminants) {
  // |det| relative to the Hadamard bound (product of row norms).
  auto relative_det = [](const MatrixXd& k) {
    double log_bound = 0;
    for (int i = 0; i < k.rows(); ++i) log_bound += std::log(k.row(i).norm());
    auto pf = log_pfaffian(k);
    return pf.is_zero() ? 0.0 : std::exp(2 * pf.log_abs - log_bound);
  };
  auto f = fisher_graph(standard_lattice(LatticeKind::kSquare));
  for (int n = 1; n <= 2; ++n) {
    ToroidalDimerModel m(f, n);
    const auto& k00 = m.matrix(0, 0);
    EXPECT_EQ((k00 + k00.transpose()).norm(), 0.0);
    EXPECT_LT(relative_det(k00), 1e-12);
    EXPECT_GT(relative_det(m.matrix(1, 0)), 1e-6);
    EXPECT_NEAR(std::exp(2 * m.partition().pfaffians[1].log_abs), std::abs(m.matrix(1, 0).determinant()),
                1e-9 * std::abs(m.matrix(1, 0).determinant()));
    auto p = m.partition().pfaffians;
    double top = 0;
    for (int t = 0; t < 4; ++t) top = std::max(top, std::abs(p[t].value()));
    EXPECT_LE(top, m.partition().z * (1 + 1e-12));
    EXPECT_GE(2 * top, m.partition().z);
  }
}

TEST(Partition, UniqueSignPattern) {
  for (auto kind : {LatticeKind::kSquare, LatticeKind::kHoneycomb}) {
    auto f = fisher_graph(standard_lattice(kind));
    ToroidalDimerModel m(f, 1);
    double z = oracle_z(m);
    int matches = 0;
    int matching_mask = -1;
    for (int mask = 0; mask < 16; ++mask) {
      double s = 0;
      for (int t = 0; t < 4; ++t)
        s += ((mask >> t) & 1 ? -0.5 : 0.5) * m.partition().pfaffians[t].value();
      if (std::abs(s - z) < 1e-9 * z) {
        ++matches;
        matching_mask = mask;
      }
    }
    // Pf(K^00) vanishes at criticality, so its sign is not identifiable.
    EXPECT_EQ(matches, 2);
    int minus = 0;
    for (double c : m.partition().coefficients) minus += c < 0;
    EXPECT_EQ(minus, 1);
    for (int t = 1; t < 4; ++t)
      EXPECT_EQ(((matching_mask >> t) & 1) == 1, m.partition().coefficients[t] < 0);
  }
}

TEST(Partition, SignPatternDependsOnlyOnParityOfN) {
  // The induced orientation on F_n changes the parity of the winding cycles
  // with n, so the minus sign moves between odd and even n.
  auto f = fisher_graph(standard_lattice(LatticeKind::kSquare));
  std::vector<std::string> patterns;
  for (int n = 1; n <= 4; ++n) patterns.push_back(ToroidalDimerModel(f, n).partition().sign_pattern());
  EXPECT_EQ(patterns[2], patterns[0]);
  EXPECT_EQ(patterns[3], patterns[1]);
  for (const auto& p : patterns) EXPECT_EQ(std::count(p.begin(), p.end(), '-'), 1);
}

TEST(Partition, InvariantUnderSeamChoice) {
  auto f = fisher_graph(standard_lattice(LatticeKind::kHoneycomb));
  ToroidalDimerModel base(f, 2);
  auto moved = f;
  // Move whole decorations so that different long edges cross the seams.
  std::vector<Cell> shift(f.graph.num_vertices());
  for (int v = 0; v < f.graph.num_vertices(); ++v)
    shift[v] = f.g_vertex[v] == 0 ? Cell{1, -1} : Cell{0, 1};
  moved.graph = reanchor(f.graph, shift);
  ToroidalDimerModel other(moved, 2);
  EXPECT_NEAR(other.partition().log_z, base.partition().log_z, 1e-10);
  EXPECT_NE(base.matrix(1, 0), other.matrix(1, 0));
}

TEST(Partition, GrowsWithSize) {
  auto f = fisher_graph(standard_lattice(LatticeKind::kSquare));
  double z1 = ToroidalDimerModel(f, 1).partition().z;
  double z2 = ToroidalDimerModel(f, 2).partition().z;
  EXPECT_GE(z2, z1 * z1 / 2);
}

TEST(Boltzmann, MatchesEnumeration) {
  for (auto kind : {LatticeKind::kSquare, LatticeKind::kHoneycomb}) {
    auto f = fisher_graph(standard_lattice(kind));
    ToroidalDimerModel m(f, 1);
    std::vector<double> w;
    for (int i = 0; i < m.torus().graph.num_edges(); ++i) w.push_back(m.weight(i));
    auto oracle = enumerate_matchings(m.torus().graph, w, true);
    const auto& g = m.torus().graph;
    for (int e = 0; e < g.num_edges(); ++e)
      EXPECT_NEAR(m.boltzmann_probability({e}), oracle.marginals[e], 1e-9);
    EXPECT_EQ(m.boltzmann_probability({}), 1.0);
    // A pair of disjoint edges against the enumerated frequency.
    for (int a = 0; a < g.num_edges(); ++a) {
      for (int b = a + 1; b < g.num_edges(); ++b) {
        const auto &ea = g.edges[a], &eb = g.edges[b];
        if (ea.u == eb.u || ea.u == eb.v || ea.v == eb.u || ea.v == eb.v) {
          EXPECT_THROW(m.boltzmann_probability({a, b}), NotDisjoint);
          continue;
        }
        double freq = 0;
        for (const auto& match : list_matchings(g)) {
          bool has_a = false, has_b = false;
          double weight = 1;
          for (int e : match) {
            weight *= w[e];
            has_a |= e == a;
            has_b |= e == b;
          }
          if (has_a && has_b) freq += weight;
        }
        EXPECT_NEAR(m.boltzmann_probability({a, b}), freq / oracle.weighted_sum, 1e-9);
      }
    }
  }
}

TEST(Boltzmann, VertexSumsAreOne) {
  auto f = fisher_graph(standard_lattice(LatticeKind::kSquare));
  ToroidalDimerModel m(f, 2);
  const auto& g = m.torus().graph;
  std::vector<double> sum(g.num_vertices(), 0.0);
  for (int e = 0; e < g.num_edges(); ++e) {
    double p = m.boltzmann_probability({e});
    EXPECT_GE(p, -1e-12);
    EXPECT_LE(p, 1 + 1e-12);
    sum[g.edges[e].u] += p;
    sum[g.edges[e].v] += p;
  }
  for (double s : sum) EXPECT_NEAR(s, 1.0, 1e-10);
}
