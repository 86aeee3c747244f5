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

#include "isoising/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "isoising/errors.hpp"
#include "isoising/oracle.hpp"

namespace isoising {
namespace {

Vec2 polar(double r, double phi) { return {r * std::cos(phi), r * std::sin(phi)}; }

}  // namespace

FisherGraph fisher_graph(const PeriodicIsoradialGraph& g) {
  const PeriodicGraph& pg = g.graph();
  const auto& rotation = g.embedding().rotation;
  FisherGraph f;
  f.num_g_vertices = g.num_vertices();
  f.num_g_edges = g.num_edges();
  f.graph.basis = pg.basis;
  f.tip.assign(2 * g.num_edges(), -1);
  f.long_edge.assign(g.num_edges(), -1);
  for (int e = 0; e < g.num_edges(); ++e) f.theta.push_back(g.theta(e));

  double scale = 1.0;
  for (int id = 0; id < 2 * g.num_edges(); ++id)
    scale = std::min(scale, direction(pg, HalfEdge{id}).norm());

  auto add_edge = [&](int u, int v, Cell offset, FisherRole role, int ge) {
    f.graph.edges.push_back({u, v, offset});
    f.role.push_back(role);
    f.g_edge.push_back(ge);
  };

  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto& around = rotation[v];
    const int k = static_cast<int>(around.size());
    std::vector<double> phi(k);
    for (int i = 0; i < k; ++i) {
      Vec2 d = direction(pg, around[i]);
      phi[i] = std::atan2(d.y(), d.x());
    }
    double gap = 2 * kPi;
    for (int i = 0; i < k; ++i) {
      double next = i + 1 < k ? phi[i + 1] : phi[0] + 2 * kPi;
      gap = std::min(gap, next - phi[i]);
    }
    const double delta = gap / 4;
    const int base = f.graph.num_vertices();
    f.first_vertex.push_back(base);
    for (int i = 0; i < k; ++i) {
      const Vec2 center = pg.positions[v];
      const std::string stem = pg.ids[v] + "." + std::to_string(i);
      f.graph.ids.insert(f.graph.ids.end(), {stem + "t", stem + "l", stem + "r"});
      f.graph.positions.insert(f.graph.positions.end(),
                               {center + polar(0.3 * scale, phi[i]),
                                center + polar(0.2 * scale, phi[i] + delta),
                                center + polar(0.2 * scale, phi[i] - delta)});
      f.g_vertex.insert(f.g_vertex.end(), 3, v);
      f.tip[around[i].id] = base + 3 * i;
    }
    for (int i = 0; i < k; ++i) {
      int t = base + 3 * i;
      add_edge(t, t + 1, {}, FisherRole::kTriangle, -1);
      add_edge(t, t + 2, {}, FisherRole::kTriangle, -1);
      add_edge(t + 1, t + 2, {}, FisherRole::kTriangle, -1);
      int next = base + 3 * ((i + 1) % k);
      add_edge(t + 1, next + 2, {}, FisherRole::kLink, -1);
    }
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    f.long_edge[e] = f.graph.num_edges();
    add_edge(f.tip[2 * e], f.tip[2 * e + 1], pg.edges[e].offset, FisherRole::kLong, e);
  }
  return f;
}

std::vector<double> critical_weights(const FisherGraph& f) {
  std::vector<double> w(f.graph.edges.size(), 1.0);
  for (int e = 0; e < f.num_g_edges; ++e) w[f.long_edge[e]] = 1.0 / std::tan(f.theta[e] / 2);
  return w;
}

std::string to_document(const FisherGraph& f) {
  auto doc = nlohmann::ordered_json::parse(to_document(f.graph));
  static const char* kNames[] = {"triangle", "link", "long"};
  for (std::size_t e = 0; e < f.role.size(); ++e)
    doc["edges"][e]["role"] = kNames[static_cast<int>(f.role[e])];
  return doc.dump(2);
}

ContourCompletion matchings_of_contour(const FisherGraph& f, int n,
                                       const std::vector<char>& contour, int enumeration_limit) {
  const ToroidalGraph layout = quotient(f.graph, n);
  const int gn_vertices = n * n * f.num_g_vertices;
  const int gn_edges = n * n * f.num_g_edges;
  if (static_cast<int>(contour.size()) != gn_edges)
    throw DomainError("contour needs one flag per edge of G_n");

  // Contour degree at each vertex of G_n.
  const int fv = f.graph.num_vertices();
  auto owner = [&](int x) { return (x / fv) * f.num_g_vertices + f.g_vertex[x % fv]; };
  std::vector<int> degree(gn_vertices, 0);
  for (int i = 0; i < gn_edges; ++i) {
    if (!contour[i]) continue;
    const auto& le = layout.graph.edges[long_edge_of(f, i)];
    ++degree[owner(le.u)];
    ++degree[owner(le.v)];
  }
  for (int d : degree)
    if (d % 2 != 0) throw NotAContour("contour has a vertex of odd degree");

  const PeriodicGraph& fn = layout.graph;
  std::vector<char> removed(fn.num_vertices(), 0);
  ContourCompletion result;
  for (int i = 0; i < gn_edges; ++i) {
    if (contour[i]) continue;
    int le = long_edge_of(f, i);
    result.matching.push_back(le);
    removed[fn.edges[le].u] = removed[fn.edges[le].v] = 1;
  }

  // Local completion of each decoration, enumerated on the decoration alone.
  std::map<std::pair<int, std::vector<char>>, std::vector<std::vector<int>>> cache;
  result.count = 1;
  for (int cell = 0; cell < n * n; ++cell) {
    for (int v = 0; v < f.num_g_vertices; ++v) {
      const int first = f.first_vertex[v];
      const int size = f.decoration_size(v);
      std::vector<char> gone(removed.begin() + cell * fv + first,
                             removed.begin() + cell * fv + first + size);
      auto key = std::pair{v, gone};
      auto it = cache.find(key);
      if (it == cache.end()) {
        PeriodicGraph local;
        std::vector<int> index(size, -1);
        for (int i = 0; i < size; ++i) {
          if (gone[i]) continue;
          index[i] = local.num_vertices();
          local.positions.push_back(Vec2::Zero());
          local.ids.push_back("");
        }
        std::vector<int> origin;
        for (int e = 0; e < f.graph.num_edges(); ++e) {
          const auto& edge = f.graph.edges[e];
          if (f.role[e] == FisherRole::kLong || f.g_vertex[edge.u] != v) continue;
          int a = index[edge.u - first], b = index[edge.v - first];
          if (a < 0 || b < 0) continue;
          local.edges.push_back({a, b, {}});
          origin.push_back(e);
        }
        auto local_matchings = list_matchings(local);
        for (auto& m : local_matchings)
          for (int& e : m) e = origin[e];
        it = cache.emplace(key, std::move(local_matchings)).first;
      }
      result.count *= static_cast<double>(it->second.size());
      if (it->second.empty()) return result;
      for (int e : it->second.front()) result.matching.push_back(cell * f.graph.num_edges() + e);
    }
  }

  if (fn.num_vertices() <= enumeration_limit) {
    // Independent check: all matchings of F_n restricted to decoration edges
    // among the vertices left free by the long edges.
    PeriodicGraph rest;
    std::vector<int> index(fn.num_vertices(), -1);
    for (int i = 0; i < fn.num_vertices(); ++i) {
      if (removed[i]) continue;
      index[i] = rest.num_vertices();
      rest.positions.push_back(Vec2::Zero());
      rest.ids.push_back("");
    }
    for (int e = 0; e < fn.num_edges(); ++e) {
      if (f.role[e % f.graph.num_edges()] == FisherRole::kLong) continue;
      int a = index[fn.edges[e].u], b = index[fn.edges[e].v];
      if (a >= 0 && b >= 0) rest.edges.push_back({a, b, {}});
    }
    EnumerationBudget budget;
    budget.max_matching_vertices = enumeration_limit;
    auto summary = enumerate_matchings(rest, std::vector<double>(rest.edges.size(), 1.0), false,
                                       budget);
    if (static_cast<double>(summary.count) != result.count)
      throw Error("decoration completions disagree with exhaustive enumeration");
    result.enumerated = true;
  }
  return result;
}

}  // namespace isoising
